// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Criteria cover the construction's quantitative claims end to end; the
// verifier and exhaustive solver runs are the oracles throughout.
#include <cctype>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tileforge/atlas3.hpp"
#include "tileforge/blocks4.hpp"
#include "tileforge/io.hpp"
#include "tileforge/reduction3.hpp"
#include "tileforge/reduction4.hpp"
#include "tileforge/render.hpp"
#include "tileforge/solver.hpp"
#include "tileforge/wang.hpp"

using namespace tf;
using nlohmann::json;

namespace {

const std::string kRoot = std::string(TF_SOURCE_DIR);
int g_failures = 0;

#define REQUIRE_MSG(cond, msg)                                   \
    do {                                                         \
        if (!(cond)) throw Error(std::string("line ") +          \
                                 std::to_string(__LINE__) + ": " + (msg)); \
    } while (0)
#define REQUIRE_C(cond) REQUIRE_MSG(cond, #cond)

void criterion(int n, const std::string& what, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string fail;
    try {
        body();
    } catch (const std::exception& e) {
        fail = e.what();
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d (%s): %s (%.2fs)%s%s\n", n, what.c_str(),
                fail.empty() ? "PASS" : "FAIL", el, fail.empty() ? "" : " - ", fail.c_str());
    std::fflush(stdout);
    if (!fail.empty()) ++g_failures;
}

const Atlas3& atlas3() {
    static Atlas3 a = Atlas3::load(kRoot + "/data/atlas3");
    return a;
}

const Atlas4& atlas4() {
    static Atlas4 a = build_atlas4();
    return a;
}

WangSet single0() { return {2, {{0, 0, 0, 0}}, {}}; }
WangSet single_ew() { return {2, {{0, 1, 0, 0}}, {}}; }

}  // namespace

int main() {
    criterion(1, "onion arithmetic", [] {
        OnionPartition o = onion_partition();
        REQUIRE_C(o.T1.size() == 296);
        REQUIRE_C(o.T2.size() == 152);
        REQUIRE_C(o.T3.size() == 56);
        REQUIRE_C(o.T4.size() == 8);
    });

    criterion(2, "3D complements", [] {
        std::map<std::string, Coord> extents = {
            {"c", {8, 16, 8, 0}},  {"c-", {8, 15, 8, 0}}, {"d", {8, 17, 8, 0}},
            {"d-", {8, 16, 8, 0}}, {"a", {16, 8, 8, 0}},  {"b", {16, 8, 8, 0}},
            {"x", {8, 16, 8, 0}},  {"y", {8, 16, 8, 0}},  {"z", {8, 8, 16, 0}}};
        REQUIRE_C(atlas3().complements().size() == 9);
        for (const auto& spec : atlas3().complements()) {
            const VoxelSet& dent = atlas3().block(spec.dent);
            const VoxelSet& bump = atlas3().block(spec.bump);
            auto it = extents.find(spec.dent);
            REQUIRE_MSG(it != extents.end(), "unexpected pair " + spec.dent);
            Coord want = it->second;
            bool match = true;
            std::multiset<int> got(spec.extents.begin(), spec.extents.begin() + 3);
            std::multiset<int> exp(want.begin(), want.begin() + 3);
            match = got == exp;
            REQUIRE_MSG(match, spec.dent + " cuboid extents");
            int fits = 0;
            for (int dx = -2; dx <= 2; ++dx)
                for (int dy = -2; dy <= 2; ++dy)
                    for (int dz = -2; dz <= 2; ++dz)
                        if (check_complement(dent, bump,
                                             add(spec.offset, Coord{dx, dy, dz, 0}),
                                             spec.extents))
                            ++fits;
            REQUIRE_MSG(fits == 1, spec.dent + ": " + std::to_string(fits) + " offsets fit");
        }
        // c (+) C is the 8x16x8 cuboid, 1024 cells
        REQUIRE_C(atlas3().block("c").size() + atlas3().block("C").size() == 1024);
    });

    criterion(3, "4D volumes and connectivity", [] {
        for (const char* d : {"c", "a", "b", "x", "y", "z"}) {
            std::string b(1, char(std::toupper(*d)));
            REQUIRE_MSG(atlas4().block(d).size() + atlas4().block(b).size() == 4096,
                        std::string(d) + "/" + b + " volume");
        }
        REQUIRE_C(atlas4().block("E").size() == 4096);
        REQUIRE_C(atlas4().block("S").size() == 4096);
        atlas4().validate();  // includes per-block connectivity
        WangSet fig{4, {{0, 3, 0, 1}, {2, 0, 2, 3}, {3, 1, 3, 0}}, {}};
        Reduction4 r = build_reduction4(fig, atlas4());
        for (std::size_t i = 0; i < 4; ++i)
            REQUIRE_MSG(is_connected(r.tile(i).vox), r.tile(i).name + " disconnected");
    });

    criterion(4, "tile sizing", [] {
        struct Case { int p, q, t; };
        for (Case c : {Case{1, 2, 1}, Case{2, 2, 1}, Case{3, 4, 2}}) {
            WangSet set{c.q, {}, {}};
            for (int i = 0; i < c.p; ++i) set.tiles.push_back({0, 0, 0, 0});
            Reduction3 r3 = build_reduction3(set, atlas3());
            REQUIRE_C(r3.tbits == c.t);
            REQUIRE_C(r3.we == 2 * c.t + 2);
            REQUIRE_C(r3.w == 2 * c.t + 4);
            REQUIRE_C(r3.encoder.annotations.size() == std::size_t(r3.we * r3.we * c.p));
            REQUIRE_C(r3.tiles().size() == 5);
            Reduction4 r4 = build_reduction4(set, atlas4());
            REQUIRE_C(r4.we == 2 * c.t + 2);
            REQUIRE_C(r4.w == 2 * c.t + 4);
            REQUIRE_C(r4.encoder.annotations.size() == std::size_t(r4.we * r4.we * c.p));
            REQUIRE_C(r4.tiles().size() == 4);
        }
    });

    criterion(5, "linker color matching", [] {
        Reduction3 red = build_reduction3(single0(), atlas3());
        Region reg{Region::Kind::Box, 3, {8, 32, 8, 0}};
        auto at_cell = [&](const std::string& name, Coord cell, Coord flush) {
            Coord base{8 * cell[0] + flush[0], 8 * cell[1] + flush[1], 8 * cell[2] + flush[2], 0};
            return translate(atlas3().block(name), sub(base, atlas3().cube_anchor(name)));
        };
        for (std::string s : {"c", "c-"}) {
            for (std::string n : {"d", "d-"}) {
                VoxelSet south = at_cell(s, {0, 0, 0, 0}, {0, 0, 0, 0});
                VoxelSet north = at_cell(n, {0, 3, 0, 0},
                                         n == "d-" ? Coord{0, 1, 0, 0} : Coord{0, 0, 0, 0});
                CoverProblem prob{reg, {canonicalize(south), canonicalize(north), red.linker.vox}};
                SolveOptions opt;
                opt.allowed = {2};
                opt.fixed = {{0, bbox_min(south)}, {1, bbox_min(north)}};
                SolveResult r = solve(prob, opt);  // exhaustive local run
                bool want = (s == "c") != (n == "d");
                REQUIRE_MSG((r.status == SolveStatus::Solved) == want,
                            s + " <-> " + n + " wrong verdict");
            }
        }
    });

    criterion(6, "end-to-end 3D", [] {
        Reduction3 good = build_reduction3(single0(), atlas3());
        Witness w = assemble_witness_3d(good, {1, 1, {{0}}});
        std::string why;
        REQUIRE_MSG(verify_witness(w.region, w.tiles, w.placements, &why), why);
        REQUIRE_C(w.region.extents[2] == 8);  // z extent 8p
        // incoherent variant: exhaustive refutation on the same torus
        // (stated node budget 60M; the proof completes near 34M nodes)
        Reduction3 bad = build_reduction3(single_ew(), atlas3());
        CoverProblem prob{w.region, bad.tiles()};
        SolveOptions opt;
        opt.node_budget = 60000000;
        SolveResult r = solve(prob, opt);
        REQUIRE_MSG(r.status == SolveStatus::Unsolvable,
                    "expected unsolvable, nodes " + std::to_string(r.nodes));
    });

    criterion(7, "end-to-end 4D", [] {
        Reduction4 good = build_reduction4(single0(), atlas4());
        Witness w = assemble_witness_4d(good, {1, 1, {{0}}});
        std::string why;
        REQUIRE_MSG(verify_witness(w.region, w.tiles, w.placements, &why), why);
        REQUIRE_C(w.region.extents[3] == 8);  // one slice of time
        // lifted incoherent variant: must not admit a cover within the
        // stated budget (the full refutation is hours of search; the
        // exhaustive phase argument is the tunnel fixture below)
        Reduction4 bad = build_reduction4(single_ew(), atlas4());
        CoverProblem nprob{w.region, bad.tiles()};
        SolveOptions nopt;
        nopt.node_budget = 2000000;
        REQUIRE_C(solve(nprob, nopt).status != SolveStatus::Solved);
        // time tunnel: exhaustively linker-tileable iff the phases match
        Region reg{Region::Kind::Torus, 4, {8, 32, 8, 8}};
        VoxelSet color = canonicalize(atlas4().block("c"));
        for (int p1 : {0, 4}) {
            for (int p2 : {0, 4}) {
                CoverProblem prob{reg, {color, good.linker.vox, good.filler.vox}};
                SolveOptions opt;
                opt.allowed = {1, 2};
                opt.fixed = {{0, {0, 0, 0, p1}}, {0, {0, 24, 0, p2}}};
                SolveResult r = solve(prob, opt);
                bool want = p1 == p2;
                REQUIRE_MSG((r.status == SolveStatus::Solved) == want,
                            "phases " + std::to_string(p1) + "," + std::to_string(p2));
                if (want) REQUIRE_MSG(verify_witness(reg, prob.tiles, r.placements, &why), why);
            }
        }
    });

    criterion(8, "solver oracle equivalence", [] {
        // delegated to the unit suite for the DPLL cross-check; here the
        // brute-force subset oracle over 200+ random tiny instances
        std::mt19937 rng(987654321);
        int checked = 0;
        while (checked < 200) {
            Region reg;
            reg.kind = rng() % 2 ? Region::Kind::Torus : Region::Kind::Box;
            reg.dim = 2 + int(rng() % 2);
            std::uint64_t vol = 1;
            for (int i = 0; i < reg.dim; ++i) {
                reg.extents[i] = 1 + int(rng() % (reg.dim == 2 ? 5 : 3));
                vol *= std::uint64_t(reg.extents[i]);
            }
            if (vol > 24) continue;
            std::vector<VoxelSet> tiles;
            for (int t = 0, n = 1 + int(rng() % 3); t < n; ++t) {
                std::vector<Coord> cells{{0, 0, 0, 0}};
                for (int e = 0, m = int(rng() % 4); e < m; ++e) {
                    Coord c = cells[rng() % cells.size()];
                    c[rng() % std::size_t(reg.dim)] += rng() % 2 ? 1 : -1;
                    bool dup = false;
                    for (const auto& u : cells) dup = dup || u == c;
                    if (!dup) cells.push_back(c);
                }
                tiles.push_back(canonicalize(VoxelSet(reg.dim, cells)));
            }
            CoverProblem p{reg, tiles};
            SolveResult r = solve(p);
            REQUIRE_C(r.status != SolveStatus::Budget);
            // brute force over placement subsets
            auto pls = enumerate_placements(p);
            std::vector<std::vector<std::uint64_t>> cover;
            for (const auto& pl : pls) {
                std::vector<std::uint64_t> cs;
                for (const auto& c : p.tiles[std::size_t(pl.tile)].cells())
                    cs.push_back(linear_index(wrap(add(c, pl.offset), reg), reg));
                cover.push_back(std::move(cs));
            }
            std::vector<char> used(reg.volume(), 0);
            std::uint64_t left = reg.volume();
            std::function<bool(std::size_t)> rec = [&](std::size_t from) {
                if (left == 0) return true;
                for (std::size_t i = from; i < cover.size(); ++i) {
                    bool ok = true;
                    for (auto c : cover[i]) ok = ok && !used[c];
                    if (!ok) continue;
                    for (auto c : cover[i]) used[c] = 1;
                    left -= cover[i].size();
                    if (rec(i + 1)) return true;
                    for (auto c : cover[i]) used[c] = 0;
                    left += cover[i].size();
                }
                return false;
            };
            REQUIRE_C((r.status == SolveStatus::Solved) == rec(0));
            ++checked;
        }
    });

    criterion(9, "golden diagrams", [] {
        json counts = json::parse(read_text_file(kRoot + "/tests/golden/counts.json"));
        for (const auto& name : atlas3().names()) {
            std::string golden = read_text_file(kRoot + "/tests/golden/" + name + ".l1.txt");
            REQUIRE_MSG(render_level1_text(atlas3().block(name)) == golden, name + " render");
            auto want = counts.at(name).get<std::vector<std::size_t>>();
            REQUIRE_MSG(layer_cell_counts(atlas3().block(name)) == want, name + " counts");
        }
    });

    return g_failures == 0 ? 0 : 1;
}
