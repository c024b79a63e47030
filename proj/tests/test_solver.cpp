#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "tileforge/solver.hpp"

using namespace tf;

namespace {

VoxelSet domino() { return VoxelSet(2, {{0, 0, 0, 0}, {1, 0, 0, 0}}); }
VoxelSet vdomino() { return VoxelSet(2, {{0, 0, 0, 0}, {0, 1, 0, 0}}); }
VoxelSet domino3() { return VoxelSet(3, {{0, 0, 0, 0}, {1, 0, 0, 0}}); }
VoxelSet vdomino3() { return VoxelSet(3, {{0, 0, 0, 0}, {0, 1, 0, 0}}); }

// Oracle 1: exhaustive search over all placement subsets.
bool brute_force_solvable(const CoverProblem& p) {
    auto placements = enumerate_placements(p);
    std::vector<std::vector<std::uint64_t>> cover;
    for (const auto& pl : placements) {
        std::vector<std::uint64_t> cells;
        for (const auto& c : p.tiles[std::size_t(pl.tile)].cells())
            cells.push_back(linear_index(wrap(add(c, pl.offset), p.region), p.region));
        cover.push_back(std::move(cells));
    }
    std::vector<char> used(p.region.volume(), 0);
    std::uint64_t left = p.region.volume();
    auto rec = [&](auto&& self, std::size_t from) -> bool {
        if (left == 0) return true;
        for (std::size_t i = from; i < cover.size(); ++i) {
            bool ok = true;
            for (auto c : cover[i])
                if (used[c]) { ok = false; break; }
            if (!ok) continue;
            for (auto c : cover[i]) used[c] = 1;
            left -= cover[i].size();
            if (self(self, i + 1)) return true;
            for (auto c : cover[i]) used[c] = 0;
            left += cover[i].size();
        }
        return false;
    };
    return rec(rec, 0);
}

// Oracle 2: DIMACS satisfiability by plain DPLL with unit propagation.
bool dimacs_satisfiable(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    int nvars = 0, nclauses = 0;
    std::vector<std::vector<int>> clauses;
    std::vector<int> cur;
    while (in >> tok) {
        if (tok == "c") { std::getline(in, tok); continue; }
        if (tok == "p") { in >> tok >> nvars >> nclauses; continue; }
        int lit = std::stoi(tok);
        if (lit == 0) { clauses.push_back(cur); cur.clear(); }
        else cur.push_back(lit);
    }
    REQUIRE(int(clauses.size()) == nclauses);
    std::vector<int> assign(std::size_t(nvars) + 1, 0);  // 0 unset, 1 true, -1 false
    auto value = [&](int lit) { return lit > 0 ? assign[std::size_t(lit)] : -assign[std::size_t(-lit)]; };
    auto rec = [&](auto&& self) -> bool {
        // unit propagation to fixpoint
        std::vector<int> trail;
        for (bool changed = true; changed;) {
            changed = false;
            for (const auto& cl : clauses) {
                int unset = 0, last = 0;
                bool sat = false;
                for (int lit : cl) {
                    int v = value(lit);
                    if (v == 1) { sat = true; break; }
                    if (v == 0) { ++unset; last = lit; }
                }
                if (sat) continue;
                if (unset == 0) {
                    for (int l : trail) assign[std::size_t(std::abs(l))] = 0;
                    return false;
                }
                if (unset == 1) {
                    assign[std::size_t(std::abs(last))] = last > 0 ? 1 : -1;
                    trail.push_back(last);
                    changed = true;
                }
            }
        }
        int branch = 0;
        for (int v = 1; v <= nvars; ++v)
            if (assign[std::size_t(v)] == 0) { branch = v; break; }
        if (branch == 0) return true;
        for (int val : {1, -1}) {
            assign[std::size_t(branch)] = val;
            if (self(self)) return true;
        }
        assign[std::size_t(branch)] = 0;
        for (int l : trail) assign[std::size_t(std::abs(l))] = 0;
        return false;
    };
    return rec(rec);
}

}  // namespace

TEST_CASE("placement enumeration counts") {
    CHECK(enumerate_placements({{Region::Kind::Box, 2, {2, 2, 0, 0}}, {domino(), vdomino()}}).size() == 4);
    CHECK(enumerate_placements({{Region::Kind::Torus, 2, {2, 2, 0, 0}}, {domino(), vdomino()}}).size() == 8);
    VoxelSet cube8(3, [] {
        std::vector<Coord> c;
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y)
                for (int z = 0; z < 8; ++z) c.push_back({x, y, z, 0});
        return c;
    }());
    CHECK(enumerate_placements({{Region::Kind::Box, 3, {4, 4, 4, 0}}, {cube8}}).empty());
}

TEST_CASE("small instances solve as expected") {
    CHECK(solve({{Region::Kind::Box, 2, {2, 2, 0, 0}}, {domino(), vdomino()}}).status ==
          SolveStatus::Solved);
    SolveResult one = solve({{Region::Kind::Box, 2, {3, 3, 0, 0}}, {VoxelSet(2, {{0, 0, 0, 0}})}});
    CHECK(one.status == SolveStatus::Solved);
    CHECK(one.placements.size() == 9);
    CHECK(solve({{Region::Kind::Box, 2, {3, 3, 0, 0}}, {domino(), vdomino()}}).status ==
          SolveStatus::Unsolvable);
}

TEST_CASE("solved witnesses verify; budget reported distinctly") {
    CoverProblem p{{Region::Kind::Torus, 3, {4, 4, 2, 0}}, {domino3()}};
    SolveResult r = solve(p);
    REQUIRE(r.status == SolveStatus::Solved);
    std::string why;
    CHECK(verify_witness(p.region, p.tiles, r.placements, &why));
    SolveOptions tight;
    tight.node_budget = 0;
    CHECK(solve({{Region::Kind::Box, 2, {3, 3, 0, 0}}, {domino()}}, tight).status ==
          SolveStatus::Budget);
}

TEST_CASE("constrained solve extends fixed placements") {
    CoverProblem p{{Region::Kind::Box, 2, {2, 2, 0, 0}}, {domino(), vdomino()}};
    SolveOptions opt;
    opt.fixed = {{0, {0, 0, 0, 0}}};
    opt.allowed = {0};
    SolveResult r = solve(p, opt);
    REQUIRE(r.status == SolveStatus::Solved);
    CHECK(r.placements.size() == 2);
    for (const auto& pl : r.placements) CHECK(pl.tile == 0);
    // a single uncoverable hole
    CoverProblem odd{{Region::Kind::Box, 2, {3, 1, 0, 0}}, {domino()}};
    SolveOptions f;
    f.fixed = {{0, {0, 0, 0, 0}}};
    CHECK(solve(odd, f).status == SolveStatus::Unsolvable);
}

TEST_CASE("determinism: identical runs, identical node counts") {
    CoverProblem p{{Region::Kind::Torus, 2, {4, 6, 0, 0}}, {domino(), vdomino()}};
    SolveResult a = solve(p), b = solve(p);
    CHECK(a.status == b.status);
    CHECK(a.nodes == b.nodes);
    CHECK(a.placements == b.placements);
}

TEST_CASE("parallel mode matches single-threaded status") {
    CoverProblem p{{Region::Kind::Torus, 3, {6, 4, 2, 0}}, {domino3(), vdomino3()}};
    SolveOptions mt;
    mt.threads = 4;
    CHECK(solve(p, mt).status == solve(p).status);
    CoverProblem bad{{Region::Kind::Torus, 2, {3, 3, 0, 0}}, {domino()}};
    CHECK(solve(bad, mt).status == SolveStatus::Unsolvable);
}

TEST_CASE("sat export shape") {
    CoverProblem p{{Region::Kind::Box, 2, {2, 2, 0, 0}}, {domino(), vdomino()}};
    std::string cnf = export_sat(p);
    CHECK(cnf.find("p cnf 4 ") != std::string::npos);
    CHECK(dimacs_satisfiable(cnf));
    CHECK(!dimacs_satisfiable(export_sat({{Region::Kind::Box, 2, {3, 3, 0, 0}}, {domino()}})));
}

TEST_CASE("random small instances agree with brute force and SAT") {
    std::mt19937 rng(20240817);
    int checked = 0, solvable = 0;
    while (checked < 220) {
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
        int ntiles = 1 + int(rng() % 3);
        for (int t = 0; t < ntiles; ++t) {
            std::vector<Coord> cells{{0, 0, 0, 0}};
            int extra = int(rng() % 4);
            for (int e = 0; e < extra; ++e) {
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
        REQUIRE(r.status != SolveStatus::Budget);
        bool got = r.status == SolveStatus::Solved;
        CHECK(got == brute_force_solvable(p));
        CHECK(got == dimacs_satisfiable(export_sat(p)));
        if (got) {
            std::string why;
            CHECK(verify_witness(p.region, p.tiles, r.placements, &why));
            ++solvable;
        }
        ++checked;
    }
    // the sample must exercise both verdicts
    CHECK(solvable > 20);
    CHECK(solvable < 200);
}
