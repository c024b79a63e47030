#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tileforge/reduction4.hpp"
#include "tileforge/solver.hpp"

using namespace tf;

namespace {

const Atlas4& atlas() {
    static Atlas4 a = build_atlas4();
    return a;
}

WangSet single0() { return {2, {{0, 0, 0, 0}}, {}}; }

}  // namespace

TEST_CASE("four tiles with the expected shapes") {
    Reduction4 r = build_reduction4(single0(), atlas());
    CHECK(r.tiles().size() == 4);
    CHECK(r.linker.vox.size() == 2 * 2432 + 2 * 4096);
    CHECK(r.filler.vox.size() == 2432);
    CHECK(bbox_extents(r.linker.vox) == Coord{8, 32, 8, 8});
    // encoder: 16 grid cells; 4 color cells and A/B carry dents/bumps, one
    // cell is the full hypercube E, the rest are plain columns
    CHECK(r.encoder.vox.size() == std::size_t(9 * 4096 + 4 * 1664 + 2 * 2424 + 4096));
}

TEST_CASE("sizing matches the 3D construction") {
    for (int p : {1, 2, 3}) {
        WangSet set{p == 3 ? 4 : 2, {}, {}};
        for (int i = 0; i < p; ++i) set.tiles.push_back({0, 0, 0, 0});
        Reduction4 r = build_reduction4(set, atlas());
        int t = r.tbits;
        CHECK(r.we == 2 * t + 2);
        CHECK(r.w == 2 * t + 4);
        CHECK(r.encoder.annotations.size() == std::size_t(r.we * r.we * p));
        CHECK(r.tiles().size() == 4);
    }
}

TEST_CASE("assembled tiles are connected at the published sizes") {
    WangSet fig{4, {{0, 3, 0, 1}, {2, 0, 2, 3}, {3, 1, 3, 0}}, {}};
    Reduction4 r = build_reduction4(fig, atlas());
    for (std::size_t i = 0; i < 4; ++i) CHECK(is_connected(r.tile(i).vox));
}

TEST_CASE("witness lifts to 4D and verifies") {
    Reduction4 r = build_reduction4(single0(), atlas());
    Witness w = assemble_witness_4d(r, {1, 1, {{0}}});
    CHECK(w.region.extents == Coord{48, 96, 8, 8});  // 3D torus x one slice
    std::string why;
    CHECK(verify_witness(w.region, w.tiles, w.placements, &why));
    // all-zero colors use latter-half color blocks, so every linker
    // straddles the slice boundary (time offset 4, not 0)
    int linkers = 0;
    for (const auto& pl : w.placements)
        if (pl.tile == int(Reduction4::kLinker)) {
            ++linkers;
            CHECK(pl.offset[3] != 0);
        }
    CHECK(linkers == 4);
}

TEST_CASE("all-one colors align the linkers with the slices") {
    WangSet ones{2, {{1, 1, 1, 1}}, {}};
    Reduction4 r = build_reduction4(ones, atlas());
    Witness w = assemble_witness_4d(r, {1, 1, {{0}}});
    std::string why;
    CHECK(verify_witness(w.region, w.tiles, w.placements, &why));
    for (const auto& pl : w.placements)
        if (pl.tile == int(Reduction4::kLinker)) CHECK(pl.offset[3] == 0);
}

TEST_CASE("time tunnel admits linkers only between equal phases") {
    Reduction4 r = build_reduction4(single0(), atlas());
    Region reg{Region::Kind::Torus, 4, {8, 32, 8, 8}};
    VoxelSet color = canonicalize(atlas().block("c"));
    for (int p1 : {0, 4}) {
        for (int p2 : {0, 4}) {
            CoverProblem prob{reg, {color, r.linker.vox, r.filler.vox}};
            SolveOptions opt;
            opt.allowed = {1, 2};
            opt.fixed = {{0, {0, 0, 0, p1}}, {0, {0, 24, 0, p2}}};
            SolveResult res = solve(prob, opt);
            if (p1 == p2) {
                REQUIRE(res.status == SolveStatus::Solved);
                std::string why;
                CHECK(verify_witness(reg, prob.tiles, res.placements, &why));
            } else {
                CHECK(res.status == SolveStatus::Unsolvable);
            }
        }
    }
}

TEST_CASE("assembly rejects an invalid Wang tiling") {
    Reduction4 r = build_reduction4(WangSet{2, {{0, 1, 0, 0}}, {}}, atlas());
    CHECK_THROWS_AS(assemble_witness_4d(r, {1, 1, {{0}}}), Error);
}
