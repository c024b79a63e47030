#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "tileforge/atlas3.hpp"

using namespace tf;

namespace {

const Atlas3& atlas() {
    static Atlas3 a = Atlas3::load(std::string(TF_SOURCE_DIR) + "/data/atlas3");
    return a;
}

}  // namespace

TEST_CASE("atlas loads and validates") {
    CHECK_NOTHROW(atlas().validate());
    CHECK(atlas().names().size() == 18);
}

TEST_CASE("declared complements are exact and unique in a local window") {
    for (const auto& spec : atlas().complements()) {
        const VoxelSet& dent = atlas().block(spec.dent);
        const VoxelSet& bump = atlas().block(spec.bump);
        CHECK(check_complement(dent, bump, spec.offset, spec.extents));
        int fits = 0;
        for (int dx = -2; dx <= 2; ++dx)
            for (int dy = -2; dy <= 2; ++dy)
                for (int dz = -2; dz <= 2; ++dz)
                    if (check_complement(dent, bump,
                                         add(spec.offset, Coord{dx, dy, dz, 0}), spec.extents))
                        ++fits;
        CHECK(fits == 1);
    }
}

TEST_CASE("specific cuboid dimensions from the construction") {
    std::map<std::string, Coord> ext;
    for (const auto& s : atlas().complements()) ext[s.dent] = s.extents;
    CHECK(ext.at("c") == Coord{8, 16, 8, 0});
    CHECK(ext.at("c-") == Coord{8, 15, 8, 0});  // shaved dent loses a row
    CHECK(ext.at("d") == Coord{8, 17, 8, 0});
    CHECK(ext.at("d-") == Coord{8, 16, 8, 0});
    CHECK(ext.at("z") == Coord{8, 8, 16, 0});
}

TEST_CASE("bump blocks fit only their partners") {
    auto fits = match_exclusivity(atlas());
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& f : fits) {
        CHECK(f.offsets.size() == 1);
        seen.insert({f.bump, f.dent});
    }
    std::set<std::pair<std::string, std::string>> want = {
        {"C", "c"}, {"C", "c-"}, {"D+", "d"}, {"D+", "d-"}, {"A", "a"},
        {"B", "b"}, {"X", "x"},  {"Y", "y"},  {"Z", "z"}};
    CHECK(seen == want);
}

TEST_CASE("rotation helper") {
    VoxelSet l(3, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(rotate_block(l, Rot3::Z180).size() == 3);
    CHECK(rotate_block(rotate_block(l, Rot3::Z90CW), Rot3::Z90CCW) == l);
}
