#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tileforge/voxel.hpp"

namespace tf {

struct WangTile {
    int n = 0, e = 0, s = 0, w = 0;
    bool operator==(const WangTile&) const = default;
};

struct WangSet {
    int q = 1;  // number of edge colors
    std::vector<WangTile> tiles;
    std::vector<std::string> labels;  // optional, per tile

    // Bits per color channel: smallest t with 2^t >= q, at least 1.
    int color_bits() const;
    void validate() const;  // throws Error on malformed sets
};

// Big-endian bit vector of length set.color_bits().
std::vector<int> encode_color(int color, int bits);

// Doubly periodic assignment: grid[row][col] is the tile index at Wang
// coordinates (col mod h, row mod v).
struct WangTiling {
    int h = 1, v = 1;
    std::vector<std::vector<int>> grid;  // v rows of h tile indices
    int at(long x, long y) const;
};

bool verify_tiling(const WangSet& set, const WangTiling& t, std::string* why = nullptr);

// Exhaustive search for a valid periodic tiling with periods up to the
// given bounds (smallest h, then v, then lexicographic grid).
std::optional<WangTiling> find_periodic_tiling(const WangSet& set, int hmax, int vmax);

std::string wang_to_json(const WangSet& set);
WangSet wang_from_json(const std::string& text);
WangSet read_wang_file(const std::filesystem::path& p);

std::string tiling_to_json(const WangTiling& t);
WangTiling tiling_from_json(const std::string& text);
WangTiling read_tiling_file(const std::filesystem::path& p);

}  // namespace tf
