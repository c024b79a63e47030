#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

// Coordinates are fixed-width 4-vectors; sets/regions carry the live
// dimension (2..4) and unused trailing coordinates stay zero.
using Coord = std::array<int, 4>;

inline Coord add(Coord a, const Coord& b) {
    for (int i = 0; i < 4; ++i) a[i] += b[i];
    return a;
}
inline Coord sub(Coord a, const Coord& b) {
    for (int i = 0; i < 4; ++i) a[i] -= b[i];
    return a;
}

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite set of lattice cells, kept sorted (lexicographic on x,y,z,t).
class VoxelSet {
public:
    VoxelSet() : dim_(3) {}
    explicit VoxelSet(int dim) : dim_(check_dim(dim)) {}
    VoxelSet(int dim, std::vector<Coord> cells);

    int dim() const { return dim_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    const std::vector<Coord>& cells() const { return cells_; }
    bool contains(const Coord& c) const;

    bool operator==(const VoxelSet&) const = default;

    static int check_dim(int dim);

private:
    int dim_;
    std::vector<Coord> cells_;
};

VoxelSet translate(const VoxelSet& s, const Coord& v);

Coord bbox_min(const VoxelSet& s);   // throws on empty
Coord bbox_max(const VoxelSet& s);
Coord bbox_extents(const VoxelSet& s);

// Translate so the bounding-box minimum corner sits at the origin.
VoxelSet canonicalize(const VoxelSet& s);

// Face-adjacency (2*dim neighbors) connectivity; empty set counts as
// connected.
bool is_connected(const VoxelSet& s);

// Union of two disjoint sets; throws Error naming a witness cell if they
// overlap.
VoxelSet disjoint_union(const VoxelSet& a, const VoxelSet& b);

// True iff s is exactly the axis-aligned box [0,extents) after
// canonicalization.
bool is_box(const VoxelSet& s, const Coord& extents);

struct Region {
    enum class Kind { Box, Torus };
    Kind kind = Kind::Box;
    int dim = 3;
    Coord extents{};  // all positive in the first `dim` slots

    std::uint64_t volume() const;
    void validate() const;
    bool operator==(const Region&) const = default;
};

// Map a cell into a torus fundamental domain; identity (with bounds check)
// for boxes.
Coord wrap(Coord c, const Region& r);

// Cells of the region in lexicographic order <-> linear indices.
std::uint64_t linear_index(const Coord& c, const Region& r);
Coord from_linear_index(std::uint64_t idx, const Region& r);

struct Placement {
    int tile = 0;   // index into an external tile list
    Coord offset{}; // translation applied to the canonical tile
    bool operator==(const Placement&) const = default;
};

std::string to_string(const Coord& c, int dim);

}  // namespace tf
