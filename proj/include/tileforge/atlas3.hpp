#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tileforge/voxel.hpp"

namespace tf {

enum class Rot3 {
    Z90CW,     // about the vertical axis, north face -> east
    Z90CCW,    // north face -> west
    Z180,      // north face -> south
    YWestDown, // about the south-north axis, west face -> bottom
};

// Rotate a 3D voxel set and recanonicalize.
VoxelSet rotate_block(const VoxelSet& s, Rot3 r);

struct ComplementSpec {
    std::string dent, bump;
    Coord offset{};   // translation of the bump in the dent's canonical frame
    Coord extents{};  // of the resulting full box
};

// True iff dent (+) translate(bump, offset) is exactly a box of the given
// extents.
bool check_complement(const VoxelSet& dent, const VoxelSet& bump, const Coord& offset,
                      const Coord& extents);

// 18-block atlas (functional cubes, their bump partners and the fillers),
// loaded from the checked-in data directory.
class Atlas3 {
public:
    static Atlas3 load(const std::filesystem::path& dir);

    const VoxelSet& block(const std::string& name) const;
    // Canonical position of the block's main 8x8(x8) box corner; placement
    // code subtracts this so bumps overhang into neighboring grid cells.
    Coord cube_anchor(const std::string& name) const;
    const std::vector<ComplementSpec>& complements() const { return complements_; }
    std::vector<std::string> names() const;

    // Full audit: connectivity, declared cell counts and bounding boxes,
    // manifest checksums, rotation identities (d, d-, a, b, A, B, y, z from
    // their base blocks) and every declared complement.  Throws Error with
    // the first violation.
    void validate() const;

private:
    std::map<std::string, VoxelSet> blocks_;
    std::map<std::string, Coord> anchors_;
    std::vector<ComplementSpec> complements_;
};

// One dent/bump pair that admits a gapless box fit, with every offset at
// which it does.
struct BoxFit {
    std::string bump, dent;
    std::vector<Coord> offsets;
};

// Scan all (bump partner, dented block) pairs over every offset where the
// combined bounding box could be exactly filled; returns only pairs with
// at least one fit.  The intended-partner pairs must be the only entries.
std::vector<BoxFit> match_exclusivity(const Atlas3& atlas);

}  // namespace tf
