#pragma once

#include <map>
#include <string>
#include <vector>

#include "tileforge/voxel.hpp"

namespace tf {

// Onion partition of the 8x8x8 cube K: T1..T3 are successive surface
// shells, T4 the 2x2x2 core.  The core splits into axis halves, and J is
// its top-northeast cell (maximal x, y, z).
struct OnionPartition {
    VoxelSet K, T1, T2, T3, T4;
    VoxelSet T4_upper, T4_lower;  // z = 4 / z = 3
    VoxelSet T4_north, T4_south;  // y = 4 / y = 3
    VoxelSet T4_east, T4_west;    // x = 4 / x = 3
    Coord J{4, 4, 4, 0};
};

OnionPartition onion_partition();

// Frame t of the result is frames[t] extruded at that time step.
VoxelSet stack_frames(const std::vector<VoxelSet>& frames);

// The fourteen 4D building blocks, stored in frame-list coordinates
// (frame i of the defining list at t = i).  Lower-case blocks have 4
// frames (half functional hypercubes with a dent toward the future),
// capitals have 7 (half plus a 3-frame bump toward the past), E and S
// have 11 (full functional hypercube with both a bump and a dent).
class Atlas4 {
public:
    const VoxelSet& block(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }
    int frames(const std::string& name) const;  // time extent of the list

    // Checks volumes, connectivity, dent/bump complements and their
    // exclusivity, and the E/S self-interlock across slices.
    void validate() const;

private:
    friend Atlas4 build_atlas4();
    std::map<std::string, VoxelSet> blocks_;
    std::vector<std::string> names_;
};

Atlas4 build_atlas4();

// Dent block (4 frames, t 0..3) plus bump block shifted to t 1..7 must
// tile the 8x8x8x8 box exactly.
bool check_complement_4d(const Atlas4& atlas, const std::string& dent, const std::string& bump,
                         std::string* why = nullptr);

}  // namespace tf
