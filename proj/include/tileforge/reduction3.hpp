#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tileforge/atlas3.hpp"
#include "tileforge/io.hpp"
#include "tileforge/voxel.hpp"
#include "tileforge/wang.hpp"

namespace tf {

struct LabeledCell {
    Coord cell{};       // block-grid coordinates in the build frame
    std::string label;  // atlas block name, or "K" for a plain cube
};

struct BuiltTile {
    std::string name;
    VoxelSet vox;     // canonical
    Coord origin{};   // build-frame bbox minimum (canonical + origin = build coords)
    std::vector<LabeledCell> annotations;
};

// The five 3D prototiles derived from a Wang set: encoder (all p Wang
// tiles stacked as layers), selector ring, linker and the two fillers.
struct Reduction3 {
    WangSet wang;
    int tbits = 1;  // bits per color
    int p = 1;      // Wang tiles = encoder/selector layers
    int we = 4;     // encoder footprint width 2t+2
    int w = 6;      // selector footprint width 2t+4
    BuiltTile encoder, selector, linker, filler_f, filler_fp;

    std::vector<VoxelSet> tiles() const;  // canonical, in the order above
    const BuiltTile& tile(std::size_t i) const;
    static constexpr std::size_t kEncoder = 0, kSelector = 1, kLinker = 2, kF = 3, kFp = 4;
};

Reduction3 build_reduction3(const WangSet& set, const Atlas3& atlas);

// Smallest torus closing the skewed selector lattice for a (h,v)-periodic
// Wang tiling: columns of sites per row, and number of rows.
struct TorusShape {
    int ncols = 1, nrows = 2;
};
TorusShape minimal_torus(int h, int v);

// Constructive tiling of the closed torus: selectors and phase-shifted
// encoders are placed directly from the Wang tiling, the residual (wall
// gaps and window columns) is completed by a constrained solve over
// {linker, F, F+}.  Verifies before returning; throws on failure.
Witness assemble_witness_3d(const Reduction3& red, const WangTiling& wt,
                            std::uint64_t node_budget = UINT64_MAX);

}  // namespace tf
