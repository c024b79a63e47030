#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tileforge/blocks4.hpp"
#include "tileforge/io.hpp"
#include "tileforge/reduction3.hpp"
#include "tileforge/voxel.hpp"
#include "tileforge/wang.hpp"

namespace tf {

// A functional cell of a 4D tile occupies half of the eight time steps of
// a slice: the former half (t 0..3 within the slice) or the latter half
// (t 4..7).  Interlocks are temporal: the complementary block shares the
// same spatial cell at the remaining time steps.
enum class Attachment { Former, Latter };

// The four 4D prototiles derived from a Wang set.  The filler is the bump
// block C alone; it completes color cells whose window column is walled
// off, and the linker bridges a matching color-cell pair through a window.
struct Reduction4 {
    WangSet wang;
    int tbits = 1;
    int p = 1;      // Wang tiles = encoder/selector layers
    int we = 4;     // encoder footprint width 2t+2
    int w = 6;      // selector footprint width 2t+4
    BuiltTile encoder, selector, linker, filler;

    std::vector<VoxelSet> tiles() const;  // canonical, in the order above
    const BuiltTile& tile(std::size_t i) const;
    static constexpr std::size_t kEncoder = 0, kSelector = 1, kLinker = 2, kFiller = 3;
};

Reduction4 build_reduction4(const WangSet& set, const Atlas4& atlas);

// Constructive tiling of the closed torus (the 3D layout times 8 time
// steps).  Selectors and encoders are fixed from the Wang tiling with
// time origin 0; the residual is completed by a constrained solve over
// {linker, filler}.  Verifies before returning; throws on failure.
Witness assemble_witness_4d(const Reduction4& red, const WangTiling& wt,
                            std::uint64_t node_budget = UINT64_MAX);

}  // namespace tf
