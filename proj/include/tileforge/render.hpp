#pragma once

#include <string>
#include <vector>

#include "tileforge/reduction3.hpp"
#include "tileforge/voxel.hpp"

namespace tf {

// Level-1 diagrams show unit cells layer by layer (bottom first, north row
// on top); 4D sets add a "frame" nesting per time step.  Text uses '#'
// for occupied and '.' for empty over the canonical bounding box.
std::string render_level1_text(const VoxelSet& s);
std::string render_level1_svg(const VoxelSet& s);

// Cells per z-layer of the canonical bounding box, bottom first.
std::vector<std::size_t> layer_cell_counts(const VoxelSet& s);

// Level-2 diagrams show the block-grid annotations of a built tile: one
// labeled square per grid cell ('.' where the grid is vacant).
std::string render_level2_text(const BuiltTile& t);
std::string render_level2_svg(const BuiltTile& t);

}  // namespace tf
