#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tileforge/voxel.hpp"

namespace tf {

// Text voxel format: one cell per line, space-separated integers, '#'
// starts a comment, blank lines ignored.  Dimension is inferred from the
// first data line (2..4 coordinates) and must be consistent throughout.
VoxelSet read_voxels(std::istream& in, const std::string& what = "<stream>");
VoxelSet read_voxels_file(const std::filesystem::path& p);
void write_voxels(std::ostream& out, const VoxelSet& s, const std::string& comment = "");
void write_voxels_file(const std::filesystem::path& p, const VoxelSet& s,
                       const std::string& comment = "");

struct Witness {
    Region region;
    std::vector<VoxelSet> tiles;
    std::vector<Placement> placements;
};

std::string witness_to_json(const Witness& w);
Witness witness_from_json(const std::string& text);
Witness read_witness_file(const std::filesystem::path& p);
void write_witness_file(const std::filesystem::path& p, const Witness& w);

std::string read_text_file(const std::filesystem::path& p);
void write_text_file(const std::filesystem::path& p, const std::string& text);

std::string sha256_hex(const std::string& data);

}  // namespace tf
