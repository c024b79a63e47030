#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tileforge/voxel.hpp"

namespace tf {

struct CoverProblem {
    Region region;
    std::vector<VoxelSet> tiles;  // canonical shapes, translations only
};

// Every placement whose cells land inside the region (boxes) or wrap
// without self-overlap (tori).  Order: tile ascending, offset lexicographic.
std::vector<Placement> enumerate_placements(const CoverProblem& p);

enum class SolveStatus { Solved, Unsolvable, Budget };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsolvable;
    std::vector<Placement> placements;  // complete cover (incl. fixed) when Solved
    std::uint64_t nodes = 0;            // placements tried
};

struct SolveOptions {
    std::uint64_t node_budget = UINT64_MAX;
    std::vector<Placement> fixed;  // pre-placed, must be compatible
    std::vector<int> allowed;      // tile indices usable for completion; empty = all
    int threads = 1;               // >1: parallel root branches (same status)
};

// Exact cover of the full region by translated tiles.  Small instances run
// a placement-matrix search with fewest-candidates-first cell selection;
// large ones a grid backtracker targeting the first empty cell, with
// origin-anchored root branches on tori without fixed placements.  Both are
// deterministic and exhaustive (status Unsolvable means proof, Budget means
// the node budget ran out first).
SolveResult solve(const CoverProblem& p, const SolveOptions& opt = {});

// DIMACS CNF whose satisfying assignments are exactly the covers of p
// (variable i+1 <-> placement i of enumerate_placements).
std::string export_sat(const CoverProblem& p);

// Ground truth: every region cell covered exactly once.
bool verify_witness(const Region& region, const std::vector<VoxelSet>& tiles,
                    const std::vector<Placement>& placements, std::string* why = nullptr);

}  // namespace tf
