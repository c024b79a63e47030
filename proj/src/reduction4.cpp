#include "tileforge/reduction4.hpp"

#include <algorithm>

#include "tileforge/solver.hpp"

namespace tf {

namespace {

// Accumulates 4D atlas blocks on the 8^4 grid of a tile under
// construction.  Blocks are stored in frame-list coordinates, so the time
// base selects the attachment: 0 = former half, 4 = latter half, 1 = bump
// partner behind a latter half, -3 = full hypercube aligned to the slice
// (bump reaching into the previous slice).
class TileBuilder4 {
public:
    explicit TileBuilder4(const Atlas4& atlas) : atlas_(atlas) {}

    void place(const std::string& block, Coord cell, int tbase, const std::string& label) {
        Coord base{8 * cell[0], 8 * cell[1], 8 * cell[2], tbase};
        for (const auto& c : atlas_.block(block).cells()) cells_.push_back(add(c, base));
        annots_.push_back({cell, label});
    }

    void plain(Coord cell) {
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y)
                for (int z = 0; z < 8; ++z)
                    for (int t = 0; t < 8; ++t)
                        cells_.push_back({8 * cell[0] + x, 8 * cell[1] + y, 8 * cell[2] + z, t});
        annots_.push_back({cell, "K"});
    }

    BuiltTile finish(std::string name) {
        VoxelSet raw(4, std::move(cells_));  // throws on any overlap
        BuiltTile out;
        out.name = std::move(name);
        out.origin = bbox_min(raw);
        out.vox = canonicalize(raw);
        out.annotations = std::move(annots_);
        return out;
    }

private:
    const Atlas4& atlas_;
    std::vector<Coord> cells_;
    std::vector<LabeledCell> annots_;
};

bool in_window(int i, int t, int w) {
    return (i >= 1 && i <= t) || (i >= w - 1 - t && i <= w - 2);
}

constexpr int kFormer = 0, kLatter = 4, kBump = 1, kAligned = -3;

BuiltTile build_encoder4(const WangSet& set, const Atlas4& atlas, int t, int we, int p) {
    TileBuilder4 b(atlas);
    // The distinguished full hypercube sits at a fixed interior cell of
    // the top layer.
    const int ex = std::min(t, we - 2), ey = std::min(t + 1, we - 2);
    for (int l = 0; l < p; ++l) {
        const WangTile& wt = set.tiles[std::size_t(l)];
        auto wb = encode_color(wt.w, t), nb = encode_color(wt.n, t);
        auto sb = encode_color(wt.s, t), eb = encode_color(wt.e, t);
        for (int j = 0; j < we; ++j) {
            for (int i = 0; i < we; ++i) {
                Coord cell{i, j, l, 0};
                if (j == we - 1 || j == 0) {  // color rows: w/n bits north, s/e south
                    const auto& first = j == 0 ? sb : wb;
                    const auto& second = j == 0 ? eb : nb;
                    int bit = i < t ? first[std::size_t(i)]
                                    : (i >= t + 2 ? second[std::size_t(i - t - 2)] : -1);
                    if (bit < 0) b.plain(cell);
                    else if (bit) b.place("c", cell, kFormer, "c_");
                    else b.place("c", cell, kLatter, "c^");
                } else if (i == 0 && j == 2 * t) {
                    b.place("A", cell, kBump, "A^");  // behind the selector's a
                } else if (i == we - 1 && j == 2 * t) {
                    b.place("B", cell, kBump, "B^");
                } else if (l == p - 1 && i == ex && j == ey) {
                    b.place("E", cell, kAligned, "E");
                } else {
                    b.plain(cell);
                }
            }
        }
    }
    return b.finish("encoder");
}

BuiltTile build_selector4(const Atlas4& atlas, int t, int w, int p) {
    TileBuilder4 b(atlas);
    for (int k = 0; k < p; ++k) {
        const bool top = k == p - 1;
        // Two hole cells shared in time with the encoder's A/B cells.
        b.place("a", {1, w - 3, k, 0}, kFormer, "a_");
        b.place("b", {w - 2, w - 3, k, 0}, kFormer, "b_");
        for (int j = 0; j < w; ++j) {
            for (int i = 0; i < w; ++i) {
                if (i != 0 && i != w - 1 && j != 0 && j != w - 1) continue;  // hole
                Coord cell{i, j, k, 0};
                if (top && (j == 0 || j == w - 1) && in_window(i, t, w)) continue;  // vacant
                if (top && i == 0 && j == w - 1) { b.place("S", cell, kAligned, "S"); continue; }
                if (k == 0 && i == 0 && j == 0) { b.place("x", cell, kFormer, "x_"); continue; }
                if (k == 0 && i == w / 2 && j == 0) { b.place("y", cell, kFormer, "y_"); continue; }
                if (k == 0 && i == w - 1 && j == w - 1) {
                    b.place("z", cell, kFormer, "z_");
                    continue;
                }
                b.plain(cell);
            }
        }
    }
    // Bump partners landing in the neighboring selectors' x/y cells, and
    // one layer up in the next selector's z cell.
    b.place("X", {w, 0, 0, 0}, kBump, "X^");
    b.place("Y", {0, w, 0, 0}, kBump, "Y^");
    b.place("Z", {w - 1, w - 1, p, 0}, kBump, "Z^");
    return b.finish("selector");
}

BuiltTile build_linker4(const Atlas4& atlas) {
    TileBuilder4 b(atlas);
    b.place("C", {0, 0, 0, 0}, kBump, "C^");  // completes the south color cell
    b.plain({0, 1, 0, 0});                    // two window ring cells
    b.plain({0, 2, 0, 0});
    b.place("C", {0, 3, 0, 0}, kBump, "C^");  // completes the north color cell
    return b.finish("linker");
}

BuiltTile filler_tile(const Atlas4& atlas) {
    BuiltTile out;
    out.name = "filler";
    out.vox = canonicalize(atlas.block("C"));
    out.origin = bbox_min(atlas.block("C"));
    out.annotations = {{{0, 0, 0, 0}, "C^"}};
    return out;
}

}  // namespace

std::vector<VoxelSet> Reduction4::tiles() const {
    return {encoder.vox, selector.vox, linker.vox, filler.vox};
}

const BuiltTile& Reduction4::tile(std::size_t i) const {
    const BuiltTile* t[] = {&encoder, &selector, &linker, &filler};
    if (i >= 4) throw Error("tile index out of range");
    return *t[i];
}

Reduction4 build_reduction4(const WangSet& set, const Atlas4& atlas) {
    set.validate();
    Reduction4 r;
    r.wang = set;
    r.tbits = set.color_bits();
    r.p = int(set.tiles.size());
    r.we = 2 * r.tbits + 2;
    r.w = 2 * r.tbits + 4;
    r.encoder = build_encoder4(set, atlas, r.tbits, r.we, r.p);
    r.selector = build_selector4(atlas, r.tbits, r.w, r.p);
    r.linker = build_linker4(atlas);
    r.filler = filler_tile(atlas);
    return r;
}

Witness assemble_witness_4d(const Reduction4& red, const WangTiling& wt,
                            std::uint64_t node_budget) {
    std::string why;
    if (!verify_tiling(red.wang, wt)) throw Error("invalid Wang tiling for witness assembly");
    TorusShape shape = minimal_torus(wt.h, wt.v);
    const int t = red.tbits, w = red.w, p = red.p;
    Region reg{Region::Kind::Torus, 4, {8 * w * shape.ncols, 8 * w * shape.nrows, 8 * p, 8}};

    CoverProblem prob{reg, red.tiles()};
    SolveOptions opt;
    opt.node_budget = node_budget;
    opt.allowed = {int(Reduction4::kLinker), int(Reduction4::kFiller)};
    for (int n = 0; n < shape.nrows; ++n) {
        for (int m = 0; m < shape.ncols; ++m) {
            Coord anchor{8 * (m * w - n * (t + 2)), 8 * n * w, 0, 0};
            opt.fixed.push_back(
                {int(Reduction4::kSelector), wrap(add(anchor, red.selector.origin), reg)});
            int tile = wt.at(m - n, m);
            int s = ((p - 1 - tile) % p + p) % p;  // vertical phase: layer `tile` on top
            Coord enc = add(anchor, Coord{8, 8, 8 * s, 0});
            opt.fixed.push_back(
                {int(Reduction4::kEncoder), wrap(add(enc, red.encoder.origin), reg)});
        }
    }
    SolveResult res = solve(prob, opt);
    if (res.status != SolveStatus::Solved)
        throw Error("witness completion failed (status " + std::to_string(int(res.status)) +
                    ", nodes " + std::to_string(res.nodes) + ")");
    Witness wit{reg, prob.tiles, res.placements};
    if (!verify_witness(reg, wit.tiles, wit.placements, &why))
        throw Error("assembled witness failed verification: " + why);
    return wit;
}

}  // namespace tf
