#include "tileforge/reduction3.hpp"

#include <numeric>

#include "tileforge/solver.hpp"

namespace tf {

namespace {

// Accumulates atlas blocks on the 8^3 grid of a tile under construction.
class TileBuilder {
public:
    explicit TileBuilder(const Atlas3& atlas) : atlas_(atlas) {}

    // Place a block so its main-box corner sits at 8*cell + flush; bumps
    // overhang into neighboring cells.
    void place(const std::string& block, Coord cell, Coord flush = {0, 0, 0, 0}) {
        Coord base = sub(add(scale8(cell), flush), atlas_.cube_anchor(block));
        append(atlas_.block(block), base);
        annots_.push_back({cell, block});
    }

    void plain(Coord cell) {
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y)
                for (int z = 0; z < 8; ++z)
                    cells_.push_back(add(scale8(cell), Coord{x, y, z, 0}));
        annots_.push_back({cell, "K"});
    }

    // Only the cells of `block` with z >= zmin, placed relative to 8*cell
    // (used for the p=1 selector corner carrying z plus the Z bump).
    void place_above(const std::string& block, int zmin, Coord cell, const std::string& label) {
        Coord base = sub(scale8(cell), atlas_.cube_anchor(block));
        for (const auto& c : atlas_.block(block).cells())
            if (c[2] >= zmin) cells_.push_back(add(c, base));
        annots_.push_back({cell, label});
    }

    BuiltTile finish(std::string name) {
        VoxelSet raw(3, std::move(cells_));  // throws on any overlap
        BuiltTile out;
        out.name = std::move(name);
        out.origin = bbox_min(raw);
        out.vox = canonicalize(raw);
        out.annotations = std::move(annots_);
        return out;
    }

private:
    static Coord scale8(Coord c) {
        for (auto& v : c) v *= 8;
        return c;
    }
    void append(const VoxelSet& s, const Coord& base) {
        for (const auto& c : s.cells()) cells_.push_back(add(c, base));
    }
    const Atlas3& atlas_;
    std::vector<Coord> cells_;
    std::vector<LabeledCell> annots_;
};

bool in_window(int i, int t, int w) {
    return (i >= 1 && i <= t) || (i >= w - 1 - t && i <= w - 2);
}

BuiltTile build_encoder(const WangSet& set, const Atlas3& atlas, int t, int we, int p) {
    TileBuilder b(atlas);
    for (int l = 0; l < p; ++l) {
        const WangTile& wt = set.tiles[std::size_t(l)];
        auto wb = encode_color(wt.w, t), nb = encode_color(wt.n, t);
        auto sb = encode_color(wt.s, t), eb = encode_color(wt.e, t);
        for (int j = 0; j < we; ++j) {
            for (int i = 0; i < we; ++i) {
                Coord cell{i, j, l, 0};
                if (j == we - 1) {  // north color row: west bits then north bits
                    int bit = i < t ? wb[std::size_t(i)]
                                    : (i >= t + 2 ? nb[std::size_t(i - t - 2)] : -1);
                    if (bit < 0) b.plain(cell);
                    else b.place(bit ? "c-" : "c", cell);  // c- leaves its slab northward
                } else if (j == 0) {  // south color row: south bits then east bits
                    int bit = i < t ? sb[std::size_t(i)]
                                    : (i >= t + 2 ? eb[std::size_t(i - t - 2)] : -1);
                    if (bit < 0) b.plain(cell);
                    else if (bit) b.place("d", cell);
                    else b.place("d-", cell, {0, 1, 0, 0});  // flush north, slab southward
                } else if (i == 0 && j == 2 * t) {
                    b.place("A", cell);  // bump west, into the selector's a
                } else if (i == we - 1 && j == 2 * t) {
                    b.place("B", cell);  // bump east, into the selector's b
                } else {
                    b.plain(cell);
                }
            }
        }
    }
    return b.finish("encoder");
}

BuiltTile build_selector(const Atlas3& atlas, int t, int w, int p) {
    TileBuilder b(atlas);
    for (int k = 0; k < p; ++k) {
        const bool top = k == p - 1;
        for (int j = 0; j < w; ++j) {
            for (int i = 0; i < w; ++i) {
                if (i != 0 && i != w - 1 && j != 0 && j != w - 1) continue;  // hole
                Coord cell{i, j, k, 0};
                if (i == 0 && j == w - 3) { b.place("a", cell); continue; }
                if (i == w - 1 && j == w - 3) { b.place("b", cell); continue; }
                if (k == 0 && i == 0 && j == 0) { b.place("x", cell); continue; }
                if (k == 0 && i == w - 1 && j == 0) { b.place("X", cell); continue; }
                if (k == 0 && i == w / 2 && j == 0) { b.place("y", cell); continue; }
                if (k == 0 && i == 0 && j == w - 1) { b.place("Y", cell); continue; }
                if (i == w - 1 && j == w - 1) {
                    // vertical chain: z at the bottom, Z at the top, the
                    // single-layer case carries z plus Z's upward bump
                    if (p == 1) {
                        b.place("z", cell);
                        b.place_above("Z", 8, cell, "Z");
                    } else if (k == 0) {
                        b.place("z", cell);
                    } else if (top) {
                        b.place("Z", cell);
                    } else {
                        b.plain(cell);
                    }
                    continue;
                }
                if ((j == 0 || j == w - 1) && in_window(i, t, w)) {
                    if (top) continue;  // vacant window column
                    b.place(j == 0 ? "c" : "d", cell);  // wall, dent toward the hole
                    continue;
                }
                b.plain(cell);
            }
        }
    }
    return b.finish("selector");
}

BuiltTile build_linker(const Atlas3& atlas) {
    TileBuilder b(atlas);
    b.place("C", {0, 0, 0, 0});   // bump south
    b.place("D+", {0, 1, 0, 0});  // 9-row base continues north, bump north
    return b.finish("linker");
}

BuiltTile atlas_tile(const Atlas3& atlas, const std::string& block, std::string name) {
    BuiltTile out;
    out.name = std::move(name);
    out.vox = atlas.block(block);
    out.origin = {0, 0, 0, 0};
    out.annotations = {{{0, 0, 0, 0}, block}};
    return out;
}

}  // namespace

std::vector<VoxelSet> Reduction3::tiles() const {
    return {encoder.vox, selector.vox, linker.vox, filler_f.vox, filler_fp.vox};
}

const BuiltTile& Reduction3::tile(std::size_t i) const {
    const BuiltTile* t[] = {&encoder, &selector, &linker, &filler_f, &filler_fp};
    if (i >= 5) throw Error("tile index out of range");
    return *t[i];
}

Reduction3 build_reduction3(const WangSet& set, const Atlas3& atlas) {
    set.validate();
    Reduction3 r;
    r.wang = set;
    r.tbits = set.color_bits();
    r.p = int(set.tiles.size());
    r.we = 2 * r.tbits + 2;
    r.w = 2 * r.tbits + 4;
    r.encoder = build_encoder(set, atlas, r.tbits, r.we, r.p);
    r.selector = build_selector(atlas, r.tbits, r.w, r.p);
    r.linker = build_linker(atlas);
    r.filler_f = atlas_tile(atlas, "F", "filler-F");
    r.filler_fp = atlas_tile(atlas, "F+", "filler-F+");
    return r;
}

TorusShape minimal_torus(int h, int v) {
    if (h < 1 || v < 1) throw Error("periods must be positive");
    TorusShape s;
    s.ncols = std::lcm(h, v);
    // rows come in pairs (the lattice shears by half a selector width per
    // row); closure needs v | nrows/2 and h | 3*nrows/2
    for (int n = 2;; n += 2) {
        if ((n / 2) % v == 0 && (3 * n / 2) % h == 0) {
            s.nrows = n;
            break;
        }
    }
    return s;
}

Witness assemble_witness_3d(const Reduction3& red, const WangTiling& wt,
                            std::uint64_t node_budget) {
    std::string why;
    if (!verify_tiling(red.wang, wt)) throw Error("invalid Wang tiling for witness assembly");
    TorusShape shape = minimal_torus(wt.h, wt.v);
    const int t = red.tbits, w = red.w, p = red.p;
    Region reg{Region::Kind::Torus, 3, {8 * w * shape.ncols, 8 * w * shape.nrows, 8 * p, 0}};

    CoverProblem prob{reg, red.tiles()};
    SolveOptions opt;
    opt.node_budget = node_budget;
    opt.allowed = {int(Reduction3::kLinker), int(Reduction3::kF), int(Reduction3::kFp)};
    for (int n = 0; n < shape.nrows; ++n) {
        for (int m = 0; m < shape.ncols; ++m) {
            Coord anchor{8 * (m * w - n * (t + 2)), 8 * n * w, 0, 0};
            opt.fixed.push_back(
                {int(Reduction3::kSelector), wrap(add(anchor, red.selector.origin), reg)});
            int tile = wt.at(m - n, m);  // Wang coords of this well
            int s = ((p - 1 - tile) % p + p) % p;  // vertical phase: layer `tile` on top
            Coord enc = add(anchor, Coord{8, 8, 8 * s, 0});
            opt.fixed.push_back({int(Reduction3::kEncoder), wrap(add(enc, red.encoder.origin), reg)});
        }
    }
    SolveResult res = solve(prob, opt);
    if (res.status != SolveStatus::Solved)
        throw Error("witness completion failed (status " +
                    std::to_string(int(res.status)) + ", nodes " + std::to_string(res.nodes) + ")");
    Witness wit{reg, prob.tiles, res.placements};
    if (!verify_witness(reg, wit.tiles, wit.placements, &why))
        throw Error("assembled witness failed verification: " + why);
    return wit;
}

}  // namespace tf
