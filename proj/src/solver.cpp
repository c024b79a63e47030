#include "tileforge/solver.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace tf {

namespace {

// Coordinate trie over a cell set: level d holds the sorted distinct
// values of axis d, with one child per value.  Lets us find the lex-min
// wrapped cell of a translated copy without touching every cell.
struct Trie {
    std::vector<int> keys;
    std::vector<Trie> kids;
};

Trie build_trie(const std::vector<Coord>& cells, std::size_t lo, std::size_t hi, int axis,
                int dim) {
    Trie t;
    std::size_t i = lo;
    while (i < hi) {
        std::size_t j = i;
        while (j < hi && cells[j][axis] == cells[i][axis]) ++j;
        t.keys.push_back(cells[i][axis]);
        if (axis + 1 < dim) t.kids.push_back(build_trie(cells, i, j, axis + 1, dim));
        i = j;
    }
    return t;
}

struct TileData {
    std::vector<Coord> cells;
    Coord ext{};
    bool may_self_wrap = false;  // some bbox extent exceeds a torus extent
    Trie trie;
    std::vector<int> gx;  // torus only: min wrapped x over cells, per x-offset
};

struct Ctx {
    Region region;
    bool torus = false;
    std::uint64_t vol = 0;
    std::vector<TileData> tiles;

    // cells of `tile` placed at `offset` as linear indices; false if a box
    // placement leaves the region or a torus placement self-overlaps
    bool cell_indices(int tile, const Coord& offset, std::vector<std::uint32_t>& out) const {
        const TileData& td = tiles[std::size_t(tile)];
        out.clear();
        for (const auto& w : td.cells) {
            Coord c = add(w, offset);
            if (torus) {
                for (int i = 0; i < region.dim; ++i) {
                    c[i] %= region.extents[i];
                    if (c[i] < 0) c[i] += region.extents[i];
                }
            } else {
                for (int i = 0; i < region.dim; ++i)
                    if (c[i] < 0 || c[i] >= region.extents[i]) return false;
            }
            out.push_back(std::uint32_t(linear_index(c, region)));
        }
        if (torus && td.may_self_wrap) {
            std::vector<std::uint32_t> tmp(out);
            std::sort(tmp.begin(), tmp.end());
            if (std::adjacent_find(tmp.begin(), tmp.end()) != tmp.end()) return false;
        }
        return true;
    }
};

Ctx make_ctx(const CoverProblem& p) {
    p.region.validate();
    Ctx ctx;
    ctx.region = p.region;
    ctx.torus = p.region.kind == Region::Kind::Torus;
    ctx.vol = p.region.volume();
    for (const auto& t : p.tiles) {
        if (t.dim() != p.region.dim) throw Error("tile dimension does not match region");
        if (t.empty()) throw Error("empty tile");
        if (canonicalize(t) != t) throw Error("tiles must be canonical");
        TileData td;
        td.cells = t.cells();
        td.ext = bbox_extents(t);
        for (int i = 0; i < p.region.dim; ++i)
            if (td.ext[i] > p.region.extents[i]) td.may_self_wrap = true;
        td.trie = build_trie(td.cells, 0, td.cells.size(), 0, p.region.dim);
        if (ctx.torus) {
            const int E = p.region.extents[0];
            td.gx.assign(std::size_t(E), INT_MAX);
            for (int o = 0; o < E; ++o)
                for (int k : td.trie.keys)
                    td.gx[std::size_t(o)] = std::min(td.gx[std::size_t(o)], (k + o) % E);
        }
        ctx.tiles.push_back(std::move(td));
    }
    return ctx;
}

}  // namespace

std::vector<Placement> enumerate_placements(const CoverProblem& p) {
    Ctx ctx = make_ctx(p);
    std::vector<Placement> out;
    std::vector<std::uint32_t> scratch;
    for (int ti = 0; ti < int(p.tiles.size()); ++ti) {
        const TileData& td = ctx.tiles[std::size_t(ti)];
        Coord hi{1, 1, 1, 1};
        bool fits = true;
        for (int i = 0; i < p.region.dim; ++i) {
            if (ctx.torus) {
                hi[i] = p.region.extents[i];
            } else {
                hi[i] = p.region.extents[i] - td.ext[i] + 1;
                if (hi[i] <= 0) fits = false;
            }
        }
        if (!fits) continue;
        Coord o{0, 0, 0, 0};
        for (o[0] = 0; o[0] < hi[0]; ++o[0])
            for (o[1] = 0; o[1] < hi[1]; ++o[1])
                for (o[2] = 0; o[2] < hi[2]; ++o[2])
                    for (o[3] = 0; o[3] < hi[3]; ++o[3]) {
                        if (td.may_self_wrap && !ctx.cell_indices(ti, o, scratch)) continue;
                        out.push_back({ti, o});
                    }
    }
    return out;
}

namespace {

enum class Search { Found, Exhausted, Aborted };

// ---- matrix mode: explicit placement lists, fewest-candidates cell first

struct MatrixSearch {
    const Ctx& ctx;
    std::uint64_t budget;
    std::atomic<std::uint64_t>& nodes;
    std::vector<Placement> placements;               // allowed ones only
    std::vector<std::vector<std::uint32_t>> pcells;  // per placement
    std::vector<std::vector<std::uint32_t>> at;      // per cell: placement ids
    std::vector<char> covered;
    std::vector<std::uint32_t> chosen;

    Search run() {
        std::uint32_t best_cell = 0;
        std::size_t best_n = SIZE_MAX;
        std::vector<std::uint32_t> best_cands;
        std::vector<std::uint32_t> cands;
        bool any_uncovered = false;
        for (std::uint32_t cell = 0; cell < covered.size(); ++cell) {
            if (covered[cell]) continue;
            any_uncovered = true;
            cands.clear();
            for (std::uint32_t pi : at[cell]) {
                bool free = true;
                for (std::uint32_t c : pcells[pi])
                    if (covered[c]) { free = false; break; }
                if (free) cands.push_back(pi);
            }
            if (cands.size() < best_n) {
                best_n = cands.size();
                best_cell = cell;
                best_cands = cands;
                if (best_n == 0) break;
            }
        }
        if (!any_uncovered) return Search::Found;
        (void)best_cell;
        for (std::uint32_t pi : best_cands) {
            if (nodes.fetch_add(1) + 1 > budget) return Search::Aborted;
            for (std::uint32_t c : pcells[pi]) covered[c] = 1;
            chosen.push_back(pi);
            Search r = run();
            if (r != Search::Exhausted) return r;
            chosen.pop_back();
            for (std::uint32_t c : pcells[pi]) covered[c] = 0;
        }
        return Search::Exhausted;
    }
};

// ---- grid mode: occupancy array, first-empty-cell targeting

// A connected chunk of an allowed tile.  Closed empty components can only
// be covered by whole chunks (a connected run of tile cells cannot span
// two components), so component analysis works at chunk granularity.
struct Chunk {
    std::vector<Coord> cells;  // canonical: bbox min at origin, lex sorted
    Coord ext{};
    Trie trie;
};

// True iff the lex-min wrapped cell of the set translated by `off` equals
// `target`.  Walks the trie axis by axis, keeping every subtree that
// attains the wrapped minimum (several can, when the set exceeds a torus
// extent and values collide mod it).
bool lexmin_matches(const Trie& root, const Coord& off, const Coord& target, const Region& region,
                    std::vector<const Trie*>& cur, std::vector<const Trie*>& next) {
    cur.clear();
    cur.push_back(&root);
    for (int axis = 0; axis < region.dim; ++axis) {
        const int E = region.extents[axis];
        int o = off[axis] % E;
        if (o < 0) o += E;
        int best = INT_MAX;
        for (const Trie* n : cur)
            for (int k : n->keys) {
                int w = (k + o) % E;
                if (w < best) best = w;
            }
        if (best != target[axis]) return false;
        if (axis + 1 == region.dim) break;
        next.clear();
        for (const Trie* n : cur)
            for (std::size_t i = 0; i < n->keys.size(); ++i)
                if ((n->keys[i] + o) % E == best) next.push_back(&n->kids[i]);
        cur.swap(next);
    }
    return true;
}

struct GridSearch {
    const Ctx& ctx;
    std::uint64_t budget;
    std::atomic<std::uint64_t>& nodes;
    const std::vector<int>& allowed;
    std::vector<char> occ;
    std::vector<Placement> chosen;
    std::vector<std::uint32_t> scratch;
    const std::atomic<bool>* stop = nullptr;  // set by other threads on success
    // dead-hole pruning: a fully-enumerated empty component must have a
    // size expressible as a sum of allowed tile sizes
    const std::vector<char>* expressible = nullptr;
    std::vector<std::uint64_t> stamp;
    std::uint64_t flood_serial = 0;
    std::vector<std::uint32_t> bfs;

    std::vector<std::vector<std::uint32_t>> placed_cells;

    const std::vector<Chunk>* chunks = nullptr;
    std::map<std::vector<std::uint32_t>, char> pack_memo;
    // per-target viable placements (lex-min covers the target); occupancy
    // independent, so computed once per cell and reused across revisits
    std::vector<std::vector<Placement>> cand_cache;
    std::vector<char> cand_ready;
    std::vector<const Trie*> trie_cur, trie_next;

    // Single pass: compute each cell index, probe and mark immediately so
    // doomed placements exit at the first collision (incl. torus
    // self-overlap, which trips over its own fresh mark).
    bool try_place(int tile, const Coord& off) {
        const TileData& td = ctx.tiles[std::size_t(tile)];
        scratch.clear();
        for (const auto& w : td.cells) {
            Coord c = add(w, off);
            bool ok = true;
            for (int i = 0; i < ctx.region.dim; ++i) {
                if (ctx.torus) {
                    c[i] %= ctx.region.extents[i];
                    if (c[i] < 0) c[i] += ctx.region.extents[i];
                } else if (c[i] < 0 || c[i] >= ctx.region.extents[i]) {
                    ok = false;
                    break;
                }
            }
            std::uint32_t ci = ok ? std::uint32_t(linear_index(c, ctx.region)) : 0;
            if (!ok || occ[ci]) {
                for (std::uint32_t u : scratch) occ[u] = 0;
                return false;
            }
            occ[ci] = 1;
            scratch.push_back(ci);
        }
        chosen.push_back({tile, off});
        placed_cells.push_back(scratch);
        return true;
    }

    void unplace() {
        for (std::uint32_t c : placed_cells.back()) occ[c] = 0;
        placed_cells.pop_back();
        chosen.pop_back();
    }

    // Exact packing check for a closed component (sorted cell indices):
    // can disjoint chunk placements cover it exactly?  A probe budget keeps
    // the check cheap; running out means "assume packable" (no prune).
    bool pack_rec(const std::vector<std::uint32_t>& comp, std::vector<char>& used,
                  std::size_t from, std::uint64_t& probes) {
        while (from < comp.size() && used[from]) ++from;
        if (from == comp.size()) return true;
        Coord target = from_linear_index(comp[from], ctx.region);
        std::vector<std::size_t> marks;
        for (const Chunk& ch : *chunks) {
            if (ch.cells.size() > comp.size()) continue;
            const Coord cmin = ch.cells.front();
            for (const auto& u : ch.cells) {
                Coord off = sub(target, u);
                if (ctx.torus) {
                    for (int i = 0; i < ctx.region.dim; ++i) {
                        off[i] %= ctx.region.extents[i];
                        if (off[i] < 0) off[i] += ctx.region.extents[i];
                    }
                }
                // same lex-min argument as run(): cells of comp before
                // `from` are used, so a viable chunk covers comp[from] as
                // its own lex-min wrapped cell
                if (ctx.torus) {
                    if (!lexmin_matches(ch.trie, off, target, ctx.region, trie_cur, trie_next))
                        continue;
                } else if (u != cmin) {
                    continue;
                }
                if (++probes > 1000000) return true;
                marks.clear();
                bool fit = true;
                for (const auto& w : ch.cells) {
                    Coord c = add(w, off);
                    if (ctx.torus) {
                        for (int i = 0; i < ctx.region.dim; ++i) {
                            c[i] %= ctx.region.extents[i];
                            if (c[i] < 0) c[i] += ctx.region.extents[i];
                        }
                    } else {
                        for (int i = 0; i < ctx.region.dim; ++i)
                            if (c[i] < 0 || c[i] >= ctx.region.extents[i]) { fit = false; break; }
                        if (!fit) break;
                    }
                    std::uint32_t ci = std::uint32_t(linear_index(c, ctx.region));
                    auto pos = std::lower_bound(comp.begin(), comp.end(), ci);
                    if (pos == comp.end() || *pos != ci || used[std::size_t(pos - comp.begin())]) {
                        fit = false;
                        break;
                    }
                    used[std::size_t(pos - comp.begin())] = 1;
                    marks.push_back(std::size_t(pos - comp.begin()));
                }
                if (fit && pack_rec(comp, used, from + 1, probes)) return true;
                for (std::size_t li : marks) used[li] = 0;
            }
        }
        return false;
    }

    bool pack_ok(std::vector<std::uint32_t>& comp) {
        if (!chunks) return true;
        std::sort(comp.begin(), comp.end());
        auto it = pack_memo.find(comp);
        if (it != pack_memo.end()) return it->second != 0;
        std::vector<char> used(comp.size(), 0);
        std::uint64_t probes = 0;
        bool ok = pack_rec(comp, used, 0, probes);
        pack_memo.emplace(comp, char(ok));
        return ok;
    }

    // Empty components neighboring the last placement that can be fully
    // enumerated within the cap must have an expressible size.  Floods are
    // tagged with serials: touching a cell stamped by an earlier flood of
    // this check means we joined a component already known to exceed the
    // cap (completed components are closed and cannot be re-entered).
    bool holes_ok() {
        if (!expressible) return true;
        const std::size_t cap = expressible->size() - 1;
        if (stamp.empty()) stamp.assign(occ.size(), 0);
        const std::uint64_t first_flood = flood_serial;
        auto neighbors = [&](std::uint32_t ci, auto&& fn) {
            Coord c = from_linear_index(ci, ctx.region);
            for (int axis = 0; axis < ctx.region.dim; ++axis) {
                for (int step : {-1, 1}) {
                    Coord n = c;
                    n[axis] += step;
                    if (ctx.torus) {
                        if (n[axis] < 0) n[axis] += ctx.region.extents[axis];
                        if (n[axis] >= ctx.region.extents[axis]) n[axis] -= ctx.region.extents[axis];
                    } else if (n[axis] < 0 || n[axis] >= ctx.region.extents[axis]) {
                        continue;
                    }
                    fn(std::uint32_t(linear_index(n, ctx.region)));
                }
            }
        };
        for (std::uint32_t seed0 : placed_cells.back()) {
            bool bad = false;
            neighbors(seed0, [&](std::uint32_t seed) {
                if (bad || occ[seed] || stamp[seed] > first_flood) return;
                const std::uint64_t fid = ++flood_serial;
                bfs.clear();
                bfs.push_back(seed);
                stamp[seed] = fid;
                bool capped = false;
                for (std::size_t i = 0; i < bfs.size() && !capped; ++i) {
                    neighbors(bfs[i], [&](std::uint32_t n) {
                        if (capped || occ[n] || stamp[n] == fid) return;
                        if (stamp[n] > first_flood) {  // joined a capped flood
                            capped = true;
                            return;
                        }
                        stamp[n] = fid;
                        bfs.push_back(n);
                        if (bfs.size() > cap) capped = true;
                    });
                }
                if (!capped && (!(*expressible)[bfs.size()] || !pack_ok(bfs))) bad = true;
            });
            if (bad) return false;
        }
        return true;
    }

    // Every cell lex-before the target is occupied when the target is
    // chosen, so a viable placement covers the target as its own lex-min
    // cell.  Without wraparound that cell is off+tmin, so only u==tmin can
    // work; on a torus we test the wrapped lex-min exactly (cheap axis-0
    // table first, then the trie walk).
    const std::vector<Placement>& candidates(std::uint64_t from) {
        if (cand_ready.empty()) {
            cand_ready.assign(occ.size(), 0);
            cand_cache.resize(occ.size());
        }
        auto& list = cand_cache[from];
        if (cand_ready[from]) return list;
        cand_ready[from] = 1;
        Coord target = from_linear_index(from, ctx.region);
        for (int tile : allowed) {
            const TileData& td = ctx.tiles[std::size_t(tile)];
            const Coord tmin = td.cells.front();  // sorted, so the lex-min cell
            for (const auto& u : td.cells) {
                Coord off = sub(target, u);
                if (ctx.torus) {
                    for (int i = 0; i < ctx.region.dim; ++i) {
                        off[i] %= ctx.region.extents[i];
                        if (off[i] < 0) off[i] += ctx.region.extents[i];
                    }
                    if (td.gx[std::size_t(off[0])] != target[0]) continue;
                    if (!lexmin_matches(td.trie, off, target, ctx.region, trie_cur, trie_next))
                        continue;
                } else if (u != tmin) {
                    continue;  // box regions never wrap
                }
                list.push_back({tile, off});
            }
        }
        // distinct anchor cells can wrap to the same offset when the tile
        // exceeds a torus extent
        std::sort(list.begin(), list.end(), [](const Placement& a, const Placement& b) {
            return a.tile != b.tile ? a.tile < b.tile : a.offset < b.offset;
        });
        list.erase(std::unique(list.begin(), list.end(),
                               [](const Placement& a, const Placement& b) {
                                   return a.tile == b.tile && a.offset == b.offset;
                               }),
                   list.end());
        return list;
    }

    Search run(std::uint64_t from) {
        while (from < occ.size() && occ[from]) ++from;
        if (from == occ.size()) return Search::Found;
        if (stop && stop->load(std::memory_order_relaxed)) return Search::Aborted;
        for (const Placement& pl : candidates(from)) {
            if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget) return Search::Aborted;
            if (!try_place(pl.tile, pl.offset)) continue;
            if (!holes_ok()) {
                unplace();
                continue;
            }
            Search r = run(from + 1);
            if (r != Search::Exhausted) return r;
            unplace();
        }
        return Search::Exhausted;
    }
};

}  // namespace

std::string export_sat(const CoverProblem& p) {
    Ctx ctx = make_ctx(p);
    std::vector<Placement> placements = enumerate_placements(p);
    std::vector<std::vector<std::uint32_t>> at(ctx.vol);
    std::vector<std::uint32_t> idx;
    for (std::size_t pi = 0; pi < placements.size(); ++pi) {
        ctx.cell_indices(placements[pi].tile, placements[pi].offset, idx);
        for (std::uint32_t c : idx) at[c].push_back(std::uint32_t(pi));
    }
    std::set<std::pair<std::uint32_t, std::uint32_t>> amo;
    for (const auto& lst : at)
        for (std::size_t i = 0; i < lst.size(); ++i)
            for (std::size_t j = i + 1; j < lst.size(); ++j)
                amo.emplace(lst[i], lst[j]);
    std::ostringstream out;
    out << "c exact cover: variable i <-> placement i-1 (tile,offset), enumeration order\n";
    out << "p cnf " << placements.size() << " " << (ctx.vol + amo.size()) << "\n";
    for (const auto& lst : at) {
        for (std::uint32_t v : lst) out << (v + 1) << " ";
        out << "0\n";
    }
    for (const auto& [a, b] : amo) out << "-" << (a + 1) << " -" << (b + 1) << " 0\n";
    return out.str();
}

namespace {

SolveResult solve_ordered(const CoverProblem& p, const SolveOptions& opt) {
    Ctx ctx = make_ctx(p);
    SolveResult res;
    std::atomic<std::uint64_t> nodes{0};

    std::vector<int> allowed = opt.allowed;
    if (allowed.empty()) {
        allowed.resize(p.tiles.size());
        std::iota(allowed.begin(), allowed.end(), 0);
    }
    for (int t : allowed)
        if (t < 0 || t >= int(p.tiles.size())) throw Error("allowed tile index out of range");

    // apply fixed placements up front
    std::vector<char> occ(ctx.vol, 0);
    std::vector<std::uint32_t> idx;
    for (const auto& f : opt.fixed) {
        if (f.tile < 0 || f.tile >= int(p.tiles.size())) throw Error("fixed tile index out of range");
        if (!ctx.cell_indices(f.tile, f.offset, idx))
            throw Error("fixed placement does not fit the region");
        for (std::uint32_t c : idx) {
            if (occ[c]) throw Error("fixed placements overlap");
            occ[c] = 1;
        }
    }

    const bool small = ctx.vol <= 4096;
    if (small) {
        MatrixSearch ms{ctx, opt.node_budget, nodes, {}, {}, {}, {}, {}};
        for (const auto& pl : enumerate_placements(p)) {
            if (std::find(allowed.begin(), allowed.end(), pl.tile) == allowed.end()) continue;
            ctx.cell_indices(pl.tile, pl.offset, idx);
            ms.pcells.push_back(idx);
            ms.placements.push_back(pl);
        }
        ms.at.resize(ctx.vol);
        for (std::uint32_t pi = 0; pi < ms.placements.size(); ++pi)
            for (std::uint32_t c : ms.pcells[pi]) ms.at[c].push_back(pi);
        ms.covered.assign(occ.begin(), occ.end());
        Search r = ms.run();
        res.nodes = nodes.load();
        if (r == Search::Found) {
            res.status = SolveStatus::Solved;
            res.placements = opt.fixed;
            for (std::uint32_t pi : ms.chosen) res.placements.push_back(ms.placements[pi]);
        } else {
            res.status = r == Search::Aborted ? SolveStatus::Budget : SolveStatus::Unsolvable;
        }
        return res;
    }

    // connected chunks of the allowed tiles, deduplicated by shape
    std::vector<Chunk> chunks;
    {
        std::set<std::vector<Coord>> seen;
        for (int t : allowed) {
            const auto& cells = ctx.tiles[std::size_t(t)].cells;  // lex sorted
            std::vector<char> done(cells.size(), 0);
            auto find = [&](const Coord& c) {
                auto it = std::lower_bound(cells.begin(), cells.end(), c);
                return it != cells.end() && *it == c ? it - cells.begin() : -1;
            };
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (done[i]) continue;
                std::vector<std::size_t> comp{i};
                done[i] = 1;
                for (std::size_t k = 0; k < comp.size(); ++k)
                    for (int axis = 0; axis < ctx.region.dim; ++axis)
                        for (int step : {-1, 1}) {
                            Coord n = cells[comp[k]];
                            n[axis] += step;
                            auto j = find(n);
                            if (j >= 0 && !done[j]) {
                                done[j] = 1;
                                comp.push_back(std::size_t(j));
                            }
                        }
                std::vector<Coord> pc;
                for (std::size_t k : comp) pc.push_back(cells[k]);
                VoxelSet part = canonicalize(VoxelSet(ctx.region.dim, std::move(pc)));
                if (seen.insert(part.cells()).second)
                    chunks.push_back({part.cells(), bbox_extents(part),
                                      build_trie(part.cells(), 0, part.cells().size(), 0,
                                                 ctx.region.dim)});
            }
        }
    }

    // grid mode; on a fixed-free torus any cover can be translated so some
    // tile sits at the origin, so root branches are origin-anchored tiles
    // size-expressibility table for dead-hole pruning (chunk granularity)
    constexpr std::size_t kHoleCap = 1024;
    std::vector<char> expressible(kHoleCap + 1, 0);
    expressible[0] = 1;
    for (std::size_t s = 1; s <= kHoleCap; ++s)
        for (const Chunk& ch : chunks) {
            std::size_t ts = ch.cells.size();
            if (ts <= s && expressible[s - ts]) {
                expressible[s] = 1;
                break;
            }
        }

    if (!(ctx.torus && opt.fixed.empty())) {
        GridSearch gs{ctx, opt.node_budget, nodes, allowed, occ, {}, {}, nullptr, &expressible};
        gs.chunks = &chunks;
        Search r = gs.run(0);
        res.nodes = nodes.load();
        if (r == Search::Found) {
            res.status = SolveStatus::Solved;
            res.placements = opt.fixed;
            res.placements.insert(res.placements.end(), gs.chosen.begin(), gs.chosen.end());
        } else {
            res.status = r == Search::Aborted ? SolveStatus::Budget : SolveStatus::Unsolvable;
        }
        return res;
    }

    // fixed-free torus: origin-anchored root branches (see header)
    struct Root {
        int tile;
        Coord offset;
    };
    std::vector<Root> roots;
    for (int t : allowed) roots.push_back({t, Coord{0, 0, 0, 0}});

    int nthreads = std::max(1, opt.threads);
    nthreads = std::min<int>(nthreads, int(roots.size()) > 0 ? int(roots.size()) : 1);
    std::atomic<bool> found{false};
    std::atomic<bool> aborted{false};
    std::vector<Placement> solution;
    std::mutex sol_mx;

    auto worker = [&](int wid) {
        GridSearch gs{ctx, opt.node_budget, nodes, allowed, occ, {}, {}, nullptr, &expressible};
        gs.chunks = &chunks;
        if (nthreads > 1) gs.stop = &found;
        for (std::size_t ri = std::size_t(wid); ri < roots.size(); ri += std::size_t(nthreads)) {
            if (found.load()) return;
            if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > opt.node_budget) {
                aborted.store(true);
                return;
            }
            if (!gs.try_place(roots[ri].tile, roots[ri].offset)) continue;
            if (!gs.holes_ok()) {
                gs.unplace();
                continue;
            }
            Search r = gs.run(0);
            if (r == Search::Found) {
                std::lock_guard<std::mutex> lk(sol_mx);
                if (!found.exchange(true)) solution = gs.chosen;
                return;
            }
            if (r == Search::Aborted) {
                if (!found.load()) aborted.store(true);
                return;
            }
            gs.unplace();
        }
    };

    if (nthreads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
        for (auto& t : pool) t.join();
    }

    res.nodes = nodes.load();
    if (found.load()) {
        res.status = SolveStatus::Solved;
        res.placements = opt.fixed;
        res.placements.insert(res.placements.end(), solution.begin(), solution.end());
    } else if (aborted.load()) {
        res.status = SolveStatus::Budget;
    } else {
        res.status = SolveStatus::Unsolvable;
    }
    return res;
}

}  // namespace

SolveResult solve(const CoverProblem& p, const SolveOptions& opt) {
    // Relabel axes so larger extents vary slower in the fill order: the
    // frontier then closes short cycles of the region first, which
    // surfaces wraparound contradictions at shallow depth.  A pure
    // relabeling, undone on the returned placements.
    p.region.validate();
    std::array<int, 4> perm{0, 1, 2, 3};
    std::stable_sort(perm.begin(), perm.begin() + p.region.dim,
                     [&](int a, int b) { return p.region.extents[a] > p.region.extents[b]; });
    if (perm == std::array<int, 4>{0, 1, 2, 3}) return solve_ordered(p, opt);

    auto permute = [&](const Coord& c) {
        Coord out{0, 0, 0, 0};
        for (int i = 0; i < p.region.dim; ++i) out[i] = c[perm[i]];
        return out;
    };
    CoverProblem q;
    q.region = p.region;
    q.region.extents = permute(p.region.extents);
    for (const auto& t : p.tiles) {
        std::vector<Coord> cells;
        for (const auto& c : t.cells()) cells.push_back(permute(c));
        q.tiles.push_back(VoxelSet(t.dim(), std::move(cells)));
    }
    SolveOptions qopt = opt;
    for (auto& f : qopt.fixed) f.offset = permute(f.offset);
    SolveResult res = solve_ordered(q, qopt);
    for (auto& pl : res.placements) {
        Coord back{0, 0, 0, 0};
        for (int i = 0; i < p.region.dim; ++i) back[perm[i]] = pl.offset[i];
        pl.offset = back;
    }
    return res;
}

bool verify_witness(const Region& region, const std::vector<VoxelSet>& tiles,
                    const std::vector<Placement>& placements, std::string* why) {
    region.validate();
    std::vector<std::uint32_t> count(region.volume(), 0);
    for (std::size_t pi = 0; pi < placements.size(); ++pi) {
        const auto& pl = placements[pi];
        if (pl.tile < 0 || pl.tile >= int(tiles.size())) {
            if (why) *why = "placement " + std::to_string(pi) + ": tile index out of range";
            return false;
        }
        const VoxelSet& t = tiles[std::size_t(pl.tile)];
        if (t.dim() != region.dim) {
            if (why) *why = "tile dimension does not match region";
            return false;
        }
        for (const auto& w : t.cells()) {
            Coord c = add(w, pl.offset);
            if (region.kind == Region::Kind::Torus) {
                c = wrap(c, region);
            } else {
                for (int i = 0; i < region.dim; ++i)
                    if (c[i] < 0 || c[i] >= region.extents[i]) {
                        if (why)
                            *why = "placement " + std::to_string(pi) + " leaves the box at " +
                                   to_string(c, region.dim);
                        return false;
                    }
            }
            ++count[linear_index(c, region)];
        }
    }
    for (std::uint64_t i = 0; i < count.size(); ++i) {
        if (count[i] != 1) {
            if (why)
                *why = "cell " + to_string(from_linear_index(i, region), region.dim) +
                       (count[i] ? " covered " + std::to_string(count[i]) + " times" : " uncovered");
            return false;
        }
    }
    return true;
}

}  // namespace tf
