#include "tileforge/wang.hpp"

#include <json.hpp>

#include "tileforge/io.hpp"

namespace tf {

using nlohmann::json;

int WangSet::color_bits() const {
    int t = 1;
    while ((1 << t) < q) ++t;
    return t;
}

void WangSet::validate() const {
    if (q < 1) throw Error("Wang set needs at least one color");
    if (tiles.empty()) throw Error("Wang set needs at least one tile");
    if (!labels.empty() && labels.size() != tiles.size())
        throw Error("label count does not match tile count");
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        const auto& t = tiles[i];
        for (int c : {t.n, t.e, t.s, t.w})
            if (c < 0 || c >= q)
                throw Error("tile " + std::to_string(i) + " uses color outside [0," +
                            std::to_string(q) + ")");
    }
}

std::vector<int> encode_color(int color, int bits) {
    if (bits < 1 || color < 0 || color >= (1 << bits)) throw Error("color out of range");
    std::vector<int> out(std::size_t(bits), 0);
    for (int i = 0; i < bits; ++i) out[std::size_t(i)] = (color >> (bits - 1 - i)) & 1;
    return out;
}

int WangTiling::at(long x, long y) const {
    long cx = x % h, cy = y % v;
    if (cx < 0) cx += h;
    if (cy < 0) cy += v;
    return grid[std::size_t(cy)][std::size_t(cx)];
}

bool verify_tiling(const WangSet& set, const WangTiling& t, std::string* why) {
    set.validate();
    if (t.h < 1 || t.v < 1 || int(t.grid.size()) != t.v) {
        if (why) *why = "malformed grid";
        return false;
    }
    for (const auto& row : t.grid) {
        if (int(row.size()) != t.h) {
            if (why) *why = "malformed grid row";
            return false;
        }
        for (int i : row)
            if (i < 0 || i >= int(set.tiles.size())) {
                if (why) *why = "tile index out of range";
                return false;
            }
    }
    for (int y = 0; y < t.v; ++y) {
        for (int x = 0; x < t.h; ++x) {
            const auto& here = set.tiles[std::size_t(t.at(x, y))];
            const auto& east = set.tiles[std::size_t(t.at(x + 1, y))];
            const auto& north = set.tiles[std::size_t(t.at(x, y + 1))];
            if (here.e != east.w) {
                if (why)
                    *why = "east/west mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")";
                return false;
            }
            if (here.n != north.s) {
                if (why)
                    *why = "north/south mismatch at (" + std::to_string(x) + "," + std::to_string(y) + ")";
                return false;
            }
        }
    }
    return true;
}

std::optional<WangTiling> find_periodic_tiling(const WangSet& set, int hmax, int vmax) {
    set.validate();
    for (int h = 1; h <= hmax; ++h) {
        for (int v = 1; v <= vmax; ++v) {
            WangTiling t;
            t.h = h;
            t.v = v;
            t.grid.assign(std::size_t(v), std::vector<int>(std::size_t(h), 0));
            // Backtrack over cells in row-major order; edges toward
            // already-assigned neighbors (and wraparound once a row/column
            // is complete) are checked as we go.
            const int p = int(set.tiles.size());
            std::vector<int> cur(std::size_t(h) * std::size_t(v), -1);
            auto ok = [&](int idx) {
                int x = idx % h, y = idx / h;
                const auto& me = set.tiles[std::size_t(cur[std::size_t(idx)])];
                auto tile_at = [&](int cx, int cy) -> const WangTile* {
                    cx = (cx % h + h) % h;
                    cy = (cy % v + v) % v;
                    int j = cy * h + cx;
                    return cur[std::size_t(j)] < 0 ? nullptr : &set.tiles[std::size_t(cur[std::size_t(j)])];
                };
                if (auto* wv = tile_at(x - 1, y); wv && wv->e != me.w) return false;
                if (auto* ev = tile_at(x + 1, y); ev && ev->w != me.e) return false;
                if (auto* sv = tile_at(x, y - 1); sv && sv->n != me.s) return false;
                if (auto* nv = tile_at(x, y + 1); nv && nv->s != me.n) return false;
                return true;
            };
            int idx = 0;
            const int total = h * v;
            while (idx >= 0) {
                if (idx == total) {
                    for (int y = 0; y < v; ++y)
                        for (int x = 0; x < h; ++x)
                            t.grid[std::size_t(y)][std::size_t(x)] = cur[std::size_t(y * h + x)];
                    return t;
                }
                int& c = cur[std::size_t(idx)];
                ++c;
                while (c < p && !ok(idx)) ++c;
                if (c == p) {
                    c = -1;
                    --idx;
                } else {
                    ++idx;
                }
            }
        }
    }
    return std::nullopt;
}

std::string wang_to_json(const WangSet& set) {
    json j;
    j["q"] = set.q;
    j["tiles"] = json::array();
    for (const auto& t : set.tiles)
        j["tiles"].push_back({{"n", t.n}, {"e", t.e}, {"s", t.s}, {"w", t.w}});
    if (!set.labels.empty()) j["labels"] = set.labels;
    return j.dump(1) + "\n";
}

WangSet wang_from_json(const std::string& text) {
    json j = json::parse(text);
    WangSet s;
    s.q = j.at("q").get<int>();
    for (const auto& t : j.at("tiles"))
        s.tiles.push_back({t.at("n").get<int>(), t.at("e").get<int>(), t.at("s").get<int>(),
                           t.at("w").get<int>()});
    if (j.contains("labels")) s.labels = j["labels"].get<std::vector<std::string>>();
    s.validate();
    return s;
}

WangSet read_wang_file(const std::filesystem::path& p) {
    return wang_from_json(read_text_file(p));
}

std::string tiling_to_json(const WangTiling& t) {
    json j;
    j["h"] = t.h;
    j["v"] = t.v;
    j["grid"] = t.grid;
    return j.dump(1) + "\n";
}

WangTiling tiling_from_json(const std::string& text) {
    json j = json::parse(text);
    WangTiling t;
    t.h = j.at("h").get<int>();
    t.v = j.at("v").get<int>();
    t.grid = j.at("grid").get<std::vector<std::vector<int>>>();
    if (t.h < 1 || t.v < 1 || int(t.grid.size()) != t.v)
        throw Error("malformed tiling grid");
    for (const auto& row : t.grid)
        if (int(row.size()) != t.h) throw Error("malformed tiling grid row");
    return t;
}

WangTiling read_tiling_file(const std::filesystem::path& p) {
    return tiling_from_json(read_text_file(p));
}

}  // namespace tf
