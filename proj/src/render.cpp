#include "tileforge/render.hpp"

#include <algorithm>
#include <sstream>

namespace tf {

namespace {

struct GridView {
    Coord ext{};  // canonical extents (unused axes 1)
    const VoxelSet* s = nullptr;
    bool at(int x, int y, int z, int t) const { return s->contains({x, y, z, t}); }
};

}  // namespace

std::string render_level1_text(const VoxelSet& in) {
    VoxelSet s = canonicalize(in);
    Coord ext = s.empty() ? Coord{0, 0, 0, 0} : bbox_extents(s);
    std::ostringstream out;
    const int frames = s.dim() == 4 ? ext[3] : 1;
    const int layers = s.dim() >= 3 ? ext[2] : 1;
    for (int t = 0; t < frames; ++t) {
        if (s.dim() == 4) out << "frame " << (t + 1) << "\n";
        for (int z = 0; z < layers; ++z) {
            if (s.dim() >= 3) out << "layer " << (z + 1) << "\n";
            for (int y = ext[1] - 1; y >= 0; --y) {
                for (int x = 0; x < ext[0]; ++x) out << (s.contains({x, y, z, t}) ? '#' : '.');
                out << "\n";
            }
        }
    }
    return out.str();
}

std::vector<std::size_t> layer_cell_counts(const VoxelSet& in) {
    VoxelSet s = canonicalize(in);
    if (s.empty()) return {};
    if (s.dim() < 3) return {s.size()};
    Coord ext = bbox_extents(s);
    std::vector<std::size_t> counts(std::size_t(ext[2]), 0);
    for (const auto& c : s.cells()) ++counts[std::size_t(c[2])];
    return counts;
}

std::string render_level1_svg(const VoxelSet& in) {
    VoxelSet s = canonicalize(in);
    Coord ext = s.empty() ? Coord{1, 1, 1, 1} : bbox_extents(s);
    const int cell = 16, gap = 16;
    const int frames = s.dim() == 4 ? ext[3] : 1;
    const int layers = s.dim() >= 3 ? ext[2] : 1;
    const int pw = ext[0] * cell, ph = ext[1] * cell;
    const int width = layers * (pw + gap) - gap;
    const int height = frames * (ph + gap) - gap;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (int t = 0; t < frames; ++t) {
        for (int z = 0; z < layers; ++z) {
            int ox = z * (pw + gap), oy = t * (ph + gap);
            out << "<g>\n";
            for (const auto& c : s.cells()) {
                if (c[2] != z || c[3] != t) continue;
                out << "<rect x=\"" << (ox + c[0] * cell) << "\" y=\""
                    << (oy + (ext[1] - 1 - c[1]) * cell) << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"#9db4c0\" stroke=\"#253237\"/>\n";
            }
            out << "</g>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

namespace {

struct AnnotGrid {
    Coord lo{}, hi{};
    std::vector<std::vector<std::vector<std::string>>> label;  // [z][y][x]

    explicit AnnotGrid(const BuiltTile& t) {
        if (t.annotations.empty()) throw Error("tile '" + t.name + "' has no block annotations");
        lo = hi = t.annotations.front().cell;
        for (const auto& a : t.annotations)
            for (int i = 0; i < 3; ++i) {
                lo[i] = std::min(lo[i], a.cell[i]);
                hi[i] = std::max(hi[i], a.cell[i]);
            }
        label.assign(std::size_t(hi[2] - lo[2] + 1),
                     std::vector<std::vector<std::string>>(
                         std::size_t(hi[1] - lo[1] + 1),
                         std::vector<std::string>(std::size_t(hi[0] - lo[0] + 1))));
        for (const auto& a : t.annotations)
            label[std::size_t(a.cell[2] - lo[2])][std::size_t(a.cell[1] - lo[1])]
                 [std::size_t(a.cell[0] - lo[0])] = a.label;
    }
};

}  // namespace

std::string render_level2_text(const BuiltTile& t) {
    AnnotGrid g(t);
    std::size_t width = 1;
    for (const auto& a : t.annotations) width = std::max(width, a.label.size());
    std::ostringstream out;
    for (std::size_t z = 0; z < g.label.size(); ++z) {
        out << "layer " << (z + 1) << "\n";
        for (std::size_t y = g.label[z].size(); y-- > 0;) {
            std::string line;
            for (std::size_t x = 0; x < g.label[z][y].size(); ++x) {
                std::string cell = g.label[z][y][x].empty() ? "." : g.label[z][y][x];
                cell.resize(width, ' ');
                if (x) line += " ";
                line += cell;
            }
            while (!line.empty() && line.back() == ' ') line.pop_back();
            out << line << "\n";
        }
    }
    return out.str();
}

std::string render_level2_svg(const BuiltTile& t) {
    AnnotGrid g(t);
    const int cell = 48, gap = 24;
    const int nx = int(g.label[0][0].size()), ny = int(g.label[0].size());
    const int nz = int(g.label.size());
    const int pw = nx * cell, ph = ny * cell;
    const int width = nz * (pw + gap) - gap, height = ph;
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    for (int z = 0; z < nz; ++z) {
        int ox = z * (pw + gap);
        out << "<g>\n";
        for (int y = 0; y < ny; ++y) {
            for (int x = 0; x < nx; ++x) {
                const std::string& lbl = g.label[std::size_t(z)][std::size_t(y)][std::size_t(x)];
                if (lbl.empty()) continue;
                int sx = ox + x * cell, sy = (ny - 1 - y) * cell;
                out << "<rect x=\"" << sx << "\" y=\"" << sy << "\" width=\"" << cell
                    << "\" height=\"" << cell << "\" fill=\"#e0fbfc\" stroke=\"#253237\"/>\n";
                out << "<text x=\"" << (sx + cell / 2) << "\" y=\"" << (sy + cell / 2 + 4)
                    << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"monospace\">"
                    << lbl << "</text>\n";
            }
        }
        out << "</g>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace tf
