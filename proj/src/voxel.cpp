#include "tileforge/voxel.hpp"

#include <algorithm>

namespace tf {

int VoxelSet::check_dim(int dim) {
    if (dim < 2 || dim > 4) throw Error("dimension must be 2..4, got " + std::to_string(dim));
    return dim;
}

VoxelSet::VoxelSet(int dim, std::vector<Coord> cells) : dim_(check_dim(dim)), cells_(std::move(cells)) {
    for (auto& c : cells_)
        for (int i = dim_; i < 4; ++i)
            if (c[i] != 0) throw Error("nonzero coordinate beyond dimension " + std::to_string(dim_));
    std::sort(cells_.begin(), cells_.end());
    auto dup = std::adjacent_find(cells_.begin(), cells_.end());
    if (dup != cells_.end()) throw Error("duplicate cell " + to_string(*dup, dim_));
}

bool VoxelSet::contains(const Coord& c) const {
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

VoxelSet translate(const VoxelSet& s, const Coord& v) {
    for (int i = s.dim(); i < 4; ++i)
        if (v[i] != 0) throw Error("translation has nonzero coordinate beyond dimension");
    std::vector<Coord> out;
    out.reserve(s.size());
    for (const auto& c : s.cells()) out.push_back(add(c, v));
    return VoxelSet(s.dim(), std::move(out));  // order preserved by sort
}

Coord bbox_min(const VoxelSet& s) {
    if (s.empty()) throw Error("bbox of empty set");
    Coord m = s.cells().front();
    for (const auto& c : s.cells())
        for (int i = 0; i < 4; ++i) m[i] = std::min(m[i], c[i]);
    return m;
}

Coord bbox_max(const VoxelSet& s) {
    if (s.empty()) throw Error("bbox of empty set");
    Coord m = s.cells().front();
    for (const auto& c : s.cells())
        for (int i = 0; i < 4; ++i) m[i] = std::max(m[i], c[i]);
    return m;
}

Coord bbox_extents(const VoxelSet& s) {
    Coord lo = bbox_min(s), hi = bbox_max(s);
    Coord e{1, 1, 1, 1};
    for (int i = 0; i < s.dim(); ++i) e[i] = hi[i] - lo[i] + 1;
    for (int i = s.dim(); i < 4; ++i) e[i] = 1;
    return e;
}

VoxelSet canonicalize(const VoxelSet& s) {
    if (s.empty()) return s;
    Coord m = bbox_min(s);
    for (int i = 0; i < 4; ++i) m[i] = -m[i];
    return translate(s, m);
}

bool is_connected(const VoxelSet& s) {
    if (s.size() <= 1) return true;
    const auto& cs = s.cells();
    std::vector<char> seen(cs.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Coord c = cs[stack.back()];
        stack.pop_back();
        for (int axis = 0; axis < s.dim(); ++axis) {
            for (int step : {-1, 1}) {
                Coord n = c;
                n[axis] += step;
                auto it = std::lower_bound(cs.begin(), cs.end(), n);
                if (it == cs.end() || *it != n) continue;
                std::size_t j = std::size_t(it - cs.begin());
                if (!seen[j]) {
                    seen[j] = 1;
                    ++reached;
                    stack.push_back(j);
                }
            }
        }
    }
    return reached == cs.size();
}

VoxelSet disjoint_union(const VoxelSet& a, const VoxelSet& b) {
    if (a.dim() != b.dim()) throw Error("dimension mismatch in union");
    std::vector<Coord> out;
    out.reserve(a.size() + b.size());
    std::merge(a.cells().begin(), a.cells().end(), b.cells().begin(), b.cells().end(),
               std::back_inserter(out));
    auto dup = std::adjacent_find(out.begin(), out.end());
    if (dup != out.end()) throw Error("overlap at cell " + to_string(*dup, a.dim()));
    return VoxelSet(a.dim(), std::move(out));
}

bool is_box(const VoxelSet& s, const Coord& extents) {
    std::uint64_t vol = 1;
    for (int i = 0; i < s.dim(); ++i) {
        if (extents[i] <= 0) return false;
        vol *= std::uint64_t(extents[i]);
    }
    if (s.size() != vol) return false;
    if (s.empty()) return false;
    Coord lo = bbox_min(s), hi = bbox_max(s);
    for (int i = 0; i < s.dim(); ++i)
        if (hi[i] - lo[i] + 1 != extents[i]) return false;
    return true;  // right count inside the right bbox => full box
}

std::uint64_t Region::volume() const {
    validate();
    std::uint64_t v = 1;
    for (int i = 0; i < dim; ++i) v *= std::uint64_t(extents[i]);
    return v;
}

void Region::validate() const {
    VoxelSet::check_dim(dim);
    for (int i = 0; i < dim; ++i)
        if (extents[i] <= 0) throw Error("region extent must be positive");
    for (int i = dim; i < 4; ++i)
        if (extents[i] != 0) throw Error("region extent beyond dimension must be zero");
}

Coord wrap(Coord c, const Region& r) {
    for (int i = 0; i < r.dim; ++i) {
        if (r.kind == Region::Kind::Torus) {
            c[i] %= r.extents[i];
            if (c[i] < 0) c[i] += r.extents[i];
        } else if (c[i] < 0 || c[i] >= r.extents[i]) {
            throw Error("cell " + to_string(c, r.dim) + " outside box region");
        }
    }
    return c;
}

std::uint64_t linear_index(const Coord& c, const Region& r) {
    std::uint64_t idx = 0;
    for (int i = 0; i < r.dim; ++i) idx = idx * std::uint64_t(r.extents[i]) + std::uint64_t(c[i]);
    return idx;
}

Coord from_linear_index(std::uint64_t idx, const Region& r) {
    Coord c{0, 0, 0, 0};
    for (int i = r.dim - 1; i >= 0; --i) {
        c[i] = int(idx % std::uint64_t(r.extents[i]));
        idx /= std::uint64_t(r.extents[i]);
    }
    return c;
}

std::string to_string(const Coord& c, int dim) {
    std::string s = "(";
    for (int i = 0; i < dim; ++i) {
        if (i) s += ",";
        s += std::to_string(c[i]);
    }
    return s + ")";
}

}  // namespace tf
