#include "tileforge/blocks4.hpp"

#include <algorithm>
#include <sstream>

namespace tf {

namespace {

VoxelSet box3(int lo, int hi) {
    std::vector<Coord> cells;
    for (int x = lo; x < hi; ++x)
        for (int y = lo; y < hi; ++y)
            for (int z = lo; z < hi; ++z) cells.push_back({x, y, z, 0});
    return VoxelSet(3, std::move(cells));
}

VoxelSet diff(const VoxelSet& a, const VoxelSet& b) {
    std::vector<Coord> cells;
    for (const auto& c : a.cells())
        if (!b.contains(c)) cells.push_back(c);
    return VoxelSet(3, std::move(cells));
}

VoxelSet merge(std::initializer_list<const VoxelSet*> parts) {
    std::vector<Coord> cells;
    for (const VoxelSet* p : parts) cells.insert(cells.end(), p->cells().begin(), p->cells().end());
    return VoxelSet(3, std::move(cells));  // throws on overlap
}

VoxelSet filter_axis(const VoxelSet& s, int axis, int value) {
    std::vector<Coord> cells;
    for (const auto& c : s.cells())
        if (c[std::size_t(axis)] == value) cells.push_back(c);
    return VoxelSet(3, std::move(cells));
}

}  // namespace

OnionPartition onion_partition() {
    OnionPartition o;
    o.K = box3(0, 8);
    o.T1 = diff(o.K, box3(1, 7));
    o.T2 = diff(box3(1, 7), box3(2, 6));
    o.T3 = diff(box3(2, 6), box3(3, 5));
    o.T4 = box3(3, 5);
    o.T4_upper = filter_axis(o.T4, 2, 4);
    o.T4_lower = filter_axis(o.T4, 2, 3);
    o.T4_north = filter_axis(o.T4, 1, 4);
    o.T4_south = filter_axis(o.T4, 1, 3);
    o.T4_east = filter_axis(o.T4, 0, 4);
    o.T4_west = filter_axis(o.T4, 0, 3);
    return o;
}

VoxelSet stack_frames(const std::vector<VoxelSet>& frames) {
    std::vector<Coord> cells;
    for (std::size_t t = 0; t < frames.size(); ++t)
        for (Coord c : frames[t].cells()) {
            c[3] = int(t);
            cells.push_back(c);
        }
    return VoxelSet(4, std::move(cells));
}

const VoxelSet& Atlas4::block(const std::string& name) const {
    auto it = blocks_.find(name);
    if (it == blocks_.end()) throw Error("unknown 4D block '" + name + "'");
    return it->second;
}

int Atlas4::frames(const std::string& name) const {
    return bbox_max(block(name))[3] + 1;  // all blocks occupy frame 0
}

Atlas4 build_atlas4() {
    OnionPartition o = onion_partition();
    VoxelSet J(3, {o.J});
    VoxelSet T4mJ = diff(o.T4, J);

    Atlas4 a;
    auto add = [&](const std::string& name, std::vector<VoxelSet> frames) {
        a.blocks_.emplace(name, stack_frames(frames));
        a.names_.push_back(name);
    };
    // Dent blocks: the full cube eroded shell by shell over the last three
    // frames; the oriented variants keep one core half in frames 2 and 3.
    auto dent = [&](const std::string& name, const VoxelSet* half) {
        if (!half) {
            add(name, {o.K, o.T1, merge({&o.T1, &o.T3}), merge({&o.T1, &o.T2, &o.T3})});
        } else {
            add(name, {o.K, o.T1, merge({&o.T1, &o.T3, half}),
                       merge({&o.T1, &o.T2, &o.T3, half})});
        }
    };
    // Bump partners: three growing frames carrying the complementary half,
    // then four full-cube frames.
    auto bump = [&](const std::string& name, const VoxelSet* half) {
        VoxelSet f0 = merge({&o.T2, &o.T3, &o.T4});
        VoxelSet f1 = half ? merge({&o.T2, half}) : merge({&o.T2, &o.T4});
        VoxelSet f2 = half ? *half : o.T4;
        add(name, {f0, f1, f2, o.K, o.K, o.K, o.K});
    };
    dent("c", nullptr);
    bump("C", nullptr);
    dent("a", &o.T4_lower);
    bump("A", &o.T4_upper);
    dent("b", &o.T4_upper);
    bump("B", &o.T4_lower);
    dent("x", &o.T4_south);
    bump("X", &o.T4_north);
    dent("y", &o.T4_north);
    bump("Y", &o.T4_south);
    dent("z", &o.T4_west);
    bump("Z", &o.T4_east);
    // Full functional hypercubes with both a bump (frames 0..2) and a dent
    // (frames 8..10): E keeps only the core corner cell J in its bump and
    // all of the core except J in its dent, S the other way around.  Each
    // therefore interlocks across slice boundaries only with its own kind.
    add("E", {merge({&o.T2, &o.T3, &o.T4}), merge({&o.T2, &J}), J, o.K, o.K, o.K, o.K, o.K, o.T1,
              merge({&o.T1, &o.T3, &T4mJ}), merge({&o.T1, &o.T2, &o.T3, &T4mJ})});
    add("S", {merge({&o.T2, &o.T3, &o.T4}), merge({&o.T2, &T4mJ}), T4mJ, o.K, o.K, o.K, o.K, o.K,
              o.T1, merge({&o.T1, &o.T3, &J}), merge({&o.T1, &o.T2, &o.T3, &J})});
    return a;
}

bool check_complement_4d(const Atlas4& atlas, const std::string& dent, const std::string& bump,
                         std::string* why) {
    try {
        VoxelSet whole =
            disjoint_union(atlas.block(dent), translate(atlas.block(bump), {0, 0, 0, 1}));
        if (!is_box(whole, {8, 8, 8, 8})) {
            if (why) *why = dent + " (+) " + bump + " leaves gaps";
            return false;
        }
        return true;
    } catch (const Error& e) {
        if (why) *why = e.what();
        return false;
    }
}

void Atlas4::validate() const {
    OnionPartition o = onion_partition();
    if (o.T1.size() != 296 || o.T2.size() != 152 || o.T3.size() != 56 || o.T4.size() != 8)
        throw Error("onion shell sizes wrong");

    const std::vector<std::pair<std::string, std::string>> partners = {
        {"c", "C"}, {"a", "A"}, {"b", "B"}, {"x", "X"}, {"y", "Y"}, {"z", "Z"}};
    for (const auto& [d, b] : partners)
        if (block(d).size() + block(b).size() != 4096)
            throw Error("pair " + d + "/" + b + " does not split 4096 cells");
    if (block("E").size() != 4096 || block("S").size() != 4096)
        throw Error("E/S must have 4096 cells");

    for (const auto& name : names_)
        if (!is_connected(block(name))) throw Error("block " + name + " is disconnected");

    // Exclusivity: a dent admits exactly its partner bump.
    std::string why;
    for (const auto& [d, bd] : partners)
        for (const auto& [x, b] : partners) {
            bool fits = check_complement_4d(*this, d, b, &why);
            if (fits != (bd == b))
                throw Error("complement " + d + "/" + b + (fits ? " unexpectedly fits"
                                                                : " fails: " + why));
        }

    // Slice interlock: E stacks on E and S on S eight frames apart, and the
    // dented tail frames 8..10 complete to full cubes; cross pairs clash.
    auto stacks = [&](const std::string& p, const std::string& q) {
        try {
            VoxelSet joint = disjoint_union(block(p), translate(block(q), {0, 0, 0, 8}));
            for (const auto& c : o.K.cells())
                for (int t = 8; t <= 10; ++t)
                    if (!joint.contains({c[0], c[1], c[2], t})) return false;
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    if (!stacks("E", "E") || !stacks("S", "S")) throw Error("E/S do not self-stack");
    if (stacks("E", "S") || stacks("S", "E")) throw Error("E/S must not cross-stack");
}

}  // namespace tf
