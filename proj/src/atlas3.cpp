#include "tileforge/atlas3.hpp"

#include <algorithm>

#include <json.hpp>

#include "tileforge/io.hpp"

namespace tf {

using nlohmann::json;

VoxelSet rotate_block(const VoxelSet& s, Rot3 r) {
    if (s.dim() != 3) throw Error("rotate_block expects a 3D set");
    std::vector<Coord> out;
    out.reserve(s.size());
    for (const auto& c : s.cells()) {
        Coord n{0, 0, 0, 0};
        switch (r) {
            case Rot3::Z90CW:     n = {c[1], -c[0], c[2], 0}; break;
            case Rot3::Z90CCW:    n = {-c[1], c[0], c[2], 0}; break;
            case Rot3::Z180:      n = {-c[0], -c[1], c[2], 0}; break;
            case Rot3::YWestDown: n = {-c[2], c[1], c[0], 0}; break;
        }
        out.push_back(n);
    }
    return canonicalize(VoxelSet(3, std::move(out)));
}

bool check_complement(const VoxelSet& dent, const VoxelSet& bump, const Coord& offset,
                      const Coord& extents) {
    VoxelSet moved = translate(bump, offset);
    for (const auto& c : moved.cells())
        if (dent.contains(c)) return false;
    std::vector<Coord> all(dent.cells());
    all.insert(all.end(), moved.cells().begin(), moved.cells().end());
    return is_box(canonicalize(VoxelSet(3, std::move(all))), extents);
}

Atlas3 Atlas3::load(const std::filesystem::path& dir) {
    json m = json::parse(read_text_file(dir / "manifest.json"));
    Atlas3 a;
    for (auto& [name, info] : m.at("blocks").items()) {
        std::string raw = read_text_file(dir / info.at("file").get<std::string>());
        if (sha256_hex(raw) != info.at("sha256").get<std::string>())
            throw Error("atlas checksum mismatch for block " + name);
        VoxelSet s = read_voxels_file(dir / info.at("file").get<std::string>());
        if (s != canonicalize(s)) throw Error("block " + name + " not canonical");
        if (s.size() != info.at("cells").get<std::size_t>())
            throw Error("block " + name + " cell count mismatch");
        Coord ext = bbox_extents(s);
        auto bb = info.at("bbox").get<std::vector<int>>();
        for (int i = 0; i < 3; ++i)
            if (ext[i] != bb[std::size_t(i)]) throw Error("block " + name + " bbox mismatch");
        auto an = info.at("cube_anchor").get<std::vector<int>>();
        a.anchors_[name] = {an[0], an[1], an[2], 0};
        a.blocks_.emplace(name, std::move(s));
    }
    for (const auto& c : m.at("complements")) {
        ComplementSpec spec;
        spec.dent = c.at("dent").get<std::string>();
        spec.bump = c.at("bump").get<std::string>();
        auto off = c.at("offset").get<std::vector<int>>();
        auto ext = c.at("extents").get<std::vector<int>>();
        spec.offset = {off[0], off[1], off[2], 0};
        spec.extents = {ext[0], ext[1], ext[2], 0};
        a.complements_.push_back(spec);
    }
    if (a.blocks_.size() != 18) throw Error("atlas expects 18 blocks");
    return a;
}

const VoxelSet& Atlas3::block(const std::string& name) const {
    auto it = blocks_.find(name);
    if (it == blocks_.end()) throw Error("no block named '" + name + "'");
    return it->second;
}

Coord Atlas3::cube_anchor(const std::string& name) const {
    auto it = anchors_.find(name);
    if (it == anchors_.end()) throw Error("no block named '" + name + "'");
    return it->second;
}

std::vector<std::string> Atlas3::names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : blocks_) out.push_back(n);
    return out;
}

void Atlas3::validate() const {
    for (const auto& [name, s] : blocks_)
        if (!is_connected(s)) throw Error("block " + name + " is disconnected");
    static const struct { const char *out, *in; Rot3 rot; } idents[] = {
        {"d", "c", Rot3::Z180},    {"d-", "c-", Rot3::Z180},
        {"a", "c", Rot3::Z90CW},   {"b", "c", Rot3::Z90CCW},
        {"A", "C", Rot3::Z90CW},   {"B", "C", Rot3::Z90CCW},
        {"y", "x", Rot3::Z90CCW},  {"z", "x", Rot3::YWestDown},
    };
    for (const auto& id : idents)
        if (block(id.out) != rotate_block(block(id.in), id.rot))
            throw Error(std::string("rotation identity broken for block ") + id.out);
    for (const auto& c : complements_)
        if (!check_complement(block(c.dent), block(c.bump), c.offset, c.extents))
            throw Error("complement check failed for " + c.dent + "/" + c.bump);
}

std::vector<BoxFit> match_exclusivity(const Atlas3& atlas) {
    static const char* bumps[] = {"C", "D+", "A", "B", "X", "Y", "Z"};
    static const char* dents[] = {"c", "c-", "d", "d-", "a", "b", "x", "y", "z"};
    std::vector<BoxFit> out;
    for (const char* bn : bumps) {
        const VoxelSet& bump = atlas.block(bn);
        Coord bext = bbox_extents(bump);
        for (const char* dn : dents) {
            const VoxelSet& dent = atlas.block(dn);
            Coord dext = bbox_extents(dent);
            const std::uint64_t want = dent.size() + bump.size();
            BoxFit fit{bn, dn, {}};
            Coord o{0, 0, 0, 0};
            for (o[0] = -bext[0] - 2; o[0] <= dext[0] + 2; ++o[0])
                for (o[1] = -bext[1] - 2; o[1] <= dext[1] + 2; ++o[1])
                    for (o[2] = -bext[2] - 2; o[2] <= dext[2] + 2; ++o[2]) {
                        // cheap reject: combined bbox volume must equal the
                        // combined cell count
                        std::uint64_t vol = 1;
                        Coord ext{0, 0, 0, 0};
                        for (int i = 0; i < 3; ++i) {
                            int lo = std::min(0, o[i]);
                            int hi = std::max(dext[i], o[i] + bext[i]);
                            ext[i] = hi - lo;
                            vol *= std::uint64_t(ext[i]);
                        }
                        if (vol != want) continue;
                        if (check_complement(dent, bump, o, ext)) fit.offsets.push_back(o);
                    }
            if (!fit.offsets.empty()) out.push_back(std::move(fit));
        }
    }
    return out;
}

}  // namespace tf
