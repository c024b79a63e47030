#include "tileforge/io.hpp"

#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

namespace tf {

using nlohmann::json;

VoxelSet read_voxels(std::istream& in, const std::string& what) {
    std::vector<Coord> cells;
    int dim = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        Coord c{0, 0, 0, 0};
        int n = 0;
        long v;
        while (ls >> v) {
            if (n == 4) throw Error(what + ":" + std::to_string(lineno) + ": too many coordinates");
            c[n++] = int(v);
        }
        if (!ls.eof()) throw Error(what + ":" + std::to_string(lineno) + ": bad token");
        if (n == 0) continue;
        if (dim == 0) dim = n;
        if (n != dim) throw Error(what + ":" + std::to_string(lineno) + ": inconsistent dimension");
        cells.push_back(c);
    }
    if (dim == 0) throw Error(what + ": no cells");
    return VoxelSet(dim, std::move(cells));
}

VoxelSet read_voxels_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open " + p.string());
    return read_voxels(in, p.string());
}

void write_voxels(std::ostream& out, const VoxelSet& s, const std::string& comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
    for (const auto& c : s.cells()) {
        for (int i = 0; i < s.dim(); ++i) out << (i ? " " : "") << c[i];
        out << "\n";
    }
}

void write_voxels_file(const std::filesystem::path& p, const VoxelSet& s,
                       const std::string& comment) {
    std::ofstream out(p);
    if (!out) throw Error("cannot write " + p.string());
    write_voxels(out, s, comment);
}

static json coord_to_json(const Coord& c, int dim) {
    json a = json::array();
    for (int i = 0; i < dim; ++i) a.push_back(c[i]);
    return a;
}

static Coord coord_from_json(const json& a, int dim) {
    if (!a.is_array() || int(a.size()) != dim) throw Error("expected " + std::to_string(dim) + "-coordinate");
    Coord c{0, 0, 0, 0};
    for (int i = 0; i < dim; ++i) c[i] = a[i].get<int>();
    return c;
}

std::string witness_to_json(const Witness& w) {
    json j;
    j["region"]["kind"] = w.region.kind == Region::Kind::Torus ? "torus" : "box";
    j["region"]["extents"] = coord_to_json(w.region.extents, w.region.dim);
    j["tiles"] = json::array();
    for (const auto& t : w.tiles) {
        json cells = json::array();
        for (const auto& c : t.cells()) cells.push_back(coord_to_json(c, t.dim()));
        j["tiles"].push_back(cells);
    }
    j["placements"] = json::array();
    for (const auto& p : w.placements)
        j["placements"].push_back({{"tile", p.tile}, {"offset", coord_to_json(p.offset, w.region.dim)}});
    return j.dump(1) + "\n";
}

Witness witness_from_json(const std::string& text) {
    json j = json::parse(text);
    Witness w;
    std::string kind = j.at("region").at("kind").get<std::string>();
    if (kind == "torus") w.region.kind = Region::Kind::Torus;
    else if (kind == "box") w.region.kind = Region::Kind::Box;
    else throw Error("unknown region kind '" + kind + "'");
    const auto& ext = j.at("region").at("extents");
    w.region.dim = VoxelSet::check_dim(int(ext.size()));
    w.region.extents = coord_from_json(ext, w.region.dim);
    w.region.validate();
    for (const auto& t : j.at("tiles")) {
        std::vector<Coord> cells;
        for (const auto& c : t) cells.push_back(coord_from_json(c, w.region.dim));
        w.tiles.emplace_back(w.region.dim, std::move(cells));
    }
    for (const auto& p : j.at("placements")) {
        Placement pl;
        pl.tile = p.at("tile").get<int>();
        if (pl.tile < 0 || pl.tile >= int(w.tiles.size())) throw Error("placement tile index out of range");
        pl.offset = coord_from_json(p.at("offset"), w.region.dim);
        w.placements.push_back(pl);
    }
    return w;
}

Witness read_witness_file(const std::filesystem::path& p) {
    return witness_from_json(read_text_file(p));
}

void write_witness_file(const std::filesystem::path& p, const Witness& w) {
    write_text_file(p, witness_to_json(w));
}

std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
        throw Error("sha256 failure");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xf];
    }
    return out;
}

}  // namespace tf
