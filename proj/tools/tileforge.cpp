// Command-line front end: reductions, witnesses, solving, rendering and
// atlas audits.  Exit codes: 0 success/solved, 1 unsolvable or failed
// verification, 2 node budget exhausted, 3 bad input.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tileforge/atlas3.hpp"
#include "tileforge/blocks4.hpp"
#include "tileforge/io.hpp"
#include "tileforge/reduction3.hpp"
#include "tileforge/reduction4.hpp"
#include "tileforge/render.hpp"
#include "tileforge/solver.hpp"
#include "tileforge/wang.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tf;

namespace {

bool g_json = false;
std::string g_atlas = "data/atlas3";

void emit(const std::string& status, const json& data) {
    if (g_json) {
        json env{{"status", status}, {"data", data}};
        std::cout << env.dump(1) << "\n";
    }
}

int env_threads() {
    const char* v = std::getenv("TILEFORGE_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n > 0 ? n : 1;
}

Region parse_region(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) throw Error("region must be kind:extents");
    std::string kind = spec.substr(0, colon);
    Region r;
    if (kind == "box") r.kind = Region::Kind::Box;
    else if (kind == "torus") r.kind = Region::Kind::Torus;
    else throw Error("unknown region kind '" + kind + "'");
    std::vector<int> ext;
    std::string rest = spec.substr(colon + 1);
    for (std::size_t pos = 0; pos <= rest.size();) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        ext.push_back(std::stoi(rest.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (ext.size() < 2 || ext.size() > 4) throw Error("region needs 2..4 extents");
    r.dim = int(ext.size());
    for (std::size_t i = 0; i < ext.size(); ++i) r.extents[i] = ext[i];
    r.validate();
    return r;
}

json annotations_json(const BuiltTile& t) {
    json a = json::array();
    for (const auto& lc : t.annotations)
        a.push_back({{"cell", {lc.cell[0], lc.cell[1], lc.cell[2]}}, {"label", lc.label}});
    return a;
}

void write_tile_dir(const fs::path& dir, int dim, const std::string& wang_json,
                    const std::vector<const BuiltTile*>& tiles) {
    fs::create_directories(dir);
    json manifest;
    manifest["dim"] = dim;
    manifest["wang_sha256"] = sha256_hex(wang_json);
    manifest["tiles"] = json::array();
    for (const BuiltTile* t : tiles) {
        std::string file = t->name + ".vox";
        write_voxels_file(dir / file, t->vox, t->name);
        manifest["tiles"].push_back({{"name", t->name},
                                     {"file", file},
                                     {"cells", t->vox.size()},
                                     {"sha256", sha256_hex(read_text_file(dir / file))},
                                     {"annotations", annotations_json(*t)}});
    }
    write_text_file(dir / "manifest.json", manifest.dump(1) + "\n");
}

// Tiles of a directory written by `reduce` (manifest order), or all .vox
// files in name order.
std::vector<VoxelSet> load_tile_dir(const fs::path& dir) {
    std::vector<VoxelSet> tiles;
    if (fs::exists(dir / "manifest.json")) {
        json m = json::parse(read_text_file(dir / "manifest.json"));
        for (const auto& t : m.at("tiles"))
            tiles.push_back(read_voxels_file(dir / t.at("file").get<std::string>()));
        return tiles;
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".vox") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no .vox files in " + dir.string());
    for (const auto& f : files) tiles.push_back(read_voxels_file(f));
    return tiles;
}

int status_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return 0;
        case SolveStatus::Unsolvable: return 1;
        default: return 2;
    }
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::Unsolvable: return "unsolvable";
        default: return "budget";
    }
}

int cmd_reduce(int dim, const std::string& wang_path, const std::string& out_dir) {
    std::string wtext = read_text_file(wang_path);
    WangSet set = wang_from_json(wtext);
    if (dim == 3) {
        Reduction3 red = build_reduction3(set, Atlas3::load(g_atlas));
        write_tile_dir(out_dir, 3, wtext,
                       {&red.encoder, &red.selector, &red.linker, &red.filler_f, &red.filler_fp});
    } else {
        Reduction4 red = build_reduction4(set, build_atlas4());
        write_tile_dir(out_dir, 4, wtext, {&red.encoder, &red.selector, &red.linker, &red.filler});
    }
    emit("ok", {{"out", out_dir}, {"tiles", dim == 3 ? 5 : 4}});
    return 0;
}

int cmd_witness(int dim, const std::string& wang_path, const std::string& tiling_path,
                const std::string& out_path, std::uint64_t budget) {
    WangSet set = read_wang_file(wang_path);
    WangTiling wt = read_tiling_file(tiling_path);
    Witness w = dim == 3 ? assemble_witness_3d(build_reduction3(set, Atlas3::load(g_atlas)),
                                               wt, budget)
                         : assemble_witness_4d(build_reduction4(set, build_atlas4()), wt, budget);
    write_witness_file(out_path, w);
    emit("ok", {{"out", out_path}, {"placements", w.placements.size()}});
    return 0;
}

int cmd_verify(const std::string& witness_path) {
    Witness w = read_witness_file(witness_path);
    std::string why;
    bool ok = verify_witness(w.region, w.tiles, w.placements, &why);
    emit(ok ? "ok" : "invalid", {{"why", why}});
    if (!g_json) std::cout << (ok ? "valid" : "invalid: " + why) << "\n";
    return ok ? 0 : 1;
}

int cmd_solve(const std::string& region_spec, const std::string& tiles_dir,
              const std::string& fixed_path, const std::vector<int>& allow,
              std::uint64_t budget, const std::string& sat_path, const std::string& out_path) {
    CoverProblem prob{parse_region(region_spec), load_tile_dir(tiles_dir)};
    if (!sat_path.empty()) write_text_file(sat_path, export_sat(prob));
    SolveOptions opt;
    opt.node_budget = budget;
    opt.allowed = allow;
    opt.threads = env_threads();
    if (!fixed_path.empty()) opt.fixed = read_witness_file(fixed_path).placements;
    SolveResult res = solve(prob, opt);
    if (res.status == SolveStatus::Solved && !out_path.empty())
        write_witness_file(out_path, {prob.region, prob.tiles, res.placements});
    emit(status_name(res.status), {{"nodes", res.nodes}, {"placements", res.placements.size()}});
    if (!g_json) std::cout << status_name(res.status) << " nodes=" << res.nodes << "\n";
    return status_code(res.status);
}

int cmd_wang_solve(const std::string& wang_path, int hmax, int vmax, const std::string& out_path) {
    WangSet set = read_wang_file(wang_path);
    auto t = find_periodic_tiling(set, hmax, vmax);
    if (!t) {
        emit("unsolvable", {{"hmax", hmax}, {"vmax", vmax}});
        if (!g_json) std::cout << "no periodic tiling up to " << hmax << "x" << vmax << "\n";
        return 1;
    }
    std::string text = tiling_to_json(*t);
    if (!out_path.empty()) write_text_file(out_path, text);
    emit("ok", {{"h", t->h}, {"v", t->v}});
    if (!g_json) std::cout << text;
    return 0;
}

const BuiltTile& pick_tile3(const Reduction3& r, const std::string& name) {
    for (std::size_t i = 0; i < 5; ++i)
        if (r.tile(i).name == name) return r.tile(i);
    throw Error("unknown 3D tile '" + name + "'");
}

const BuiltTile& pick_tile4(const Reduction4& r, const std::string& name) {
    for (std::size_t i = 0; i < 4; ++i)
        if (r.tile(i).name == name) return r.tile(i);
    throw Error("unknown 4D tile '" + name + "'");
}

int cmd_render(int level, const std::string& format, const std::string& voxels_path,
               const std::string& wang_path, int dim, const std::string& tile_name,
               const std::string& out_path) {
    std::string doc;
    if (level == 1) {
        if (voxels_path.empty()) throw Error("level 1 needs --voxels");
        VoxelSet s = read_voxels_file(voxels_path);
        doc = format == "svg" ? render_level1_svg(s) : render_level1_text(s);
    } else {
        if (wang_path.empty() || tile_name.empty()) throw Error("level 2 needs --wang and --tile");
        WangSet set = read_wang_file(wang_path);
        const BuiltTile* t = nullptr;
        Reduction3 r3;
        Reduction4 r4;
        if (dim == 3) {
            r3 = build_reduction3(set, Atlas3::load(g_atlas));
            t = &pick_tile3(r3, tile_name);
        } else {
            r4 = build_reduction4(set, build_atlas4());
            t = &pick_tile4(r4, tile_name);
        }
        doc = format == "svg" ? render_level2_svg(*t) : render_level2_text(*t);
    }
    if (out_path.empty()) std::cout << doc;
    else write_text_file(out_path, doc);
    emit("ok", {{"bytes", doc.size()}});
    return 0;
}

int cmd_atlas_audit(int dim, const std::string& dir, const std::string& emit_dir) {
    if (dim == 3) {
        Atlas3 atlas = Atlas3::load(dir);
        atlas.validate();
        auto fits = match_exclusivity(atlas);
        json data = json::array();
        for (const auto& f : fits) {
            json offs = json::array();
            for (const auto& o : f.offsets) offs.push_back({o[0], o[1], o[2]});
            data.push_back({{"bump", f.bump}, {"dent", f.dent}, {"offsets", offs}});
        }
        emit("ok", {{"fits", data}});
        if (!g_json) {
            std::cout << "atlas valid; " << fits.size() << " fitting pairs\n";
            for (const auto& f : fits)
                std::cout << "  " << f.bump << " into " << f.dent << " (" << f.offsets.size()
                          << " offset" << (f.offsets.size() == 1 ? "" : "s") << ")\n";
        }
        return 0;
    }
    Atlas4 atlas = build_atlas4();
    atlas.validate();
    if (!emit_dir.empty()) {
        fs::create_directories(emit_dir);
        json manifest;
        manifest["dim"] = 4;
        manifest["blocks"] = json::array();
        for (const auto& name : atlas.names()) {
            std::string file = name + ".vox";
            write_voxels_file(fs::path(emit_dir) / file, atlas.block(name), name);
            manifest["blocks"].push_back({{"name", name},
                                          {"file", file},
                                          {"cells", atlas.block(name).size()},
                                          {"frames", atlas.frames(name)}});
        }
        write_text_file(fs::path(emit_dir) / "manifest.json", manifest.dump(1) + "\n");
    }
    emit("ok", {{"blocks", atlas.names().size()}});
    if (!g_json) std::cout << "4D atlas valid; " << atlas.names().size() << " blocks\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wang-tile to 3D/4D translational-tiling reduction toolkit"};
    app.require_subcommand(1);
    app.fallthrough();  // --json/--atlas may follow the subcommand
    app.add_flag("--json", g_json, "machine-readable JSON envelope on stdout");
    app.add_option("--atlas", g_atlas, "3D atlas data directory");

    int dim = 3, level = 1, hmax = 4, vmax = 4;
    std::string wang_path, tiling_path, out_path, witness_path, region_spec, tiles_dir;
    std::string fixed_path, sat_path, format = "text", voxels_path, tile_name;
    std::string emit_dir;
    std::uint64_t budget = UINT64_MAX;
    std::vector<int> allow;

    auto* reduce = app.add_subcommand("reduce", "build the tile set for a Wang set");
    reduce->add_option("--dim", dim)->check(CLI::IsMember({3, 4}));
    reduce->add_option("--wang", wang_path)->required();
    reduce->add_option("--out", out_path)->required();

    auto* witness = app.add_subcommand("witness", "assemble a verified torus tiling");
    witness->add_option("--dim", dim)->check(CLI::IsMember({3, 4}));
    witness->add_option("--wang", wang_path)->required();
    witness->add_option("--tiling", tiling_path)->required();
    witness->add_option("--out", out_path)->required();
    witness->add_option("--budget", budget);

    auto* verify = app.add_subcommand("verify", "check a witness file");
    verify->add_option("--witness", witness_path)->required();

    auto* solve = app.add_subcommand("solve", "exact-cover solve a region");
    solve->add_option("--region", region_spec)->required();
    solve->add_option("--tiles", tiles_dir)->required();
    solve->add_option("--fixed", fixed_path);
    solve->add_option("--allow", allow)->delimiter(',');
    solve->add_option("--budget", budget);
    solve->add_option("--sat", sat_path);
    solve->add_option("--out", out_path);

    auto* wang_solve = app.add_subcommand("wang-solve", "find a periodic Wang tiling");
    wang_solve->add_option("--wang", wang_path)->required();
    wang_solve->add_option("--hmax", hmax);
    wang_solve->add_option("--vmax", vmax);
    wang_solve->add_option("--out", out_path);

    auto* render = app.add_subcommand("render", "layer diagrams (text or SVG)");
    render->add_option("--level", level)->check(CLI::IsMember({1, 2}));
    render->add_option("--format", format)->check(CLI::IsMember({"text", "svg"}));
    render->add_option("--voxels", voxels_path);
    render->add_option("--wang", wang_path);
    render->add_option("--dim", dim)->check(CLI::IsMember({3, 4}));
    render->add_option("--tile", tile_name);
    render->add_option("--out", out_path);

    auto* audit = app.add_subcommand("atlas-audit", "validate the block atlas");
    audit->add_option("--dim", dim)->check(CLI::IsMember({3, 4}));
    
    audit->add_option("--emit", emit_dir);

    try {
        app.parse(argc, argv);
        if (reduce->parsed()) return cmd_reduce(dim, wang_path, out_path);
        if (witness->parsed()) return cmd_witness(dim, wang_path, tiling_path, out_path, budget);
        if (verify->parsed()) return cmd_verify(witness_path);
        if (solve->parsed())
            return cmd_solve(region_spec, tiles_dir, fixed_path, allow, budget, sat_path, out_path);
        if (wang_solve->parsed()) return cmd_wang_solve(wang_path, hmax, vmax, out_path);
        if (render->parsed())
            return cmd_render(level, format, voxels_path, wang_path, dim, tile_name, out_path);
        if (audit->parsed()) return cmd_atlas_audit(dim, g_atlas, emit_dir);
        return 3;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    } catch (const std::exception& e) {
        emit("error", {{"message", e.what()}});
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
