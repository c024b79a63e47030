#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "tileforge/io.hpp"

using namespace tf;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const std::string kRoot = std::string(TF_SOURCE_DIR);
const std::string kCli = std::string(TF_CLI_PATH);

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "tf-cli-out.txt";
    std::string cmd = "cd " + kRoot + " && " + kCli + " " + args + " > " + tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    return {WEXITSTATUS(rc), read_text_file(tmp)};
}

fs::path sandbox() {
    fs::path d = fs::temp_directory_path() / "tf-cli-sandbox";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("reduce writes 5 (3D) and 4 (4D) tiles plus a manifest") {
    fs::path d = sandbox();
    Run r3 = run("reduce --dim 3 --wang tests/fixtures/fig1.json --out " + (d / "r3").string());
    CHECK(r3.code == 0);
    CHECK(fs::exists(d / "r3" / "manifest.json"));
    int vox = 0;
    for (const auto& e : fs::directory_iterator(d / "r3"))
        vox += e.path().extension() == ".vox";
    CHECK(vox == 5);
    Run r4 = run("reduce --dim 4 --wang tests/fixtures/fig1.json --out " + (d / "r4").string());
    CHECK(r4.code == 0);
    vox = 0;
    for (const auto& e : fs::directory_iterator(d / "r4"))
        vox += e.path().extension() == ".vox";
    CHECK(vox == 4);
    json m = json::parse(read_text_file(d / "r4" / "manifest.json"));
    CHECK(m.at("dim") == 4);
    CHECK(m.at("tiles").size() == 4);
}

TEST_CASE("wang-solve, witness, verify pipeline") {
    fs::path d = sandbox();
    Run ws = run("wang-solve --wang tests/fixtures/single0.json --out " + (d / "wt.json").string());
    CHECK(ws.code == 0);
    Run wit = run("witness --dim 3 --wang tests/fixtures/single0.json --tiling " +
                  (d / "wt.json").string() + " --out " + (d / "w.json").string() + " --json");
    CHECK(wit.code == 0);
    json env = json::parse(wit.out);
    CHECK(env.at("status") == "ok");
    Run ver = run("verify --witness " + (d / "w.json").string());
    CHECK(ver.code == 0);
    CHECK(ver.out.find("valid") != std::string::npos);
    // no periodic tiling for the incoherent tile
    Run none = run("wang-solve --wang tests/fixtures/single_ew.json");
    CHECK(none.code == 1);
}

TEST_CASE("verify rejects a double-covered cell naming it") {
    fs::path d = sandbox();
    Witness bad{{Region::Kind::Box, 2, {2, 1, 0, 0}},
                {VoxelSet(2, {{0, 0, 0, 0}, {1, 0, 0, 0}})},
                {{0, {0, 0, 0, 0}}, {0, {0, 0, 0, 0}}}};
    write_witness_file(d / "bad.json", bad);
    Run r = run("verify --witness " + (d / "bad.json").string());
    CHECK(r.code == 1);
    CHECK(r.out.find("(0,0)") != std::string::npos);
}

TEST_CASE("solve exit codes and SAT export") {
    fs::path d = sandbox();
    fs::create_directories(d / "tiles");
    write_voxels_file(d / "tiles" / "domino.vox", VoxelSet(2, {{0, 0, 0, 0}, {1, 0, 0, 0}}));
    Run ok = run("solve --region box:2,2 --tiles " + (d / "tiles").string() + " --sat " +
                 (d / "out.cnf").string());
    CHECK(ok.code == 0);
    std::string cnf = read_text_file(d / "out.cnf");
    CHECK(cnf.find("p cnf ") != std::string::npos);
    Run uns = run("solve --region box:3,3 --tiles " + (d / "tiles").string());
    CHECK(uns.code == 1);
    Run bud = run("solve --region box:4,4 --tiles " + (d / "tiles").string() + " --budget 0");
    CHECK(bud.code == 2);
}

TEST_CASE("render reproduces a golden diagram") {
    Run r = run("render --level 1 --voxels data/atlas3/c.vox");
    CHECK(r.code == 0);
    CHECK(r.out == read_text_file(kRoot + "/tests/golden/c.l1.txt"));
    Run l2 = run("render --level 2 --dim 3 --wang tests/fixtures/fig1.json --tile encoder");
    CHECK(l2.code == 0);
    CHECK(l2.out.find("layer 3") != std::string::npos);
}

TEST_CASE("atlas audits pass in both dimensions") {
    CHECK(run("atlas-audit --dim 3").code == 0);
    fs::path d = sandbox();
    Run r = run("atlas-audit --dim 4 --emit " + (d / "a4").string());
    CHECK(r.code == 0);
    int vox = 0;
    for (const auto& e : fs::directory_iterator(d / "a4"))
        vox += e.path().extension() == ".vox";
    CHECK(vox == 14);
}

TEST_CASE("malformed input exits 3 with a diagnostic") {
    fs::path d = sandbox();
    write_text_file(d / "junk.json", "{\"q\": 0}");
    Run r = run("reduce --dim 3 --wang " + (d / "junk.json").string() + " --out " +
                (d / "out").string());
    CHECK(r.code == 3);
    CHECK(r.out.find("error") != std::string::npos);
}
