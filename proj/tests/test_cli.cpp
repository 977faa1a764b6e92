#include <gtest/gtest.h>

#include <sys/wait.h>

#include <filesystem>

#include "forge/io.hpp"

namespace fs = std::filesystem;
using namespace forge;

namespace {

fs::path workdir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("forge_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string p(const std::string& name) { return (workdir() / name).string(); }

int run(const std::string& args, const std::string& stdout_file = "") {
    std::string cmd = std::string(FORGE_BIN) + " " + args;
    cmd += stdout_file.empty() ? " > /dev/null" : " > " + stdout_file;
    cmd += " 2> " + p("stderr.txt");
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

}  // namespace

TEST(Cli, BuildAndHomology) {
    ASSERT_EQ(run("build chessboard --rows 3 --cols 4 --out " + p("d34.json")), 0);
    ASSERT_EQ(run("homology --complex " + p("d34.json") + " --pseudomanifold", p("h.json")), 0);
    auto h = read_json(p("h.json"));
    EXPECT_EQ(h["betti"], json({1, 2, 1}));
    EXPECT_TRUE(h["pseudomanifold"]["closed_orientable"].get<bool>());
    ASSERT_EQ(run("build multichess --rows 4 --cols 2 --col-caps 2,1 --out " + p("m.json")), 0);
    ASSERT_EQ(run("homology --reduced --complex " + p("m.json"), p("hm.json")), 0);
    EXPECT_EQ(read_json(p("hm.json"))["betti"], json({0, 0, 1}));
    ASSERT_EQ(run("build skeleton --input " + p("m.json") + " --dim 1 --out " + p("sk.json")), 0);
    ASSERT_EQ(run("build bier --input " + p("sk.json") + " --out " + p("b.json")), 0);
    ASSERT_EQ(run("build deleted-join --input " + p("sk.json") + " --r 2 --out " + p("dj.json")), 0);
    ASSERT_EQ(run("build dual --input " + p("sk.json") + " --out " + p("du.json")), 0);
    ASSERT_EQ(run("build join --input " + p("sk.json") + " --input2 " + p("m.json") + " --out " + p("j.json")), 0);
    ASSERT_EQ(run("build multipartite --sizes 3,3,3,1 --out " + p("k3331.json")), 0);
    EXPECT_EQ(read_json(p("k3331.json"))["facets"].size(), 27u);
}

TEST(Cli, ErrorsMapToExitCodes) {
    EXPECT_EQ(run("build nonsense"), 2);
    EXPECT_EQ(run("pipeline --r 6 --d 2"), 2);
    forge::write_file(p("broken.json"), "{ not json");
    EXPECT_EQ(run("homology --complex " + p("broken.json")), 2);
    EXPECT_EQ(run("config-space --r 2 --d 42"), 3);
    EXPECT_EQ(run("no-such-command"), 2);
}

TEST(Cli, ConfigSpaceMorseCertify) {
    ASSERT_EQ(run("config-space --r 2 --d 2 --out " + p("cs.json")), 0);
    EXPECT_TRUE(fs::exists(p("cs.labels.json")));
    ASSERT_EQ(run("morse --space " + p("cs.json") + " --out " + p("field.json")), 0);
    ASSERT_EQ(run("certify --space " + p("cs.json") + " --field " + p("field.json"), p("cert.json")), 0);
    auto c = read_json(p("cert.json"));
    EXPECT_EQ(c["certificate"]["connectivity"], 2);
    EXPECT_TRUE(c["target_met"].get<bool>());
    EXPECT_TRUE(c["acyclic"].get<bool>());
}

TEST(Cli, CyclicFieldIsRefutedWithPath) {
    ASSERT_EQ(run("build boundary --n 3 --out " + p("tri.json")), 0);
    write_file(p("cyc.json"), R"({"pairs": [[[0],[0,1]], [[1],[1,2]], [[2],[0,2]]]})");
    EXPECT_EQ(run("certify --complex " + p("tri.json") + " --field " + p("cyc.json"), p("cyc_out.json")), 1);
    auto j = read_json(p("cyc_out.json"));
    EXPECT_FALSE(j["acyclic"].get<bool>());
    EXPECT_NE(j["witness_cycle"].get<std::string>().find("↗"), std::string::npos);
    ASSERT_EQ(run("report " + p("cyc_out.json"), p("cyc_report.txt")), 0);
    EXPECT_NE(read_file(p("cyc_report.txt")).find("closed gradient path"), std::string::npos);
    write_file(p("bad_b.json"), R"({"pairs": [[[0],[1,2]]]})");
    EXPECT_EQ(run("certify --complex " + p("tri.json") + " --field " + p("bad_b.json"), p("bad_b_out.json")), 1);
    EXPECT_EQ(read_json(p("bad_b_out.json"))["violations"][0]["condition"], "b");
}

TEST(Cli, PipelineIsDeterministicAndReported) {
    ASSERT_EQ(run("pipeline --r 2 --d 2 --out-dir " + p("run1"), p("m1.json")), 0);
    ASSERT_EQ(run("pipeline --r 2 --d 2 --out-dir " + p("run2"), p("m2.json")), 0);
    EXPECT_EQ(fnv1a_hex(read_file(p("m1.json"))), fnv1a_hex(read_file(p("m2.json"))));
    for (const char* f : {"field.json", "config_space.json", "config_space.labels.json", "manifest.json"})
        EXPECT_EQ(read_file(p(std::string("run1/") + f)), read_file(p(std::string("run2/") + f))) << f;
    auto m = read_json(p("m1.json"));
    EXPECT_TRUE(m["verdicts"]["overall"].get<bool>());
    EXPECT_EQ(m["details"]["certificate"]["connectivity"], 2);
    ASSERT_EQ(run("report " + p("m1.json"), p("report.txt")), 0);
    EXPECT_NE(read_file(p("report.txt")).find("perfect matching"), std::string::npos);
}

TEST(Cli, AffineCommands) {
    ASSERT_EQ(run("random-config --seed 4 --n 7 --d 2 --colors 2,2,2,1 --out " + p("pts.json")), 0);
    ASSERT_EQ(run("random-config --seed 4 --n 7 --d 2 --colors 2,2,2,1 --out " + p("pts2.json")), 0);
    EXPECT_EQ(read_file(p("pts.json")), read_file(p("pts2.json")));
    ASSERT_EQ(run("verify seven-point --config " + p("pts.json"), p("w.json")), 0);
    auto w = read_json(p("w.json"));
    EXPECT_TRUE(w["verified"].get<bool>());
    EXPECT_EQ(w["witness"]["parts"].size(), 4u);
    ASSERT_EQ(run("report " + p("w.json"), p("w.txt")), 0);
    EXPECT_NE(read_file(p("w.txt")).find("part | points | weights"), std::string::npos);
    ASSERT_EQ(run("verify tverberg --r 3 --config " + p("pts.json")), 0);
    write_file(p("apart.json"), R"({"d": 1, "points": [["0"], ["1/2"]], "colors": [[0], [1]]})");
    EXPECT_EQ(run("verify tverberg --r 2 --config " + p("apart.json"), p("no.json")), 1);
    EXPECT_TRUE(read_json(p("no.json"))["exhausted"].get<bool>());
    EXPECT_EQ(run("verify rainbow --r 2 --config " + p("apart.json")), 2);  // missing --k/--s
}

TEST(Cli, EquivariantScan) {
    ASSERT_EQ(run("build multichess --rows 4 --cols 2 --col-caps 2,1 --klein --out " + p("mk.json")), 0);
    ASSERT_EQ(run("build boundary --n 4 --klein --out " + p("tk.json")), 0);
    ASSERT_EQ(run("equivariant-scan --k " + p("mk.json") + " --l " + p("tk.json") + " --group klein4 --subdivide 1", p("scan.json")), 0);
    auto s = read_json(p("scan.json"));
    EXPECT_TRUE(s["parity_congruent"].get<bool>());
    EXPECT_EQ(s["levels"][0]["count"], 16);
    EXPECT_EQ(s["levels"][1]["count"], 0);
    EXPECT_EQ(s["orbit_index_gcd"], 2);
    ASSERT_EQ(run("build chessboard --rows 3 --cols 4 --out " + p("plain.json")), 0);
    EXPECT_EQ(run("equivariant-scan --k " + p("plain.json") + " --l " + p("tk.json")), 2);  // no action stored
}
