#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "normalhst/cli.hpp"
#include "normalhst/selftest/corpus.hpp"

using namespace normalhst;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_path(const std::string& name) { return std::string(NORMALHST_DATA_DIR) + "/" + name; }

bool has(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

cli::Json json(const Run& r) { return cli::Json::parse(r.out); }

}  // namespace

TEST(CliCorpus, DataFilesMatchEmbeddedCopies) {
    std::size_t n = 0;
    for (const auto& f : corpus::kFiles) {
        std::ifstream in(data_path(std::string(f.name)), std::ios::binary);
        ASSERT_TRUE(in) << f.name;
        std::ostringstream s;
        s << in.rdbuf();
        EXPECT_EQ(s.str(), f.text) << f.name;
        ++n;
    }
    std::size_t on_disk = 0;
    for (const auto& e : fs::directory_iterator(NORMALHST_DATA_DIR)) on_disk += e.is_regular_file() ? 1 : 0;
    EXPECT_EQ(n, on_disk);
}

TEST(CliValidate, ExitCodes) {
    auto r = run({"validate", data_path("simplex4_boundary.tri")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(json(r)["manifold"]["is_manifold"].get<bool>());

    r = run({"validate", data_path("selfglue.tri")});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(has(r.err, "self-glued face"));

    r = run({"validate", data_path("pseudo_manifold.tri")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json(r)["manifold"]["offending_vertices"], cli::Json::array({0}));

    EXPECT_EQ(run({"validate", data_path("missing.tri")}).code, 2);
}

TEST(CliSurface, Summaries) {
    auto r = run({"surface", data_path("doubled_tet.tri"), data_path("doubled_tet_vertex_link.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["summary"], "Normal, 1 component, χ=2, 348: pass");

    r = run({"surface", data_path("s3_one_tet.tri"), data_path("s3_one_tet_octagon.json"), "--mode", "almost-normal"});
    EXPECT_EQ(r.code, 0);
    const auto s = json(r)["summary"].get<std::string>();
    EXPECT_TRUE(s.starts_with("AlmostNormalOctagon"));
    EXPECT_TRUE(s.ends_with("348: pass"));

    r = run({"surface", data_path("single_tet.tri"), data_path("single_tet_two_octagons.json")});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json(r)["summary"], "Inadmissible");

    r = run({"surface", data_path("single_tet.tri"), data_path("single_tet_tube.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["class"], "AlmostNormalTube");
}

TEST(CliSurface, NormalModeRejectsOctagon) {
    const auto r = run({"surface", data_path("s3_one_tet.tri"), data_path("s3_one_tet_octagon.json"), "--mode", "normal"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(json(r)["summary"], "Inadmissible");
}

TEST(CliSurface, MismatchedSizesAreInputErrors) {
    EXPECT_EQ(run({"surface", data_path("single_tet.tri"), data_path("doubled_tet_vertex_link.json")}).code, 2);
    EXPECT_EQ(run({"surface", data_path("single_tet.tri"), data_path("single_tet.tri")}).code, 2);
}

TEST(CliEnumerate, CrossCheckMatches) {
    const auto r = run({"enumerate", data_path("doubled_tet.tri"), "--cross-check", "--bound", "6"});
    EXPECT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string line, last;
    std::size_t n = 0;
    while (std::getline(lines, line)) {
        if (n == 0) {
            EXPECT_EQ(cli::Json::parse(line)["kind"], "header");
        }
        last = line;
        ++n;
    }
    EXPECT_EQ(cli::Json::parse(last)["result"], "MATCH");
}

TEST(CliEnumerate, SingleTetrahedronSevenRays) {
    const auto r = run({"enumerate", data_path("single_tet.tri")});
    EXPECT_EQ(r.code, 0);
    std::istringstream lines(r.out);
    std::string line;
    std::size_t surfaces = 0;
    while (std::getline(lines, line))
        if (cli::Json::parse(line)["kind"] == "surface") ++surfaces;
    EXPECT_EQ(surfaces, 7u);
}

TEST(CliEnumerate, CeilingExceededExitsThree) {
    EXPECT_EQ(run({"enumerate", data_path("single_tet.tri"), "--method", "brute", "--bound", "1000"}).code, 3);
}

TEST(CliEnumerate, EnvironmentCeiling) {
    ::setenv("NORMALHST_CEILING", "bound=3", 1);
    EXPECT_EQ(run({"enumerate", data_path("single_tet.tri"), "--method", "brute", "--bound", "4"}).code, 3);
    EXPECT_EQ(run({"enumerate", data_path("single_tet.tri"), "--method", "brute", "--bound", "3"}).code, 0);
    ::setenv("NORMALHST_CEILING", "rays=2", 1);
    EXPECT_EQ(run({"enumerate", data_path("simplex4_boundary.tri")}).code, 3);
    ::setenv("NORMALHST_CEILING", "bound=x", 1);
    EXPECT_EQ(run({"enumerate", data_path("single_tet.tri")}).code, 2);
    ::unsetenv("NORMALHST_CEILING");
}

TEST(CliHst, Reports) {
    auto r = run({"hst", "complexity", data_path("genus2.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["complexity"], cli::Json::array({16}));

    r = run({"hst", "underlying", data_path("torus_with_spheres.json")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["underlying"], cli::Json::parse("[[],[[0,0]],[]]"));

    r = run({"hst", "search", data_path("genus2.json"), "--budget", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["status"], "budget exhausted");

    r = run({"hst", "search", data_path("torus.json")});
    EXPECT_EQ(json(r)["status"], "certified");
    EXPECT_EQ(json(r)["best_complexity"], cli::Json::array({0}));
}

TEST(CliHst, InvalidSplittingIsInputError) {
    const auto dir = fs::temp_directory_path() / "normalhst_cli_test";
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << "[[], []]";
    EXPECT_EQ(run({"hst", "complexity", (dir / "bad.json").string()}).code, 2);
    std::ofstream(dir / "garbage.json") << "{not json";
    EXPECT_EQ(run({"hst", "complexity", (dir / "garbage.json").string()}).code, 2);
    fs::remove_all(dir);
}

TEST(CliWidth, Reports) {
    auto r = run({"width", "width", data_path("bridge.pres")});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["width"]["width"], 8);

    r = run({"width", "split", data_path("exchange.pres")});
    EXPECT_EQ(json(r)["splitting"], cli::Json::parse("[[],[[2,4]],[[2,2]],[[2,4]],[]]"));

    r = run({"width", "search", data_path("stacked.pres"), "--mode", "all", "--single-component"});
    EXPECT_EQ(json(r)["min_width"], 8);

    r = run({"width", "exchange", data_path("exchange.pres"), "--index", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["decrease"], 4);

    EXPECT_EQ(run({"width", "exchange", data_path("bridge.pres"), "--index", "1"}).code, 1);
}

TEST(CliCurve, Decomposition) {
    auto r = run({"curve", "0", "0", "0", "1", "0", "0", "1", "0", "0", "1", "0", "0"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["decomposition"]["lengths"], cli::Json::array({3}));
    EXPECT_EQ(run({"curve", "1", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0", "0"}).code, 2);
    EXPECT_EQ(run({"curve", "1", "2"}).code, 2);
}

TEST(CliLoops, UpToEight) {
    const auto r = run({"loops", "--max-length", "8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(json(r)["loops"].size(), 10u);
    EXPECT_EQ(json(r)["classes"].size(), 3u);
    EXPECT_EQ(run({"loops", "--max-length", "40"}).code, 3);
}

TEST(CliFormat, TableDerivedFromJson) {
    const auto j = run({"hst", "complexity", data_path("genus2.json")});
    const auto t = run({"hst", "complexity", data_path("genus2.json"), "--format", "table"});
    EXPECT_EQ(t.out, cli::render_table(json(j)));
    EXPECT_TRUE(has(t.out, "complexity"));
}

TEST(CliUsage, BadArgumentsExitTwo) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"validate"}).code, 2);
    EXPECT_EQ(run({"enumerate", data_path("single_tet.tri"), "--method", "magic"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(CliDeterminism, RepeatedRunsIdentical) {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"enumerate", data_path("simplex4_boundary.tri"), "--method", "brute", "--bound", "5"},
             {"hst", "search", data_path("genus2.json")},
             {"loops", "--max-length", "12"}}) {
        const auto a = run(args), b = run(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
    }
}
