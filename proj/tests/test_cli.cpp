#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "../tools/commands.hpp"
#include "lincov/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result lincov_run(std::vector<std::string> args) {
    args.insert(args.begin(), "lincov");
    std::ostringstream out, err;
    Result r;
    r.code = lincov::cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("lincov_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string file(const std::string& name, const std::string& contents) {
        const auto p = dir_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, AcvfThenCheckRoundTripsExactly) {
    const auto model = file("ar1.json", R"({"ar": [0.5]})");
    const auto a = lincov_run({"acvf", model, "--k-max", "200", "--output", path("g.csv")});
    ASSERT_EQ(a.code, 0) << a.err;
    std::istringstream in(lincov::io::read_file(path("g.csv")));
    const auto g = lincov::io::read_acvf_csv(in);
    ASSERT_EQ(g.values.size(), 201u);
    EXPECT_EQ(g.values[3], 4.0 / 3.0 * 0.125);

    const auto c = lincov_run({"check", path("g.csv")});
    ASSERT_EQ(c.code, 0) << c.err;
    const auto doc = json::parse(c.out);
    EXPECT_EQ(doc["berman"]["verdict"], "pass");
    EXPECT_EQ(doc["summability"]["verdict"], "pass");
    EXPECT_TRUE(doc["xi_checks"].empty());
}

TEST_F(CliTest, WhiteNoiseCheckPasses) {
    const auto model = file("wn.json", R"({"sigma2": 2})");
    ASSERT_EQ(lincov_run({"acvf", model, "--output", path("wn.csv")}).code, 0);
    const auto c = lincov_run({"check", path("wn.csv"), "--k-max", "100000"});
    ASSERT_EQ(c.code, 0) << c.err;
    const auto doc = json::parse(c.out);
    EXPECT_EQ(doc["berman"]["verdict"], "pass");
    EXPECT_EQ(doc["summability"]["verdict"], "pass");
}

TEST_F(CliTest, TheoremOnLongMemoryInput) {
    const auto x = file("x.json", R"({"d": 0.3})");
    const auto f = file("f.json", R"({"ar": [0.5], "ma": [0.4]})");
    const auto r = lincov_run({"theorem", x, f});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_EQ(doc["berman"]["verdict"], "pass");
    EXPECT_EQ(doc["summability"]["verdict"], "pass");
    EXPECT_TRUE(doc["hypothesis_ok"].get<bool>());
    EXPECT_TRUE(doc["xi_ok"].get<bool>());
    EXPECT_TRUE(doc["conclusion_ok"].get<bool>());
    ASSERT_FALSE(doc["xi_checks"].empty());
    for (const auto& c : doc["xi_checks"]) EXPECT_TRUE(c["ok"].get<bool>());
}

TEST_F(CliTest, TheoremWithLongMemoryFilterReportsHypothesisFailure) {
    const auto x = file("x.json", R"({"ar": [0.5]})");
    const auto f = file("f.json", R"({"d": 0.3})");
    const auto r = lincov_run({"theorem", x, f, "--direction", "psi", "--n-max", "20000",
                               "--k-max", "1000", "--strict"});
    EXPECT_EQ(r.code, 1) << r.err;
    const auto doc = json::parse(r.out);
    EXPECT_FALSE(doc["hypothesis_ok"].get<bool>());
    EXPECT_TRUE(doc.contains("hypothesis_failure"));
}

TEST_F(CliTest, NonInvertibleInverseWeightsIsAnInputError) {
    const auto model = file("ma.json", R"({"ma": [2.0]})");
    const auto r = lincov_run({"weights", model, "--direction", "pi"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("invertible"), std::string::npos) << r.err;
}

TEST_F(CliTest, StrictFlagsFailingVerdict) {
    std::string csv = "k,gamma_k\n0,2\n";
    for (int k = 1; k <= 20000; ++k) csv += std::to_string(k) + ",1\n";
    const auto p = file("level.csv", csv);
    EXPECT_EQ(lincov_run({"check", p}).code, 0);
    EXPECT_EQ(lincov_run({"check", p, "--strict"}).code, 1);
}

TEST_F(CliTest, BadInputsExitWithTwo) {
    EXPECT_EQ(lincov_run({"acvf", file("bad.json", R"({"foo": 1})")}).code, 2);
    EXPECT_EQ(lincov_run({"acvf", path("missing.json")}).code, 2);
    EXPECT_EQ(lincov_run({"acvf", file("ns.json", R"({"ar": [1.0]})")}).code, 2);
    EXPECT_EQ(lincov_run({"frobnicate"}).code, 2);
    EXPECT_EQ(lincov_run({"weights", file("m.json", "{}"), "--direction", "up"}).code, 2);
}

TEST_F(CliTest, ReplayReproducesBytes) {
    const auto g = file("g.json", R"({"ar": [0.5], "ma": [0.4]})");
    const auto x = file("x.json", R"({"d": 0.2})");
    ASSERT_EQ(lincov_run({"weights", g, "--direction", "pi", "--output", path("pi.csv")}).code, 0);
    ASSERT_EQ(lincov_run({"acvf", x, "--k-max", "300", "--output", path("gx.csv")}).code, 0);
    const auto manifest = json::parse(lincov::io::read_file(path("gx.csv.manifest.json")));
    EXPECT_EQ(manifest["command"], "acvf");
    EXPECT_EQ(manifest["version"], lincov::cli::kVersion);
    const auto first = lincov::io::read_file(path("gx.csv"));
    fs::remove(path("gx.csv"));
    ASSERT_EQ(lincov_run({"replay", path("gx.csv.manifest.json")}).code, 0);
    EXPECT_EQ(lincov::io::read_file(path("gx.csv")), first);
}

TEST_F(CliTest, ComposeMatchesLibrary) {
    const auto f = file("f.json", R"({"ar": [0.5]})");
    const auto x = file("x.json", R"({"ma": [0.4]})");
    ASSERT_EQ(lincov_run({"acvf", f, "--k-max", "400", "--output", path("gw.csv")}).code, 0);
    ASSERT_EQ(lincov_run({"acvf", x, "--k-max", "10", "--output", path("gx.csv")}).code, 0);
    const auto r = lincov_run({"compose", path("gw.csv"), path("gx.csv"), "--k-max", "5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    const auto gy = lincov::io::read_acvf_csv(in);
    ASSERT_EQ(gy.values.size(), 6u);
    // AR(1) filter on MA(1) input is ARMA(1,1): gamma_0 = (1 + 2*0.5*0.4 + 0.16)/(1 - 0.25)
    EXPECT_NEAR(gy.values[0], (1.0 + 0.4 + 0.16) / 0.75, 1e-12);
}

TEST_F(CliTest, SimulateWritesThreeFiles) {
    const auto m = file("m.json",
                        R"({"ar": [0.5], "sim": {"n": 20000, "burn_in": 500, "seed": 3}})");
    const auto r = lincov_run({"simulate", m, "--output", path("sim.txt")});
    ASSERT_EQ(r.code, 0) << r.err;
    for (const auto& name : {"sim.txt", "sim.txt.acvf.csv", "sim.txt.oracle.json",
                             "sim.txt.manifest.json"})
        EXPECT_TRUE(fs::exists(path(name))) << name;
    const auto oracle = json::parse(lincov::io::read_file(path("sim.txt.oracle.json")));
    EXPECT_EQ(oracle["lags"].size(), 21u);
    EXPECT_EQ(lincov_run({"simulate", m}).code, 2);
}

TEST_F(CliTest, BinaryRunsAsSubprocess) {
    const auto model = file("ma.json", R"({"ma": [0.4]})");
    const std::string out = path("stdout.txt");
    const std::string cmd = std::string(LINCOV_TOOL_PATH) + " acvf " + model + " --k-max 3 > " + out;
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    const auto text = lincov::io::read_file(out);
    EXPECT_NE(text.find("1,0.40000000000000002"), std::string::npos) << text;
    EXPECT_NE(text.find("# tail zero"), std::string::npos) << text;
    const std::string bad = std::string(LINCOV_TOOL_PATH) + " acvf " + path("nope.json") + " 2>/dev/null";
    EXPECT_EQ(WEXITSTATUS(std::system(bad.c_str())), 2);
}
