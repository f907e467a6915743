// Copyright 2026 The surfacelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "surfacelab/planner.h"

namespace fs = std::filesystem;
using namespace surfacelab;

namespace {

const std::string kSource = SURFACELAB_SOURCE_DIR;

struct Result {
    int code = 0;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "surfacelab");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::string without_timestamp(const std::string &text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("# timestamp:", 0) == 0) continue;
        out += line + "\n";
    }
    return out;
}

class TempDir {
  public:
    TempDir() : path_(fs::temp_directory_path() / ("surfacelab_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    fs::path operator/(const std::string &name) const { return path_ / name; }

  private:
    fs::path path_;
};

void write(const fs::path &p, const std::string &text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, MinimalSimulateWritesOneRow) {
    Result r = run_cli({"simulate", kSource + "/configs/minimal.json", "-o", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    size_t data_rows = 0, header_rows = 0;
    std::istringstream in(r.out);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            ++header_rows;
        } else if (line.rfind("preset,", 0) != 0) {
            ++data_rows;
        }
    }
    EXPECT_EQ(data_rows, 1u);
    EXPECT_EQ(header_rows, 5u);
    EXPECT_EQ(without_timestamp(r.out), slurp(kSource + "/tests/golden/simulate_minimal.csv"));
}

TEST(Cli, SimulateIsDeterministicAcrossRunsAndThreads) {
    TempDir dir;
    const std::string base = R"({"distances": [3], "preset": "phenomenological", "ps": [0.02, 0.03], "shots": 3000, "seed": 11, "threads": )";
    write(dir / "one.json", base + "1}");
    write(dir / "three.json", base + "3}");
    ASSERT_EQ(run_cli({"simulate", (dir / "one.json").string(), "-o", (dir / "a.csv").string()}).code, 0);
    ASSERT_EQ(run_cli({"simulate", (dir / "one.json").string(), "-o", (dir / "b.csv").string()}).code, 0);
    ASSERT_EQ(run_cli({"simulate", (dir / "three.json").string(), "-o", (dir / "c.csv").string()}).code, 0);
    EXPECT_EQ(without_timestamp(slurp(dir / "a.csv")), without_timestamp(slurp(dir / "b.csv")));
    // The thread budget changes the config hash line but no result row.
    auto rows = [](const std::string &text) {
        std::string out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line[0] != '#') out += line + "\n";
        }
        return out;
    };
    EXPECT_EQ(rows(slurp(dir / "a.csv")), rows(slurp(dir / "c.csv")));
}

TEST(Cli, JsonOutputFormat) {
    TempDir dir;
    write(dir / "c.json", R"({"distances": [3], "ps": [0.004], "shots": 50, "format": "json"})");
    Result r = run_cli({"simulate", (dir / "c.json").string(), "-o", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["provenance"]["command"], "simulate");
    EXPECT_EQ(j["results"].size(), 1u);
}

TEST(Cli, MalformedJsonReportsLineAndColumn) {
    TempDir dir;
    write(dir / "bad.json", "{\n  \"shots\": 10,\n  \"ps\": [0.1,]\n}\n");
    Result r = run_cli({"simulate", (dir / "bad.json").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.json:3:14:"), std::string::npos) << r.err;
}

TEST(Cli, ConfigErrors) {
    TempDir dir;
    const std::vector<std::pair<std::string, std::string>> cases{
        {R"({"shots": 10, "colour": 1})", "unknown key 'colour'"},
        {R"({"shots": "ten"})", "wrong type"},
        {R"({"ps": [0.5, 0.1]})", "sorted"},
        {R"({"distances": [4]})", "odd"},
        {R"({"preset": "gaussian"})", "gaussian"},
        {R"({"schedule": "NEWS/NSEW"})", ""},
        {R"({"replay": {"p_star": 0.01}})", "unknown key 'replay'"},
        {R"([1, 2])", "object"},
    };
    for (const auto &[text, needle] : cases) {
        write(dir / "c.json", text);
        Result r = run_cli({"simulate", (dir / "c.json").string(), "-o", "-"});
        EXPECT_EQ(r.code, 2) << text;
        EXPECT_NE(r.err.find(needle), std::string::npos) << text << " -> " << r.err;
    }
    write(dir / "c.json", R"({"replay": {"p_star": 0.01, "seed": 1}})");
    EXPECT_EQ(run_cli({"threshold", (dir / "c.json").string(), "-o", "-"}).code, 2);
    EXPECT_EQ(run_cli({"simulate"}).code, 2);
    EXPECT_EQ(run_cli({"plan", "-d", "4"}).code, 2);
    EXPECT_EQ(run_cli({"budget", "--c", "-1"}).code, 2);
}

TEST(Cli, IoErrors) {
    TempDir dir;
    EXPECT_EQ(run_cli({"simulate", (dir / "missing.json").string()}).code, 3);
    Result r = run_cli({"simulate", kSource + "/configs/minimal.json", "-o", (dir / "no/such/dir/out.csv").string()});
    EXPECT_EQ(r.code, 3);
}

TEST(Cli, ThresholdReplayRecoversPlantedValue) {
    Result r = run_cli({"threshold", kSource + "/configs/synthetic_replay.json", "-o", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j["estimate"]["p_th"].get<double>(), 0.0075, 0.05 * 0.0075);
    EXPECT_EQ(j["estimate"]["crossings"].size(), 2u);
}

TEST(Cli, ThresholdWithoutCrossingExitsFour) {
    Result r = run_cli({"threshold", kSource + "/configs/no_crossing.json", "-o", "-"});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("bracket not found"), std::string::npos);
}

TEST(Cli, ThresholdFromTable) {
    TempDir dir;
    ResultTable t = synthetic_table({3, 5}, {0.004, 0.006, 0.008, 0.01}, 0.007, 0.3, 100000);
    write(dir / "t.csv", t.to_csv());
    write(dir / "c.json", R"({"input": ")" + (dir / "t.csv").string() + R"("})");
    Result r = run_cli({"threshold", (dir / "c.json").string(), "-o", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NEAR(nlohmann::json::parse(r.out)["estimate"]["p_th"].get<double>(), 0.007, 0.05 * 0.007);
}

TEST(Cli, BraidVerifyGolden) {
    Result r = run_cli({"braid-verify"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(kSource + "/tests/golden/braid_verify.txt"));
}

TEST(Cli, BraidVerifyJsonAndSabotage) {
    Result r = run_cli({"braid-verify", "--json"});
    ASSERT_EQ(r.code, 0);
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["map"]["X_c"], "X_c X_t");
    EXPECT_EQ(j["map"]["Z_c"], "Z_c");
    EXPECT_EQ(j["map"]["X_t"], "X_t");
    EXPECT_EQ(j["map"]["Z_t"], "Z_c Z_t");
    EXPECT_TRUE(j["ok"].get<bool>());
    EXPECT_EQ(run_cli({"braid-verify", "--sabotage"}).code, 1);
    Result s = run_cli({"braid-verify", "--json", "--sabotage", "0"});
    EXPECT_EQ(s.code, 1);
    EXPECT_FALSE(nlohmann::json::parse(s.out)["ok"].get<bool>());
    EXPECT_EQ(run_cli({"braid-verify", "--sabotage", "99"}).code, 2);
}

TEST(Cli, PlanWritesValidFloorplan) {
    Result r = run_cli({"plan", "-d", "3", "-o", "-"});
    ASSERT_EQ(r.code, 0) << r.err;
    Floorplan f = floorplan_from_json(nlohmann::json::parse(r.out));
    EXPECT_EQ(f.qubits.size(), 100u);
    EXPECT_EQ(check_floorplan(f), "");
    Result toric = run_cli({"plan", "-d", "3", "--toric", "--radius", "0.75", "-o", "-"});
    EXPECT_EQ(toric.code, 0) << toric.err;
}

TEST(Cli, BudgetGoldenAndBaseline) {
    Result r = run_cli({"budget", "--c", "1e4", "-p", "1e-3", "--x-max", "4"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, slurp(kSource + "/tests/golden/budget_concatenated.txt"));
    Result base = run_cli({"budget", "--family", "polynomial", "--c", "1", "-p", "1e-3", "-T", "10", "-N", "10", "--x-max", "0", "--json"});
    ASSERT_EQ(base.code, 0);
    auto j = nlohmann::json::parse(base.out);
    EXPECT_DOUBLE_EQ(j["rows"][0]["algorithm_failure"].get<double>(), 10 * 10 * 1e-3);
}

TEST(Cli, ConfigHash) {
    EXPECT_EQ(cli::config_hash(nlohmann::json::parse(R"({"b": [1, 2], "a": 1})")),
              "8baa73198470c7bb4c3ce142a8fd651affc0310d878bb9bd159e37a573fb4874");
    EXPECT_EQ(cli::line_column("ab\ncd", 4), (std::pair<size_t, size_t>{2, 2}));
}
