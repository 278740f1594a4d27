// Copyright 2026 The rdrsa Authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "rdrsa/builtin_games.h"
#include "rdrsa/dynamics.h"
#include "rdrsa/empirical.h"
#include "rdrsa/error.h"
#include "rdrsa/game.h"

namespace rdrsa::cli {
namespace {

namespace fs = std::filesystem;

const std::string kMustache = std::string(RDRSA_DATA_DIR) + "/games/mustache.json";
const std::string kFriend = std::string(RDRSA_DATA_DIR) + "/games/mustache_friend.json";

struct Result {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rdrsa_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Result Run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = Main(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string Read(const std::string& name) const {
    std::ifstream f(dir_ / name, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  std::vector<std::vector<std::string>> ReadCsv(const std::string& name) const {
    std::istringstream in(Read(name));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (!line.empty() && line.back() == ',') cells.emplace_back();
      rows.push_back(std::move(cells));
    }
    return rows;
  }

  std::string Out() const { return dir_.string(); }

  fs::path dir_;
};

TEST(AlphaGridTest, Examples) {
  const auto grid = ParseAlphaGrid("0.5:0.1:2.0");
  ASSERT_EQ(grid.size(), 16u);
  EXPECT_EQ(grid.front(), 0.5);
  EXPECT_EQ(grid[2], 0.7);
  EXPECT_EQ(grid[5], 1.0);
  EXPECT_EQ(grid.back(), 2.0);
  EXPECT_EQ(ParseAlphaGrid("1:1:1"), std::vector<double>{1.0});
}

TEST(AlphaGridTest, RejectsBadSpecs) {
  for (const char* spec : {"2:0.1:1", "0:0:1", "0:-1:1", "0:1", "a:b:c",
                           "0:1:2:3", "", "0::1"}) {
    EXPECT_THROW(ParseAlphaGrid(spec), Error) << spec;
  }
}

TEST_F(CliTest, RunWritesMonotoneTrajectory) {
  const Result r = Run({"run", "--game", kMustache, "--mode", "rsa", "--alpha",
                        "1.2", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("converged at depth"), std::string::npos) << r.out;
  const auto rows = ReadCsv("trajectory.csv");
  ASSERT_GT(rows.size(), 3u);
  EXPECT_EQ(rows[0][8], "g_value");
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_GE(std::stod(rows[i][8]), std::stod(rows[i - 1][8]) - 1e-9);
  }
  EXPECT_TRUE(fs::exists(dir_ / "manifest.json"));
}

TEST_F(CliTest, RunRejectsNegativeAlpha) {
  const Result r = Run({"run", "--alpha", "-1", "--out", Out()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("alpha must be ≥ 0"), std::string::npos) << r.err;
}

TEST_F(CliTest, RdAtAlphaOneConvergesImmediately) {
  const Result r = Run({"run", "--game", kMustache, "--mode", "rd-rsa", "--alpha",
                        "1.0", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("converged at depth 1;"), std::string::npos) << r.out;
}

TEST_F(CliTest, RunsBundledFriendGame) {
  const Result r = Run({"run", "--game", kFriend, "--mode", "rd-rsa", "--alpha",
                        "0.5", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rd-rsa alpha=0.5: converged at depth"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, RunExportsMatrices) {
  const Result r = Run({"run", "--alpha", "2", "--mode", "both",
                        "--export-matrices", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "matrices_rsa_alpha2.json"));
  EXPECT_TRUE(fs::exists(dir_ / "matrices_rd-rsa_alpha2.json"));
}

TEST_F(CliTest, OutputsAreByteIdenticalAcrossRuns) {
  const std::vector<std::string> args = {"run", "--soften", "0.05", "--alpha",
                                         "0.9", "--mode", "both", "--out", Out()};
  ASSERT_EQ(Run(args).code, 0);
  const std::string csv = Read("trajectory.csv");
  const std::string manifest = Read("manifest.json");
  ASSERT_EQ(Run(args).code, 0);
  EXPECT_EQ(Read("trajectory.csv"), csv);
  EXPECT_EQ(Read("manifest.json"), manifest);
  EXPECT_NE(manifest.find("\"tolerance\": 1e-10"), std::string::npos) << manifest;
}

TEST_F(CliTest, ScanRegimeFlipsAtOne) {
  const Result r = Run({"scan", "--game", kMustache, "--soften", "0.05",
                        "--alpha-grid", "0.5:0.1:2.0", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ReadCsv("scan.csv");
  ASSERT_EQ(rows.size(), 17u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double alpha = std::stod(rows[i][0]);
    if (alpha < 1.0) EXPECT_EQ(rows[i][2], "non-informative") << alpha;
    if (alpha > 1.0) EXPECT_EQ(rows[i][2], "maximal-utility") << alpha;
  }
}

TEST_F(CliTest, ScanBothModesWritesRowsForEach) {
  const Result r = Run({"scan", "--mode", "both", "--alpha-grid", "0.5:0.5:1.5",
                        "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ReadCsv("scan.csv");
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[1][1], "rsa");
  EXPECT_EQ(rows[4][1], "rd-rsa");
}

TEST_F(CliTest, ScanRejectsEmptyGrid) {
  EXPECT_EQ(Run({"scan", "--alpha-grid", "2:0.1:1", "--out", Out()}).code, 1);
  EXPECT_EQ(Run({"scan", "--out", Out()}).code, 1);
}

TEST_F(CliTest, FitRecoversSyntheticGeneratingPoint) {
  const ReferenceGame game =
      SoftenLexicon(MustacheGlassesHatGame(), kDefaultSofteningEpsilon);
  const Trajectory t = Iterate(game, {.alpha = 1.2, .max_depth = 3});
  const std::string counts = (dir_ / "counts.csv").string();
  std::ofstream(counts) << CountsToCsv(
      SyntheticCounts(t.records[3].listener, game, 1'000'000'000));
  const Result r = Run({"fit", "--game", kMustache, "--soften", "0.05", "--counts",
                        counts, "--alpha-grid", "0.8:0.1:1.6", "--max-depth",
                        "8", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("at alpha=1.2 depth=3"), std::string::npos) << r.out;
  const std::string summary = Read("fit_summary.json");
  EXPECT_NE(summary.find("\"best_alpha\": 1.2"), std::string::npos) << summary;
  EXPECT_NE(summary.find("\"best_depth\": 3"), std::string::npos) << summary;
  EXPECT_TRUE(fs::exists(dir_ / "fit_grid.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "fit_listeners.json"));
}

TEST_F(CliTest, FitListsUnknownLabels) {
  const std::string counts = (dir_ / "bad.csv").string();
  std::ofstream(counts) << "utterance,meaning,count\nbeard,m,3\nhat,hg,2\n";
  const Result r = Run({"fit", "--counts", counts, "--alpha", "1", "--out", Out()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("beard"), std::string::npos) << r.err;
}

TEST_F(CliTest, FitBundledFixture) {
  const Result r = Run({"fit", "--counts",
                        std::string(RDRSA_DATA_DIR) + "/counts/synthetic_mustache.csv",
                        "--alpha-grid", "0.5:0.5:2", "--mode", "both",
                        "--max-depth", "5", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("rsa: best rho=1 at alpha=1 depth=1"), std::string::npos)
      << r.out;
}

TEST_F(CliTest, DemoFig5) {
  const Result r = Run({"demo", "fig5", "--out", Out()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string doc = Read("fig5_speakers.json");
  EXPECT_NE(doc.find("\"max_utility_solution\""), std::string::npos);
  EXPECT_NE(r.out.find("fig5: rd-rsa alpha=0.5 friend mass per meaning [0.99999"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, EveryDemoRuns) {
  for (const char* name : {"fig2", "fig3", "fig4top"}) {
    const Result r = Run({"demo", name, "--out", Out()});
    EXPECT_EQ(r.code, 0) << name << ": " << r.err;
  }
  EXPECT_NE(Read("fig2_trajectory.csv").find("speaker"), std::string::npos);
  EXPECT_NE(Read("fig3_listeners.json").find("\"literal\""), std::string::npos);
  EXPECT_EQ(ReadCsv("fig4top_scan.csv").size(), 9u);
}

TEST_F(CliTest, UnknownDemoListsAvailable) {
  const Result r = Run({"demo", "nope", "--out", Out()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("fig2, fig3, fig4top, fig5"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingGameIsIoError) {
  const Result r = Run({"run", "--game", (dir_ / "none.json").string(), "--out", Out()});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, UnwritableOutputIsIoError) {
  std::ofstream(dir_ / "file") << "x";
  const Result r = Run({"run", "--out", (dir_ / "file" / "sub").string()});
  EXPECT_EQ(r.code, 2) << r.err;
}

TEST_F(CliTest, InvalidGameIsValidationError) {
  const std::string path = (dir_ / "bad.json").string();
  std::ofstream(path) << R"({"meanings":["a"],"utterances":["x"],"lexicon":[[0]]})";
  const Result r = Run({"run", "--game", path, "--out", Out()});
  EXPECT_EQ(r.code, 1);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Run({}).code, 1);
  EXPECT_EQ(Run({"run", "--bogus"}).code, 1);
  EXPECT_EQ(Run({"run", "--mode", "neither", "--out", Out()}).code, 1);
  EXPECT_EQ(Run({"fit", "--alpha", "1", "--out", Out()}).code, 1);
  EXPECT_EQ(Run({"run", "--max-depth", "0", "--out", Out()}).code, 1);
  EXPECT_EQ(Run({"--help"}).code, 0);
}

}  // namespace
}  // namespace rdrsa::cli
