// Copyright 2026 The MASE Solver Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "mase/io.h"
#include "mase/metrics.h"

namespace mase::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("mase_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), "mase");
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  static int CountLines(const std::string& path) {
    std::ifstream in(path);
    int lines = 0;
    for (std::string line; std::getline(in, line);) ++lines;
    return lines;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, GenerateThenSolveLp) {
  const std::string game = Path("g.json");
  const std::string strategy = Path("s.json");
  ASSERT_EQ(Run({"gen", "normal", "--players", "2", "--actions", "2", "--seed", "0",
                 "-o", game}),
            kExitOk);
  EXPECT_TRUE(fs::exists(game));
  EXPECT_TRUE(fs::exists(game + ".manifest.json"));
  ASSERT_EQ(Run({"solve", "lp", "--game", game, "--coalitions", "all", "-o", strategy}),
            kExitOk);
  EXPECT_NE(out_.str().find("value "), std::string::npos);
  EXPECT_NO_THROW(ParseStrategy(ReadFile(strategy)));
}

TEST_F(CliTest, SolveFtplWritesHundredRowsAndIsReproducible) {
  const std::string metrics = Path("m.csv");
  const std::string strategy = Path("s.json");
  std::vector<std::string> args = {"solve", "ftpl", "--game", "pd", "--coalitions", "all",
                                   "--T", "10000", "--eta", "0.01", "--seed", "0",
                                   "--metrics", metrics, "-o", strategy};
  ASSERT_EQ(Run(args), kExitOk) << err_.str();
  EXPECT_EQ(CountLines(metrics), 101);
  std::ifstream in(metrics);
  EXPECT_EQ(ReadMetricsCsv(in).size(), 100u);
  const std::string first_metrics = ReadFile(metrics);
  const std::string first_strategy = ReadFile(strategy);
  ASSERT_EQ(Run(args), kExitOk);
  EXPECT_EQ(ReadFile(metrics), first_metrics);
  EXPECT_EQ(ReadFile(strategy), first_strategy);
}

TEST_F(CliTest, EvalPrintsThreeMetrics) {
  const std::string strategy = Path("s.json");
  WriteFile(strategy,
            R"({"support":[{"action":[0,1],"prob":0.5},{"action":[1,0],"prob":0.5}]})");
  ASSERT_EQ(Run({"eval", "--game", "pd", "--strategy", strategy, "--coalitions", "all"}),
            kExitOk);
  const std::string text = out_.str();
  EXPECT_NE(text.find("exploitability 0.1\n"), std::string::npos);
  EXPECT_NE(text.find("coalition_exploitability 0.1\n"), std::string::npos);
  EXPECT_NE(text.find("social_welfare 1\n"), std::string::npos);
}

TEST_F(CliTest, RandomizedCommandsRequireSeed) {
  EXPECT_EQ(Run({"solve", "ftpl", "--game", "pd", "--metrics", Path("m.csv"), "-o",
                 Path("s.json")}),
            kExitInputError);
  EXPECT_EQ(Run({"gen", "normal", "--players", "2", "--actions", "2", "-o", Path("g.json")}),
            kExitInputError);
  EXPECT_EQ(Run({"baseline", "--game", "pd", "--T", "10", "--metrics", Path("m.csv"), "-o",
                 Path("s.json")}),
            kExitInputError);
  EXPECT_EQ(Run({"ewf", "search", "--game", "pd", "--epsilon", "0.1", "--backend", "ftpl"}),
            kExitInputError);
}

TEST_F(CliTest, InputErrorsExitOne) {
  EXPECT_EQ(Run({"solve", "lp", "--game", "pd", "--bogus"}), kExitInputError);
  EXPECT_FALSE(err_.str().empty());
  EXPECT_EQ(Run({"solve", "lp", "--game", "no_such_game", "-o", Path("s.json")}),
            kExitInputError);
  EXPECT_EQ(Run({"solve", "lp", "--game", "pd", "--coalitions", "pairs", "-o",
                 Path("s.json")}),
            kExitInputError);
  EXPECT_EQ(Run({}), kExitInputError);
  EXPECT_EQ(Run({"--help"}), kExitOk);
}

TEST_F(CliTest, CapErrorsExitTwo) {
  ::setenv("MASE_SIZE_CAP", "4", 1);
  const int code = Run({"solve", "lp", "--game", "pigou3", "--coalitions", "all", "-o",
                        Path("s.json")});
  ::unsetenv("MASE_SIZE_CAP");
  EXPECT_EQ(code, kExitCapError) << err_.str();
}

TEST_F(CliTest, TreeDecompositionBuildAndCheck) {
  const std::string game = Path("p.json");
  const std::string td = Path("td.json");
  ASSERT_EQ(Run({"gen", "polymatrix", "--players", "6", "--actions", "2", "--degree", "1",
                 "--seed", "3", "-o", game}),
            kExitOk);
  ASSERT_EQ(Run({"td", "build", "--game", game, "-o", td}), kExitOk);
  ASSERT_EQ(Run({"td", "check", "--game", game, "--td", td}), kExitOk);
  EXPECT_EQ(out_.str().rfind("valid", 0), 0u);
  const std::string bad = Path("bad.json");
  WriteFile(bad, R"({"bags":[[0],[1]],"edges":[[0,1]],"root":0})");
  EXPECT_EQ(Run({"td", "check", "--game", "pd", "--td", bad}), kExitInputError);
  EXPECT_NE(out_.str().find("invalid"), std::string::npos);
}

TEST_F(CliTest, EwfCommands) {
  const std::string frontier = Path("f.csv");
  ASSERT_EQ(Run({"ewf", "sweep", "--game", "pd", "--points", "11", "--max-epsilon", "0.2",
                 "-o", frontier}),
            kExitOk)
      << err_.str();
  EXPECT_EQ(ReadFile(frontier).substr(0, 18), "epsilon,welfare,w\n");
  EXPECT_EQ(CountLines(frontier), 12);
  ASSERT_EQ(Run({"ewf", "lp", "--game", "pd", "--epsilon", "0.1"}), kExitOk);
  EXPECT_EQ(out_.str().rfind("welfare 1\n", 0), 0u) << out_.str();
  ASSERT_EQ(Run({"ewf", "search", "--game", "pd", "--epsilon", "0", "-o", Path("e.json")}),
            kExitOk);
  EXPECT_NE(out_.str().find("welfare 0.4"), std::string::npos) << out_.str();
}

TEST_F(CliTest, BaselineWritesMetrics) {
  const std::string metrics = Path("b.csv");
  ASSERT_EQ(Run({"baseline", "--algo", "omd", "--game", "stag_hunt", "--T", "1000",
                 "--seed", "1", "--metrics", metrics, "-o", Path("s.json")}),
            kExitOk);
  EXPECT_EQ(CountLines(metrics), 101);
  EXPECT_EQ(Run({"baseline", "--algo", "sgd", "--game", "pd", "--seed", "1", "--metrics",
                 metrics, "-o", Path("s.json")}),
            kExitInputError);
}

}  // namespace
}  // namespace mase::cli
