// Copyright 2026 The syneval Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "syneval_cli/cli.hpp"
#include "test_support.hpp"

namespace syneval::cli {
namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("syneval_cli_" + std::string(::testing::UnitTest::GetInstance()
                                             ->current_test_info()
                                             ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int quiet(const std::vector<std::string>& args) {
    ::testing::internal::CaptureStdout();
    ::testing::internal::CaptureStderr();
    const int code = run(args);
    out_ = ::testing::internal::GetCapturedStdout();
    err_ = ::testing::internal::GetCapturedStderr();
    return code;
  }

  fs::path dir_;
  std::string out_, err_;
};

TEST_F(Cli, UsageErrorsExitWithTwo) {
  EXPECT_EQ(quiet({}), kExitUsage);
  EXPECT_EQ(quiet({"frobnicate"}), kExitUsage);
  EXPECT_EQ(quiet({"generate", "--per-cell", "many"}), kExitUsage);
  EXPECT_EQ(quiet({"generate", "--suite", "nonsense"}), kExitUsage);
  EXPECT_EQ(quiet({"--version"}), kExitOk);
  EXPECT_NE(out_.find("syneval"), std::string::npos);
  EXPECT_EQ(quiet({"generate", "--help"}), kExitOk);
}

TEST_F(Cli, DomainErrorsAreStructured) {
  EXPECT_EQ(quiet({"generate", "--suite", "agreement", "--lexicon", path("missing.json"), "--out", path("s.jsonl")}),
            kExitDomainError);
  const auto j = nlohmann::json::parse(err_);
  EXPECT_EQ(j.at("exit_code"), 1);
  EXPECT_EQ(j.at("error"), "IoFailure");
  EXPECT_NE(j.at("message").get<std::string>().find("missing.json"), std::string::npos);
}

TEST_F(Cli, GenerateWritesSuiteAndManifest) {
  ASSERT_EQ(quiet({"generate", "--suite", "agreement", "--per-cell", "2", "--seed", "7",
                   "--out", path("suite.jsonl")}),
            kExitOk)
      << err_;
  const auto suite = testing::slurp(path("suite.jsonl"));
  EXPECT_EQ(testing::split_lines(suite).size(), 36u);
  EXPECT_TRUE(testing::matches_golden("agreement_suite_seed7.jsonl", suite));
  const auto m = nlohmann::json::parse(testing::slurp(path("suite.jsonl.manifest.json")));
  EXPECT_EQ(m.at("command"), "generate");
  EXPECT_EQ(m.at("seed"), 7);
  EXPECT_EQ(m.at("outputs").size(), 1u);
  EXPECT_NE(m.at("config").get<std::string>().find("per-cell=2"), std::string::npos)
      << m.at("config");

  ASSERT_EQ(quiet({"generate", "--suite", "agreement", "--per-cell", "2", "--seed", "7",
                   "--out", path("again.jsonl")}),
            kExitOk);
  EXPECT_EQ(testing::slurp(path("again.jsonl")), suite);
}

TEST_F(Cli, ConfigSectionsApplyAndFlagsOverride) {
  {
    std::ofstream cfg(path("c.toml"));
    cfg << "[generate]\nsuite = \"corpus\"\nsentences = 12\nseed = 3\n";
  }
  ASSERT_EQ(quiet({"generate", "--config", path("c.toml"), "--out", path("a.txt")}), kExitOk)
      << err_;
  EXPECT_EQ(testing::split_lines(testing::slurp(path("a.txt"))).size(), 12u);
  ASSERT_EQ(quiet({"generate", "--config", path("c.toml"), "--sentences", "5", "--out",
                   path("b.txt")}),
            kExitOk);
  EXPECT_EQ(testing::split_lines(testing::slurp(path("b.txt"))).size(), 5u);
  {
    std::ofstream cfg(path("bad.toml"));
    cfg << "[generate]\nunknown_key = 1\n";
  }
  EXPECT_EQ(quiet({"generate", "--config", path("bad.toml"), "--out", path("c.txt")}),
            kExitUsage);
}

TEST_F(Cli, TrainEvaluateAndScoreTheOracle) {
  ASSERT_EQ(quiet({"generate", "--suite", "agreement", "--per-cell", "2", "--out",
                   path("suite.jsonl")}),
            kExitOk);
  ASSERT_EQ(quiet({"generate", "--suite", "corpus", "--sentences", "300", "--out",
                   path("corpus.txt")}),
            kExitOk);
  ASSERT_EQ(quiet({"train", path("corpus.txt"), "--model", "ngram", "--out", path("m.bin")}),
            kExitOk)
      << err_;
  ASSERT_EQ(quiet({"eval", "--model", path("m.bin"), "--suite", path("suite.jsonl"),
                   "--report", path("r.json"), "--tsv", path("r.tsv")}),
            kExitOk)
      << err_;
  const auto r = nlohmann::json::parse(testing::slurp(path("r.json")));
  EXPECT_EQ(r.at("suite"), "suite.jsonl");
  EXPECT_TRUE(fs::exists(path("r.json.manifest.json")));

  ASSERT_EQ(quiet({"eval", "--model", "oracle", "--suite", path("suite.jsonl"), "--report",
                   path("o.json")}),
            kExitOk)
      << err_;
  const auto o = nlohmann::json::parse(testing::slurp(path("o.json")));
  EXPECT_EQ(o.at("overall_accuracy"), 1.0);

  EXPECT_EQ(quiet({"train", path("corpus.txt"), "--model", "rnn", "--epochs", "0", "--out",
                   path("r.bin")}),
            kExitDomainError);
}

TEST_F(Cli, QuestionFormationRoundTrip) {
  ASSERT_EQ(quiet({"qform-gen", "--out-dir", path("q"), "--withhold", "--sample", "400"}),
            kExitOk)
      << err_;
  for (const char* f : {"train.jsonl", "test_ambiguous.jsonl", "test_disambiguating.jsonl",
                        "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "q" / f)) << f;
  }
  ASSERT_EQ(quiet({"qform-eval", "--model", "structural-rule", "--data-dir", path("q"),
                   "--report", path("g.json")}),
            kExitOk)
      << err_;
  const auto g = nlohmann::json::parse(testing::slurp(path("g.json")));
  for (const auto& set : g.at("sets")) EXPECT_EQ(set.at("accuracy"), 1.0);
}

}  // namespace
}  // namespace syneval::cli
