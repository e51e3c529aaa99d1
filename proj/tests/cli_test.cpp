// Copyright 2026 The qlam Authors
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

// Runs the qlam executable end to end and inspects its output and exit code.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "test_util.hpp"

namespace {

using nlohmann::json;
using qlam::testing::corpus_path;

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(QLAM_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(Cli, CheckPrintsTypes) {
  EXPECT_EQ(run("check " + corpus_path("deutsch_id")).out, "B * S(B)\n");
  EXPECT_EQ(run("check " + corpus_path("teleport")).out, "S(B) => S(B)\n");
  const json j = json::parse(run("check --format json " + corpus_path("swap")).out);
  EXPECT_EQ(j["type"], "B * B");
  EXPECT_EQ(j["matches"], true);
}

TEST(Cli, CheckRejectsCloningOfSuperpositions) {
  const std::string path = ::testing::TempDir() + "clone.qlam";
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs("\\x:S(B). x * x\n", f);
  fclose(f);
  const Result r = run("check --format json " + path);
  EXPECT_EQ(r.code, 4);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["error"]["reason"], "linear variable reused");
}

TEST(Cli, CheckFailsOnExpectationMismatch) {
  const std::string path = ::testing::TempDir() + "mismatch.qlam";
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs("-- expect: B * B\n|0> + |1>\n", f);
  fclose(f);
  EXPECT_EQ(run("check " + path).code, 1);
}

TEST(Cli, ParseErrorsCarryPositions) {
  const std::string path = ::testing::TempDir() + "broken.qlam";
  FILE* f = fopen(path.c_str(), "w");
  ASSERT_NE(f, nullptr);
  fputs("|0> +\n  )\n", f);
  fclose(f);
  const Result r = run("check --format json " + path);
  EXPECT_EQ(r.code, 3);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["error"]["line"], 2);
  EXPECT_EQ(j["error"]["column"], 3);
}

TEST(Cli, DistJsonSchema) {
  const Result r = run("dist --format json " + corpus_path("three_qubit_measure"));
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  double total = 0;
  for (const json& o : j) {
    ASSERT_TRUE(o.contains("p") && o.contains("term"));
    total += o["p"].get<double>();
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
  EXPECT_NEAR(j[0]["p"].get<double>(), 5.0 / 14.0, 1e-12);
}

TEST(Cli, DistLeavesListsBranches) {
  const json j = json::parse(run("dist --leaves --format json " + corpus_path("teleport_skew")).out);
  ASSERT_EQ(j.size(), 4u);
  for (const json& o : j) EXPECT_NEAR(o["p"].get<double>(), 0.25, 1e-9);
}

TEST(Cli, RunUsesSeedAndEnvironment) {
  const std::string file = corpus_path("three_qubit_measure");
  const Result a = run("run --seed 9 " + file);
  const Result b = run("run --seed 9 " + file);
  EXPECT_EQ(a.out, b.out);
  const Result c = run("run --format json " + file + " --seed 5");
  EXPECT_EQ(json::parse(c.out)["seed"], 5);
  const std::string env_cmd = "env QLAM_SEED=5 " + std::string(QLAM_BIN) + " run --format json " + file;
  FILE* pipe = popen(env_cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  pclose(pipe);
  EXPECT_EQ(json::parse(out)["seed"], 5);
  EXPECT_EQ(json::parse(out)["result"], json::parse(c.out)["result"]);
}

TEST(Cli, TraceShowsRules) {
  const Result r = run("trace " + corpus_path("swap"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[beta_b p=1]"), std::string::npos);
  EXPECT_NE(r.out.find("|1> * |0>\n"), std::string::npos);
  const json j = json::parse(run("run --trace --format json " + corpus_path("swap")).out);
  EXPECT_EQ(j["trace"].size(), 3u);
  EXPECT_EQ(j["result"], "|1> * |0>");
}

TEST(Cli, DenoteJson) {
  const json j = json::parse(run("denote --format json " + corpus_path("swap")).out);
  ASSERT_EQ(j.size(), 1u);
  ASSERT_EQ(j[0].size(), 4u);
  EXPECT_NEAR(j[0][2][0].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(run("denote " + corpus_path("teleport")).code, 5);
}

TEST(Cli, Properties) {
  Result r = run("properties --count 40 --format json");
  EXPECT_EQ(r.code, 0);
  json j = json::parse(r.out);
  EXPECT_EQ(j["checked"], 40);
  EXPECT_EQ(j["violations"]["reduction_commutation"], 0);
  r = run("properties --count 40 --mutation swap-ite --format json");
  EXPECT_EQ(r.code, 1);
  j = json::parse(r.out);
  EXPECT_GT(j["violations"]["reduction_commutation"].get<int>(), 0);
  EXPECT_FALSE(j["counterexamples"].empty());
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("dist --fuel 0 " + corpus_path("swap")).code, 2);
  EXPECT_EQ(run("check /nonexistent/file.qlam").code, 5);
}

}  // namespace
