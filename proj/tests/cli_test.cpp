// Copyright 2026 The tc-qubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>

#include "oracles.hpp"
#include "tcqubo/tcqubo.hpp"

namespace tcqubo {
namespace {

namespace fs = std::filesystem;
using oracle::DataPath;
using oracle::Slurp;

fs::path Scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "tcqubo_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

// Runs the CLI, returns its exit status; stdout goes to `out` when given.
int Cli(const std::string& args, const fs::path& out = {}) {
  std::string cmd = std::string(TCQUBO_CLI) + " " + args;
  cmd += out.empty() ? " >/dev/null" : " >" + out.string();
  cmd += " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json ReadJson(const fs::path& p) { return nlohmann::json::parse(Slurp(p.string())); }

TEST(CliTest, CheckWorkedExampleYes) {
  fs::path out = Scratch("yes.json");
  EXPECT_EQ(Cli("check -i " + DataPath("worked_t2.json") + " --seed 3", out), 0);
  nlohmann::json j = ReadJson(out);
  EXPECT_TRUE(j["displays"].get<bool>());
  EXPECT_TRUE(j["verdict"].get<bool>());
}

TEST(CliTest, CheckWorkedExampleNo) {
  fs::path out = Scratch("no.json");
  EXPECT_EQ(Cli("check -i " + DataPath("worked_t1.json") + " --seed 3 --restarts 2 --sweeps 2000",
                out),
            1);
  nlohmann::json j = ReadJson(out);
  EXPECT_FALSE(j["displays"].get<bool>());
  EXPECT_FALSE(j["qubo_zero"].get<bool>());
  EXPECT_TRUE(j["agree"].get<bool>());
  EXPECT_GT(j["energy"].get<Coeff>(), 0);
}

TEST(CliTest, SameSeedSameBytes) {
  const std::string args = "solve -i " + DataPath("twotree_t1.json") + " --restarts 3 --sweeps 500";
  fs::path a = Scratch("a.json"), b = Scratch("b.json"), c = Scratch("c.json");
  ASSERT_EQ(Cli(args + " --seed 9", a), 0);
  ASSERT_EQ(Cli(args + " --seed 9 --threads 2", b), 0);
  ASSERT_EQ(Cli(args + " --seed 10", c), 0);
  EXPECT_EQ(Slurp(a.string()), Slurp(b.string()));
  EXPECT_EQ(ReadJson(c)["seed"], 10);
}

TEST(CliTest, SeedFromEnvironment) {
  const std::string args = "solve -i " + DataPath("twotree_t1.json") + " --restarts 1 --sweeps 200";
  fs::path a = Scratch("env.json");
  ASSERT_EQ(std::system(("TC_QUBO_SEED=77 " + std::string(TCQUBO_CLI) + " " + args + " >" +
                         a.string())
                            .c_str()),
            0);
  EXPECT_EQ(ReadJson(a)["seed"], 77);
}

TEST(CliTest, GenSolveVerifyCompose) {
  const std::string in = DataPath("worked_t2.json");
  fs::path prefix = Scratch("worked");
  ASSERT_EQ(Cli("gen -i " + in + " -o " + prefix.string()), 0);
  QuboMatrix q = ReadQubo(Slurp(prefix.string() + ".qubo"));
  EXPECT_EQ(q.dimension(), 143u);
  EXPECT_EQ(ReadVariableMap(Slurp(prefix.string() + ".varmap")).size(), 143u);
  nlohmann::json stats = ReadJson(prefix.string() + ".stats.json");
  EXPECT_EQ(stats["logical_qubits"], 143);
  EXPECT_EQ(stats["off_diagonal_nonzeros"], 897);

  ASSERT_EQ(Cli("solve -i " + in + " --seed 1 -o " + prefix.string()), 0);
  nlohmann::json solved = ReadJson(prefix.string() + ".json");
  Assignment a = Assignment::FromString(Slurp(prefix.string() + ".assignment"));
  EXPECT_EQ(q.evaluate(a.bits), solved["energy"].get<Coeff>());

  fs::path report = Scratch("verify.json");
  ASSERT_EQ(Cli("verify -i " + in + " --assignment " + prefix.string() + ".assignment", report), 0);
  nlohmann::json v = ReadJson(report);
  EXPECT_EQ(v["energy"], solved["energy"]);
  EXPECT_EQ(v["verdict"].get<bool>(), solved["energy"].get<Coeff>() == 0);
}

TEST(CliTest, EdgeListInputs) {
  fs::path out = Scratch("edgelist.json");
  EXPECT_EQ(Cli("oracle --format edgelist -i " + DataPath("twotree_network.txt") + " --tree " +
                    DataPath("twotree_t2.txt"),
                out),
            0);
  EXPECT_TRUE(ReadJson(out)["displays"].get<bool>());
  EXPECT_EQ(Cli("stats --format edgelist -i " + DataPath("worked_network.txt") + " --tree " +
                    DataPath("worked_t1.txt"),
                out),
            0);
  EXPECT_EQ(ReadJson(out)["logical_qubits"], 143);
}

TEST(CliTest, BadInput) {
  fs::path bad = Scratch("bad.json");
  std::ofstream(bad) << "{\"network\": {\"edges\": [[0, 1], [1, 0]]}}";
  EXPECT_EQ(Cli("check -i " + bad.string()), 3);
  EXPECT_EQ(Cli("stats -i /nonexistent/file.json"), 3);
  EXPECT_EQ(Cli("verify -i " + DataPath("worked_t2.json") + " --assignment " + bad.string()), 3);
  EXPECT_EQ(Cli("solve -i " + DataPath("worked_t2.json") + " --method magic"), 3);
}

}  // namespace
}  // namespace tcqubo
