// Copyright 2026 The darkgate Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  fs::path dir = fs::temp_directory_path() / ("darkgate_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult cli(const std::string &args) {
  fs::path out = scratch() / "stdout.txt";
  std::string cmd = std::string(DARKGATE_CLI_PATH) + " " + args + " > " + out.string() + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CliResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

std::string preset(const std::string &name) { return std::string(DARKGATE_CONFIG_DIR) + "/" + name + ".cfg"; }

TEST(Cli, ConfigErrorsExitWithTwo) {
  EXPECT_EQ(cli("optimize --set no_such_key=1").code, 2);
  EXPECT_EQ(cli("run --config /nonexistent.cfg").code, 2);
  EXPECT_EQ(cli("budget-vs-k --config " + preset("fig9")).code, 2);
  EXPECT_EQ(cli("run --config " + preset("fig4b") + " --set k=0").code, 2);
  EXPECT_EQ(cli("--bogus-flag").code, 2);
}

TEST(Cli, NumericalFailureExitsWithThreeAndWritesNothing) {
  fs::path out = scratch() / "failed.csv";
  fs::remove(out);
  CliResult r = cli("run --config " + preset("fig3") + " --set k=1 --tol 1e-300 --out " + out.string());
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(out));
}

TEST(Cli, PresetOutputIsByteIdentical) {
  for (const char *name : {"fig9", "fig4a", "table3"}) {
    fs::path a = scratch() / (std::string(name) + "_a"), b = scratch() / (std::string(name) + "_b");
    ASSERT_EQ(cli("run --config " + preset(name) + " --out " + a.string()).code, 0) << name;
    ASSERT_EQ(cli("run -c " + preset(name) + " -o " + b.string() + " --threads 2").code, 0) << name;
    std::string sa = slurp(a);
    EXPECT_FALSE(sa.empty());
    EXPECT_EQ(sa, slurp(b)) << name;
  }
}

TEST(Cli, CsvHeaderAndOverrides) {
  CliResult r = cli("sc-budget --config " + preset("fig9") + " --set k=[3]");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string schema, config, header, row;
  std::getline(in, schema);
  std::getline(in, config);
  std::getline(in, header);
  EXPECT_EQ(schema, "# schema: darkgate.sc-budget/1");
  EXPECT_EQ(config.rfind("# config: {", 0), 0u);
  EXPECT_EQ(header.rfind("gate,k,", 0), 0u);
  int rows = 0;
  while (std::getline(in, row)) {
    ++rows;
    EXPECT_NE(row.find(",3,"), std::string::npos);
  }
  EXPECT_EQ(rows, 2);
}

TEST(Cli, JsonCommandsCarrySchema) {
  CliResult r = cli("run --config " + preset("table3"));
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"schema\""), std::string::npos);
}

}  // namespace
