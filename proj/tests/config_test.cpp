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

#include "darkgate/config.hpp"

#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "darkgate/errors.hpp"
#include "darkgate/units.hpp"

namespace darkgate {
namespace {

std::string config_dir() { return DARKGATE_CONFIG_DIR; }

TEST(Config, EveryPresetParses) {
  int count = 0;
  for (const auto &entry : std::filesystem::directory_iterator(config_dir())) {
    if (entry.path().extension() != ".cfg") continue;
    ++count;
    SCOPED_TRACE(entry.path().string());
    ExperimentConfig c = load_config(entry.path().string());
    EXPECT_FALSE(c.command.empty());
    EXPECT_EQ(c.resolved()["command"], c.command);
  }
  EXPECT_EQ(count, 14);
}

TEST(Config, RangeForms) {
  auto c = parse_config("command: budget-vs-k\nk: {from: 2, to: 5}\n");
  EXPECT_EQ(c.k, (std::vector<int>{2, 3, 4, 5}));
  auto r = parse_config("command: budget-vs-r\nk: 6\nr_um: {from: 8, to: 9, step: 0.5}\n");
  EXPECT_EQ(r.r, (std::vector<double>{8.0, 8.5, 9.0}));
  auto l = parse_config("command: nonadiabatic-scan\nk: [1, 2]\nomega_t_over_b1: {from: 0.01, to: 1, count: 3, log: true}\n");
  ASSERT_EQ(l.omega_t_over_b1.size(), 3u);
  EXPECT_NEAR(l.omega_t_over_b1[1], 0.1, 1e-15);
  EXPECT_THROW(parse_config("command: nonadiabatic-scan\nk: 1\nomega_t_over_b1: {from: 0, to: 1, count: 3, log: true}\n"),
               ConfigError);
}

TEST(Config, UnitsAreConverted) {
  // Omega_c is optimized by the budget commands, so it is only accepted where it is an input.
  EXPECT_THROW(parse_config("command: budget-vs-r\nk: 4\nr_um: 10\nomega_c_mhz: 20\n"), ConfigError);
  auto c = parse_config("command: gate-fidelity\nk: 2\nr_um: 10\nomega_c_mhz: 20\ndecay_rate_per_s: [1000, 3000]\n");
  EXPECT_DOUBLE_EQ(c.omega_c, mhz(20.0));
  EXPECT_EQ(c.decay_rates, (std::vector<double>{1e3, 3e3}));
}

TEST(Config, RejectsUnknownAndMisplacedKeys) {
  try {
    parse_config("command: budget-vs-k\nk: 3\ncolour: blue\n");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError &e) {
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 3\nnodes: 12\n"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 3\nmodel: {spectators: true, colour: 1}\n"), ConfigError);
  EXPECT_THROW(parse_config("k: 3\n"), ConfigError);
  EXPECT_THROW(parse_config("command: fly\n"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: [3\n"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 0\n"), ConfigError);
  EXPECT_THROW(parse_config("command: darkstate-trace\nk: 7\nr_um: 10\nomega_t_over_b1: 0.1\n"), ConfigError);
  EXPECT_THROW(parse_config("command: gate-fidelity\nk: 5\nr_um: 8\nomega_t_over_b1: 0.42\n"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 3\nscheme: 42S-43S\n"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 3\ntol: -1\n"), ConfigError);
}

TEST(Config, OverridesAndCommand) {
  auto c = parse_config("command: darkstate-trace\nk: [1, 2]\nr_um: 10\nomega_t_over_b1: 0.1\nmodel: {b2: true}\n",
                        {"k=3", "model.b2=false", "gates=[fanout]"});
  EXPECT_EQ(c.k, (std::vector<int>{3}));
  EXPECT_FALSE(c.model.include_b2);
  EXPECT_EQ(c.gates, (std::vector<GateKind>{GateKind::kFanout}));
  auto d = parse_config("k: 4\n", {}, ".", "budget-vs-k");
  EXPECT_EQ(d.command, "budget-vs-k");
  EXPECT_THROW(parse_config("command: budget-vs-r\nk: 4\n", {}, ".", "budget-vs-k"), ConfigError);
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 4\n", {"nonsense"}), ConfigError);
}

TEST(Config, SchemeFileResolvesAgainstBaseDir) {
  auto c = parse_config("command: budget-vs-k\nk: 3\nschemes_file: schemes.json\nscheme: 87S-95S\n", {},
                        DARKGATE_DATA_DIR);
  EXPECT_EQ(c.scheme, find_scheme("87S-95S"));
  EXPECT_THROW(parse_config("command: budget-vs-k\nk: 3\nschemes_file: missing.json\n", {}, DARKGATE_DATA_DIR),
               ConfigError);
}

TEST(Config, ResolvedIsDeterministic) {
  auto a = load_config(config_dir() + "/fig4b.cfg");
  auto b = load_config(config_dir() + "/fig4b.cfg");
  EXPECT_EQ(a.resolved().dump(), b.resolved().dump());
}

}  // namespace
}  // namespace darkgate
