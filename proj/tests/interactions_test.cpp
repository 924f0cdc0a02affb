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

#include "darkgate/interactions.hpp"

#include <cmath>
#include <fstream>

#include <gtest/gtest.h>

#include "darkgate/errors.hpp"

namespace darkgate {
namespace {

constexpr double kTwoPiMHz = 2.0 * 3.14159265358979323846 * 1e6;

TEST(Couplings, DipolarValues) {
  EXPECT_NEAR(dipolar_coupling(-10.2, 10.0) / kTwoPiMHz, -10.2, 1e-12);
  EXPECT_EQ(dipolar_coupling(0.0, 3.0), 0.0);
  EXPECT_NEAR(dipolar_coupling(5.0, 4.0) / dipolar_coupling(5.0, 8.0), 8.0, 1e-12);
  EXPECT_EQ(dipolar_coupling(-5.0, 7.0), -dipolar_coupling(5.0, 7.0));
  EXPECT_LT(std::abs(dipolar_coupling(-10.2, 1e6)), 1e-5);
}

TEST(Couplings, VanDerWaalsValues) {
  EXPECT_NEAR(vdw_coupling(-27.9, 8.0) / kTwoPiMHz, -27.9e3 / 262144.0, 1e-12);
  EXPECT_NEAR(vdw_coupling(-27.9, 8.0) / kTwoPiMHz, -0.1064, 5e-4);
  EXPECT_NEAR(vdw_coupling(-5.0, 5.0) / kTwoPiMHz, -0.32, 1e-12);
  EXPECT_NEAR(vdw_coupling(3.0, 5.0) / vdw_coupling(3.0, 10.0), 64.0, 1e-10);
}

TEST(Couplings, CriticalDistance) {
  // (5e3 / 9.5)^(1/3) um.
  EXPECT_NEAR(critical_distance(5.0, 9.5), 8.07388, 1e-4);
  EXPECT_EQ(critical_distance(0.0, 9.5), 0.0);
  EXPECT_THROW(critical_distance(5.0, 0.0), ConfigError);
  // Channel 3 coupling at 8 um against its detuning.
  EXPECT_NEAR(dipolar_coupling(5.0, 8.0) / kTwoPiMHz, 9.765625, 1e-12);
  EXPECT_THROW(scheme_critical_distance(find_scheme("87S-95S")), ConfigError);
}

TEST(Couplings, LevelSpacing) {
  EXPECT_NEAR(level_spacing(101) / (kTwoPiMHz * 1e3), 3.2898e6 / (101.0 * 101.0 * 101.0), 1e-9);
  EXPECT_NEAR(level_spacing(101) / (kTwoPiMHz * 1e3), 3.19, 0.01);
  EXPECT_NEAR(level_spacing(109) / (kTwoPiMHz * 1e3), 2.54, 0.01);
  for (int n = 20; n < 200; ++n) ASSERT_GT(level_spacing(n), level_spacing(n + 1));
  const auto &s = find_scheme("101S-109S");
  EXPECT_EQ(s.delta_control(GateKind::kToffoli), level_spacing(101));
  EXPECT_EQ(s.delta_target(GateKind::kToffoli), level_spacing(109));
  EXPECT_EQ(s.delta_control(GateKind::kFanout), level_spacing(109));
  EXPECT_EQ(s.delta_target(GateKind::kFanout), level_spacing(101));
}

TEST(Schemes, BuiltinTable) {
  const auto &t = builtin_schemes();
  ASSERT_EQ(t.size(), 3u);
  const double expect[3][4] = {{-5.6, -1.56, -5, 31.8}, {-10.2, -2.87, -27.9, 15.2}, {-49, -14.3, -4300, 2}};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(t[i].c3_b1, expect[i][0]);
    EXPECT_EQ(t[i].c3_b2, expect[i][1]);
    EXPECT_EQ(t[i].c6_mm, expect[i][2]);
    EXPECT_EQ(t[i].e_field, expect[i][3]);
  }
  const auto &ch = t[1].leakage_channels;
  ASSERT_EQ(ch.size(), 7u);
  const double c3[] = {-10.2, -2.9, 5, -8.6, -6.5, -14, 3};
  const double delta[] = {0, 0, 9.5, 382, 52, -207, 3};
  for (int i = 0; i < 7; ++i) {
    EXPECT_EQ(ch[i].id, i + 1);
    EXPECT_EQ(ch[i].c3, c3[i]);
    EXPECT_EQ(ch[i].delta_mhz, delta[i]);
    EXPECT_EQ(ch[i].resonant(), i < 2);
  }
  EXPECT_THROW(find_scheme("nope"), ConfigError);
}

TEST(Schemes, ShippedFileMatchesBuiltins) {
  auto loaded = load_schemes(std::string(DARKGATE_DATA_DIR) + "/schemes.json");
  EXPECT_EQ(loaded, builtin_schemes());
}

TEST(Schemes, JsonRoundTripAndValidation) {
  auto doc = schemes_to_json(builtin_schemes());
  EXPECT_EQ(schemes_from_json(doc), builtin_schemes());
  auto broken = doc;
  broken["schema"] = "other/1";
  EXPECT_THROW(schemes_from_json(broken), ConfigError);
  broken = doc;
  broken["schemes"][1]["leakage_channels"][0]["kind"] = "triple";
  EXPECT_THROW(schemes_from_json(broken), ConfigError);
  EXPECT_THROW(load_schemes("/nonexistent/schemes.json"), ConfigError);
}

TEST(Lattice, LinearChainCentred) {
  auto l = place_atoms(2, Geometry::kLinear, 10.0);
  ASSERT_EQ(l.positions.size(), 3u);
  EXPECT_EQ(l.positions[0], (std::array<double, 2>{0.0, 0.0}));
  EXPECT_EQ(l.positions[1], (std::array<double, 2>{-10.0, 0.0}));
  EXPECT_EQ(l.positions[2], (std::array<double, 2>{10.0, 0.0}));
}

TEST(Lattice, SquareBlocksAndSpacing) {
  // Nearest sites first: k = 3 fills three arms of the plus, k = 4 all four.
  auto l = place_atoms(3, Geometry::kSquare, 8.0);
  ASSERT_EQ(l.positions.size(), 4u);
  EXPECT_EQ(l.positions[1], (std::array<double, 2>{8.0, 0.0}));
  EXPECT_EQ(l.positions[2], (std::array<double, 2>{0.0, 8.0}));
  EXPECT_EQ(l.positions[3], (std::array<double, 2>{-8.0, 0.0}));
  for (int k = 1; k <= 4; ++k) {
    auto lat = place_atoms(k, Geometry::kSquare, 8.0);
    for (int i = 1; i <= k; ++i) EXPECT_NEAR(lat.distance(0, i), 8.0, 1e-12);
  }
  for (int k : {1, 2, 5, 8, 11, 20}) {
    for (Geometry g : {Geometry::kSquare, Geometry::kLinear}) {
      auto lat = place_atoms(k, g, 8.0);
      ASSERT_EQ(lat.positions.size(), static_cast<std::size_t>(k) + 1);
      EXPECT_EQ(lat.positions[0], (std::array<double, 2>{0.0, 0.0}));
      for (int i = 0; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) ASSERT_GE(lat.distance(i, j), 8.0 - 1e-12);
      }
    }
  }
  // k = 8: 3x3 block, single qubit at the centre with four neighbours at r.
  auto l8 = place_atoms(8, Geometry::kSquare, 8.0);
  int nn = 0;
  for (int i = 1; i <= 8; ++i) nn += std::abs(l8.distance(0, i) - 8.0) < 1e-12;
  EXPECT_EQ(nn, 4);
  EXPECT_THROW(place_atoms(2, Geometry::kSquare, 0.0), ConfigError);
  EXPECT_THROW(parse_geometry("hex"), ConfigError);
}

TEST(SystemConfig, ResolvesTargetDrive) {
  SystemConfig c;
  c.lattice_constant = 10.0;
  c.omega_t_over_b1 = 0.1;
  // |B1| at 10 um is 10.2 MHz.
  EXPECT_NEAR(resolve_omega_t(c) / kTwoPiMHz, 1.02, 1e-12);
  c.omega_t = 123.0;
  EXPECT_EQ(resolve_omega_t(c), 123.0);
}

}  // namespace
}  // namespace darkgate
