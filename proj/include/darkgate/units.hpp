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

#ifndef DARKGATE_UNITS_HPP
#define DARKGATE_UNITS_HPP

#include <numbers>

namespace darkgate {

// Internally every frequency is an angular frequency in rad/s, lengths are
// in micrometres and times in seconds.
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rydberg constant in frequency units (Hz).
inline constexpr double kRydbergHz = 3.2898e15;

inline constexpr double mhz(double v) { return kTwoPi * 1e6 * v; }
inline constexpr double ghz(double v) { return kTwoPi * 1e9 * v; }
inline constexpr double khz(double v) { return kTwoPi * 1e3 * v; }
inline constexpr double to_mhz(double rad_per_s) { return rad_per_s / (kTwoPi * 1e6); }
inline constexpr double to_ghz(double rad_per_s) { return rad_per_s / (kTwoPi * 1e9); }

}  // namespace darkgate

#endif  // DARKGATE_UNITS_HPP
