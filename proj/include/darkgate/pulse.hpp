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

#ifndef DARKGATE_PULSE_HPP
#define DARKGATE_PULSE_HPP

namespace darkgate {

// Offset Gaussian Omega(t) = peak (exp(-(t - T/2)^2 / 2 sigma^2) - exp(-(T/2)^2 / 2 sigma^2)),
// sigma = T/5, vanishing at both ends.
struct PulseSpec {
  double peak = 0.0;      // rad/s
  double duration = 0.0;  // s
  double sigma = 0.0;     // s

  double amplitude(double t) const;
  // Numerical quadrature of the pulse area over [0, duration].
  double area() const;
};

// Pulse with area 2 pi. The duration-peak product is found once by root-finding on the quadrature.
PulseSpec make_pulse(double peak);

// Constant-amplitude pulse of the given area.
double square_pulse_duration(double rabi, double area);

}  // namespace darkgate

#endif  // DARKGATE_PULSE_HPP
