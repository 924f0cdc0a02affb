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

#include "darkgate/pulse.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "darkgate/errors.hpp"
#include "darkgate/units.hpp"

namespace darkgate {

double PulseSpec::amplitude(double t) const {
  if (t <= 0.0 || t >= duration) return 0.0;
  double u = (t - 0.5 * duration) / sigma;
  double edge = 0.5 * duration / sigma;
  return peak * (std::exp(-0.5 * u * u) - std::exp(-0.5 * edge * edge));
}

double PulseSpec::area() const {
  auto f = [this](double t) { return amplitude(t); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, duration, 10, 1e-14);
}

namespace {

// Area is proportional to peak * T at fixed sigma / T, so the product is solved once.
double solve_area_product() {
  auto area_minus_target = [](double product) {
    PulseSpec p{1.0, product, product / 5.0};
    return p.area() - kTwoPi;
  };
  boost::uintmax_t iterations = 200;
  auto tol = boost::math::tools::eps_tolerance<double>(50);
  auto [lo, hi] = boost::math::tools::toms748_solve(area_minus_target, 1.0, 100.0, tol, iterations);
  if (iterations >= 200) throw NumericalError("pulse duration root-find did not converge");
  return 0.5 * (lo + hi);
}

}  // namespace

PulseSpec make_pulse(double peak) {
  if (!(peak > 0.0) || !std::isfinite(peak)) throw ConfigError("pulse peak amplitude must be positive");
  static const double product = solve_area_product();
  return PulseSpec{peak, product / peak, product / peak / 5.0};
}

double square_pulse_duration(double rabi, double area) {
  if (!(rabi > 0.0)) throw ConfigError("Rabi frequency must be positive");
  return area / rabi;
}

}  // namespace darkgate
