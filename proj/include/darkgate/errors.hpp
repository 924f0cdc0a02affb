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

#ifndef DARKGATE_ERRORS_HPP
#define DARKGATE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace darkgate {

// Invalid user input: bad configuration, unknown names, violated preconditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Failure inside a numerical routine (integrator, root finder, inversion).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string &what, double at_time = -1.0)
      : std::runtime_error(what), at_time_(at_time) {}
  // Simulation time of the failure in seconds, or -1 when not applicable.
  double at_time() const { return at_time_; }

 private:
  double at_time_;
};

}  // namespace darkgate

#endif  // DARKGATE_ERRORS_HPP
