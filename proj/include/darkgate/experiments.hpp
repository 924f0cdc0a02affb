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

#ifndef DARKGATE_EXPERIMENTS_HPP
#define DARKGATE_EXPERIMENTS_HPP

#include <ostream>
#include <string>

#include "darkgate/config.hpp"

namespace darkgate {

// "csv" or "json".
std::string output_format(const std::string &command);

// Runs a validated experiment and writes its output. CSV output starts with
// '#' metadata lines (schema, resolved config) followed by a header row whose
// column names carry units. Output depends only on the config.
void run_experiment(const ExperimentConfig &config, std::ostream &out);

}  // namespace darkgate

#endif  // DARKGATE_EXPERIMENTS_HPP
