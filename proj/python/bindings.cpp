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

// Thin pybind11 surface. Structured results cross as JSON text and are
// decoded on the Python side.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "darkgate/analytics.hpp"
#include "darkgate/config.hpp"
#include "darkgate/experiments.hpp"
#include "darkgate/gate.hpp"
#include "darkgate/interactions.hpp"
#include "darkgate/supercircuit.hpp"
#include "darkgate/units.hpp"

namespace py = pybind11;
using namespace darkgate;

namespace {

std::string dark_budget(const std::string &gate, int k, double r_um, double omega_t_mhz, double omega_c_mhz,
                        double decay_rate, const std::string &scheme) {
  GateParams p = gate_params(parse_gate_kind(gate), k, find_scheme(scheme), r_um, mhz(omega_t_mhz),
                             mhz(omega_c_mhz), decay_rate);
  return dark_error_budget(p).to_json().dump();
}

std::string optimize(const std::string &gate, int k, const std::string &scheme, double decay_rate,
                     bool blockade) {
  GateKind kind = parse_gate_kind(gate);
  OptimizationBounds b = default_bounds(kind);
  b.decay_rate = decay_rate;
  b.variant = blockade ? BudgetVariant::kBlockade : BudgetVariant::kDark;
  OptimizationResult res = optimize_parameters(kind, k, find_scheme(scheme), b);
  nlohmann::json j = res.budget.to_json();
  j["r_um"] = res.params.r;
  j["omega_t_mhz"] = to_mhz(res.params.omega_t);
  j["omega_c_mhz"] = to_mhz(res.params.omega_c);
  return j.dump();
}

std::string run_config(const std::string &yaml_text, const std::vector<std::string> &overrides,
                       const std::string &base_dir) {
  ExperimentConfig c = parse_config(yaml_text, overrides, base_dir);
  std::ostringstream out;
  run_experiment(c, out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "darkgate native core";

  m.def("dipolar_coupling_mhz", [](double c3, double r_um) { return to_mhz(dipolar_coupling(c3, r_um)); },
        py::arg("c3"), py::arg("r_um"));
  m.def("critical_distance", &critical_distance, py::arg("c3"), py::arg("delta_mhz"));
  m.def("schemes_json", [] { return schemes_to_json(builtin_schemes()).dump(); });
  m.def("dark_budget_json", &dark_budget, py::arg("gate"), py::arg("k"), py::arg("r_um"), py::arg("omega_t_mhz"),
        py::arg("omega_c_mhz") = 16.0, py::arg("decay_rate") = 1e3, py::arg("scheme") = "101S-109S");
  m.def("optimize_json", &optimize, py::arg("gate"), py::arg("k"), py::arg("scheme") = "101S-109S",
        py::arg("decay_rate") = 1e3, py::arg("blockade") = false);
  m.def("quantize_json",
        [](const std::string &gate, int row) { return quantize(table_circuit(parse_gate_kind(gate), row)).to_json().dump(); },
        py::arg("gate"), py::arg("row"));
  m.def("sc_budget_json",
        [](const std::string &gate, int k) { return sc_error_budget(sc_example_params(parse_gate_kind(gate), k)).to_json().dump(); },
        py::arg("gate"), py::arg("k"));
  m.def("ideal_gate", [](const std::string &gate, int k) { return ideal_gate(parse_gate_kind(gate), k); },
        py::arg("gate"), py::arg("k"));
  m.def("average_gate_fidelity", &average_gate_fidelity, py::arg("u_gate"), py::arg("u_ideal"));
  m.def("run_config", &run_config, py::arg("yaml_text"), py::arg("overrides") = std::vector<std::string>{},
        py::arg("base_dir") = ".");
}
