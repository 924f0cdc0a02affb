# Copyright 2026 The darkgate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Dark-state multi-qubit Rydberg and superconducting gates.

Frequencies are in MHz (not angular) and lengths in micrometres at this
boundary. Invalid input raises ValueError.
"""

import json

from darkgate import _core
from darkgate._core import average_gate_fidelity, critical_distance, ideal_gate, run_config

__all__ = [
    "average_gate_fidelity",
    "critical_distance",
    "dark_budget",
    "dipolar_coupling_mhz",
    "ideal_gate",
    "optimize",
    "quantize",
    "run_config",
    "sc_budget",
    "schemes",
]

dipolar_coupling_mhz = _core.dipolar_coupling_mhz


def schemes():
    """Built-in Rydberg level schemes."""
    return json.loads(_core.schemes_json())


def dark_budget(gate, k, r_um, omega_t_mhz, omega_c_mhz=16.0, decay_rate=1e3, scheme="101S-109S"):
    """Closed-form error budget of the dark-state gate."""
    return json.loads(_core.dark_budget_json(gate, k, r_um, omega_t_mhz, omega_c_mhz, decay_rate, scheme))


def optimize(gate, k, scheme="101S-109S", decay_rate=1e3, blockade=False):
    """Budget-minimizing (r, Omega_t, Omega_c) and the budget there."""
    return json.loads(_core.optimize_json(gate, k, scheme, decay_rate, blockade))


def quantize(gate, row):
    """Quantized example circuit for one row of the k = 2 table."""
    return json.loads(_core.quantize_json(gate, row))


def sc_budget(gate, k):
    """Error budget of the example superconducting gate."""
    return json.loads(_core.sc_budget_json(gate, k))
