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

import math

import numpy as np
import pytest

import darkgate


def test_couplings():
    assert darkgate.dipolar_coupling_mhz(5.0, 8.0) == pytest.approx(5000.0 / 512.0, rel=1e-12)
    assert darkgate.critical_distance(5.0, 9.5) == pytest.approx((5000.0 / 9.5) ** (1.0 / 3.0), rel=1e-12)
    with pytest.raises(ValueError):
        darkgate.critical_distance(5.0, 0.0)


def test_schemes():
    names = [s["name"] for s in darkgate.schemes()["schemes"]]
    assert "101S-109S" in names and "87S-95S" in names


def test_budget_sums_terms():
    b = darkgate.dark_budget("toffoli", 4, 10.0, 0.4)
    assert b["total"] == pytest.approx(sum(t["value"] for t in b["terms"]), rel=1e-12)
    assert 0.0 < b["total"] < 1.0
    with pytest.raises(ValueError):
        darkgate.dark_budget("swap", 4, 10.0, 0.4)


def test_optimize_below_one_percent():
    for gate in ("toffoli", "fanout"):
        res = darkgate.optimize(gate, 5)
        assert res["total"] < 0.01
        assert res["r_um"] >= 8.0


def test_superconducting():
    q = darkgate.quantize("toffoli", 2)
    assert q["inverse_defect"] < 1e-12
    c = np.array(q["capacitance"])
    np.testing.assert_allclose(c @ np.array(q["inverse_capacitance"]), np.eye(len(c)), atol=1e-12)
    assert darkgate.sc_budget("fanout", 3)["total"] < 0.02


def test_fidelity_of_ideal_gate():
    u = darkgate.ideal_gate("toffoli", 2)
    assert u.shape == (8, 8)
    assert darkgate.average_gate_fidelity(u, u) == pytest.approx(1.0, abs=1e-14)
    assert darkgate.average_gate_fidelity(u * np.exp(0.3j), u) == pytest.approx(1.0, abs=1e-14)


def test_run_config_csv():
    text = darkgate.run_config("command: budget-vs-k\nk: [2, 3]\n")
    rows = [line for line in text.splitlines() if line and not line.startswith("#")]
    assert len(rows) >= 3
    assert "total" in rows[0]
    with pytest.raises(ValueError):
        darkgate.run_config("command: budget-vs-k\nk: 3\ncolour: blue\n")
    header = rows[0].split(",")
    total = next(i for i, name in enumerate(header) if name.startswith("total"))
    assert all(math.isfinite(float(r.split(",")[total])) for r in rows[1:])
