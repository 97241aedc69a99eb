# Copyright 2026 The respark Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import respark


def test_triangle_resistances():
    g = respark.WeightedGraph(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)])
    assert respark.resistances(g) == pytest.approx([2 / 3] * 3, abs=1e-12)
    lap = g.laplacian()
    assert np.allclose(lap, [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])


def test_projection_matrix_trace():
    g = respark.generate("erdos-renyi", 15, p=0.4, seed=4)
    p = respark.projection_matrix(g)
    assert np.trace(p) == pytest.approx(14.0, abs=1e-8)
    assert np.linalg.norm(p @ p - p, 2) < 1e-8


def test_budget_value():
    assert respark.compute_budget(0.5, 0.1, 1.0, 1.0, 10, 45) == 83126


def test_sparsify_and_verify():
    g = respark.generate("erdos-renyi", 20, p=0.4, seed=1)
    h, diags = respark.sparsify(g, eps=0.5, budget_override=3000, seed=9,
                                resistance_mode="exact")
    assert h.step == len(diags) == 1
    ok, worst = respark.spectral_check(h, g, 0.5)
    assert ok and worst < 0.5
    assert respark.projection_error(h, g) == pytest.approx(diags[-1].proj_error_norm, abs=1e-12)
    again, _ = respark.sparsify(g, eps=0.5, budget_override=3000, seed=9,
                                resistance_mode="exact")
    assert again.to_text() == h.to_text()


def test_no_drop_reconstructs_graph():
    g = respark.generate("cycle", 6, seed=0)
    h, _ = respark.sparsify(g, budget_override=7, no_drop=True, block_size=2)
    assert np.allclose(h.laplacian(), g.laplacian(), atol=1e-12)


def test_dominating_mean():
    xs = respark.sample_dominating_w0(0.01, 1.0, 200000, seed=3)
    assert min(xs) >= 1.0 and max(xs) <= 100.0
    assert np.mean(xs) == pytest.approx(1 + math.log(100), rel=0.02)


def test_experiment_json_deterministic():
    a = respark.run_experiment_json(n=10, p=0.5, budget_override=600, trials=3, seed=5,
                                    resistance_mode="exact")
    b = respark.run_experiment_json(n=10, p=0.5, budget_override=600, trials=3, seed=5,
                                    resistance_mode="exact")
    assert a == b
    doc = json.loads(a)
    assert doc["schema_version"] == 1
    assert doc["regime"] == "stress"
    assert len(doc["trials"]) == 3


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        respark.WeightedGraph(2, [(0, 0, 1.0)])
    g = respark.WeightedGraph(4, [(0, 1, 1.0), (2, 3, 1.0)])
    with pytest.raises(RuntimeError):
        respark.projection_matrix(g)
