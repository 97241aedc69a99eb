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

"""Python bindings for the respark spectral sparsification core."""

from respark._core import (
    ConnectivityError,
    DiagnosticsRecord,
    Edge,
    InputError,
    Sparsifier,
    WeightedGraph,
    compute_budget,
    dominating_w0_mean,
    generate,
    projection_error,
    projection_matrix,
    resistances,
    run_experiment_json,
    sample_dominating_w0,
    sparsify,
    spectral_check,
    spectral_check_graph,
)

__all__ = [
    "ConnectivityError",
    "DiagnosticsRecord",
    "Edge",
    "InputError",
    "Sparsifier",
    "WeightedGraph",
    "compute_budget",
    "dominating_w0_mean",
    "generate",
    "projection_error",
    "projection_matrix",
    "resistances",
    "run_experiment_json",
    "sample_dominating_w0",
    "sparsify",
    "spectral_check",
    "spectral_check_graph",
]
