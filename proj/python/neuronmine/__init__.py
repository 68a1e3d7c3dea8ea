# Copyright 2026 The neuronmine Authors
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
"""Neuron mining over code-embedding autoencoders."""

from ._core import (
    DataError,
    NumericError,
    ParseError,
    UsageError,
    __version__,
    accuracy_at,
    corr_scores,
    cyclomatic,
    derive_seed,
    entropy,
    gen_synthetic,
    label,
    pearson,
    rank_neurons,
    run_pipeline,
    threshold_grid,
    tokenize,
)

__all__ = [
    "DataError",
    "NumericError",
    "ParseError",
    "UsageError",
    "__version__",
    "accuracy_at",
    "corr_scores",
    "cyclomatic",
    "derive_seed",
    "entropy",
    "gen_synthetic",
    "label",
    "pearson",
    "rank_neurons",
    "run_pipeline",
    "threshold_grid",
    "tokenize",
]
