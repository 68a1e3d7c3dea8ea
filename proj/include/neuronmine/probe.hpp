// Copyright 2026 The neuronmine Authors
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

#ifndef NEURONMINE_PROBE_HPP_
#define NEURONMINE_PROBE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "neuronmine/autonet.hpp"

namespace neuronmine {

// kMinMax spans [min, max] of the activations; kZeroMax spans [0, max].
enum class GridMode : std::uint8_t { kMinMax, kZeroMax };

GridMode parse_grid_mode(std::string_view name);

// k evenly spaced thresholds, endpoints included. k >= 2, values non-empty.
std::vector<double> threshold_grid(std::span<const double> values, int k = 10,
                                   GridMode mode = GridMode::kMinMax);

// Fraction of positions where the prediction (value <= t -> 0, else 1)
// equals the label.
double accuracy_at(std::span<const double> values, std::span<const int> labels, double t);

struct NeuronProbe {
  NeuronRef neuron;
  double best_accuracy = 0.0;
  double best_threshold = 0.0;
  std::vector<double> grid;
};

struct ProbeResult {
  // In probing order: code, dec1, dec2, each by ascending index.
  std::vector<NeuronProbe> neurons;
  std::size_t best = 0;

  const NeuronProbe& global_best() const { return neurons.at(best); }
};

struct ProbeOptions {
  int k = 10;
  GridMode grid = GridMode::kMinMax;
};

// Single-threshold probe of every neuron. Thresholds come from the neuron's
// row in `grid_reference` when given (e.g. training-set activations), else
// from the sample itself. Updates use >=, so the last tied threshold and the
// last tied neuron win.
ProbeResult rank_neurons(const ActivationMatrix& sample, std::span<const int> labels,
                         const ProbeOptions& options = {},
                         const ActivationMatrix* grid_reference = nullptr);

// "layer,neuron,best_accuracy,best_threshold" rows plus a final
// "global_best:<layer>,<index>,<accuracy>,<threshold>" row.
void write_probe_csv(const ProbeResult& result, std::ostream& out);
void write_probe_csv(const ProbeResult& result, const std::filesystem::path& path);

struct ProbeSummary {
  NeuronRef neuron;
  double accuracy = 0.0;
  double threshold = 0.0;
};

// Reads the global_best row back from a probe CSV.
ProbeSummary read_probe_summary(const std::filesystem::path& path);

}  // namespace neuronmine

#endif  // NEURONMINE_PROBE_HPP_
