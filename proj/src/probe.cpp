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

#include "neuronmine/probe.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <string>

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"

namespace neuronmine {

GridMode parse_grid_mode(std::string_view name) {
  if (name == "min-max") return GridMode::kMinMax;
  if (name == "zero-max") return GridMode::kZeroMax;
  throw UsageError("grid must be min-max or zero-max");
}

std::vector<double> threshold_grid(std::span<const double> values, int k, GridMode mode) {
  if (k < 2) throw UsageError("threshold grid needs k >= 2");
  if (values.empty()) throw UsageError("threshold grid needs at least one value");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = mode == GridMode::kZeroMax ? 0.0 : *lo_it;
  const double hi = *hi_it;
  std::vector<double> grid(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (k - 1);
  }
  grid.back() = hi;
  return grid;
}

double accuracy_at(std::span<const double> values, std::span<const int> labels, double t) {
  if (values.size() != labels.size()) throw UsageError("values and labels differ in length");
  if (values.empty()) throw UsageError("accuracy needs at least one value");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int predicted = values[i] <= t ? 0 : 1;
    hits += predicted == labels[i];
  }
  return static_cast<double>(hits) / static_cast<double>(values.size());
}

ProbeResult rank_neurons(const ActivationMatrix& sample, std::span<const int> labels,
                         const ProbeOptions& options, const ActivationMatrix* grid_reference) {
  if (labels.size() != sample.columns()) {
    throw UsageError("need one label per sampled method");
  }
  if (grid_reference && grid_reference->neuron_refs() != sample.neuron_refs()) {
    throw UsageError("grid reference covers different neurons");
  }
  std::vector<std::size_t> rows(sample.neurons());
  std::iota(rows.begin(), rows.end(), 0);
  std::stable_sort(rows.begin(), rows.end(), [&](std::size_t a, std::size_t b) {
    const NeuronRef& x = sample.neuron_refs()[a];
    const NeuronRef& y = sample.neuron_refs()[b];
    if (x.layer != y.layer) return x.layer < y.layer;
    return x.index < y.index;
  });

  ProbeResult result;
  result.neurons.reserve(rows.size());
  double best_acc = 0.0;
  for (std::size_t r : rows) {
    NeuronProbe probe;
    probe.neuron = sample.neuron_refs()[r];
    const auto values = sample.row(r);
    probe.grid = threshold_grid(grid_reference ? grid_reference->row(r) : values, options.k,
                                options.grid);
    probe.best_accuracy = 0.0;
    for (double t : probe.grid) {
      const double acc = accuracy_at(values, labels, t);
      if (acc >= probe.best_accuracy) {
        probe.best_accuracy = acc;
        probe.best_threshold = t;
      }
    }
    if (probe.best_accuracy >= best_acc) {
      best_acc = probe.best_accuracy;
      result.best = result.neurons.size();
    }
    result.neurons.push_back(std::move(probe));
  }
  if (result.neurons.empty()) throw UsageError("no neurons to probe");
  return result;
}

void write_probe_csv(const ProbeResult& result, std::ostream& out) {
  out << "layer,neuron,best_accuracy,best_threshold\n";
  for (const NeuronProbe& p : result.neurons) {
    out << layer_name(p.neuron.layer) << ',' << p.neuron.index << ','
        << format_double(p.best_accuracy) << ',' << format_double(p.best_threshold) << '\n';
  }
  const NeuronProbe& b = result.global_best();
  out << "global_best:" << layer_name(b.neuron.layer) << ',' << b.neuron.index << ','
      << format_double(b.best_accuracy) << ',' << format_double(b.best_threshold) << '\n';
}

void write_probe_csv(const ProbeResult& result, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_probe_csv(result, out);
}

ProbeSummary read_probe_summary(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open probe report " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("global_best:", 0) != 0) continue;
    auto fields = split_on(line, ',');
    if (fields.size() != 4) throw DataError(path.string() + ": malformed global_best row");
    ProbeSummary s;
    s.neuron.layer = parse_layer(fields[0].substr(12));
    s.neuron.index = static_cast<int>(parse_int(fields[1]));
    s.accuracy = parse_double(fields[2]);
    s.threshold = parse_double(fields[3]);
    return s;
  }
  throw DataError(path.string() + ": no global_best row");
}

}  // namespace neuronmine
