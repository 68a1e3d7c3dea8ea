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

#ifndef NEURONMINE_TESTS_ORACLES_HPP_
#define NEURONMINE_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <vector>

#include "neuronmine/autonet.hpp"

// Deliberately plain re-implementations used as test oracles.
namespace oracle {

struct BruteProbe {
  std::vector<neuronmine::NeuronRef> order;
  std::vector<double> best_accuracy;
  std::vector<double> best_threshold;
  std::vector<std::vector<double>> grids;
  std::size_t best = 0;
};

inline std::vector<double> even_grid(const std::vector<double>& row, int k, bool zero_min) {
  double lo = row[0], hi = row[0];
  for (double v : row) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (zero_min) lo = 0.0;
  std::vector<double> g;
  for (int i = 0; i < k; ++i) g.push_back(i == k - 1 ? hi : lo + (hi - lo) * i / (k - 1));
  return g;
}

// Every (neuron, threshold) pair, scanned in layer/index order.
inline BruteProbe brute_probe(const neuronmine::ActivationMatrix& acts,
                              const std::vector<int>& labels, int k = 10,
                              bool zero_min = false) {
  BruteProbe out;
  std::vector<std::size_t> rows;
  for (neuronmine::Layer layer : neuronmine::kProbedLayers) {
    for (int index = 0;; ++index) {
      const auto r = acts.find({layer, index});
      if (!r) break;
      rows.push_back(*r);
    }
  }
  double global = -1.0;
  for (std::size_t r : rows) {
    std::vector<double> row(acts.row(r).begin(), acts.row(r).end());
    const std::vector<double> grid = even_grid(row, k, zero_min);
    double best = -1.0, best_t = 0.0;
    for (double t : grid) {
      std::size_t correct = 0;
      for (std::size_t c = 0; c < row.size(); ++c) {
        const int predicted = row[c] > t ? 1 : 0;
        if (predicted == labels[c]) ++correct;
      }
      const double acc = static_cast<double>(correct) / static_cast<double>(row.size());
      if (acc >= best) {
        best = acc;
        best_t = t;
      }
    }
    if (best >= global) {
      global = best;
      out.best = out.order.size();
    }
    out.order.push_back(acts.neuron_refs()[r]);
    out.best_accuracy.push_back(best);
    out.best_threshold.push_back(best_t);
    out.grids.push_back(grid);
  }
  return out;
}

// Textbook product-moment correlation.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

}  // namespace oracle

#endif  // NEURONMINE_TESTS_ORACLES_HPP_
