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

#include "neuronmine/neuronscore.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>

#include <Eigen/Dense>

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {
namespace {

bool is_constant(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
}

double mean(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

// Rows centred and scaled to unit norm; constant rows become zero and are
// flagged.
struct NormalizedRows {
  RowMatrix z;
  std::vector<bool> degenerate;
};

NormalizedRows normalize(const ActivationMatrix& acts) {
  NormalizedRows out;
  out.z = RowMatrix::Zero(static_cast<Eigen::Index>(acts.neurons()),
                          static_cast<Eigen::Index>(acts.columns()));
  out.degenerate.assign(acts.neurons(), false);
  for (std::size_t r = 0; r < acts.neurons(); ++r) {
    const auto row = acts.row(r);
    if (is_constant(row)) {
      out.degenerate[r] = true;
      continue;
    }
    const double m = mean(row);
    double ss = 0.0;
    for (double v : row) ss += (v - m) * (v - m);
    const double inv = 1.0 / std::sqrt(ss);
    for (std::size_t c = 0; c < row.size(); ++c) {
      out.z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (row[c] - m) * inv;
    }
  }
  return out;
}

double clamp_unit(double v) { return std::min(1.0, std::abs(v)); }

}  // namespace

PearsonResult pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("pearson: series differ in length");
  if (x.size() < 2) throw UsageError("pearson: need at least two points");
  if (is_constant(x) || is_constant(y)) return {0.0, true};
  const double mx = mean(x);
  const double my = mean(y);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  const double r = sxy / std::sqrt(sxx * syy);
  return {std::clamp(r, -1.0, 1.0), false};
}

EnsembleActivations::EnsembleActivations(std::vector<ActivationMatrix> models)
    : models_(std::move(models)) {
  if (models_.size() < 2) throw UsageError("an ensemble needs at least two models");
  for (const ActivationMatrix& m : models_) {
    if (m.ids() != models_.front().ids()) {
      throw UsageError("ensemble models disagree on the method columns");
    }
    if (m.columns() < 2) throw UsageError("correlation needs at least two methods");
  }
}

double corr_score(const EnsembleActivations& ens, std::size_t model, std::size_t neuron,
                  DegeneratePolicy policy) {
  const ActivationMatrix& self = ens.at(model);
  if (neuron >= self.neurons()) throw UsageError("neuron index out of range");
  const auto x = self.row(neuron);
  const bool x_constant = is_constant(x);
  if (x_constant && policy == DegeneratePolicy::kExclude) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  double best = policy == DegeneratePolicy::kZero ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < ens.size(); ++i) {
    if (i == model) continue;
    const ActivationMatrix& other = ens.at(i);
    for (std::size_t j = 0; j < other.neurons(); ++j) {
      const PearsonResult p = pearson(x, other.row(j));
      if (p.degenerate && policy == DegeneratePolicy::kExclude) continue;
      const double a = std::abs(p.value);
      if (std::isnan(best) || a > best) best = a;
    }
  }
  return best;
}

std::vector<std::vector<double>> corr_scores(const EnsembleActivations& ens,
                                             DegeneratePolicy policy) {
  std::vector<NormalizedRows> norm;
  norm.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) norm.push_back(normalize(ens.at(i)));

  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double start = policy == DegeneratePolicy::kZero ? 0.0 : nan;
  std::vector<std::vector<double>> scores(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    scores[i].assign(ens.at(i).neurons(), start);
  }
  // Each unordered pair once; the product serves both directions.
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t k = i + 1; k < ens.size(); ++k) {
      const Eigen::MatrixXd c = norm[i].z * norm[k].z.transpose();
      for (Eigen::Index a = 0; a < c.rows(); ++a) {
        for (Eigen::Index b = 0; b < c.cols(); ++b) {
          const bool da = norm[i].degenerate[static_cast<std::size_t>(a)];
          const bool db = norm[k].degenerate[static_cast<std::size_t>(b)];
          if (policy == DegeneratePolicy::kExclude && (da || db)) continue;
          const double v = clamp_unit(c(a, b));
          double& sa = scores[i][static_cast<std::size_t>(a)];
          double& sb = scores[k][static_cast<std::size_t>(b)];
          if (std::isnan(sa) || v > sa) sa = v;
          if (std::isnan(sb) || v > sb) sb = v;
        }
      }
    }
  }
  return scores;
}

double entropy_of_counts(std::span<const std::size_t> counts, EntropyMode mode) {
  std::vector<double> c;
  for (std::size_t v : counts) {
    if (v > 0) c.push_back(static_cast<double>(v));
  }
  if (c.size() < 2) return 0.0;
  double h = 0.0;
  if (mode == EntropyMode::kFrequency) {
    const double total = std::accumulate(c.begin(), c.end(), 0.0);
    for (double v : c) {
      const double p = v / total;
      h -= p * std::log(p);
    }
  } else {
    const double top = *std::max_element(c.begin(), c.end());
    double z = 0.0;
    for (double v : c) z += std::exp(v - top);
    const double log_z = std::log(z);
    for (double v : c) {
      const double log_p = (v - top) - log_z;
      h -= std::exp(log_p) * log_p;
    }
  }
  return std::max(h, 0.0);
}

std::vector<std::size_t> interval_counts(std::span<const double> values, double ref_max,
                                         int intervals) {
  if (intervals < 1) throw UsageError("need at least one interval");
  if (!(ref_max >= 0.0) || !std::isfinite(ref_max)) {
    throw DataError("reference maximum must be finite and non-negative");
  }
  const auto last = static_cast<std::size_t>(intervals - 1);
  std::vector<std::size_t> counts(static_cast<std::size_t>(intervals), 0);
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DataError("activation " + format_double(v) + " is not a finite non-negative value");
    }
    std::size_t bin = 0;
    if (ref_max > 0.0) {
      const double pos = std::floor(v / ref_max * intervals);
      bin = pos >= static_cast<double>(last) ? last : static_cast<std::size_t>(pos);
    } else if (v > 0.0) {
      bin = last;
    }
    ++counts[bin];
  }
  return counts;
}

const char* band_name(Band band) {
  switch (band) {
    case Band::kDead: return "dead";
    case Band::kSelective: return "selective";
    case Band::kSaturated: return "saturated";
  }
  return "?";
}

Band classify_band(double h) {
  if (h < 0.03) return Band::kDead;
  if (h <= 1.0) return Band::kSelective;
  return Band::kSaturated;
}

EntropyScore entropy_score(std::span<const double> values, double ref_max, int intervals) {
  if (values.empty()) throw UsageError("entropy needs at least one value");
  const auto counts = interval_counts(values, ref_max, intervals);
  EntropyScore s;
  s.occupied = static_cast<std::size_t>(
      std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
  s.h_softmax = entropy_of_counts(counts, EntropyMode::kSoftmax);
  s.h_frequency = entropy_of_counts(counts, EntropyMode::kFrequency);
  if (s.occupied >= 2) {
    s.h_normalized = std::min(1.0, s.h_frequency / std::log(static_cast<double>(s.occupied)));
  }
  s.band = classify_band(s.h_frequency);
  return s;
}

std::vector<double> row_maxima(const ActivationMatrix& acts) {
  std::vector<double> out(acts.neurons(), 0.0);
  for (std::size_t r = 0; r < acts.neurons(); ++r) {
    const auto row = acts.row(r);
    if (!row.empty()) out[r] = *std::max_element(row.begin(), row.end());
  }
  return out;
}

std::vector<std::size_t> sample_columns(std::size_t columns, std::size_t count,
                                        std::uint64_t seed) {
  std::vector<std::size_t> idx(columns);
  std::iota(idx.begin(), idx.end(), 0);
  if (count >= columns) return idx;
  Rng rng(seed);
  rng.shuffle(idx);
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<TopMethod> top_methods(std::span<const double> values,
                                   std::span<const std::string> ids, std::size_t k) {
  if (values.size() != ids.size()) throw UsageError("values and ids differ in length");
  if (k == 0) throw UsageError("k must be at least 1");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  order.resize(std::min(k, order.size()));
  std::vector<TopMethod> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back({ids[i], values[i]});
  return out;
}

void write_score_csv(std::span<const NeuronScoreRow> rows, std::ostream& out) {
  out << "layer,neuron,H_softmax,H_frequency,H_normalized,band,corr_score\n";
  for (const NeuronScoreRow& r : rows) {
    out << layer_name(r.neuron.layer) << ',' << r.neuron.index << ','
        << format_double(r.entropy.h_softmax) << ',' << format_double(r.entropy.h_frequency)
        << ',' << format_double(r.entropy.h_normalized) << ',' << band_name(r.entropy.band)
        << ',';
    if (r.corr) out << format_double(*r.corr);
    out << '\n';
  }
}

void write_score_csv(std::span<const NeuronScoreRow> rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_score_csv(rows, out);
}

void write_top_methods(NeuronRef neuron, std::span<const TopMethod> top,
                       const CorpusStore* store, std::ostream& out) {
  out << "neuron," << neuron_label(neuron) << '\n';
  std::size_t rank = 1;
  for (const TopMethod& t : top) {
    std::string name;
    if (store) {
      if (auto i = store->find(t.id)) name = store->at(*i).name;
    }
    out << rank++ << ',' << t.id << ',' << format_double(t.activation) << ',' << name << '\n';
  }
}

}  // namespace neuronmine
