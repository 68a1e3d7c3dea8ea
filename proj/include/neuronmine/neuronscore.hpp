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

#ifndef NEURONMINE_NEURONSCORE_HPP_
#define NEURONMINE_NEURONSCORE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "neuronmine/autonet.hpp"
#include "neuronmine/corpus.hpp"

namespace neuronmine {

struct PearsonResult {
  double value = 0.0;
  // Set when either series is constant; value is then 0.
  bool degenerate = false;
};

PearsonResult pearson(std::span<const double> x, std::span<const double> y);

// kZero scores a pair with a constant series as 0. kExclude drops such pairs,
// so a neuron with no usable partner gets NaN.
enum class DegeneratePolicy : std::uint8_t { kZero, kExclude };

// Activations of k >= 2 models over one shared, identically ordered column set.
class EnsembleActivations {
 public:
  explicit EnsembleActivations(std::vector<ActivationMatrix> models);

  std::size_t size() const { return models_.size(); }
  const ActivationMatrix& at(std::size_t i) const { return models_.at(i); }

 private:
  std::vector<ActivationMatrix> models_;
};

// max |rho| of row `neuron` in model `model` against every row of every
// other model.
double corr_score(const EnsembleActivations& ens, std::size_t model, std::size_t neuron,
                  DegeneratePolicy policy = DegeneratePolicy::kZero);

// All scores at once, [model][neuron]. Same values as corr_score.
std::vector<std::vector<double>> corr_scores(const EnsembleActivations& ens,
                                             DegeneratePolicy policy = DegeneratePolicy::kZero);

enum class EntropyMode : std::uint8_t { kSoftmax, kFrequency };

// Entropy (nats) of a count vector after dropping zero counts.
double entropy_of_counts(std::span<const std::size_t> counts, EntropyMode mode);

// Counts over `intervals` equal-width bins of [0, ref_max]; values above
// ref_max land in the last bin. Negative values are rejected.
std::vector<std::size_t> interval_counts(std::span<const double> values, double ref_max,
                                         int intervals = 1000);

enum class Band : std::uint8_t { kDead, kSelective, kSaturated };

const char* band_name(Band band);
Band classify_band(double h);

struct EntropyScore {
  double h_softmax = 0.0;
  double h_frequency = 0.0;
  // h_frequency / ln(occupied), or 0 with fewer than two occupied bins.
  double h_normalized = 0.0;
  std::size_t occupied = 0;
  // From h_frequency.
  Band band = Band::kDead;
};

EntropyScore entropy_score(std::span<const double> values, double ref_max, int intervals = 1000);

// Per-row maxima, used as ref_max.
std::vector<double> row_maxima(const ActivationMatrix& acts);

// Up to `count` column indices drawn without replacement, ascending.
std::vector<std::size_t> sample_columns(std::size_t columns, std::size_t count,
                                        std::uint64_t seed);

struct TopMethod {
  std::string id;
  double activation = 0.0;
};

// k highest activations, descending; ties keep column order.
std::vector<TopMethod> top_methods(std::span<const double> values,
                                   std::span<const std::string> ids, std::size_t k);

struct NeuronScoreRow {
  NeuronRef neuron;
  EntropyScore entropy;
  std::optional<double> corr;
};

// layer,neuron,H_softmax,H_frequency,H_normalized,band,corr_score
void write_score_csv(std::span<const NeuronScoreRow> rows, std::ostream& out);
void write_score_csv(std::span<const NeuronScoreRow> rows, const std::filesystem::path& path);

// "neuron,<label>" then "rank,method_id,activation,method_name" lines.
// Names come from `store` when given.
void write_top_methods(NeuronRef neuron, std::span<const TopMethod> top,
                       const CorpusStore* store, std::ostream& out);

}  // namespace neuronmine

#endif  // NEURONMINE_NEURONSCORE_HPP_
