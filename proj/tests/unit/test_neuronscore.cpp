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

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/neuronscore.hpp"
#include "neuronmine/numfmt.hpp"
#include "oracles.hpp"

using namespace neuronmine;

namespace {

ActivationMatrix rows_of(const std::vector<std::vector<double>>& rows) {
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return {gen::neurons(rows.size()), gen::ids(rows[0].size()), m};
}

// One value in the middle of each requested interval of [0, 1000] / 1000.
std::vector<double> values_for_counts(const std::vector<std::size_t>& counts) {
  std::vector<double> v;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    for (std::size_t k = 0; k < counts[b]; ++k) v.push_back(static_cast<double>(b) + 0.5);
  }
  return v;
}

}  // namespace

TEST_CASE("pearson hand cases") {
  for (const auto& c : fixtures::pearson_cases()) {
    const PearsonResult r = pearson(c.x, c.y);
    CHECK(r.degenerate == c.degenerate);
    CHECK(std::abs(r.value - c.rho) < 1e-12);
  }
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}), UsageError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{2}), UsageError);
}

TEST_CASE("property: pearson symmetry, scale and shift") {
  Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng.below(30);
    const auto x = gen::reals(rng, n, -5, 5);
    const auto y = gen::reals(rng, n, -5, 5);
    const double r = pearson(x, y).value;
    CHECK(std::abs(r) <= 1.0);
    CHECK(std::abs(pearson(y, x).value - r) < 1e-12);
    CHECK(std::abs(r - oracle::pearson(x, y)) < 1e-9);
    const double a = rng.uniform(0.1, 10.0), b = rng.uniform(-10, 10);
    std::vector<double> pos, neg;
    for (double v : x) {
      pos.push_back(a * v + b);
      neg.push_back(-a * v + b);
    }
    CHECK(std::abs(pearson(pos, y).value - r) < 1e-9);
    CHECK(std::abs(pearson(neg, y).value + r) < 1e-9);
  }
}

TEST_CASE("corr_score on hand-filled matrices") {
  const ActivationMatrix a = rows_of({{1, 2, 3}, {1, 0, 0}});
  const ActivationMatrix b = rows_of({{3, 2, 1}, {0, 1, 0}});
  const EnsembleActivations ens({a, b});
  CHECK(std::abs(corr_score(ens, 0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(corr_score(ens, 0, 1) - std::sqrt(3.0) / 2.0) < 1e-12);
  CHECK(std::abs(corr_score(ens, 1, 0) - 1.0) < 1e-12);
  CHECK(std::abs(corr_score(ens, 1, 1) - 0.5) < 1e-12);
  const auto all = corr_scores(ens);
  CHECK(std::abs(all[0][1] - std::sqrt(3.0) / 2.0) < 1e-12);
  CHECK(std::abs(all[1][1] - 0.5) < 1e-12);
}

TEST_CASE("constant neurons under both degenerate policies") {
  const ActivationMatrix a = rows_of({{0, 0, 0}, {1, 2, 4}});
  const ActivationMatrix b = rows_of({{2, 2, 2}, {4, 2, 1}});
  const EnsembleActivations ens({a, b});
  CHECK(corr_score(ens, 0, 0) == 0.0);
  CHECK(std::isnan(corr_score(ens, 0, 0, DegeneratePolicy::kExclude)));
  const auto zero = corr_scores(ens);
  const auto excl = corr_scores(ens, DegeneratePolicy::kExclude);
  CHECK(zero[0][0] == 0.0);
  CHECK(std::isnan(excl[0][0]));
  CHECK(std::abs(excl[0][1] - corr_score(ens, 0, 1, DegeneratePolicy::kExclude)) < 1e-12);
  CHECK(std::abs(zero[0][1] - corr_score(ens, 0, 1)) < 1e-12);
}

TEST_CASE("ensembles need two models over the same columns") {
  const ActivationMatrix a = rows_of({{1, 2, 3}});
  CHECK_THROWS_AS(EnsembleActivations({a}), UsageError);
  RowMatrix m(1, 3);
  m << 1, 2, 3;
  const ActivationMatrix other({{Layer::kCode, 0}}, gen::ids(3, "x"), m);
  CHECK_THROWS_AS(EnsembleActivations({a, other}), UsageError);
}

TEST_CASE("property: clones score one, batch scores equal single scores") {
  Rng rng(30);
  for (int trial = 0; trial < 10; ++trial) {
    const ActivationMatrix a = gen::activation_matrix(rng, 8, 25, trial % 2 ? 4 : 0);
    const ActivationMatrix c = gen::activation_matrix(rng, 8, 25);
    const EnsembleActivations ens({a, a, c});
    const auto all = corr_scores(ens);
    for (std::size_t m = 0; m < 3; ++m) {
      for (std::size_t j = 0; j < 8; ++j) {
        const double s = corr_score(ens, m, j);
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK(std::abs(all[m][j] - s) < 1e-12);
        const auto row = ens.at(m).row(j);
        const bool constant = std::all_of(row.begin(), row.end(), [&](double v) { return v == row[0]; });
        if (m < 2 && !constant) CHECK(std::abs(s - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("entropy of counts matches direct evaluation") {
  const std::vector<std::size_t> equal = {7, 7, 7, 7};
  CHECK(std::abs(entropy_of_counts(equal, EntropyMode::kFrequency) - std::log(4.0)) < 1e-12);
  CHECK(std::abs(entropy_of_counts(equal, EntropyMode::kSoftmax) - std::log(4.0)) < 1e-12);

  const std::vector<std::size_t> two = {100, 0, 50};
  const double freq = -(2.0 / 3.0 * std::log(2.0 / 3.0) + 1.0 / 3.0 * std::log(1.0 / 3.0));
  CHECK(std::abs(entropy_of_counts(two, EntropyMode::kFrequency) - freq) < 1e-12);
  const double e = std::exp(-50.0);
  const double p1 = 1.0 / (1.0 + e), p2 = e / (1.0 + e);
  const double soft = -(p1 * std::log1p(-p2) + p2 * (-50.0 - std::log1p(e)));
  CHECK(std::abs(entropy_of_counts(two, EntropyMode::kSoftmax) - soft) < 1e-12);
  CHECK(entropy_of_counts(two, EntropyMode::kSoftmax) < 1e-19);

  const std::vector<std::size_t> small = {3, 2, 1};
  const double z = std::exp(3.0) + std::exp(2.0) + std::exp(1.0);
  double h = 0.0;
  for (double c : {3.0, 2.0, 1.0}) h -= std::exp(c) / z * std::log(std::exp(c) / z);
  CHECK(std::abs(entropy_of_counts(small, EntropyMode::kSoftmax) - h) < 1e-12);

  const std::vector<std::size_t> one = {0, 9, 0};
  CHECK(entropy_of_counts(one, EntropyMode::kFrequency) == 0.0);
  CHECK(entropy_of_counts(one, EntropyMode::kSoftmax) == 0.0);
}

TEST_CASE("interval counts") {
  const std::vector<double> v = {0.0, 0.5, 1.0, 2.0, 0.999};
  const auto c = interval_counts(v, 1.0, 4);
  CHECK(c == std::vector<std::size_t>{1, 0, 1, 3});
  CHECK(interval_counts(std::vector<double>{0, 0}, 0.0, 5) == std::vector<std::size_t>{2, 0, 0, 0, 0});
  CHECK_THROWS_AS(interval_counts(std::vector<double>{-0.1}, 1.0, 4), DataError);
}

TEST_CASE("entropy scores and bands") {
  const std::vector<double> zeros(50, 0.0);
  const EntropyScore dead = entropy_score(zeros, 0.0);
  CHECK(dead.occupied == 1);
  CHECK(dead.h_frequency == 0.0);
  CHECK(dead.h_normalized == 0.0);
  CHECK(dead.band == Band::kDead);

  const auto uniform = values_for_counts({5, 5, 5, 5});
  const EntropyScore u = entropy_score(uniform, 1000.0);
  CHECK(u.occupied == 4);
  CHECK(std::abs(u.h_frequency - std::log(4.0)) < 1e-9);
  CHECK(std::abs(u.h_softmax - std::log(4.0)) < 1e-9);
  CHECK(std::abs(u.h_normalized - 1.0) < 1e-12);
  CHECK(u.band == Band::kSaturated);

  CHECK(classify_band(0.0) == Band::kDead);
  CHECK(classify_band(0.0299) == Band::kDead);
  CHECK(classify_band(0.03) == Band::kSelective);
  CHECK(classify_band(0.3) == Band::kSelective);
  CHECK(classify_band(1.0) == Band::kSelective);
  CHECK(classify_band(5.8) == Band::kSaturated);
  CHECK(band_name(Band::kSelective) == std::string("selective"));
}

TEST_CASE("property: entropy of m equal intervals is ln m and permutation-invariant") {
  Rng rng(40);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = 1 + rng.below(60);
    const std::size_t each = 1 + rng.below(5);
    auto v = values_for_counts(std::vector<std::size_t>(m, each));
    const EntropyScore s = entropy_score(v, 1000.0);
    CHECK(std::abs(s.h_frequency - std::log(static_cast<double>(m))) < 1e-9);
    rng.shuffle(v);
    const EntropyScore t = entropy_score(v, 1000.0);
    CHECK(t.h_frequency == s.h_frequency);
    CHECK(t.h_softmax == s.h_softmax);

    const auto r = gen::reals(rng, 1 + rng.below(200), 0.0, 5.0);
    const EntropyScore q = entropy_score(r, rng.uniform(0.5, 6.0), 1 + static_cast<int>(rng.below(100)));
    CHECK(q.h_normalized >= 0.0);
    CHECK(q.h_normalized <= 1.0);
    CHECK(q.h_frequency >= 0.0);
    CHECK(q.band == classify_band(q.h_frequency));
  }
}

TEST_CASE("top methods") {
  const std::vector<double> v = {0, 0, 7, 3};
  const auto ids = gen::ids(4, "id");
  auto top = top_methods(v, ids, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].id == "id0002");
  CHECK(top[0].activation == 7);
  CHECK(top[1].id == "id0003");
  CHECK(top_methods(v, ids, 9).size() == 4);
  const std::vector<double> z(4, 0.0);
  top = top_methods(z, ids, 2);
  CHECK(top[0].id == "id0000");
  CHECK(top[1].id == "id0001");
  CHECK_THROWS_AS(top_methods(v, ids, 0), UsageError);
}

TEST_CASE("sample_columns") {
  CHECK(sample_columns(5, 10, 1) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  const auto s = sample_columns(100, 10, 3);
  CHECK(s.size() == 10);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(sample_columns(100, 10, 3) == s);
}

TEST_CASE("score and top-methods reports") {
  NeuronScoreRow row;
  row.neuron = {Layer::kDec1, 2};
  row.entropy = entropy_score(values_for_counts({1, 1}), 1000.0);
  row.corr = 0.5;
  NeuronScoreRow bare = row;
  bare.corr.reset();
  std::ostringstream out;
  write_score_csv(std::vector<NeuronScoreRow>{row, bare}, out);
  const std::string ln2 = format_double(std::log(2.0));
  CHECK(out.str() == "layer,neuron,H_softmax,H_frequency,H_normalized,band,corr_score\n"
                     "dec1,2," + ln2 + "," + ln2 + ",1,selective,0.5\n"
                     "dec1,2," + ln2 + "," + ln2 + ",1,selective,\n");

  const CorpusStore store({{"a", "sortA", "void sortA() {}", {}, {}}});
  std::ostringstream top;
  write_top_methods({Layer::kCode, 1}, std::vector<TopMethod>{{"a", 2.5}, {"zz", 0}}, &store, top);
  CHECK(top.str() == "neuron,code:1\n1,a,2.5,sortA\n2,zz,0,\n");
}
