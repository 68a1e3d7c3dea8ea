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
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "neuronmine/autonet.hpp"
#include "neuronmine/error.hpp"

using namespace neuronmine;

namespace {

EmbeddingSet random_set(std::size_t count, int dim, std::uint64_t seed) {
  Rng rng(seed);
  EmbeddingSet set(dim, Provenance::kAst);
  for (const std::string& id : gen::ids(count)) {
    Eigen::VectorXd v(dim);
    for (int j = 0; j < dim; ++j) v(j) = rng.uniform(-1.0, 1.0);
    set.add(id, v);
  }
  return set;
}

}  // namespace

TEST_CASE("init_model shapes, bounds and errors") {
  const AutoModel m = init_model(300, 1);
  CHECK(m.sizes() == std::array<int, 5>{300, 150, 75, 150, 300});
  CHECK(m.probed_neurons() == 525);
  CHECK(init_model(10, 1).sizes() == std::array<int, 5>{10, 5, 3, 5, 10});
  for (const Dense& d : m.layers) {
    const double bound = std::sqrt(6.0 / static_cast<double>(d.weight.rows() + d.weight.cols()));
    CHECK(d.weight.cwiseAbs().maxCoeff() <= bound);
    CHECK(d.weight.cwiseAbs().maxCoeff() > 0.9 * bound);
    CHECK(d.bias.isZero());
  }
  CHECK(init_model(300, 1) == m);
  CHECK_FALSE(init_model(300, 2) == m);
  CHECK_THROWS_AS(init_model(3, 1), UsageError);
}

TEST_CASE("forward activations are non-negative with probed widths") {
  const AutoModel m = init_model(12, 4);
  Rng rng(2);
  Eigen::VectorXd x(12);
  for (int i = 0; i < 12; ++i) x(i) = rng.uniform(-1, 1);
  const ForwardResult f = forward(m, x);
  CHECK(f.code.size() == 3);
  CHECK(f.dec1.size() == 6);
  CHECK(f.dec2.size() == 12);
  CHECK(f.reconstruction.size() == 12);
  CHECK(f.code.minCoeff() >= 0.0);
  CHECK(f.dec1.minCoeff() >= 0.0);
  CHECK(f.dec2.minCoeff() >= 0.0);
}

TEST_CASE("property: backprop matches central differences") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    AutoModel m = init_model(6, seed);
    Rng rng(seed + 100);
    for (Dense& d : m.layers) {
      for (Eigen::Index i = 0; i < d.bias.size(); ++i) d.bias(i) = rng.uniform(0.05, 0.3);
    }
    Eigen::MatrixXd batch(6, 3);
    for (Eigen::Index i = 0; i < batch.size(); ++i) batch.data()[i] = rng.uniform(-1, 1);
    Gradients g;
    mse_loss(m, batch, &g);
    const double h = 1e-6;
    for (std::size_t s = 0; s < kSlotCount; ++s) {
      auto check = [&](double& param, double analytic) {
        const double keep = param;
        param = keep + h;
        const double up = mse_loss(m, batch);
        param = keep - h;
        const double down = mse_loss(m, batch);
        param = keep;
        const double numeric = (up - down) / (2 * h);
        const double scale = std::max(std::abs(numeric) + std::abs(analytic), 1e-7);
        CHECK(std::abs(numeric - analytic) / scale < 1e-3);
      };
      Dense& d = m.layers[s];
      for (Eigen::Index i = 0; i < d.weight.rows(); ++i) {
        for (Eigen::Index j = 0; j < d.weight.cols(); ++j) {
          check(d.weight(i, j), g.layers[s].weight(i, j));
        }
        check(d.bias(i), g.layers[s].bias(i));
      }
    }
  }
}

TEST_CASE("mse_loss is the mean over entries and batch") {
  AutoModel m = init_model(4, 1);
  for (Dense& d : m.layers) {
    d.weight.setZero();
    d.bias.setZero();
  }
  m.layers[kReadoutSlot].bias = Eigen::Vector4d(1, 0, 0, 0);
  Eigen::MatrixXd batch = Eigen::MatrixXd::Zero(4, 2);
  batch(1, 1) = 2.0;
  // Residuals: column 0 -> (1,0,0,0); column 1 -> (1,-2,0,0).
  CHECK(mse_loss(m, batch) == doctest::Approx((1.0 + 1.0 + 4.0) / 8.0));
}

TEST_CASE("adadelta single step matches hand evaluation") {
  std::vector<double> x = {1.0, -2.0};
  const std::vector<double> g = {0.5, 0.0};
  std::vector<double> eg = {0.0, 0.0}, ed = {0.0, 0.0};
  adadelta_update(x, g, eg, ed);
  const double eg0 = 0.05 * 0.25;
  const double dx = -std::sqrt(1e-6) / std::sqrt(eg0 + 1e-6) * 0.5;
  CHECK(eg[0] == doctest::Approx(eg0).epsilon(1e-15));
  CHECK(x[0] == doctest::Approx(1.0 + dx).epsilon(1e-15));
  CHECK(ed[0] == doctest::Approx(0.05 * dx * dx).epsilon(1e-12));
  CHECK(x[1] == -2.0);
  const std::vector<double> bad = {std::nan(""), 0.0};
  CHECK_THROWS_AS(adadelta_update(x, bad, eg, ed), NumericError);
  CHECK(x[0] == doctest::Approx(1.0 + dx).epsilon(1e-15));
}

TEST_CASE("training lowers the loss and is reproducible") {
  const EmbeddingSet set = random_set(96, 8, 3);
  const AutoModel start = init_model(8, 5);
  const AutoModel a = train(start, set, {20, 32, 9});
  REQUIRE(a.history.size() == 20);
  CHECK(a.history.front().epoch == 1);
  CHECK(a.history.back().epoch == 20);
  CHECK(a.history.back().loss < a.history.front().loss);
  CHECK(train(start, set, {20, 32, 9}) == a);
  CHECK_FALSE(train(start, set, {20, 32, 10}) == a);
  CHECK(train(start, set, {0, 32, 9}) == start);
  const AutoModel more = train(a, set, {2, 32, 9});
  CHECK(more.history.size() == 22);
  CHECK(more.history.back().epoch == 22);
  CHECK_THROWS_AS(train(init_model(6, 1), set, {1, 32, 1}), DataError);
}

TEST_CASE("parallel training equals sequential training") {
  const EmbeddingSet set = random_set(40, 6, 1);
  std::vector<TrainJob> jobs;
  for (std::uint64_t s = 1; s <= 3; ++s) jobs.push_back({init_model(6, s), &set, {5, 8, s}});
  const auto models = train_parallel(jobs, 2);
  REQUIRE(models.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(models[i] == train(jobs[i].model, set, jobs[i].options));
  }
}

TEST_CASE("activation matrix rows follow the probed layers") {
  const EmbeddingSet set = random_set(7, 8, 2);
  const AutoModel m = init_model(8, 3);
  const ActivationMatrix acts = activations(m, set);
  CHECK(acts.neurons() == 14);
  CHECK(acts.columns() == 7);
  CHECK(acts.ids() == set.ids());
  CHECK(acts.neuron_refs()[0] == NeuronRef{Layer::kCode, 0});
  CHECK(acts.neuron_refs()[2] == NeuronRef{Layer::kDec1, 0});
  CHECK(acts.neuron_refs()[13] == NeuronRef{Layer::kDec2, 7});
  const ForwardResult f = forward(m, set.vector(4));
  CHECK(acts.row(3)[4] == f.dec1(1));
  CHECK(acts.values().minCoeff() >= 0.0);
  CHECK(acts.find({Layer::kDec2, 7}) == 13u);
  const std::vector<std::size_t> cols = {6, 0};
  const ActivationMatrix sub = acts.select_columns(cols);
  CHECK(sub.ids() == std::vector<std::string>{set.ids()[6], set.ids()[0]});
  CHECK(sub.row(5)[1] == acts.row(5)[0]);
}

TEST_CASE("activation matrix validation") {
  RowMatrix v(1, 2);
  v << 0.0, -1.0;
  CHECK_THROWS(ActivationMatrix({{Layer::kCode, 0}}, {"a", "b"}, v));
  v(0, 1) = 1.0;
  CHECK_THROWS(ActivationMatrix({{Layer::kCode, 0}}, {"a"}, v));
  CHECK_NOTHROW(ActivationMatrix({{Layer::kCode, 0}}, {"a", "b"}, v));
}

TEST_CASE("neuron labels round-trip") {
  CHECK(neuron_label({Layer::kDec1, 17}) == "dec1:17");
  CHECK(parse_neuron("dec2:3") == NeuronRef{Layer::kDec2, 3});
  CHECK(parse_neuron("code:0") == NeuronRef{Layer::kCode, 0});
  CHECK_THROWS_AS(parse_neuron("enc:1"), UsageError);
  CHECK_THROWS_AS(parse_neuron("dec1"), UsageError);
}

TEST_CASE("checkpoint round-trip is exact") {
  const EmbeddingSet set = random_set(30, 8, 6);
  const AutoModel m = train(init_model(8, 7), set, {3, 8, 1});
  std::stringstream buf;
  save_checkpoint(m, buf);
  CHECK(buf.str().rfind("neuronmine-autoencoder 1\nlayers: 8 4 2\nseed: ", 0) == 0);
  CHECK(load_checkpoint(buf) == m);
  std::istringstream bad("neuronmine-autoencoder 1\nlayers: 8 4\n");
  CHECK_THROWS_AS(load_checkpoint(bad), DataError);
  std::istringstream wrong("something else\n");
  CHECK_THROWS_AS(load_checkpoint(wrong), DataError);
}
