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

#ifndef NEURONMINE_AUTONET_HPP_
#define NEURONMINE_AUTONET_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "neuronmine/embed.hpp"

namespace neuronmine {

// Probed layers: the code layer and the two decoder hidden layers.
enum class Layer : std::uint8_t { kCode, kDec1, kDec2 };

inline constexpr std::array<Layer, 3> kProbedLayers = {Layer::kCode, Layer::kDec1,
                                                       Layer::kDec2};

const char* layer_name(Layer layer);
Layer parse_layer(std::string_view name);

// Fully connected layer; weight is out x in.
struct Dense {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;

  friend bool operator==(const Dense& a, const Dense& b) {
    return a.weight == b.weight && a.bias == b.bias;
  }
};

// Positions in AutoModel::layers.
enum LayerSlot : std::size_t {
  kEncoderSlot = 0,  // n  -> h1, ReLU
  kCodeSlot,         // h1 -> c,  ReLU
  kDec1Slot,         // c  -> h1, ReLU
  kDec2Slot,         // h1 -> n,  ReLU
  kReadoutSlot,      // n  -> n,  linear
  kSlotCount,
};

struct EpochLoss {
  int epoch;
  double loss;

  friend bool operator==(const EpochLoss&, const EpochLoss&) = default;
};

// Dense autoencoder n -> h1 -> c -> h1 -> n with ReLU on every hidden layer,
// followed by a linear n -> n readout that produces the reconstruction.
struct AutoModel {
  int input_dim = 0;
  int hidden_dim = 0;
  int code_dim = 0;
  std::uint64_t seed = 0;
  std::array<Dense, kSlotCount> layers;
  std::vector<EpochLoss> history;

  // [n, h1, c, h1, n]: widths of the input and of the four ReLU layers.
  std::array<int, 5> sizes() const {
    return {input_dim, hidden_dim, code_dim, hidden_dim, input_dim};
  }
  int layer_width(Layer layer) const;
  int probed_neurons() const { return code_dim + hidden_dim + input_dim; }
  bool all_finite() const;

  friend bool operator==(const AutoModel&, const AutoModel&) = default;
};

// Glorot-uniform weights, zero biases. Throws UsageError when n < 4.
AutoModel init_model(int n, std::uint64_t seed, double hidden_ratio = 0.5,
                     double code_ratio = 0.25);

struct ForwardResult {
  Eigen::VectorXd reconstruction;
  Eigen::VectorXd encoder;  // not probed
  Eigen::VectorXd code;
  Eigen::VectorXd dec1;
  Eigen::VectorXd dec2;
};

ForwardResult forward(const AutoModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

struct Gradients {
  std::array<Dense, kSlotCount> layers;
};

// Mean squared reconstruction error of a batch (n x B, one column per input),
// averaged over both entries and batch. Fills `grads` when non-null.
double mse_loss(const AutoModel& model, const Eigen::Ref<const Eigen::MatrixXd>& batch,
                Gradients* grads = nullptr);

struct AdadeltaParams {
  double rho = 0.95;
  double epsilon = 1e-6;
};

// In-place ADADELTA update over flat parameter storage:
//   E[g^2] <- rho E[g^2] + (1 - rho) g^2
//   dx     <- -sqrt(E[dx^2] + eps) / sqrt(E[g^2] + eps) * g
//   E[dx^2] <- rho E[dx^2] + (1 - rho) dx^2
//   x      <- x + dx
// Throws NumericError on a non-finite gradient (parameters untouched).
void adadelta_update(std::span<double> params, std::span<const double> grads,
                     std::span<double> mean_sq_grad, std::span<double> mean_sq_delta,
                     AdadeltaParams hp = {});

// Optimizer state for a whole model.
class Adadelta {
 public:
  explicit Adadelta(const AutoModel& model, AdadeltaParams hp = {});
  void step(AutoModel& model, const Gradients& grads);

 private:
  AdadeltaParams hp_;
  std::array<Dense, kSlotCount> mean_sq_grad_;
  std::array<Dense, kSlotCount> mean_sq_delta_;
};

struct TrainOptions {
  int epochs = 50;
  int batch = 32;
  std::uint64_t seed = 1;
};

// Minibatch ADADELTA on MSE. Appends one history entry per epoch; the
// shuffle and batch order depend only on the seed. Throws NumericError on a
// non-finite loss, naming the epoch and batch.
AutoModel train(AutoModel model, const EmbeddingSet& vectors, const TrainOptions& options);

struct TrainJob {
  AutoModel model;
  const EmbeddingSet* vectors;
  TrainOptions options;
};

// Trains independent models, one thread each (at most `threads` at a time;
// 0 means hardware concurrency). Results are in job order.
std::vector<AutoModel> train_parallel(std::vector<TrainJob> jobs, unsigned threads = 0);

struct NeuronRef {
  Layer layer = Layer::kCode;
  int index = 0;

  friend bool operator==(const NeuronRef&, const NeuronRef&) = default;
};

std::string neuron_label(NeuronRef ref);  // "dec1:17"
NeuronRef parse_neuron(std::string_view label);

// Neurons x methods activations of the probed layers. Rows are ordered code,
// dec1, dec2, each by index; columns follow the source EmbeddingSet.
class ActivationMatrix {
 public:
  ActivationMatrix() = default;
  ActivationMatrix(std::vector<NeuronRef> neurons, std::vector<std::string> ids, RowMatrix values);

  std::size_t neurons() const { return neurons_.size(); }
  std::size_t columns() const { return ids_.size(); }
  const std::vector<NeuronRef>& neuron_refs() const { return neurons_; }
  const std::vector<std::string>& ids() const { return ids_; }
  const RowMatrix& values() const { return values_; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * columns(), columns()};
  }
  std::optional<std::size_t> find(NeuronRef ref) const;

  // Same neurons restricted to (and reordered by) the given columns.
  ActivationMatrix select_columns(std::span<const std::size_t> columns) const;

 private:
  std::vector<NeuronRef> neurons_;
  std::vector<std::string> ids_;
  RowMatrix values_;
};

ActivationMatrix activations(const AutoModel& model, const EmbeddingSet& vectors);

void save_checkpoint(const AutoModel& model, const std::filesystem::path& path);
void save_checkpoint(const AutoModel& model, std::ostream& out);
AutoModel load_checkpoint(const std::filesystem::path& path);
AutoModel load_checkpoint(std::istream& in);

}  // namespace neuronmine

#endif  // NEURONMINE_AUTONET_HPP_
