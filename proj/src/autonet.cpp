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

#include "neuronmine/autonet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

namespace {

constexpr std::array<const char*, kSlotCount> kSlotNames = {"encoder", "code", "dec1", "dec2",
                                                            "readout"};

Eigen::MatrixXd relu(const Eigen::MatrixXd& z) { return z.cwiseMax(0.0); }

template <typename F>
void for_each_param(std::array<Dense, kSlotCount>& layers, F&& fn) {
  for (Dense& d : layers) {
    fn(std::span<double>(d.weight.data(), static_cast<std::size_t>(d.weight.size())), &d, true);
    fn(std::span<double>(d.bias.data(), static_cast<std::size_t>(d.bias.size())), &d, false);
  }
}

std::array<Dense, kSlotCount> zeros_like(const std::array<Dense, kSlotCount>& layers) {
  std::array<Dense, kSlotCount> out;
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    out[s].weight = Eigen::MatrixXd::Zero(layers[s].weight.rows(), layers[s].weight.cols());
    out[s].bias = Eigen::VectorXd::Zero(layers[s].bias.size());
  }
  return out;
}

}  // namespace

const char* layer_name(Layer layer) {
  switch (layer) {
    case Layer::kCode: return "code";
    case Layer::kDec1: return "dec1";
    case Layer::kDec2: return "dec2";
  }
  return "?";
}

Layer parse_layer(std::string_view name) {
  if (name == "code") return Layer::kCode;
  if (name == "dec1") return Layer::kDec1;
  if (name == "dec2") return Layer::kDec2;
  throw UsageError("unknown layer \"" + std::string(name) + "\" (code, dec1, dec2)");
}

int AutoModel::layer_width(Layer layer) const {
  switch (layer) {
    case Layer::kCode: return code_dim;
    case Layer::kDec1: return hidden_dim;
    case Layer::kDec2: return input_dim;
  }
  return 0;
}

bool AutoModel::all_finite() const {
  return std::all_of(layers.begin(), layers.end(), [](const Dense& d) {
    return d.weight.allFinite() && d.bias.allFinite();
  });
}

AutoModel init_model(int n, std::uint64_t seed, double hidden_ratio, double code_ratio) {
  if (n < 4) throw UsageError("autoencoder input dimension must be >= 4");
  if (!(hidden_ratio > 0 && hidden_ratio <= 1 && code_ratio > 0 && code_ratio <= hidden_ratio)) {
    throw UsageError("layer ratios must satisfy 0 < code <= hidden <= 1");
  }
  AutoModel m;
  m.input_dim = n;
  m.hidden_dim = static_cast<int>(std::ceil(n * hidden_ratio - 1e-9));
  m.code_dim = static_cast<int>(std::ceil(n * code_ratio - 1e-9));
  m.seed = seed;
  const std::array<std::pair<int, int>, kSlotCount> shapes = {{
      {m.hidden_dim, n},
      {m.code_dim, m.hidden_dim},
      {m.hidden_dim, m.code_dim},
      {n, m.hidden_dim},
      {n, n},
  }};
  Rng rng(derive_seed(seed, "autonet/init"));
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    const auto [out, in] = shapes[s];
    const double limit = std::sqrt(6.0 / (in + out));
    Dense& d = m.layers[s];
    d.weight.resize(out, in);
    for (Eigen::Index j = 0; j < in; ++j) {
      for (Eigen::Index i = 0; i < out; ++i) d.weight(i, j) = rng.uniform(-limit, limit);
    }
    d.bias = Eigen::VectorXd::Zero(out);
  }
  return m;
}

ForwardResult forward(const AutoModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != model.input_dim) {
    throw DataError("input has dimension " + std::to_string(x.size()) + ", model expects " +
                    std::to_string(model.input_dim));
  }
  const auto& L = model.layers;
  ForwardResult r;
  r.encoder = (L[kEncoderSlot].weight * x + L[kEncoderSlot].bias).cwiseMax(0.0);
  r.code = (L[kCodeSlot].weight * r.encoder + L[kCodeSlot].bias).cwiseMax(0.0);
  r.dec1 = (L[kDec1Slot].weight * r.code + L[kDec1Slot].bias).cwiseMax(0.0);
  r.dec2 = (L[kDec2Slot].weight * r.dec1 + L[kDec2Slot].bias).cwiseMax(0.0);
  r.reconstruction = L[kReadoutSlot].weight * r.dec2 + L[kReadoutSlot].bias;
  return r;
}

double mse_loss(const AutoModel& model, const Eigen::Ref<const Eigen::MatrixXd>& batch,
                Gradients* grads) {
  if (batch.rows() != model.input_dim) {
    throw DataError("batch has dimension " + std::to_string(batch.rows()) + ", model expects " +
                    std::to_string(model.input_dim));
  }
  const auto& L = model.layers;
  std::array<Eigen::MatrixXd, kSlotCount + 1> a;  // a[0] = input, a[s+1] = output of slot s
  std::array<Eigen::MatrixXd, kSlotCount> z;
  a[0] = batch;
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    z[s] = (L[s].weight * a[s]).colwise() + L[s].bias;
    a[s + 1] = s == kReadoutSlot ? z[s] : relu(z[s]);
  }
  const Eigen::MatrixXd diff = a[kSlotCount] - batch;
  const double scale = static_cast<double>(batch.rows() * batch.cols());
  const double loss = diff.squaredNorm() / scale;
  if (grads == nullptr) return loss;

  Eigen::MatrixXd delta = diff * (2.0 / scale);  // dL/dz of the linear readout
  for (std::size_t s = kSlotCount; s-- > 0;) {
    grads->layers[s].weight = delta * a[s].transpose();
    grads->layers[s].bias = delta.rowwise().sum();
    if (s == 0) break;
    delta = (L[s].weight.transpose() * delta).cwiseProduct(
        (z[s - 1].array() > 0.0).cast<double>().matrix());
  }
  return loss;
}

void adadelta_update(std::span<double> params, std::span<const double> grads,
                     std::span<double> mean_sq_grad, std::span<double> mean_sq_delta,
                     AdadeltaParams hp) {
  const std::size_t n = params.size();
  if (grads.size() != n || mean_sq_grad.size() != n || mean_sq_delta.size() != n) {
    throw UsageError("adadelta: shape mismatch");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw NumericError("adadelta: non-finite gradient");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    mean_sq_grad[i] = hp.rho * mean_sq_grad[i] + (1.0 - hp.rho) * g * g;
    const double dx =
        -std::sqrt(mean_sq_delta[i] + hp.epsilon) / std::sqrt(mean_sq_grad[i] + hp.epsilon) * g;
    mean_sq_delta[i] = hp.rho * mean_sq_delta[i] + (1.0 - hp.rho) * dx * dx;
    params[i] += dx;
  }
}

Adadelta::Adadelta(const AutoModel& model, AdadeltaParams hp)
    : hp_(hp), mean_sq_grad_(zeros_like(model.layers)), mean_sq_delta_(zeros_like(model.layers)) {}

void Adadelta::step(AutoModel& model, const Gradients& grads) {
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    const Dense& g = grads.layers[s];
    if (!g.weight.allFinite() || !g.bias.allFinite()) {
      throw NumericError("adadelta: non-finite gradient in layer " + std::string(kSlotNames[s]));
    }
  }
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    Dense& p = model.layers[s];
    const Dense& g = grads.layers[s];
    Dense& eg = mean_sq_grad_[s];
    Dense& ed = mean_sq_delta_[s];
    auto span_of = [](auto& m) { return std::span(m.data(), static_cast<std::size_t>(m.size())); };
    adadelta_update(span_of(p.weight), span_of(g.weight), span_of(eg.weight), span_of(ed.weight),
                    hp_);
    adadelta_update(span_of(p.bias), span_of(g.bias), span_of(eg.bias), span_of(ed.bias), hp_);
  }
}

AutoModel train(AutoModel model, const EmbeddingSet& vectors, const TrainOptions& options) {
  if (options.epochs < 0) throw UsageError("epochs must be >= 0");
  if (options.batch < 1) throw UsageError("batch size must be >= 1");
  if (options.epochs == 0) return model;
  if (vectors.empty()) throw UsageError("cannot train on an empty vector set");
  if (vectors.dim() != model.input_dim) {
    throw DataError("vectors have dimension " + std::to_string(vectors.dim()) +
                    ", model expects " + std::to_string(model.input_dim));
  }
  const auto data = vectors.matrix();
  const auto n = static_cast<Eigen::Index>(vectors.size());
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;

  Rng rng(derive_seed(options.seed, "autonet/shuffle"));
  Adadelta opt(model);
  Gradients grads;
  Eigen::MatrixXd batch;
  const int first_epoch = model.history.empty() ? 1 : model.history.back().epoch + 1;
  for (int e = 0; e < options.epochs; ++e) {
    rng.shuffle(order);
    double sum = 0.0;
    int b = 0;
    for (Eigen::Index start = 0; start < n; start += options.batch, ++b) {
      const Eigen::Index len = std::min<Eigen::Index>(options.batch, n - start);
      batch.resize(model.input_dim, len);
      for (Eigen::Index k = 0; k < len; ++k) {
        batch.col(k) = data.col(order[static_cast<std::size_t>(start + k)]);
      }
      const double loss = mse_loss(model, batch, &grads);
      if (!std::isfinite(loss)) {
        throw NumericError("non-finite loss in epoch " + std::to_string(first_epoch + e) +
                           ", batch " + std::to_string(b + 1));
      }
      sum += loss * static_cast<double>(len);
      opt.step(model, grads);
    }
    model.history.push_back({first_epoch + e, sum / static_cast<double>(n)});
  }
  return model;
}

std::vector<AutoModel> train_parallel(std::vector<TrainJob> jobs, unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<AutoModel> out(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  for (std::size_t start = 0; start < jobs.size(); start += threads) {
    std::vector<std::jthread> pool;
    const std::size_t end = std::min(jobs.size(), start + threads);
    for (std::size_t j = start; j < end; ++j) {
      pool.emplace_back([&, j] {
        try {
          out[j] = train(std::move(jobs[j].model), *jobs[j].vectors, jobs[j].options);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string neuron_label(NeuronRef ref) {
  return std::string(layer_name(ref.layer)) + ":" + std::to_string(ref.index);
}

NeuronRef parse_neuron(std::string_view label) {
  auto colon = label.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("neuron must look like <layer>:<index>, got \"" + std::string(label) + "\"");
  }
  NeuronRef ref;
  ref.layer = parse_layer(label.substr(0, colon));
  try {
    ref.index = static_cast<int>(parse_int(label.substr(colon + 1)));
  } catch (const DataError&) {
    throw UsageError("bad neuron index in \"" + std::string(label) + "\"");
  }
  if (ref.index < 0) throw UsageError("negative neuron index");
  return ref;
}

ActivationMatrix::ActivationMatrix(std::vector<NeuronRef> neurons, std::vector<std::string> ids,
                                   RowMatrix values)
    : neurons_(std::move(neurons)), ids_(std::move(ids)), values_(std::move(values)) {
  if (values_.rows() != static_cast<Eigen::Index>(neurons_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(ids_.size())) {
    throw DataError("activation matrix shape does not match its labels");
  }
  if ((values_.array() < 0.0).any() || !values_.allFinite()) {
    throw NumericError("activations must be finite and non-negative");
  }
}

std::optional<std::size_t> ActivationMatrix::find(NeuronRef ref) const {
  for (std::size_t r = 0; r < neurons_.size(); ++r) {
    if (neurons_[r] == ref) return r;
  }
  return std::nullopt;
}

ActivationMatrix ActivationMatrix::select_columns(std::span<const std::size_t> columns) const {
  RowMatrix v(values_.rows(), static_cast<Eigen::Index>(columns.size()));
  std::vector<std::string> ids;
  ids.reserve(columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    v.col(static_cast<Eigen::Index>(k)) = values_.col(static_cast<Eigen::Index>(columns[k]));
    ids.push_back(ids_.at(columns[k]));
  }
  return ActivationMatrix(neurons_, std::move(ids), std::move(v));
}

ActivationMatrix activations(const AutoModel& model, const EmbeddingSet& vectors) {
  if (vectors.dim() != model.input_dim) {
    throw DataError("vectors have dimension " + std::to_string(vectors.dim()) +
                    ", model expects " + std::to_string(model.input_dim));
  }
  const auto& L = model.layers;
  const auto x = vectors.matrix();
  const Eigen::MatrixXd enc = relu((L[kEncoderSlot].weight * x).colwise() + L[kEncoderSlot].bias);
  const Eigen::MatrixXd code = relu((L[kCodeSlot].weight * enc).colwise() + L[kCodeSlot].bias);
  const Eigen::MatrixXd dec1 = relu((L[kDec1Slot].weight * code).colwise() + L[kDec1Slot].bias);
  const Eigen::MatrixXd dec2 = relu((L[kDec2Slot].weight * dec1).colwise() + L[kDec2Slot].bias);

  std::vector<NeuronRef> refs;
  refs.reserve(static_cast<std::size_t>(model.probed_neurons()));
  RowMatrix values(model.probed_neurons(), x.cols());
  Eigen::Index row = 0;
  for (auto [layer, m] : {std::pair<Layer, const Eigen::MatrixXd*>{Layer::kCode, &code},
                          {Layer::kDec1, &dec1},
                          {Layer::kDec2, &dec2}}) {
    values.middleRows(row, m->rows()) = *m;
    for (Eigen::Index i = 0; i < m->rows(); ++i) refs.push_back({layer, static_cast<int>(i)});
    row += m->rows();
  }
  return ActivationMatrix(std::move(refs), vectors.ids(), std::move(values));
}

void save_checkpoint(const AutoModel& model, std::ostream& out) {
  out << "neuronmine-autoencoder 1\n";
  out << "layers: " << model.input_dim << ' ' << model.hidden_dim << ' ' << model.code_dim
      << '\n';
  out << "seed: " << model.seed << '\n';
  out << "history: " << model.history.size() << '\n';
  for (const EpochLoss& h : model.history) {
    out << h.epoch << ' ' << format_double(h.loss) << '\n';
  }
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    const Dense& d = model.layers[s];
    out << "weight " << kSlotNames[s] << ' ' << d.weight.rows() << ' ' << d.weight.cols();
    for (Eigen::Index i = 0; i < d.weight.rows(); ++i) {
      for (Eigen::Index j = 0; j < d.weight.cols(); ++j) out << ' ' << format_double(d.weight(i, j));
    }
    out << '\n';
    out << "bias " << kSlotNames[s] << ' ' << d.bias.size();
    for (Eigen::Index i = 0; i < d.bias.size(); ++i) out << ' ' << format_double(d.bias[i]);
    out << '\n';
  }
}

void save_checkpoint(const AutoModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  save_checkpoint(model, out);
  if (!out) throw DataError("write failed: " + path.string());
}

AutoModel load_checkpoint(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::vector<std::string_view> {
    if (!std::getline(in, line)) throw DataError("checkpoint truncated after line " + std::to_string(line_no));
    ++line_no;
    return split_whitespace(line);
  };
  auto fail = [&](const std::string& what) -> DataError {
    return DataError("checkpoint line " + std::to_string(line_no) + ": " + what);
  };
  auto f = next();
  if (f.size() != 2 || f[0] != "neuronmine-autoencoder" || f[1] != "1") throw fail("bad magic");
  AutoModel m;
  f = next();
  if (f.size() != 4 || f[0] != "layers:") throw fail("expected \"layers: n h1 c\"");
  m.input_dim = static_cast<int>(parse_int(f[1]));
  m.hidden_dim = static_cast<int>(parse_int(f[2]));
  m.code_dim = static_cast<int>(parse_int(f[3]));
  if (m.input_dim < 1 || m.hidden_dim < 1 || m.code_dim < 1) throw fail("bad layer sizes");
  f = next();
  if (f.size() != 2 || f[0] != "seed:") throw fail("expected \"seed: s\"");
  {
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(f[1].data(), f[1].data() + f[1].size(), seed);
    if (ec != std::errc() || p != f[1].data() + f[1].size()) throw fail("bad seed");
    m.seed = seed;
  }
  f = next();
  if (f.size() != 2 || f[0] != "history:") throw fail("expected \"history: count\"");
  const long long hist = parse_int(f[1]);
  for (long long h = 0; h < hist; ++h) {
    f = next();
    if (f.size() != 2) throw fail("expected \"epoch loss\"");
    m.history.push_back({static_cast<int>(parse_int(f[0])), parse_double(f[1])});
  }
  const std::array<std::pair<int, int>, kSlotCount> shapes = {{
      {m.hidden_dim, m.input_dim},
      {m.code_dim, m.hidden_dim},
      {m.hidden_dim, m.code_dim},
      {m.input_dim, m.hidden_dim},
      {m.input_dim, m.input_dim},
  }};
  for (std::size_t s = 0; s < kSlotCount; ++s) {
    const auto [rows, cols] = shapes[s];
    f = next();
    if (f.size() < 4 || f[0] != "weight" || f[1] != kSlotNames[s] || parse_int(f[2]) != rows ||
        parse_int(f[3]) != cols ||
        f.size() != 4 + static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
      throw fail(std::string("bad weight record for ") + kSlotNames[s]);
    }
    Dense& d = m.layers[s];
    d.weight.resize(rows, cols);
    std::size_t k = 4;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) d.weight(i, j) = parse_double(f[k++]);
    }
    f = next();
    if (f.size() != 3 + static_cast<std::size_t>(rows) || f[0] != "bias" ||
        f[1] != kSlotNames[s] || parse_int(f[2]) != rows) {
      throw fail(std::string("bad bias record for ") + kSlotNames[s]);
    }
    d.bias.resize(rows);
    for (int i = 0; i < rows; ++i) d.bias[i] = parse_double(f[3 + static_cast<std::size_t>(i)]);
  }
  if (!m.all_finite()) throw NumericError("checkpoint contains non-finite weights");
  return m;
}

AutoModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  return load_checkpoint(in);
}

}  // namespace neuronmine
