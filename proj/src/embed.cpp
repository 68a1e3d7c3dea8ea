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

#include "neuronmine/embed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + exp(x)) without overflow.
double softplus(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

void collect_block_sentences(const SyntaxTree& n, std::vector<std::string>& ancestors,
                             std::vector<Sentence>& out);

void preorder_kinds(const SyntaxTree& n, Sentence& out) {
  out.emplace_back(kind_name(n.kind));
  for (const SyntaxTree& c : n.children) preorder_kinds(c, out);
}

void collect_block_sentences(const SyntaxTree& n, std::vector<std::string>& ancestors,
                             std::vector<Sentence>& out) {
  if (n.kind == NodeKind::kBlock) {
    Sentence s = ancestors;
    preorder_kinds(n, s);
    out.push_back(std::move(s));
  }
  ancestors.emplace_back(kind_name(n.kind));
  for (const SyntaxTree& c : n.children) collect_block_sentences(c, ancestors, out);
  ancestors.pop_back();
}

void collect_path_sentences(const SyntaxTree& n, std::vector<std::string>& path,
                            std::vector<Sentence>& out) {
  path.emplace_back(kind_name(n.kind));
  if (n.children.empty()) {
    Sentence s = path;
    if (n.text) s.push_back(*n.text);
    out.push_back(std::move(s));
  } else {
    for (const SyntaxTree& c : n.children) collect_path_sentences(c, path, out);
  }
  path.pop_back();
}

// Samples word indices proportional to count^0.75.
class NoiseSampler {
 public:
  explicit NoiseSampler(const std::vector<std::int64_t>& counts) {
    cumulative_.reserve(counts.size());
    double total = 0.0;
    for (std::int64_t c : counts) {
      total += std::pow(static_cast<double>(c), 0.75);
      cumulative_.push_back(total);
    }
  }

  int draw(Rng& rng) const {
    const double u = rng.uniform() * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<int>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

struct HeldOutPair {
  int center;
  int context;
  std::vector<int> negatives;
};

bool held_out(std::uint64_t salt, std::uint64_t pair_index) {
  return splitmix64(salt ^ pair_index) % 20 == 0;
}

template <typename Fn>
void for_each_pair(const std::vector<std::vector<int>>& encoded, int window, Fn&& fn) {
  std::uint64_t p = 0;
  for (const std::vector<int>& s : encoded) {
    const int n = static_cast<int>(s.size());
    for (int c = 0; c < n; ++c) {
      const int lo = std::max(0, c - window), hi = std::min(n - 1, c + window);
      for (int o = lo; o <= hi; ++o) {
        if (o == c) continue;
        fn(p++, s[static_cast<std::size_t>(c)], s[static_cast<std::size_t>(o)]);
      }
    }
  }
}

double heldout_mean_loss(const VocabEmbedding& ve, const std::vector<HeldOutPair>& pairs) {
  if (pairs.empty()) return 0.0;
  double sum = 0.0;
  for (const HeldOutPair& h : pairs) {
    sum += negative_sampling_loss(ve, h.center, h.context, h.negatives);
  }
  return sum / static_cast<double>(pairs.size());
}

}  // namespace

std::vector<Sentence> token_sentences(std::span<const Token> tokens) {
  std::vector<Sentence> out;
  Sentence current;
  for (const Token& tok : tokens) {
    if (tok.kind == TokenKind::kPunctuation &&
        (tok.text == ";" || tok.text == "{" || tok.text == "}")) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
      continue;
    }
    current.push_back(tok.text);
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<Sentence> token_sentences(const Method& method) {
  return token_sentences(tokenize(method.source));
}

std::vector<Sentence> ast_sentences(const SyntaxTree& tree) {
  std::vector<Sentence> out;
  std::vector<std::string> scratch;
  collect_block_sentences(tree, scratch, out);
  collect_path_sentences(tree, scratch, out);
  return out;
}

std::optional<int> VocabEmbedding::lookup(std::string_view word) const {
  auto it = index.find(std::string(word));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

double negative_sampling_loss(const VocabEmbedding& ve, int center, int context,
                              std::span<const int> negatives) {
  const auto v = ve.input.row(center);
  double loss = softplus(-v.dot(ve.output.row(context)));
  for (int k : negatives) loss += softplus(v.dot(ve.output.row(k)));
  return loss;
}

NegativeSamplingGradient negative_sampling_gradient(const VocabEmbedding& ve, int center,
                                                    int context,
                                                    std::span<const int> negatives) {
  const Eigen::VectorXd v = ve.input.row(center).transpose();
  NegativeSamplingGradient g;
  const Eigen::VectorXd u_o = ve.output.row(context).transpose();
  const double s_o = sigmoid(u_o.dot(v));
  g.center = -(1.0 - s_o) * u_o;
  g.context = -(1.0 - s_o) * v;
  for (int k : negatives) {
    const Eigen::VectorXd u_k = ve.output.row(k).transpose();
    const double s_k = sigmoid(u_k.dot(v));
    g.center += s_k * u_k;
    g.negatives.push_back(s_k * v);
  }
  return g;
}

VocabEmbedding train_skipgram(std::span<const Sentence> sentences,
                              const SkipGramOptions& options) {
  if (options.dim < 1) throw UsageError("embedding dimension must be >= 1");
  if (options.window < 1) throw UsageError("window must be >= 1");
  if (options.negatives < 0 || options.epochs < 0) {
    throw UsageError("negatives and epochs must be non-negative");
  }
  VocabEmbedding ve;
  std::vector<std::vector<int>> encoded;
  encoded.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    std::vector<int> ids;
    ids.reserve(s.size());
    for (const std::string& w : s) {
      auto [it, fresh] = ve.index.emplace(w, static_cast<int>(ve.words.size()));
      if (fresh) {
        ve.words.push_back(w);
        ve.counts.push_back(0);
      }
      ++ve.counts[static_cast<std::size_t>(it->second)];
      ids.push_back(it->second);
    }
    encoded.push_back(std::move(ids));
  }
  if (ve.words.empty()) throw UsageError("empty vocabulary");

  std::uint64_t total_pairs = 0;
  for_each_pair(encoded, options.window, [&](std::uint64_t, int, int) { ++total_pairs; });
  if (total_pairs == 0) throw UsageError("no (center, context) pairs to train on");

  const auto v = static_cast<Eigen::Index>(ve.words.size());
  const int d = options.dim;
  Rng init_rng(derive_seed(options.seed, "skipgram/init"));
  ve.input.resize(v, d);
  for (Eigen::Index r = 0; r < v; ++r) {
    for (int c = 0; c < d; ++c) ve.input(r, c) = (init_rng.uniform() - 0.5) / d;
  }
  ve.output = RowMatrix::Zero(v, d);

  const NoiseSampler noise(ve.counts);
  const std::uint64_t salt = derive_seed(options.seed, "skipgram/holdout");
  std::vector<HeldOutPair> heldout;
  std::uint64_t n_heldout = 0;
  for_each_pair(encoded, options.window, [&](std::uint64_t p, int, int) {
    n_heldout += held_out(salt, p);
  });
  // Tiny corpora: hold out the last pair so the curve exists, unless that
  // would leave nothing to train on.
  const bool force_last = n_heldout == 0 && total_pairs >= 2;
  auto is_heldout = [&](std::uint64_t p) {
    return held_out(salt, p) || (force_last && p == total_pairs - 1);
  };
  {
    Rng neg_rng(derive_seed(options.seed, "skipgram/heldout-negatives"));
    for_each_pair(encoded, options.window, [&](std::uint64_t p, int c, int o) {
      if (!is_heldout(p)) return;
      HeldOutPair h{c, o, {}};
      for (int k = 0; k < options.negatives; ++k) {
        int neg = noise.draw(neg_rng);
        for (int tries = 0; neg == o && v > 1 && tries < 64; ++tries) neg = noise.draw(neg_rng);
        h.negatives.push_back(neg);
      }
      heldout.push_back(std::move(h));
    });
  }
  const std::uint64_t train_pairs = total_pairs - heldout.size();
  if (train_pairs == 0) throw UsageError("no (center, context) pairs to train on");

  ve.heldout_loss.push_back(heldout_mean_loss(ve, heldout));
  Rng rng(derive_seed(options.seed, "skipgram/train"));
  Eigen::VectorXd neu1e(d);
  const double total_work = static_cast<double>(train_pairs) * options.epochs;
  double done = 0.0;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    for_each_pair(encoded, options.window, [&](std::uint64_t p, int c, int o) {
      if (is_heldout(p)) return;
      const double alpha =
          options.learning_rate * std::max(1e-4, 1.0 - done / total_work);
      done += 1.0;
      double* in = ve.input.row(c).data();
      neu1e.setZero();
      for (int k = -1; k < options.negatives; ++k) {
        int target;
        double label;
        if (k < 0) {
          target = o;
          label = 1.0;
        } else {
          target = noise.draw(rng);
          if (target == o) continue;
          label = 0.0;
        }
        double* out = ve.output.row(target).data();
        double f = 0.0;
        for (int i = 0; i < d; ++i) f += in[i] * out[i];
        const double g = (label - sigmoid(f)) * alpha;
        for (int i = 0; i < d; ++i) {
          neu1e[i] += g * out[i];
          out[i] += g * in[i];
        }
      }
      for (int i = 0; i < d; ++i) in[i] += neu1e[i];
    });
    ve.heldout_loss.push_back(heldout_mean_loss(ve, heldout));
    if (!ve.input.allFinite() || !ve.output.allFinite()) {
      throw NumericError("skip-gram diverged in epoch " + std::to_string(epoch + 1));
    }
  }
  return ve;
}

Eigen::VectorXd embed_method(const VocabEmbedding& ve, std::span<const Sentence> sentences,
                             std::string_view id) {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(ve.dim());
  std::size_t n = 0;
  for (const Sentence& s : sentences) {
    for (const std::string& w : s) {
      auto it = ve.index.find(w);
      if (it == ve.index.end()) continue;
      sum += ve.input.row(it->second).transpose();
      ++n;
    }
  }
  if (n == 0) {
    throw DataError("method \"" + std::string(id) + "\" has no in-vocabulary words");
  }
  return sum / static_cast<double>(n);
}

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::kToken: return "token";
    case Provenance::kAst: return "ast";
    case Provenance::kImported: return "imported";
  }
  return "?";
}

Provenance parse_provenance(std::string_view name) {
  if (name == "token") return Provenance::kToken;
  if (name == "ast") return Provenance::kAst;
  if (name == "imported" || name == "import") return Provenance::kImported;
  throw UsageError("unknown embedding provenance \"" + std::string(name) + "\"");
}

EmbeddingSet::EmbeddingSet(int dim, Provenance provenance)
    : dim_(dim), provenance_(provenance) {
  if (dim < 1) throw UsageError("embedding dimension must be >= 1");
}

void EmbeddingSet::add(std::string id, const Eigen::Ref<const Eigen::VectorXd>& vector) {
  if (vector.size() != dim_) {
    throw DataError("vector for \"" + id + "\" has " + std::to_string(vector.size()) +
                    " entries, expected " + std::to_string(dim_));
  }
  if (!vector.allFinite()) throw NumericError("vector for \"" + id + "\" is not finite");
  if (!index_.emplace(id, ids_.size()).second) {
    throw DataError("duplicate vector id \"" + id + "\"");
  }
  ids_.push_back(std::move(id));
  values_.insert(values_.end(), vector.data(), vector.data() + dim_);
}

std::optional<std::size_t> EmbeddingSet::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingSet EmbeddingSet::select(std::span<const std::string> ids) const {
  EmbeddingSet out(dim_, provenance_);
  for (const std::string& id : ids) {
    auto j = find(id);
    if (!j) throw DataError("no vector for method \"" + id + "\"");
    out.add(id, vector(*j));
  }
  return out;
}

EmbeddingSet standardize(const EmbeddingSet& set, const EmbeddingSet& reference) {
  if (set.dim() != reference.dim()) throw DataError("dimension mismatch in standardize");
  if (reference.empty()) throw UsageError("cannot standardize against an empty set");
  const auto ref = reference.matrix();
  const Eigen::VectorXd mean = ref.rowwise().mean();
  const Eigen::VectorXd var =
      (ref.colwise() - mean).array().square().rowwise().mean().matrix();
  EmbeddingSet out(set.dim(), set.provenance());
  for (std::size_t j = 0; j < set.size(); ++j) {
    Eigen::VectorXd x = set.vector(j) - mean;
    for (int i = 0; i < set.dim(); ++i) {
      if (var[i] > 0) x[i] /= std::sqrt(var[i]);
    }
    out.add(set.ids()[j], x);
  }
  return out;
}

EmbeddingSet import_vectors(std::istream& in, std::optional<int> expected_dim) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (line_no == 0 || trim(line).empty()) throw DataError("vectors file has no header");
  auto header = split_whitespace(line);
  if (header.size() != 2) {
    throw DataError("line " + std::to_string(line_no) + ": header must be \"<count> <dim>\"");
  }
  long long count, dim;
  try {
    count = parse_int(header[0]);
    dim = parse_int(header[1]);
  } catch (const DataError&) {
    throw DataError("line " + std::to_string(line_no) + ": header must be \"<count> <dim>\"");
  }
  if (count < 0 || dim < 1) {
    throw DataError("line " + std::to_string(line_no) + ": bad count or dimension");
  }
  if (expected_dim && *expected_dim != dim) {
    throw DataError("line " + std::to_string(line_no) + ": dimension " + std::to_string(dim) +
                    " does not match expected " + std::to_string(*expected_dim));
  }
  EmbeddingSet set(static_cast<int>(dim), Provenance::kImported);
  Eigen::VectorXd row(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_whitespace(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (static_cast<long long>(fields.size()) != dim + 1) {
      throw DataError(where + "expected id and " + std::to_string(dim) + " values, found " +
                      std::to_string(fields.size() == 0 ? 0 : fields.size() - 1) + " values");
    }
    for (long long i = 0; i < dim; ++i) {
      double x;
      try {
        x = parse_double(fields[static_cast<std::size_t>(i + 1)]);
      } catch (const DataError& e) {
        throw DataError(where + e.what());
      }
      if (!std::isfinite(x)) throw DataError(where + "non-finite value");
      row[i] = x;
    }
    try {
      set.add(std::string(fields[0]), row);
    } catch (const DataError& e) {
      throw DataError(where + e.what());
    }
  }
  if (static_cast<long long>(set.size()) != count) {
    throw DataError("header announces " + std::to_string(count) + " vectors, file has " +
                    std::to_string(set.size()));
  }
  return set;
}

EmbeddingSet import_vectors(const std::filesystem::path& path, std::optional<int> expected_dim) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open vectors file " + path.string());
  return import_vectors(in, expected_dim);
}

void export_vectors(const EmbeddingSet& set, std::ostream& out) {
  out << set.size() << ' ' << set.dim() << '\n';
  for (std::size_t j = 0; j < set.size(); ++j) {
    out << set.ids()[j];
    const auto v = set.vector(j);
    for (int i = 0; i < set.dim(); ++i) out << ' ' << format_double(v[i]);
    out << '\n';
  }
}

void export_vectors(const EmbeddingSet& set, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  export_vectors(set, out);
  if (!out) throw DataError("write failed: " + path.string());
}

CorpusEmbedding embed_corpus(const CorpusStore& store, Provenance route,
                             const EmbedOptions& options, std::vector<std::string>* skipped) {
  if (route == Provenance::kImported) {
    throw UsageError("imported vectors are read with import_vectors, not trained");
  }
  std::vector<std::vector<Sentence>> per_method(store.size());
  std::vector<bool> ok(store.size(), false);
  std::vector<Sentence> training;
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Method& m = store.at(i);
    try {
      const std::vector<Token> tokens = tokenize(m.source);
      per_method[i] = route == Provenance::kToken ? token_sentences(tokens)
                                                  : ast_sentences(parse_method(tokens));
      ok[i] = true;
    } catch (const DataError&) {
      if (skipped) skipped->push_back(m.id);
      continue;
    }
    if (!options.train_on_train_split || store.tag(i) == Split::kTrain) {
      training.insert(training.end(), per_method[i].begin(), per_method[i].end());
    }
  }
  CorpusEmbedding result{train_skipgram(training, options.skipgram),
                         EmbeddingSet(options.skipgram.dim, route)};
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!ok[i]) continue;
    try {
      result.vectors.add(store.at(i).id,
                         embed_method(result.vocab, per_method[i], store.at(i).id));
    } catch (const DataError&) {
      if (skipped) skipped->push_back(store.at(i).id);
    }
  }
  return result;
}

}  // namespace neuronmine
