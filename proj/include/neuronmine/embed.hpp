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

#ifndef NEURONMINE_EMBED_HPP_
#define NEURONMINE_EMBED_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "neuronmine/corpus.hpp"
#include "neuronmine/lexparse.hpp"

namespace neuronmine {

using Sentence = std::vector<std::string>;

// Pretty-printed token stream split at ';', '{' and '}' (the delimiters
// themselves are dropped, as are empty pieces).
std::vector<Sentence> token_sentences(const Method& method);
std::vector<Sentence> token_sentences(std::span<const Token> tokens);

// For each block (preorder): the kinds of its ancestors followed by the
// preorder kinds of the block's subtree. Then, for each leaf (preorder): the
// root-to-leaf kinds, followed by the leaf's spelling when it has one.
std::vector<Sentence> ast_sentences(const SyntaxTree& tree);

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SkipGramOptions {
  int dim = 64;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  std::uint64_t seed = 1;
  double learning_rate = 0.025;
};

// Word vectors learned by skip-gram with negative sampling.
struct VocabEmbedding {
  std::vector<std::string> words;
  std::unordered_map<std::string, int> index;
  std::vector<std::int64_t> counts;
  RowMatrix input;   // |V| x d, the vectors used downstream
  RowMatrix output;  // |V| x d, context vectors
  // Negative-sampling loss on the held-out pairs after each epoch; entry 0
  // is the loss before training.
  std::vector<double> heldout_loss;

  int dim() const { return static_cast<int>(input.cols()); }
  std::size_t size() const { return words.size(); }
  std::optional<int> lookup(std::string_view word) const;

  friend bool operator==(const VocabEmbedding& a, const VocabEmbedding& b) {
    return a.words == b.words && a.counts == b.counts && a.input == b.input &&
           a.output == b.output && a.heldout_loss == b.heldout_loss;
  }
};

// Throws UsageError when there are no (center, context) pairs.
VocabEmbedding train_skipgram(std::span<const Sentence> sentences,
                              const SkipGramOptions& options);

// -log s(u_o . v_c) - sum_k log s(-u_k . v_c) for center c, context o and
// negatives k.
double negative_sampling_loss(const VocabEmbedding& ve, int center, int context,
                              std::span<const int> negatives);

struct NegativeSamplingGradient {
  Eigen::VectorXd center;                 // d loss / d input[center]
  Eigen::VectorXd context;                // d loss / d output[context]
  std::vector<Eigen::VectorXd> negatives;  // d loss / d output[negative_k]
};

NegativeSamplingGradient negative_sampling_gradient(const VocabEmbedding& ve, int center,
                                                    int context,
                                                    std::span<const int> negatives);

// Mean input vector over all in-vocabulary word occurrences. Throws DataError
// naming `id` when nothing is in vocabulary.
Eigen::VectorXd embed_method(const VocabEmbedding& ve, std::span<const Sentence> sentences,
                             std::string_view id = {});

enum class Provenance : std::uint8_t { kToken, kAst, kImported };

const char* provenance_name(Provenance p);
Provenance parse_provenance(std::string_view name);

// Fixed-dimension vectors keyed by method id; iteration order is insertion
// order. Every entry is finite.
class EmbeddingSet {
 public:
  EmbeddingSet(int dim, Provenance provenance);

  void add(std::string id, const Eigen::Ref<const Eigen::VectorXd>& vector);

  int dim() const { return dim_; }
  Provenance provenance() const { return provenance_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  // dim x size; column j belongs to ids()[j].
  Eigen::Map<const Eigen::MatrixXd> matrix() const {
    return {values_.data(), dim_, static_cast<Eigen::Index>(ids_.size())};
  }
  Eigen::Map<const Eigen::VectorXd> vector(std::size_t column) const {
    return {values_.data() + column * static_cast<std::size_t>(dim_), dim_};
  }
  std::optional<std::size_t> find(const std::string& id) const;

  // Subset in the order of `ids`.
  EmbeddingSet select(std::span<const std::string> ids) const;

  friend bool operator==(const EmbeddingSet& a, const EmbeddingSet& b) {
    return a.dim_ == b.dim_ && a.provenance_ == b.provenance_ && a.ids_ == b.ids_ &&
           a.values_ == b.values_;
  }

 private:
  int dim_;
  Provenance provenance_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<double> values_;  // column-major, dim_ per method
};

// Per-dimension z-score using statistics of `reference`; constant
// dimensions are only centered.
EmbeddingSet standardize(const EmbeddingSet& set, const EmbeddingSet& reference);

// Vectors file: "<count> <dim>" then "<id> <v1> ... <vdim>" per line.
EmbeddingSet import_vectors(const std::filesystem::path& path,
                            std::optional<int> expected_dim = std::nullopt);
EmbeddingSet import_vectors(std::istream& in, std::optional<int> expected_dim = std::nullopt);
void export_vectors(const EmbeddingSet& set, const std::filesystem::path& path);
void export_vectors(const EmbeddingSet& set, std::ostream& out);

struct EmbedOptions {
  SkipGramOptions skipgram;
  // Only methods tagged train feed the skip-gram training.
  bool train_on_train_split = true;
};

struct CorpusEmbedding {
  VocabEmbedding vocab;
  EmbeddingSet vectors;
};

// Sentences for every method, skip-gram over the training ones, then one
// averaged vector per method in corpus order. Methods that fail to tokenize
// or parse are skipped and reported in `skipped`.
CorpusEmbedding embed_corpus(const CorpusStore& store, Provenance route,
                             const EmbedOptions& options,
                             std::vector<std::string>* skipped = nullptr);

}  // namespace neuronmine

#endif  // NEURONMINE_EMBED_HPP_
