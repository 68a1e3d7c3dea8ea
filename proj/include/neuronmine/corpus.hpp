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

#ifndef NEURONMINE_CORPUS_HPP_
#define NEURONMINE_CORPUS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace neuronmine {

// One method of the corpus.
struct Method {
  std::string id;
  std::string name;
  std::string source;
  std::optional<std::string> repo;
  // Oracle complexity, present only on synthetic corpora.
  std::optional<int> cc_true;

  friend bool operator==(const Method&, const Method&) = default;
};

enum class Split : std::uint8_t { kTrain, kEval };

const char* split_name(Split split);

// Ordered methods plus a train/eval tag per method. Methods keep the order of
// the file they came from; ids are unique.
class CorpusStore {
 public:
  CorpusStore() = default;
  // Every method starts tagged train. Throws DataError on a duplicate id.
  explicit CorpusStore(std::vector<Method> methods);

  const std::vector<Method>& methods() const { return methods_; }
  const std::vector<Split>& tags() const { return tags_; }
  std::size_t size() const { return methods_.size(); }
  bool empty() const { return methods_.empty(); }

  const Method& at(std::size_t i) const { return methods_.at(i); }
  Split tag(std::size_t i) const { return tags_.at(i); }
  void set_tag(std::size_t i, Split split) { tags_.at(i) = split; }

  // Index of the method with this id, if any.
  std::optional<std::size_t> find(const std::string& id) const;
  const Method& by_id(const std::string& id) const;

  // Ids tagged with `split`, in corpus order.
  std::vector<std::string> ids(Split split) const;
  std::size_t count(Split split) const;

  friend bool operator==(const CorpusStore& a, const CorpusStore& b) {
    return a.methods_ == b.methods_ && a.tags_ == b.tags_;
  }

 private:
  std::vector<Method> methods_;
  std::vector<Split> tags_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Reads a JSONL corpus. Blank lines are skipped. Errors name the 1-based line
// number (malformed record) or the id (duplicate).
CorpusStore ingest_jsonl(const std::filesystem::path& path);
CorpusStore ingest_jsonl(std::istream& in);

void write_jsonl(const CorpusStore& store, const std::filesystem::path& path);
void write_jsonl(const CorpusStore& store, std::ostream& out);

// Tags exactly round(train_fraction * size) methods as train, chosen by a
// seeded shuffle; everything else becomes eval.
CorpusStore split(CorpusStore store, double train_fraction, std::uint64_t seed);

// Split tags as "id,split" lines. Reading applies tags to a store and
// requires every method to be listed.
void write_split(const CorpusStore& store, const std::filesystem::path& path);
void apply_split(CorpusStore& store, const std::filesystem::path& path);

using LabelMap = std::unordered_map<std::string, int>;

struct LabeledId {
  std::string id;
  int label = 0;

  friend bool operator==(const LabeledId&, const LabeledId&) = default;
};

// Draws up to `per_class` eval methods of each class. Order alternates
// 0,1,0,1,... while both classes last, then the remainder of the larger one.
std::vector<LabeledId> balanced_sample(const CorpusStore& store,
                                       const LabelMap& labels,
                                       std::size_t per_class,
                                       std::uint64_t seed);

struct SynthOptions {
  std::size_t count = 100;
  std::uint64_t seed = 1;
  int min_complexity = 1;
  int max_complexity = 20;
  // Probability that a name carries one of the pattern terms
  // (sort, find, search, locate, hash, crypt).
  double pattern_rate = 0.5;
  // Probability that a pattern-named method also contains the code motif
  // associated with its term. Motifs are straight-line code.
  double motif_rate = 0.9;
};

// Java-like methods with known cyclomatic complexity, uniformly drawn from
// [min_complexity, max_complexity] and recorded in Method::cc_true.
CorpusStore gen_synthetic(const SynthOptions& options);

// Pattern terms the generator knows motifs for.
const std::vector<std::string>& synthetic_pattern_terms();

}  // namespace neuronmine

#endif  // NEURONMINE_CORPUS_HPP_
