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

#ifndef NEURONMINE_LABELS_HPP_
#define NEURONMINE_LABELS_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "neuronmine/corpus.hpp"
#include "neuronmine/lexparse.hpp"

namespace neuronmine {

enum class PolicyKind : std::uint8_t { kStructural, kSemantic, kRandom };

// One binary labelling rule. Only the fields of `kind` are meaningful.
struct LabelPolicy {
  PolicyKind kind = PolicyKind::kRandom;
  int threshold = 1;                  // structural: c
  std::vector<std::string> patterns;  // semantic: T, lowercase
  // random: number of class-1 methods; negative means half of the list.
  long long cutoff = -1;
  std::uint64_t seed = 0;

  static LabelPolicy structural(int c);
  static LabelPolicy semantic(std::vector<std::string> patterns);
  static LabelPolicy random(long long n, std::uint64_t seed);

  // Canonical spec string, e.g. "struct:c=10", "sem:sort,find",
  // "rand:n=500,seed=7".
  std::string spec() const;
  // Table row label: ("Structural", "c=10"), ("Semantic", "T={sort, find}"),
  // ("Random", "none").
  std::string class_name() const;
  std::string instance() const;

  friend bool operator==(const LabelPolicy&, const LabelPolicy&) = default;
};

// Parses "struct:c=10", "sem:sort,find", "rand:n=500,seed=7" ("rand" alone
// means a half split with seed 0). Throws UsageError.
LabelPolicy parse_policy(std::string_view spec);

// 0 iff cyclomatic(parse(source)) < c. Parse failures throw DataError.
int label_structural(const Method& method, int c,
                     CyclomaticOptions options = {});
int label_structural_tree(const SyntaxTree& tree, int c, CyclomaticOptions options = {});

// 1 iff some pattern occurs in lowercase(name).
int label_semantic(std::string_view name, std::span<const std::string> patterns);

// Seeded shuffle of `ids`; the first n get 1, the rest 0. Requires
// 0 <= n <= ids.size().
LabelMap label_random(std::span<const std::string> ids, std::size_t n, std::uint64_t seed);

struct LabelingReport {
  LabelMap labels;
  // Methods left unlabelled because they failed to parse (structural only).
  std::vector<std::string> excluded;
};

// Labels the given methods. Structural labelling drops unparsable methods;
// random labelling shuffles `ids` in the given order.
LabelingReport apply_policy(const LabelPolicy& policy, const CorpusStore& store,
                            std::span<const std::string> ids,
                            CyclomaticOptions options = {});

}  // namespace neuronmine

#endif  // NEURONMINE_LABELS_HPP_
