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

#include "neuronmine/labels.hpp"

#include <algorithm>

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

LabelPolicy LabelPolicy::structural(int c) {
  if (c < 1) throw UsageError("structural threshold c must be >= 1");
  LabelPolicy p;
  p.kind = PolicyKind::kStructural;
  p.threshold = c;
  return p;
}

LabelPolicy LabelPolicy::semantic(std::vector<std::string> patterns) {
  LabelPolicy p;
  p.kind = PolicyKind::kSemantic;
  for (const std::string& t : patterns) {
    std::string lower = to_lower(trim(t));
    if (lower.empty()) throw UsageError("empty semantic pattern");
    p.patterns.push_back(std::move(lower));
  }
  if (p.patterns.empty()) throw UsageError("semantic policy needs at least one pattern");
  return p;
}

LabelPolicy LabelPolicy::random(long long n, std::uint64_t seed) {
  LabelPolicy p;
  p.kind = PolicyKind::kRandom;
  p.cutoff = n;
  p.seed = seed;
  return p;
}

std::string LabelPolicy::spec() const {
  switch (kind) {
    case PolicyKind::kStructural:
      return "struct:c=" + std::to_string(threshold);
    case PolicyKind::kSemantic: {
      std::string s = "sem:";
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (i) s += ',';
        s += patterns[i];
      }
      return s;
    }
    case PolicyKind::kRandom:
      return cutoff < 0 ? "rand:seed=" + std::to_string(seed)
                        : "rand:n=" + std::to_string(cutoff) + ",seed=" + std::to_string(seed);
  }
  return {};
}

std::string LabelPolicy::class_name() const {
  switch (kind) {
    case PolicyKind::kStructural: return "Structural";
    case PolicyKind::kSemantic: return "Semantic";
    case PolicyKind::kRandom: return "Random";
  }
  return {};
}

std::string LabelPolicy::instance() const {
  switch (kind) {
    case PolicyKind::kStructural:
      return "c=" + std::to_string(threshold);
    case PolicyKind::kSemantic: {
      std::string s = "T={";
      for (std::size_t i = 0; i < patterns.size(); ++i) {
        if (i) s += ", ";
        s += patterns[i];
      }
      return s + "}";
    }
    case PolicyKind::kRandom:
      return "none";
  }
  return {};
}

LabelPolicy parse_policy(std::string_view spec) {
  const std::string_view text = trim(spec);
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{}
                                                                : text.substr(colon + 1);
  auto bad = [&](const std::string& why) {
    return UsageError("bad policy \"" + std::string(spec) + "\": " + why);
  };
  auto key_values = [&](std::string_view body) {
    std::vector<std::pair<std::string_view, std::string_view>> kv;
    if (trim(body).empty()) return kv;
    for (std::string_view part : split_on(body, ',')) {
      const auto eq = part.find('=');
      if (eq == std::string_view::npos) throw bad("expected key=value, got \"" + std::string(part) + "\"");
      kv.emplace_back(trim(part.substr(0, eq)), trim(part.substr(eq + 1)));
    }
    return kv;
  };
  try {
    if (head == "struct" || head == "structural") {
      int c = -1;
      for (auto [k, v] : key_values(rest)) {
        if (k != "c") throw bad("unknown key \"" + std::string(k) + "\"");
        c = static_cast<int>(parse_int(v));
      }
      if (c < 1) throw bad("needs c >= 1");
      return LabelPolicy::structural(c);
    }
    if (head == "sem" || head == "semantic") {
      std::vector<std::string> patterns;
      for (std::string_view p : split_on(rest, ',')) patterns.emplace_back(trim(p));
      return LabelPolicy::semantic(std::move(patterns));
    }
    if (head == "rand" || head == "random") {
      long long n = -1;
      long long seed = 0;
      for (auto [k, v] : key_values(rest)) {
        if (k == "n") {
          n = parse_int(v);
          if (n < 0) throw bad("n must be >= 0");
        } else if (k == "seed") {
          seed = parse_int(v);
        } else {
          throw bad("unknown key \"" + std::string(k) + "\"");
        }
      }
      return LabelPolicy::random(n, static_cast<std::uint64_t>(seed));
    }
  } catch (const DataError& e) {
    throw bad(e.what());
  }
  throw bad("kind must be struct, sem or rand");
}

int label_structural_tree(const SyntaxTree& tree, int c, CyclomaticOptions options) {
  return cyclomatic(tree, options) < c ? 0 : 1;
}

int label_structural(const Method& method, int c, CyclomaticOptions options) {
  return label_structural_tree(parse_method(method.source), c, options);
}

int label_semantic(std::string_view name, std::span<const std::string> patterns) {
  const std::string lower = to_lower(name);
  for (const std::string& t : patterns) {
    if (lower.find(t) != std::string::npos) return 1;
  }
  return 0;
}

LabelMap label_random(std::span<const std::string> ids, std::size_t n, std::uint64_t seed) {
  if (n > ids.size()) throw UsageError("random cutoff exceeds the number of methods");
  std::vector<std::string> order(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(order);
  LabelMap labels;
  labels.reserve(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) labels[order[i]] = i < n ? 1 : 0;
  return labels;
}

LabelingReport apply_policy(const LabelPolicy& policy, const CorpusStore& store,
                            std::span<const std::string> ids, CyclomaticOptions options) {
  LabelingReport report;
  switch (policy.kind) {
    case PolicyKind::kStructural:
      for (const std::string& id : ids) {
        try {
          report.labels[id] = label_structural(store.by_id(id), policy.threshold, options);
        } catch (const ParseError&) {
          report.excluded.push_back(id);
        }
      }
      break;
    case PolicyKind::kSemantic:
      for (const std::string& id : ids) {
        report.labels[id] = label_semantic(store.by_id(id).name, policy.patterns);
      }
      break;
    case PolicyKind::kRandom: {
      const std::size_t n = policy.cutoff < 0 ? ids.size() / 2
                                              : static_cast<std::size_t>(policy.cutoff);
      report.labels = label_random(ids, n, policy.seed);
      break;
    }
  }
  return report;
}

}  // namespace neuronmine
