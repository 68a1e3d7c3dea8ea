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

#include "neuronmine/corpus.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

namespace {

using Json = nlohmann::ordered_json;

std::string required_string(const Json& record, const char* key,
                            std::size_t line_no) {
  auto it = record.find(key);
  if (it == record.end() || !it->is_string()) {
    throw DataError("line " + std::to_string(line_no) +
                    ": missing or non-string field \"" + key + "\"");
  }
  std::string value = it->get<std::string>();
  if (value.empty()) {
    throw DataError("line " + std::to_string(line_no) + ": empty field \"" +
                    key + "\"");
  }
  return value;
}

}  // namespace

const char* split_name(Split split) {
  return split == Split::kTrain ? "train" : "eval";
}

CorpusStore::CorpusStore(std::vector<Method> methods)
    : methods_(std::move(methods)), tags_(methods_.size(), Split::kTrain) {
  index_.reserve(methods_.size());
  for (std::size_t i = 0; i < methods_.size(); ++i) {
    if (!index_.emplace(methods_[i].id, i).second) {
      throw DataError("duplicate method id \"" + methods_[i].id + "\"");
    }
  }
}

std::optional<std::size_t> CorpusStore::find(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Method& CorpusStore::by_id(const std::string& id) const {
  auto i = find(id);
  if (!i) throw DataError("unknown method id \"" + id + "\"");
  return methods_[*i];
}

std::vector<std::string> CorpusStore::ids(Split split) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < methods_.size(); ++i) {
    if (tags_[i] == split) out.push_back(methods_[i].id);
  }
  return out;
}

std::size_t CorpusStore::count(Split split) const {
  std::size_t n = 0;
  for (Split t : tags_) n += (t == split);
  return n;
}

CorpusStore ingest_jsonl(std::istream& in) {
  std::vector<Method> methods;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    Json record;
    try {
      record = Json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw DataError("line " + std::to_string(line_no) + ": malformed JSON");
    }
    if (!record.is_object()) {
      throw DataError("line " + std::to_string(line_no) +
                      ": record is not an object");
    }
    Method m;
    m.id = required_string(record, "id", line_no);
    m.name = required_string(record, "name", line_no);
    m.source = required_string(record, "source", line_no);
    if (auto it = record.find("repo"); it != record.end() && !it->is_null()) {
      if (!it->is_string()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": field \"repo\" is not a string");
      }
      m.repo = it->get<std::string>();
    }
    if (auto it = record.find("cc_true"); it != record.end() && !it->is_null()) {
      if (!it->is_number_integer()) {
        throw DataError("line " + std::to_string(line_no) +
                        ": field \"cc_true\" is not an integer");
      }
      m.cc_true = it->get<int>();
    }
    if (auto [it, fresh] = seen.emplace(m.id, line_no); !fresh) {
      throw DataError("duplicate method id \"" + m.id + "\" on lines " +
                      std::to_string(it->second) + " and " +
                      std::to_string(line_no));
    }
    methods.push_back(std::move(m));
  }
  return CorpusStore(std::move(methods));
}

CorpusStore ingest_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus " + path.string());
  return ingest_jsonl(in);
}

void write_jsonl(const CorpusStore& store, std::ostream& out) {
  for (const Method& m : store.methods()) {
    Json record;
    record["id"] = m.id;
    record["name"] = m.name;
    record["source"] = m.source;
    if (m.repo) record["repo"] = *m.repo;
    if (m.cc_true) record["cc_true"] = *m.cc_true;
    out << record.dump() << '\n';
  }
}

void write_jsonl(const CorpusStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write_jsonl(store, out);
  if (!out) throw DataError("write failed: " + path.string());
}

CorpusStore split(CorpusStore store, double train_fraction, std::uint64_t seed) {
  if (store.empty()) throw UsageError("cannot split an empty corpus");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw UsageError("train fraction must lie in (0, 1)");
  }
  const std::size_t n = store.size();
  const auto n_train = static_cast<std::size_t>(
      std::llround(train_fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  for (std::size_t r = 0; r < n; ++r) {
    store.set_tag(order[r], r < n_train ? Split::kTrain : Split::kEval);
  }
  return store;
}

void write_split(const CorpusStore& store, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "id,split\n";
  for (std::size_t i = 0; i < store.size(); ++i) {
    out << store.at(i).id << ',' << split_name(store.tag(i)) << '\n';
  }
}

void apply_split(CorpusStore& store, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open split file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::vector<bool> assigned(store.size(), false);
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 || trim(line).empty()) continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos) {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": expected id,split");
    }
    std::string id = line.substr(0, comma);
    std::string_view tag = trim(std::string_view(line).substr(comma + 1));
    auto i = store.find(id);
    if (!i) throw DataError("split file names unknown id \"" + id + "\"");
    if (tag == "train") {
      store.set_tag(*i, Split::kTrain);
    } else if (tag == "eval") {
      store.set_tag(*i, Split::kEval);
    } else {
      throw DataError(path.string() + " line " + std::to_string(line_no) +
                      ": unknown split \"" + std::string(tag) + "\"");
    }
    assigned[*i] = true;
  }
  for (std::size_t i = 0; i < store.size(); ++i) {
    if (!assigned[i]) {
      throw DataError("split file lacks id \"" + store.at(i).id + "\"");
    }
  }
}

std::vector<LabeledId> balanced_sample(const CorpusStore& store,
                                       const LabelMap& labels,
                                       std::size_t per_class,
                                       std::uint64_t seed) {
  std::vector<std::string> by_class[2];
  for (const std::string& id : store.ids(Split::kEval)) {
    auto it = labels.find(id);
    if (it == labels.end()) {
      throw DataError("no label for eval method \"" + id + "\"");
    }
    if (it->second != 0 && it->second != 1) {
      throw DataError("label for \"" + id + "\" is not 0 or 1");
    }
    by_class[it->second].push_back(id);
  }
  if (per_class == 0) return {};
  for (int c = 0; c < 2; ++c) {
    if (by_class[c].empty()) {
      throw DataError("class " + std::to_string(c) + " has no eval methods");
    }
  }
  Rng rng(seed);
  for (auto& ids : by_class) {
    rng.shuffle(ids);
    if (ids.size() > per_class) ids.resize(per_class);
  }
  std::vector<LabeledId> out;
  out.reserve(by_class[0].size() + by_class[1].size());
  const std::size_t n = std::max(by_class[0].size(), by_class[1].size());
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 2; ++c) {
      if (i < by_class[c].size()) out.push_back({by_class[c][i], c});
    }
  }
  return out;
}

}  // namespace neuronmine
