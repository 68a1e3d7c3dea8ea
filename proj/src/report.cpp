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

#include "neuronmine/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>

#include "json.hpp"

#include "neuronmine/error.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

std::vector<HistBin> histogram(std::span<const double> series, int bins) {
  if (bins < 1) throw UsageError("histogram needs at least one bin");
  if (series.empty()) throw UsageError("histogram of an empty series");
  for (double v : series) {
    if (!std::isfinite(v)) throw DataError("histogram series holds a non-finite value");
  }
  const auto [lo_it, hi_it] = std::minmax_element(series.begin(), series.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = (hi - lo) / bins;
  std::vector<HistBin> out(static_cast<std::size_t>(bins));
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].low = lo + width * b;
    out[static_cast<std::size_t>(b)].high = b + 1 == bins ? hi : lo + width * (b + 1);
  }
  const auto last = static_cast<std::size_t>(bins - 1);
  for (double v : series) {
    std::size_t b = 0;
    if (hi > lo) {
      const double pos = std::floor((v - lo) / (hi - lo) * bins);
      b = pos >= static_cast<double>(last) ? last : static_cast<std::size_t>(std::max(pos, 0.0));
    }
    ++out[b].count;
  }
  return out;
}

void write_hist_csv(std::span<const HistBin> bins, bool log_y, std::ostream& out) {
  out << "bin_low,bin_high,count";
  if (log_y) out << ",log10_count";
  out << '\n';
  for (const HistBin& b : bins) {
    out << format_double(b.low) << ',' << format_double(b.high) << ',' << b.count;
    if (log_y) {
      out << ',';
      if (b.count > 0) out << format_double(std::log10(static_cast<double>(b.count)));
    }
    out << '\n';
  }
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void Table1::add_column(std::string provenance) {
  if (std::find(columns_.begin(), columns_.end(), provenance) == columns_.end()) {
    columns_.push_back(std::move(provenance));
  }
}

void Table1::add_row(std::string policy_class, std::string instance) {
  std::pair<std::string, std::string> key{std::move(policy_class), std::move(instance)};
  if (std::find(rows_.begin(), rows_.end(), key) == rows_.end()) rows_.push_back(std::move(key));
}

void Table1::set(const std::string& policy_class, const std::string& instance,
                 const std::string& provenance, double accuracy) {
  add_row(policy_class, instance);
  add_column(provenance);
  cells_[{policy_class, instance}][provenance] = accuracy;
}

void Table1::write(std::ostream& out, std::vector<std::string>* warnings) const {
  out << "policy,instance";
  for (const std::string& c : columns_) out << ',' << csv_field(c);
  out << '\n';
  for (const auto& row : rows_) {
    out << csv_field(row.first) << ',' << csv_field(row.second);
    const auto it = cells_.find(row);
    for (const std::string& c : columns_) {
      out << ',';
      if (it != cells_.end()) {
        if (auto cell = it->second.find(c); cell != it->second.end()) {
          out << format_double(cell->second);
          continue;
        }
      }
      if (warnings) {
        warnings->push_back("no probe result for " + row.first + " " + row.second + " on " + c);
      }
    }
    out << '\n';
  }
}

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

void RunManifest::write(std::ostream& out) const {
  nlohmann::ordered_json j;
  j["ok"] = ok;
  nlohmann::ordered_json config_json = nlohmann::ordered_json::object();
  for (const auto& [k, v] : config) config_json[k] = v;
  j["config"] = config_json;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& [p, d] : inputs) j["inputs"].push_back({{"path", p}, {"fnv1a64", d}});
  j["stages"] = nlohmann::ordered_json::array();
  for (const StageRecord& s : stages) {
    nlohmann::ordered_json r{{"name", s.name}, {"started", s.started},
                             {"finished", s.finished}, {"status", s.status}};
    if (!s.error.empty()) r["error"] = s.error;
    j["stages"].push_back(std::move(r));
  }
  j["outputs"] = nlohmann::ordered_json::array();
  for (const auto& [p, d] : outputs) j["outputs"].push_back({{"path", p}, {"fnv1a64", d}});
  out << j.dump(2) << '\n';
}

void RunManifest::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  write(out);
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace neuronmine
