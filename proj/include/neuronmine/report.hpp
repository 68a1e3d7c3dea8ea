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

#ifndef NEURONMINE_REPORT_HPP_
#define NEURONMINE_REPORT_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace neuronmine {

struct HistBin {
  double low = 0.0;
  double high = 0.0;
  std::size_t count = 0;
};

// Fixed-width bins over [min, max]; the maximum falls in the last bin.
// A constant series puts everything in the first bin.
std::vector<HistBin> histogram(std::span<const double> series, int bins);

// bin_low,bin_high,count and, with log_y, a log10_count column (empty for
// empty bins).
void write_hist_csv(std::span<const HistBin> bins, bool log_y, std::ostream& out);

// Quotes a CSV field when it holds a comma, quote or newline.
std::string csv_field(const std::string& text);

// Policy rows by embedding columns of global best accuracies.
class Table1 {
 public:
  void add_column(std::string provenance);
  void add_row(std::string policy_class, std::string instance);
  void set(const std::string& policy_class, const std::string& instance,
           const std::string& provenance, double accuracy);

  // Missing cells are left empty and reported through `warnings`.
  void write(std::ostream& out, std::vector<std::string>* warnings = nullptr) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> rows_;
  std::map<std::pair<std::string, std::string>, std::map<std::string, double>> cells_;
};

// 64-bit FNV-1a of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

struct StageRecord {
  std::string name;
  std::string started;   // ISO-8601 UTC
  std::string finished;  // ISO-8601 UTC
  std::string status;    // "ok", "cached" or "failed"
  std::string error;
};

struct RunManifest {
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
  std::vector<StageRecord> stages;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
  bool ok = true;

  void write(const std::filesystem::path& path) const;
  void write(std::ostream& out) const;
};

std::string utc_timestamp();

}  // namespace neuronmine

#endif  // NEURONMINE_REPORT_HPP_
