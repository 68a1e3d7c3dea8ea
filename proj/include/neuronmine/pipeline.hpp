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

#ifndef NEURONMINE_PIPELINE_HPP_
#define NEURONMINE_PIPELINE_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "neuronmine/embed.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/probe.hpp"
#include "neuronmine/report.hpp"

namespace neuronmine {

// A pipeline stage failed; carries the stage name and the exit code of the
// underlying error.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what, int code)
      : Error(stage + ": " + what), stage_(std::move(stage)), code_(code) {}

  const std::string& stage() const { return stage_; }
  int code() const { return code_; }

 private:
  std::string stage_;
  int code_;
};

struct PipelineConfig {
  std::filesystem::path corpus;  // JSONL corpus
  std::filesystem::path out_dir = "neuronmine-out";
  std::uint64_t seed = 1;
  double train_fraction = 0.75;

  // Any of "token", "ast", "import".
  std::vector<std::string> embeddings = {"ast"};
  std::filesystem::path vectors;  // vectors file for "import"
  SkipGramOptions skipgram;
  bool standardize = false;

  int epochs = 50;
  int batch = 32;
  // Models per embedding; the first one is probed, all of them feed the
  // correlation score. Fewer than 2 skips correlation.
  int models = 3;
  unsigned threads = 0;

  // Policy specs; "struct:c=median" uses the median corpus complexity.
  std::vector<std::string> policies = {"struct:c=median", "sem:sort", "sem:find", "sem:hash,sort",
                                       "rand"};
  std::size_t per_class = 1000;
  int grid_k = 10;
  GridMode grid = GridMode::kMinMax;
  bool count_catch = true;

  int intervals = 1000;
  std::size_t entropy_sample = 10000;
  bool exclude_degenerate = false;

  int top_k = 10;
  int top_neurons = 10;
  int hist_bins = 20;
  bool log_y = true;

  bool use_cache = true;

  // Every setting as ordered key/value pairs; this is also what cache keys
  // and the manifest are built from.
  std::vector<std::pair<std::string, std::string>> snapshot() const;
};

// Runs every stage, writes CSV reports and manifest.json under out_dir and
// returns the manifest. On failure the manifest is still written and a
// StageError is thrown.
RunManifest run_pipeline(const PipelineConfig& config);

// Upper median of cyclomatic complexity over the methods that parse.
int median_complexity(const CorpusStore& store, CyclomaticOptions options = {});

}  // namespace neuronmine

#endif  // NEURONMINE_PIPELINE_HPP_
