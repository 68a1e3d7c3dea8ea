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

#include "neuronmine/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>

#include "neuronmine/autonet.hpp"
#include "neuronmine/corpus.hpp"
#include "neuronmine/labels.hpp"
#include "neuronmine/lexparse.hpp"
#include "neuronmine/neuronscore.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {
namespace fs = std::filesystem;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string slug(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    out += keep ? c : '_';
  }
  return out;
}

// Cache key: digest of the listed settings.
std::string cache_key(const std::vector<std::pair<std::string, std::string>>& settings) {
  std::string text;
  for (const auto& [k, v] : settings) text += k + "=" + v + "\n";
  return hex64(fnv1a64(text));
}

// A store holding only `ids`, all tagged eval.
CorpusStore eval_store(const CorpusStore& store, const std::vector<std::string>& ids) {
  std::vector<Method> methods;
  methods.reserve(ids.size());
  for (const std::string& id : ids) methods.push_back(store.by_id(id));
  CorpusStore out(std::move(methods));
  for (std::size_t i = 0; i < out.size(); ++i) out.set_tag(i, Split::kEval);
  return out;
}

std::vector<std::size_t> columns_of(const ActivationMatrix& acts,
                                    const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> where;
  for (std::size_t c = 0; c < acts.columns(); ++c) where.emplace(acts.ids()[c], c);
  std::vector<std::size_t> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(where.at(id));
  return out;
}

class Run {
 public:
  explicit Run(const PipelineConfig& config) : cfg_(config) {
    manifest_.config = cfg_.snapshot();
  }

  RunManifest execute();

 private:
  void stage(const std::string& name, const std::function<bool()>& body);
  fs::path output(const std::string& name) {
    outputs_.push_back(name);
    return cfg_.out_dir / name;
  }
  void run_embedding(const std::string& route);

  const PipelineConfig& cfg_;
  RunManifest manifest_;
  std::vector<std::string> outputs_;
  CorpusStore store_{std::vector<Method>{}};
  std::string corpus_digest_;
  std::string vectors_digest_;
  Table1 table_;
  std::vector<std::string> warnings_;
};

void Run::stage(const std::string& name, const std::function<bool()>& body) {
  StageRecord rec;
  rec.name = name;
  rec.started = utc_timestamp();
  try {
    const bool cached = body();
    rec.status = cached ? "cached" : "ok";
    rec.finished = utc_timestamp();
    manifest_.stages.push_back(rec);
  } catch (const std::exception& e) {
    rec.status = "failed";
    rec.error = e.what();
    rec.finished = utc_timestamp();
    manifest_.stages.push_back(rec);
    manifest_.ok = false;
    try {
      fs::create_directories(cfg_.out_dir);
      manifest_.write(cfg_.out_dir / "manifest.json");
    } catch (const std::exception&) {
      // The stage error is the one worth reporting.
    }
    throw StageError(name, e.what(), exit_code(e));
  }
}

RunManifest Run::execute() {
  stage("ingest", [&] {
    store_ = ingest_jsonl(cfg_.corpus);
    corpus_digest_ = file_digest(cfg_.corpus);
    manifest_.inputs.emplace_back(cfg_.corpus.string(), corpus_digest_);
    if (!cfg_.vectors.empty() &&
        std::find(cfg_.embeddings.begin(), cfg_.embeddings.end(), "import") !=
            cfg_.embeddings.end()) {
      vectors_digest_ = file_digest(cfg_.vectors);
      manifest_.inputs.emplace_back(cfg_.vectors.string(), vectors_digest_);
    }
    return false;
  });
  stage("split", [&] {
    fs::create_directories(cfg_.out_dir);
    store_ = split(std::move(store_), cfg_.train_fraction, derive_seed(cfg_.seed, "split"));
    write_split(store_, output("split.csv"));
    return false;
  });
  for (const std::string& route : cfg_.embeddings) run_embedding(route);
  stage("report", [&] {
    std::ofstream out(output("table1.csv"), std::ios::binary);
    table_.write(out, &warnings_);
    if (!out) throw DataError("cannot write table1.csv");
    return false;
  });
  for (const std::string& name : outputs_) {
    manifest_.outputs.emplace_back(name, file_digest(cfg_.out_dir / name));
  }
  manifest_.write(cfg_.out_dir / "manifest.json");
  return manifest_;
}

void Run::run_embedding(const std::string& route) {
  const Provenance prov = route == "import" ? Provenance::kImported : parse_provenance(route);
  const fs::path cache = cfg_.out_dir / "cache";
  std::vector<std::pair<std::string, std::string>> embed_settings = {
      {"corpus", corpus_digest_},
      {"seed", std::to_string(cfg_.seed)},
      {"train_fraction", format_double(cfg_.train_fraction)},
      {"route", route},
  };
  if (prov == Provenance::kImported) {
    embed_settings.emplace_back("vectors", vectors_digest_);
  } else {
    embed_settings.emplace_back("dim", std::to_string(cfg_.skipgram.dim));
    embed_settings.emplace_back("window", std::to_string(cfg_.skipgram.window));
    embed_settings.emplace_back("negatives", std::to_string(cfg_.skipgram.negatives));
    embed_settings.emplace_back("sg_epochs", std::to_string(cfg_.skipgram.epochs));
  }
  const std::string embed_key = cache_key(embed_settings);

  std::optional<EmbeddingSet> vectors;
  stage("embed/" + route, [&] {
    const fs::path dir = cache / ("embed-" + route + "-" + embed_key);
    const fs::path file = dir / "vectors.txt";
    if (cfg_.use_cache && fs::exists(file)) {
      vectors = import_vectors(file);
      return true;
    }
    if (prov == Provenance::kImported) {
      if (cfg_.vectors.empty()) throw UsageError("embedding \"import\" needs a vectors file");
      EmbeddingSet all = import_vectors(cfg_.vectors);
      std::vector<std::string> known;
      for (const std::string& id : all.ids()) {
        if (store_.find(id)) known.push_back(id);
      }
      vectors = all.select(known);
    } else {
      EmbedOptions opts;
      opts.skipgram = cfg_.skipgram;
      opts.skipgram.seed = derive_seed(cfg_.seed, "embed/" + route);
      vectors = embed_corpus(store_, prov, opts).vectors;
    }
    fs::create_directories(dir);
    export_vectors(*vectors, file);
    return false;
  });

  // Train/eval partition of the embedded methods.
  std::vector<std::string> train_ids, eval_ids;
  for (const std::string& id : vectors->ids()) {
    const auto i = store_.find(id);
    if (!i) continue;
    (store_.tag(*i) == Split::kTrain ? train_ids : eval_ids).push_back(id);
  }
  EmbeddingSet train_set = vectors->select(train_ids);
  EmbeddingSet eval_set = vectors->select(eval_ids);
  if (cfg_.standardize) {
    const EmbeddingSet reference = train_set;
    train_set = standardize(train_set, reference);
    eval_set = standardize(eval_set, reference);
  }

  std::vector<AutoModel> models;
  stage("train/" + route, [&] {
    const int count = std::max(1, cfg_.models);
    std::vector<std::pair<std::string, std::string>> s = embed_settings;
    s.emplace_back("standardize", cfg_.standardize ? "1" : "0");
    s.emplace_back("epochs", std::to_string(cfg_.epochs));
    s.emplace_back("batch", std::to_string(cfg_.batch));
    const fs::path dir = cache / ("train-" + route + "-" + cache_key(s));
    std::vector<TrainJob> jobs;
    std::vector<int> pending;
    models.resize(static_cast<std::size_t>(count));
    for (int m = 0; m < count; ++m) {
      const fs::path file = dir / ("model" + std::to_string(m) + ".ckpt");
      if (cfg_.use_cache && fs::exists(file)) {
        models[static_cast<std::size_t>(m)] = load_checkpoint(file);
        continue;
      }
      const std::string tag = "train/" + route + "/" + std::to_string(m);
      TrainOptions opts;
      opts.epochs = cfg_.epochs;
      opts.batch = cfg_.batch;
      opts.seed = derive_seed(cfg_.seed, tag + "/shuffle");
      jobs.push_back({init_model(train_set.dim(), derive_seed(cfg_.seed, tag)), &train_set, opts});
      pending.push_back(m);
    }
    if (!pending.empty()) {
      auto trained = train_parallel(std::move(jobs), cfg_.threads);
      fs::create_directories(dir);
      for (std::size_t k = 0; k < pending.size(); ++k) {
        const fs::path file = dir / ("model" + std::to_string(pending[k]) + ".ckpt");
        save_checkpoint(trained[k], file);
        models[static_cast<std::size_t>(pending[k])] = std::move(trained[k]);
      }
    }
    std::ofstream out(output("loss-" + route + ".csv"), std::ios::binary);
    out << "model,epoch,loss\n";
    for (std::size_t m = 0; m < models.size(); ++m) {
      for (const EpochLoss& e : models[m].history) {
        out << m << ',' << e.epoch << ',' << format_double(e.loss) << '\n';
      }
    }
    return pending.empty();
  });

  const ActivationMatrix train_acts = activations(models.front(), train_set);
  const ActivationMatrix eval_acts = activations(models.front(), eval_set);

  std::vector<NeuronRef> best_neurons;
  stage("probe/" + route, [&] {
    const CyclomaticOptions cc{cfg_.count_catch};
    std::optional<int> median;
    for (const std::string& spec : cfg_.policies) {
      LabelPolicy policy;
      if (spec == "struct:c=median" || spec == "structural:c=median") {
        if (!median) median = median_complexity(store_, cc);
        policy = LabelPolicy::structural(*median);
      } else {
        policy = parse_policy(spec);
      }
      const LabelingReport labelled = apply_policy(policy, store_, eval_ids, cc);
      std::vector<std::string> usable;
      for (const std::string& id : eval_ids) {
        if (labelled.labels.count(id)) usable.push_back(id);
      }
      const CorpusStore pool = eval_store(store_, usable);
      const auto sample = balanced_sample(pool, labelled.labels, cfg_.per_class,
                                          derive_seed(cfg_.seed, "sample/" + policy.spec()));
      std::vector<std::string> ids;
      std::vector<int> labels;
      for (const LabeledId& s : sample) {
        ids.push_back(s.id);
        labels.push_back(s.label);
      }
      const ActivationMatrix probe_acts = eval_acts.select_columns(columns_of(eval_acts, ids));
      const ProbeResult result =
          rank_neurons(probe_acts, labels, {cfg_.grid_k, cfg_.grid}, &train_acts);
      const std::string name = route + "-" + slug(policy.spec());
      write_probe_csv(result, output("probe-" + name + ".csv"));

      std::vector<double> accs;
      for (const NeuronProbe& p : result.neurons) accs.push_back(p.best_accuracy);
      std::ofstream hist(output("hist-probe-" + name + ".csv"), std::ios::binary);
      write_hist_csv(histogram(accs, cfg_.hist_bins), cfg_.log_y, hist);

      table_.set(policy.class_name(), policy.instance(), route,
                 result.global_best().best_accuracy);
      if (std::find(best_neurons.begin(), best_neurons.end(), result.global_best().neuron) ==
          best_neurons.end()) {
        best_neurons.push_back(result.global_best().neuron);
      }
    }
    return false;
  });

  std::vector<NeuronScoreRow> rows;
  std::vector<std::size_t> sample_cols;
  stage("score/" + route, [&] {
    sample_cols = sample_columns(eval_acts.columns(), cfg_.entropy_sample,
                                 derive_seed(cfg_.seed, "score/" + route));
    const ActivationMatrix sampled = eval_acts.select_columns(sample_cols);
    const std::vector<double> ref_max = row_maxima(train_acts);
    std::vector<std::vector<double>> corr;
    if (models.size() >= 2) {
      std::vector<ActivationMatrix> ens;
      for (const AutoModel& m : models) {
        ens.push_back(activations(m, eval_set).select_columns(sample_cols));
      }
      corr = corr_scores(EnsembleActivations(std::move(ens)),
                         cfg_.exclude_degenerate ? DegeneratePolicy::kExclude
                                               : DegeneratePolicy::kZero);
    }
    std::vector<double> hs, cs;
    for (std::size_t r = 0; r < sampled.neurons(); ++r) {
      NeuronScoreRow row;
      row.neuron = sampled.neuron_refs()[r];
      row.entropy = entropy_score(sampled.row(r), ref_max[r], cfg_.intervals);
      if (!corr.empty()) {
        row.corr = corr.front()[r];
        if (!std::isnan(*row.corr)) cs.push_back(*row.corr);
      }
      hs.push_back(row.entropy.h_frequency);
      rows.push_back(row);
    }
    write_score_csv(rows, output("scores-" + route + ".csv"));
    std::ofstream hist(output("hist-entropy-" + route + ".csv"), std::ios::binary);
    write_hist_csv(histogram(hs, cfg_.hist_bins), cfg_.log_y, hist);
    if (!cs.empty()) {
      std::ofstream ch(output("hist-corr-" + route + ".csv"), std::ios::binary);
      write_hist_csv(histogram(cs, cfg_.hist_bins), cfg_.log_y, ch);
    }
    return false;
  });

  stage("top-methods/" + route, [&] {
    std::vector<NeuronRef> picks = best_neurons;
    std::vector<const NeuronScoreRow*> selective;
    for (const NeuronScoreRow& r : rows) {
      if (r.entropy.band == Band::kSelective) selective.push_back(&r);
    }
    std::stable_sort(selective.begin(), selective.end(), [](const auto* a, const auto* b) {
      return a->entropy.h_frequency < b->entropy.h_frequency;
    });
    for (std::size_t i = 0; i < selective.size() && i < static_cast<std::size_t>(cfg_.top_neurons);
         ++i) {
      if (std::find(picks.begin(), picks.end(), selective[i]->neuron) == picks.end()) {
        picks.push_back(selective[i]->neuron);
      }
    }
    const ActivationMatrix sampled = eval_acts.select_columns(sample_cols);
    std::ofstream out(output("top-methods-" + route + ".txt"), std::ios::binary);
    for (std::size_t i = 0; i < picks.size(); ++i) {
      if (i) out << '\n';
      const std::size_t r = *sampled.find(picks[i]);
      const auto top = top_methods(sampled.row(r), sampled.ids(),
                                   static_cast<std::size_t>(std::max(1, cfg_.top_k)));
      write_top_methods(picks[i], top, &store_, out);
    }
    return false;
  });
}

}  // namespace

std::vector<std::pair<std::string, std::string>> PipelineConfig::snapshot() const {
  return {
      {"corpus", corpus.string()},
      {"out", out_dir.string()},
      {"seed", std::to_string(seed)},
      {"train-fraction", format_double(train_fraction)},
      {"embeddings", join(embeddings, ',')},
      {"vectors", vectors.string()},
      {"dim", std::to_string(skipgram.dim)},
      {"window", std::to_string(skipgram.window)},
      {"negatives", std::to_string(skipgram.negatives)},
      {"sg-epochs", std::to_string(skipgram.epochs)},
      {"standardize", standardize ? "true" : "false"},
      {"epochs", std::to_string(epochs)},
      {"batch", std::to_string(batch)},
      {"models", std::to_string(models)},
      {"threads", std::to_string(threads)},
      {"policies", join(policies, ';')},
      {"per-class", std::to_string(per_class)},
      {"grid-k", std::to_string(grid_k)},
      {"grid", grid == GridMode::kMinMax ? "min-max" : "zero-max"},
      {"count-catch", count_catch ? "true" : "false"},
      {"intervals", std::to_string(intervals)},
      {"entropy-sample", std::to_string(entropy_sample)},
      {"exclude-degenerate", exclude_degenerate ? "true" : "false"},
      {"top-k", std::to_string(top_k)},
      {"top-neurons", std::to_string(top_neurons)},
      {"hist-bins", std::to_string(hist_bins)},
      {"log-y", log_y ? "true" : "false"},
      {"cache", use_cache ? "true" : "false"},
  };
}

RunManifest run_pipeline(const PipelineConfig& config) { return Run(config).execute(); }

int median_complexity(const CorpusStore& store, CyclomaticOptions options) {
  std::vector<int> cc;
  for (const Method& m : store.methods()) {
    try {
      cc.push_back(cyclomatic(parse_method(m.source), options));
    } catch (const ParseError&) {
    }
  }
  if (cc.empty()) throw DataError("no method parses; cannot take a median complexity");
  std::sort(cc.begin(), cc.end());
  return cc[cc.size() / 2];
}

}  // namespace neuronmine
