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

// neuronmine command-line tool.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "neuronmine/autonet.hpp"
#include "neuronmine/corpus.hpp"
#include "neuronmine/embed.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/labels.hpp"
#include "neuronmine/neuronscore.hpp"
#include "neuronmine/numfmt.hpp"
#include "neuronmine/pipeline.hpp"
#include "neuronmine/probe.hpp"
#include "neuronmine/report.hpp"
#include "neuronmine/rng.hpp"

namespace fs = std::filesystem;
using namespace neuronmine;

namespace {

// Splices "key=value" lines of a --config file into the arguments, right
// after the subcommand words, so explicit flags given later still win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    std::size_t erase = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      erase = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      erase = 1;
    } else {
      continue;
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + erase));
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file " + path);
    std::vector<std::string> injected;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string_view t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string_view::npos) {
        throw UsageError(path + " line " + std::to_string(line_no) + ": expected key=value");
      }
      injected.push_back("--" + std::string(trim(t.substr(0, eq))) + "=" +
                         std::string(trim(t.substr(eq + 1))));
    }
    // Subcommand words come first; options start at the first dash.
    std::size_t at = 1;
    while (at < args.size() && !args[at].empty() && args[at][0] != '-') ++at;
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
    --i;
  }
  return args;
}

struct DataArgs {
  std::string corpus;
  std::string split;
  std::string vectors;
  bool standardize = false;
};

void add_data_options(CLI::App* app, DataArgs& d, bool need_vectors = true) {
  app->add_option("--corpus", d.corpus, "JSONL corpus")->required();
  app->add_option("--split", d.split, "split CSV written by ingest")->required();
  if (need_vectors) {
    app->add_option("--vectors", d.vectors, "vectors file")->required();
    app->add_flag("--standardize", d.standardize, "z-score inputs with training statistics");
  }
}

struct Data {
  CorpusStore store;
  EmbeddingSet train{1, Provenance::kImported};
  EmbeddingSet eval{1, Provenance::kImported};
};

Data load_data(const DataArgs& a) {
  Data d;
  d.store = ingest_jsonl(fs::path(a.corpus));
  apply_split(d.store, a.split);
  if (a.vectors.empty()) return d;
  const EmbeddingSet all = import_vectors(fs::path(a.vectors));
  std::vector<std::string> train, eval;
  for (const std::string& id : all.ids()) {
    const auto i = d.store.find(id);
    if (!i) continue;
    (d.store.tag(*i) == Split::kTrain ? train : eval).push_back(id);
  }
  d.train = all.select(train);
  d.eval = all.select(eval);
  if (a.standardize) {
    const EmbeddingSet ref = d.train;
    d.train = standardize(d.train, ref);
    d.eval = standardize(d.eval, ref);
  }
  return d;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  return out;
}

std::vector<std::size_t> columns_of(const ActivationMatrix& acts,
                                    const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> where;
  for (std::size_t c = 0; c < acts.columns(); ++c) where.emplace(acts.ids()[c], c);
  std::vector<std::size_t> out;
  for (const std::string& id : ids) out.push_back(where.at(id));
  return out;
}

std::vector<double> read_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw DataError(path + " is empty");
  const auto header = split_on(line, ',');
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw UsageError(path + " has no column \"" + column + "\"");
  const auto col = static_cast<std::size_t>(it - header.begin());
  std::vector<double> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.rfind("global_best:", 0) == 0) continue;
    const auto fields = split_on(line, ',');
    if (col >= fields.size() || fields[col].empty()) continue;
    const double v = parse_double(fields[col]);
    if (!std::isfinite(v)) continue;
    out.push_back(v);
  }
  if (out.empty()) throw DataError(path + ": column \"" + column + "\" has no values");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine autoencoder neurons for program-property detectors.", "neuronmine"};
  app.require_subcommand(1);
  // A flag given twice (config file, then command line) keeps the last value.
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_help_all_flag("--help-all");

  // ingest
  std::string in_corpus, out_corpus, split_out;
  double train_fraction = 0.75;
  std::uint64_t seed = 1;
  auto* ingest = app.add_subcommand("ingest", "validate a corpus and write the train/eval split");
  ingest->add_option("--corpus", in_corpus, "JSONL corpus")->required();
  ingest->add_option("--out", out_corpus, "normalized JSONL copy");
  ingest->add_option("--split-out", split_out, "split CSV to write");
  ingest->add_option("--train-fraction", train_fraction)->capture_default_str();
  ingest->add_option("--seed", seed)->capture_default_str();

  // gen-synth
  SynthOptions synth;
  std::string synth_out;
  auto* gen = app.add_subcommand("gen-synth", "generate a synthetic corpus");
  gen->add_option("--count", synth.count)->capture_default_str();
  gen->add_option("--seed", synth.seed)->capture_default_str();
  gen->add_option("--min-cc", synth.min_complexity)->capture_default_str();
  gen->add_option("--max-cc", synth.max_complexity)->capture_default_str();
  gen->add_option("--pattern-rate", synth.pattern_rate)->capture_default_str();
  gen->add_option("--motif-rate", synth.motif_rate)->capture_default_str();
  gen->add_option("--out", synth_out, "JSONL output")->required();

  // embed
  std::string route, embed_out, import_path;
  DataArgs embed_data;
  EmbedOptions embed_opts;
  auto* embed = app.add_subcommand("embed", "train method vectors (token, ast) or import them");
  embed->add_option("route", route, "token | ast | import")
      ->required()
      ->check(CLI::IsMember({"token", "ast", "import"}));
  add_data_options(embed, embed_data, false);
  embed->add_option("--vectors", import_path, "vectors file to import");
  embed->add_option("--out", embed_out, "vectors file to write")->required();
  embed->add_option("--dim", embed_opts.skipgram.dim)->capture_default_str();
  embed->add_option("--window", embed_opts.skipgram.window)->capture_default_str();
  embed->add_option("--negatives", embed_opts.skipgram.negatives)->capture_default_str();
  embed->add_option("--sg-epochs", embed_opts.skipgram.epochs)->capture_default_str();
  embed->add_option("--seed", embed_opts.skipgram.seed)->capture_default_str();

  // train
  DataArgs train_data;
  TrainOptions train_opts;
  std::string model_out;
  auto* train_cmd = app.add_subcommand("train", "train one autoencoder on the training split");
  add_data_options(train_cmd, train_data);
  train_cmd->add_option("--epochs", train_opts.epochs)->capture_default_str();
  train_cmd->add_option("--batch", train_opts.batch)->capture_default_str();
  train_cmd->add_option("--seed", train_opts.seed)->capture_default_str();
  train_cmd->add_option("--out", model_out, "checkpoint to write")->required();

  // probe
  DataArgs probe_data;
  std::string probe_model, policy_spec, probe_out, grid_name = "min-max";
  std::size_t per_class = 1000;
  int grid_k = 10;
  std::uint64_t probe_seed = 1;
  auto* probe = app.add_subcommand("probe", "rank neurons by single-threshold accuracy");
  add_data_options(probe, probe_data);
  probe->add_option("--model", probe_model, "checkpoint")->required();
  probe->add_option("--policy", policy_spec, "struct:c=10 | sem:sort,find | rand:n=500,seed=7")
      ->required();
  probe->add_option("--per-class", per_class)->capture_default_str();
  probe->add_option("--grid", grid_name, "min-max | zero-max")->capture_default_str();
  probe->add_option("--grid-k", grid_k)->capture_default_str();
  probe->add_option("--seed", probe_seed, "sampling seed")->capture_default_str();
  probe->add_option("--out", probe_out, "probe CSV")->required();

  // score-corr
  DataArgs corr_data;
  std::vector<std::string> corr_models;
  int corr_count = 0;
  TrainOptions corr_train;
  bool exclude_degenerate = false;
  std::string corr_out;
  auto* corr = app.add_subcommand("score-corr", "cross-model max |Pearson| of every neuron");
  add_data_options(corr, corr_data);
  corr->add_option("--model", corr_models, "checkpoints; the first one is scored")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  corr->add_option("--models", corr_count, "train this many models instead");
  corr->add_option("--epochs", corr_train.epochs)->capture_default_str();
  corr->add_option("--batch", corr_train.batch)->capture_default_str();
  corr->add_option("--seed", corr_train.seed, "root seed for trained models")->capture_default_str();
  corr->add_flag("--exclude-degenerate", exclude_degenerate, "exclude pairs with a constant series");
  corr->add_option("--out", corr_out, "CSV layer,neuron,corr_score")->required();

  // score-entropy
  DataArgs ent_data;
  std::string ent_model, ent_out;
  int intervals = 1000;
  std::size_t ent_sample = 10000;
  std::uint64_t ent_seed = 1;
  auto* ent = app.add_subcommand("score-entropy", "discretized activation entropy and bands");
  add_data_options(ent, ent_data);
  ent->add_option("--model", ent_model, "checkpoint")->required();
  ent->add_option("--intervals", intervals)->capture_default_str();
  ent->add_option("--sample", ent_sample)->capture_default_str();
  ent->add_option("--seed", ent_seed)->capture_default_str();
  ent->add_option("--out", ent_out, "score CSV")->required();

  // top-methods
  DataArgs top_data;
  std::string top_model, neuron_label_arg, top_out;
  std::size_t top_k = 10;
  auto* top = app.add_subcommand("top-methods", "methods with the highest activation of a neuron");
  add_data_options(top, top_data);
  top->add_option("--model", top_model, "checkpoint")->required();
  top->add_option("--neuron", neuron_label_arg, "layer:index, e.g. dec1:17")->required();
  top->add_option("--k", top_k)->capture_default_str();
  top->add_option("--out", top_out, "report file (default stdout)");

  // report
  auto* report = app.add_subcommand("report", "tables, histograms and manifests");
  report->require_subcommand(1);
  std::vector<std::string> entries;
  std::string table_out;
  auto* table1 = report->add_subcommand("table1", "best accuracy per policy and embedding");
  table1->add_option("--entry", entries, "EMBEDDING POLICY PROBE_CSV, repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->expected(3, 3000)
      ->required();
  table1->add_option("--out", table_out, "CSV (default stdout)");
  std::string hist_in, hist_column, hist_out;
  int bins = 20;
  bool log_y = false;
  auto* hist = report->add_subcommand("hist", "fixed-width histogram of a CSV column");
  hist->add_option("--input", hist_in, "CSV file")->required();
  hist->add_option("--column", hist_column, "column name")->required();
  hist->add_option("--bins", bins)->capture_default_str();
  hist->add_flag("--log-y", log_y, "add a log10_count column");
  hist->add_option("--out", hist_out, "CSV (default stdout)");
  std::string manifest_dir;
  auto* manifest = report->add_subcommand("manifest", "inventory of a directory of outputs");
  manifest->add_option("--dir", manifest_dir, "directory")->required();

  // pipeline
  PipelineConfig pc;
  std::string pc_out = pc.out_dir.string(), pc_corpus, pc_vectors, pc_grid = "min-max";
  bool no_cache = false, no_catch = false, linear_y = false;
  auto* pipe = app.add_subcommand("pipeline", "run every stage end to end");
  pipe->add_option("--corpus", pc_corpus, "JSONL corpus")->required();
  pipe->add_option("--out", pc_out, "output directory")->capture_default_str();
  pipe->add_option("--seed", pc.seed, "root seed")->capture_default_str();
  pipe->add_option("--train-fraction", pc.train_fraction)->capture_default_str();
  pipe->add_option("--embeddings", pc.embeddings, "token, ast, import")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(',')
      ->capture_default_str();
  pipe->add_option("--vectors", pc_vectors, "vectors file for the import embedding");
  pipe->add_option("--dim", pc.skipgram.dim)->capture_default_str();
  pipe->add_option("--window", pc.skipgram.window)->capture_default_str();
  pipe->add_option("--negatives", pc.skipgram.negatives)->capture_default_str();
  pipe->add_option("--sg-epochs", pc.skipgram.epochs)->capture_default_str();
  pipe->add_flag("--standardize", pc.standardize);
  pipe->add_option("--epochs", pc.epochs)->capture_default_str();
  pipe->add_option("--batch", pc.batch)->capture_default_str();
  pipe->add_option("--models", pc.models, "autoencoders per embedding")->capture_default_str();
  pipe->add_option("--threads", pc.threads)->capture_default_str();
  pipe->add_option("--policies", pc.policies, "policy specs separated by ';'")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
      ->delimiter(';')
      ->capture_default_str();
  pipe->add_option("--per-class", pc.per_class)->capture_default_str();
  pipe->add_option("--grid", pc_grid, "min-max | zero-max")->capture_default_str();
  pipe->add_option("--grid-k", pc.grid_k)->capture_default_str();
  pipe->add_flag("--no-catch", no_catch, "do not count catch blocks");
  pipe->add_option("--intervals", pc.intervals)->capture_default_str();
  pipe->add_option("--entropy-sample", pc.entropy_sample)->capture_default_str();
  pipe->add_flag("--exclude-degenerate", pc.exclude_degenerate);
  pipe->add_option("--top-k", pc.top_k)->capture_default_str();
  pipe->add_option("--top-neurons", pc.top_neurons)->capture_default_str();
  pipe->add_option("--hist-bins", pc.hist_bins)->capture_default_str();
  pipe->add_flag("--linear-y", linear_y, "omit log10 counts from histograms");
  pipe->add_flag("--no-cache", no_cache, "ignore cached intermediates");

  for (CLI::App* sub : app.get_subcommands({})) {
    sub->add_option("--config", "flat key=value file mirroring the flags");
  }

  try {
    std::vector<std::string> args(argv, argv + argc);
    args = expand_config(std::move(args));
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*ingest) {
      CorpusStore store = ingest_jsonl(fs::path(in_corpus));
      store = split(std::move(store), train_fraction, seed);
      if (!out_corpus.empty()) write_jsonl(store, fs::path(out_corpus));
      if (!split_out.empty()) write_split(store, split_out);
      std::cout << "methods " << store.size() << " train " << store.count(Split::kTrain)
                << " eval " << store.count(Split::kEval) << '\n';
    } else if (*gen) {
      const CorpusStore store = gen_synthetic(synth);
      write_jsonl(store, fs::path(synth_out));
      std::cout << "wrote " << store.size() << " methods to " << synth_out << '\n';
    } else if (*embed) {
      Data d = load_data(embed_data);
      EmbeddingSet set(1, Provenance::kImported);
      if (route == "import") {
        if (import_path.empty()) throw UsageError("embed import needs --vectors");
        const EmbeddingSet all = import_vectors(fs::path(import_path));
        std::vector<std::string> known;
        for (const std::string& id : all.ids()) {
          if (d.store.find(id)) known.push_back(id);
        }
        set = all.select(known);
      } else {
        std::vector<std::string> skipped;
        set = embed_corpus(d.store, parse_provenance(route), embed_opts, &skipped).vectors;
        for (const std::string& id : skipped) std::cerr << "skipped " << id << '\n';
      }
      export_vectors(set, fs::path(embed_out));
      std::cout << "wrote " << set.size() << " vectors of dimension " << set.dim() << '\n';
    } else if (*train_cmd) {
      const Data d = load_data(train_data);
      const AutoModel m = train(init_model(d.train.dim(), train_opts.seed), d.train, train_opts);
      save_checkpoint(m, fs::path(model_out));
      for (const EpochLoss& e : m.history) {
        std::cout << "epoch " << e.epoch << " loss " << format_double(e.loss) << '\n';
      }
    } else if (*probe) {
      const Data d = load_data(probe_data);
      const AutoModel m = load_checkpoint(fs::path(probe_model));
      const ActivationMatrix train_acts = activations(m, d.train);
      const ActivationMatrix eval_acts = activations(m, d.eval);
      LabelPolicy policy = policy_spec == "struct:c=median"
                               ? LabelPolicy::structural(median_complexity(d.store))
                               : parse_policy(policy_spec);
      const LabelingReport labelled = apply_policy(policy, d.store, d.eval.ids());
      std::vector<Method> pool;
      for (const std::string& id : d.eval.ids()) {
        if (labelled.labels.count(id)) pool.push_back(d.store.by_id(id));
      }
      CorpusStore pool_store(std::move(pool));
      for (std::size_t i = 0; i < pool_store.size(); ++i) pool_store.set_tag(i, Split::kEval);
      const auto sample = balanced_sample(pool_store, labelled.labels, per_class, probe_seed);
      std::vector<std::string> ids;
      std::vector<int> labels;
      for (const LabeledId& s : sample) {
        ids.push_back(s.id);
        labels.push_back(s.label);
      }
      const ProbeResult r =
          rank_neurons(eval_acts.select_columns(columns_of(eval_acts, ids)), labels,
                       {grid_k, parse_grid_mode(grid_name)}, &train_acts);
      write_probe_csv(r, fs::path(probe_out));
      std::cout << "best " << neuron_label(r.global_best().neuron) << " accuracy "
                << format_double(r.global_best().best_accuracy) << " threshold "
                << format_double(r.global_best().best_threshold) << '\n';
    } else if (*corr) {
      const Data d = load_data(corr_data);
      std::vector<AutoModel> models;
      for (const std::string& p : corr_models) models.push_back(load_checkpoint(fs::path(p)));
      if (models.empty()) {
        std::vector<TrainJob> jobs;
        for (int k = 0; k < corr_count; ++k) {
          TrainOptions o = corr_train;
          const std::string tag = "score-corr/" + std::to_string(k);
          o.seed = derive_seed(corr_train.seed, tag + "/shuffle");
          jobs.push_back({init_model(d.train.dim(), derive_seed(corr_train.seed, tag)), &d.train, o});
        }
        models = train_parallel(std::move(jobs));
      }
      if (models.size() < 2) throw UsageError("score-corr needs --models k >= 2 or two --model files");
      std::vector<ActivationMatrix> acts;
      for (const AutoModel& m : models) acts.push_back(activations(m, d.eval));
      const EnsembleActivations ens(std::move(acts));
      const auto scores = corr_scores(
          ens, exclude_degenerate ? DegeneratePolicy::kExclude : DegeneratePolicy::kZero);
      std::ofstream out = open_out(corr_out);
      out << "layer,neuron,corr_score\n";
      for (std::size_t r = 0; r < scores.front().size(); ++r) {
        const NeuronRef n = ens.at(0).neuron_refs()[r];
        out << layer_name(n.layer) << ',' << n.index << ',' << format_double(scores.front()[r])
            << '\n';
      }
    } else if (*ent) {
      const Data d = load_data(ent_data);
      const AutoModel m = load_checkpoint(fs::path(ent_model));
      const ActivationMatrix train_acts = activations(m, d.train);
      const ActivationMatrix eval_acts = activations(m, d.eval);
      const ActivationMatrix sampled =
          eval_acts.select_columns(sample_columns(eval_acts.columns(), ent_sample, ent_seed));
      const std::vector<double> ref = row_maxima(train_acts);
      std::vector<NeuronScoreRow> rows;
      std::size_t bands[3] = {0, 0, 0};
      for (std::size_t r = 0; r < sampled.neurons(); ++r) {
        NeuronScoreRow row;
        row.neuron = sampled.neuron_refs()[r];
        row.entropy = entropy_score(sampled.row(r), ref[r], intervals);
        ++bands[static_cast<int>(row.entropy.band)];
        rows.push_back(row);
      }
      write_score_csv(rows, fs::path(ent_out));
      std::cout << "dead " << bands[0] << " selective " << bands[1] << " saturated " << bands[2]
                << '\n';
    } else if (*top) {
      const Data d = load_data(top_data);
      const AutoModel m = load_checkpoint(fs::path(top_model));
      const ActivationMatrix acts = activations(m, d.eval);
      const NeuronRef n = parse_neuron(neuron_label_arg);
      const auto r = acts.find(n);
      if (!r) throw UsageError("model has no neuron " + neuron_label_arg);
      const auto best = top_methods(acts.row(*r), acts.ids(), top_k);
      if (top_out.empty()) {
        write_top_methods(n, best, &d.store, std::cout);
      } else {
        std::ofstream out = open_out(top_out);
        write_top_methods(n, best, &d.store, out);
      }
    } else if (*table1) {
      if (entries.size() % 3 != 0) throw UsageError("--entry takes EMBEDDING POLICY PROBE_CSV");
      Table1 t;
      for (std::size_t i = 0; i < entries.size(); i += 3) {
        const LabelPolicy p = parse_policy(entries[i + 1]);
        t.add_column(entries[i]);
        t.add_row(p.class_name(), p.instance());
        const ProbeSummary s = read_probe_summary(entries[i + 2]);
        t.set(p.class_name(), p.instance(), entries[i], s.accuracy);
      }
      std::vector<std::string> warnings;
      if (table_out.empty()) {
        t.write(std::cout, &warnings);
      } else {
        std::ofstream out = open_out(table_out);
        t.write(out, &warnings);
      }
      for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    } else if (*hist) {
      const auto bins_out = histogram(read_column(hist_in, hist_column), bins);
      if (hist_out.empty()) {
        write_hist_csv(bins_out, log_y, std::cout);
      } else {
        std::ofstream out = open_out(hist_out);
        write_hist_csv(bins_out, log_y, out);
      }
    } else if (*manifest) {
      RunManifest man;
      std::vector<fs::path> files;
      for (const auto& e : fs::recursive_directory_iterator(manifest_dir)) {
        if (e.is_regular_file() && e.path().filename() != "manifest.json") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) {
        man.outputs.emplace_back(fs::relative(f, manifest_dir).generic_string(), file_digest(f));
      }
      man.write(fs::path(manifest_dir) / "manifest.json");
      std::cout << "listed " << files.size() << " files\n";
    } else if (*pipe) {
      pc.corpus = pc_corpus;
      pc.out_dir = pc_out;
      pc.vectors = pc_vectors;
      pc.grid = parse_grid_mode(pc_grid);
      pc.count_catch = !no_catch;
      pc.use_cache = !no_cache;
      pc.log_y = !linear_y;
      const RunManifest m = run_pipeline(pc);
      for (const StageRecord& s : m.stages) std::cout << s.name << ' ' << s.status << '\n';
      std::cout << "manifest " << (pc.out_dir / "manifest.json").string() << '\n';
    }
  } catch (const StageError& e) {
    std::cerr << "error: stage " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  }
  return 0;
}
