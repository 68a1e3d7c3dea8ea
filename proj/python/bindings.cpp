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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <utility>

#include "neuronmine/autonet.hpp"
#include "neuronmine/corpus.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/labels.hpp"
#include "neuronmine/lexparse.hpp"
#include "neuronmine/neuronscore.hpp"
#include "neuronmine/pipeline.hpp"
#include "neuronmine/probe.hpp"
#include "neuronmine/rng.hpp"

namespace py = pybind11;
using namespace neuronmine;

namespace {

// Rows are neurons "layer:index", columns are method ids.
ActivationMatrix to_matrix(const RowMatrix& values, std::vector<std::string> neurons,
                           std::vector<std::string> ids) {
  std::vector<NeuronRef> refs;
  refs.reserve(neurons.size());
  for (const std::string& n : neurons) refs.push_back(parse_neuron(n));
  return ActivationMatrix(std::move(refs), std::move(ids), values);
}

std::vector<std::string> default_ids(Eigen::Index n) {
  std::vector<std::string> ids;
  for (Eigen::Index i = 0; i < n; ++i) ids.push_back("c" + std::to_string(i));
  return ids;
}

py::dict probe_dict(const ProbeResult& r) {
  py::list rows;
  for (const NeuronProbe& p : r.neurons) {
    rows.append(py::make_tuple(neuron_label(p.neuron), p.best_accuracy, p.best_threshold));
  }
  py::dict d;
  d["neurons"] = rows;
  d["best"] = neuron_label(r.global_best().neuron);
  d["best_accuracy"] = r.global_best().best_accuracy;
  d["best_threshold"] = r.global_best().best_threshold;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Neuron mining over code-embedding autoencoders.";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def("derive_seed", &derive_seed, py::arg("root"), py::arg("stage"));

  m.def(
      "tokenize",
      [](std::string_view source) {
        std::vector<std::string> out;
        for (const Token& t : tokenize(source)) out.push_back(t.text);
        return out;
      },
      py::arg("source"));
  m.def(
      "cyclomatic",
      [](std::string_view source, bool count_catch) {
        return cyclomatic(parse_method(source), {.count_catch = count_catch});
      },
      py::arg("source"), py::arg("count_catch") = true);

  m.def(
      "gen_synthetic",
      [](std::size_t count, std::uint64_t seed, int max_complexity) {
        SynthOptions o;
        o.count = count;
        o.seed = seed;
        o.max_complexity = max_complexity;
        py::list out;
        const CorpusStore store = gen_synthetic(o);
        for (const Method& mt : store.methods()) {
          py::dict d;
          d["id"] = mt.id;
          d["name"] = mt.name;
          d["source"] = mt.source;
          d["cc_true"] = *mt.cc_true;
          out.append(d);
        }
        return out;
      },
      py::arg("count"), py::arg("seed") = 1, py::arg("max_complexity") = 20);

  m.def(
      "label",
      [](const std::string& policy, const std::string& name, std::string_view source) {
        const LabelPolicy p = parse_policy(policy);
        switch (p.kind) {
          case PolicyKind::kStructural:
            return label_structural_tree(parse_method(source), p.threshold);
          case PolicyKind::kSemantic:
            return label_semantic(name, p.patterns);
          default:
            throw UsageError("random labels need a whole corpus");
        }
      },
      py::arg("policy"), py::arg("name"), py::arg("source"));

  m.def(
      "threshold_grid",
      [](std::vector<double> values, int k, const std::string& mode) {
        return threshold_grid(values, k, parse_grid_mode(mode));
      },
      py::arg("values"), py::arg("k") = 10, py::arg("mode") = "min-max");
  m.def(
      "accuracy_at",
      [](std::vector<double> values, std::vector<int> labels, double t) {
        return accuracy_at(values, labels, t);
      },
      py::arg("values"), py::arg("labels"), py::arg("t"));
  m.def(
      "rank_neurons",
      [](const RowMatrix& acts, std::vector<std::string> neurons, std::vector<int> labels, int k) {
        const ActivationMatrix mat = to_matrix(acts, std::move(neurons), default_ids(acts.cols()));
        return probe_dict(rank_neurons(mat, labels, {.k = k}));
      },
      py::arg("activations"), py::arg("neurons"), py::arg("labels"), py::arg("k") = 10);

  m.def(
      "pearson",
      [](std::vector<double> x, std::vector<double> y) {
        const PearsonResult r = pearson(x, y);
        return py::make_tuple(r.value, r.degenerate);
      },
      py::arg("x"), py::arg("y"));
  m.def(
      "corr_scores",
      [](const std::vector<RowMatrix>& models, bool exclude_degenerate) {
        std::vector<ActivationMatrix> mats;
        std::vector<std::string> neurons;
        for (const RowMatrix& v : models) {
          if (neurons.empty()) {
            for (Eigen::Index r = 0; r < v.rows(); ++r) neurons.push_back("code:" + std::to_string(r));
          }
          mats.push_back(to_matrix(v, neurons, default_ids(v.cols())));
        }
        return corr_scores(EnsembleActivations(std::move(mats)),
                           exclude_degenerate ? DegeneratePolicy::kExclude : DegeneratePolicy::kZero);
      },
      py::arg("models"), py::arg("exclude_degenerate") = false);

  m.def(
      "entropy",
      [](std::vector<double> values, double ref_max, int intervals) {
        const EntropyScore s = entropy_score(values, ref_max, intervals);
        py::dict d;
        d["h_softmax"] = s.h_softmax;
        d["h_frequency"] = s.h_frequency;
        d["h_normalized"] = s.h_normalized;
        d["occupied"] = s.occupied;
        d["band"] = band_name(s.band);
        return d;
      },
      py::arg("values"), py::arg("ref_max"), py::arg("intervals") = 1000);

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& corpus, const std::filesystem::path& out_dir,
         std::uint64_t seed, std::vector<std::string> embeddings, int epochs, int models,
         int dim, std::size_t per_class, bool use_cache) {
        PipelineConfig cfg;
        cfg.corpus = corpus;
        cfg.out_dir = out_dir;
        cfg.seed = seed;
        cfg.embeddings = std::move(embeddings);
        cfg.epochs = epochs;
        cfg.models = models;
        cfg.skipgram.dim = dim;
        cfg.per_class = per_class;
        cfg.use_cache = use_cache;
        RunManifest man;
        {
          py::gil_scoped_release release;
          man = run_pipeline(cfg);
        }
        py::dict d;
        d["ok"] = man.ok;
        d["outputs"] = man.outputs;
        return d;
      },
      py::arg("corpus"), py::arg("out_dir"), py::arg("seed") = 1,
      py::arg("embeddings") = std::vector<std::string>{"ast"}, py::arg("epochs") = 50,
      py::arg("models") = 3, py::arg("dim") = 64, py::arg("per_class") = 1000,
      py::arg("use_cache") = true);

  m.attr("__version__") = NEURONMINE_VERSION;
}
