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

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "gen.hpp"
#include "neuronmine/embed.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/lexparse.hpp"

using namespace neuronmine;

namespace {

using Sentences = std::vector<Sentence>;

Sentences toy_sentences() {
  Sentences s;
  Rng rng(5);
  const std::vector<std::string> a = {"alpha", "beta", "gamma", "delta"};
  const std::vector<std::string> b = {"one", "two", "three", "four"};
  for (int i = 0; i < 300; ++i) {
    const auto& words = i % 2 ? a : b;
    Sentence sent;
    for (int k = 0; k < 8; ++k) sent.push_back(words[rng.below(words.size())]);
    s.push_back(std::move(sent));
  }
  return s;
}

// Vocabulary with random matrices, for loss and gradient checks.
VocabEmbedding random_vocab(int words, int dim, std::uint64_t seed) {
  VocabEmbedding ve;
  Rng rng(seed);
  ve.input.resize(words, dim);
  ve.output.resize(words, dim);
  for (int w = 0; w < words; ++w) {
    ve.words.push_back("w" + std::to_string(w));
    ve.index[ve.words.back()] = w;
    ve.counts.push_back(1);
    for (int j = 0; j < dim; ++j) {
      ve.input(w, j) = rng.uniform(-1.0, 1.0);
      ve.output(w, j) = rng.uniform(-1.0, 1.0);
    }
  }
  return ve;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-8, std::abs(a) + std::abs(b)); }

}  // namespace

TEST_CASE("token sentences split at statement and block boundaries") {
  const Method m{"a", "f", "int f() { a = 1; b(); }", {}, {}};
  const Sentences expect = {{"int", "f", "(", ")"}, {"a", "=", "LIT"}, {"b", "(", ")"}};
  CHECK(token_sentences(m) == expect);
}

TEST_CASE("ast sentences: block subtrees, then root-to-leaf paths") {
  const SyntaxTree t = parse_method("void f(int x) { if (x > 0) { g(x); } return; }");
  const Sentences expect = {
      {"method", "block", "if", "block", "call", "return"},
      {"method", "block", "if", "block", "call"},
      {"method", "block", "if", "block", "call", "g"},
      {"method", "block", "return"},
  };
  CHECK(ast_sentences(t) == expect);
}

TEST_CASE("skip-gram is deterministic and starts from the stated init") {
  const Sentences s = toy_sentences();
  SkipGramOptions o;
  o.dim = 8;
  o.epochs = 0;
  const VocabEmbedding init = train_skipgram(s, o);
  CHECK(init.size() == 8);
  CHECK(init.output.isZero());
  CHECK(init.input.cwiseAbs().maxCoeff() < 0.5 / 8);
  CHECK(init.heldout_loss.size() == 1);
  CHECK(init.heldout_loss[0] == doctest::Approx(6 * std::log(2.0)));

  o.epochs = 3;
  const VocabEmbedding a = train_skipgram(s, o);
  CHECK(a == train_skipgram(s, o));
  o.seed = 2;
  CHECK_FALSE(a == train_skipgram(s, o));
}

TEST_CASE("skip-gram held-out loss decreases and co-occurring words cluster") {
  const Sentences s = toy_sentences();
  SkipGramOptions o;
  o.dim = 16;
  o.epochs = 5;
  const VocabEmbedding ve = train_skipgram(s, o);
  REQUIRE(ve.heldout_loss.size() == 6);
  CHECK(ve.heldout_loss.back() < ve.heldout_loss[1]);
  auto cos = [&](const char* x, const char* y) {
    const auto u = ve.input.row(*ve.lookup(x));
    const auto v = ve.input.row(*ve.lookup(y));
    return u.dot(v) / (u.norm() * v.norm());
  };
  CHECK(cos("alpha", "beta") > cos("alpha", "one"));
  CHECK(cos("two", "three") > cos("two", "gamma"));
}

TEST_CASE("skip-gram rejects empty input") {
  CHECK_THROWS_AS(train_skipgram(Sentences{}, {}), UsageError);
  CHECK_THROWS_AS(train_skipgram(Sentences{{"solo"}}, {}), UsageError);
}

TEST_CASE("negative-sampling loss matches its closed form") {
  const VocabEmbedding ve = random_vocab(5, 3, 1);
  const std::vector<int> neg = {2, 4};
  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  const auto v = ve.input.row(0);
  const double expect = -std::log(sig(ve.output.row(1).dot(v))) -
                        std::log(sig(-ve.output.row(2).dot(v))) -
                        std::log(sig(-ve.output.row(4).dot(v)));
  CHECK(negative_sampling_loss(ve, 0, 1, neg) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("property: negative-sampling gradient matches central differences") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    VocabEmbedding ve = random_vocab(6, 4, seed);
    const std::vector<int> neg = {3, 5, 2};
    const auto g = negative_sampling_gradient(ve, 0, 1, neg);
    const double h = 1e-6;
    auto fd = [&](RowMatrix& m, int row, int col) {
      const double keep = m(row, col);
      m(row, col) = keep + h;
      const double up = negative_sampling_loss(ve, 0, 1, neg);
      m(row, col) = keep - h;
      const double down = negative_sampling_loss(ve, 0, 1, neg);
      m(row, col) = keep;
      return (up - down) / (2 * h);
    };
    for (int j = 0; j < 4; ++j) {
      CHECK(rel_err(g.center(j), fd(ve.input, 0, j)) < 1e-4);
      CHECK(rel_err(g.context(j), fd(ve.output, 1, j)) < 1e-4);
      for (std::size_t k = 0; k < neg.size(); ++k) {
        CHECK(rel_err(g.negatives[k](j), fd(ve.output, neg[k], j)) < 1e-4);
      }
    }
  }
}

TEST_CASE("method vectors average in-vocabulary occurrences") {
  const VocabEmbedding ve = random_vocab(3, 2, 4);
  const Sentences s = {{"w0", "w1", "oov"}, {"w1"}};
  const Eigen::VectorXd v = embed_method(ve, s, "m1");
  const Eigen::VectorXd expect = (ve.input.row(0) + 2 * ve.input.row(1)).transpose() / 3.0;
  CHECK((v - expect).norm() < 1e-15);
  try {
    embed_method(ve, Sentences{{"nope"}}, "m7");
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("m7") != std::string::npos);
  }
}

TEST_CASE("EmbeddingSet validates entries") {
  EmbeddingSet set(2, Provenance::kToken);
  set.add("a", Eigen::Vector2d(1, 2));
  CHECK_THROWS_AS(set.add("a", Eigen::Vector2d(1, 2)), DataError);
  CHECK_THROWS_AS(set.add("b", Eigen::Vector3d(1, 2, 3)), DataError);
  CHECK_THROWS_AS(set.add("c", Eigen::Vector2d(std::nan(""), 0)), NumericError);
  set.add("d", Eigen::Vector2d(3, 4));
  const std::vector<std::string> pick = {"d", "a"};
  const EmbeddingSet sub = set.select(pick);
  CHECK(sub.ids() == pick);
  CHECK(sub.vector(0)(1) == 4);
  CHECK(provenance_name(Provenance::kAst) == std::string("ast"));
  CHECK(parse_provenance("token") == Provenance::kToken);
}

TEST_CASE("property: export then import preserves ids and values exactly") {
  Rng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const int dim = 1 + static_cast<int>(rng.below(6));
    EmbeddingSet set(dim, Provenance::kAst);
    for (const std::string& id : gen::ids(rng.below(20) + 1)) {
      Eigen::VectorXd v(dim);
      for (int j = 0; j < dim; ++j) v(j) = std::ldexp(rng.uniform(-1, 1), static_cast<int>(rng.below(40)) - 20);
      set.add(id, v);
    }
    std::stringstream buf;
    export_vectors(set, buf);
    const EmbeddingSet back = import_vectors(buf, dim);
    CHECK(back.provenance() == Provenance::kImported);
    CHECK(back.ids() == set.ids());
    CHECK(back.matrix() == set.matrix());
  }
}

TEST_CASE("import errors name the line") {
  auto error_of = [](const std::string& text, std::optional<int> dim = std::nullopt) {
    std::istringstream in(text);
    try {
      import_vectors(in, dim);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(error_of("2 2\na 1 2\nb 1\n").find("line 3") != std::string::npos);
  CHECK(error_of("1 2\na 1 nan\n").find("line 2") != std::string::npos);
  CHECK(error_of("2 2\na 1 2\n").find("2") != std::string::npos);
  CHECK_FALSE(error_of("1 2\na 1 2\n", 3).empty());
  CHECK_FALSE(error_of("x\n").empty());
  CHECK(error_of("1 2\na 1 2\n").empty());
}

TEST_CASE("standardize uses reference statistics") {
  EmbeddingSet ref(2, Provenance::kToken);
  ref.add("a", Eigen::Vector2d(1, 5));
  ref.add("b", Eigen::Vector2d(3, 5));
  const EmbeddingSet z = standardize(ref, ref);
  CHECK(z.vector(0)(0) == doctest::Approx(-1.0));
  CHECK(z.vector(1)(0) == doctest::Approx(1.0));
  CHECK(z.vector(0)(1) == 0.0);
  EmbeddingSet other(2, Provenance::kToken);
  other.add("c", Eigen::Vector2d(5, 6));
  CHECK(standardize(other, ref).vector(0)(0) == doctest::Approx(3.0));
  CHECK(standardize(other, ref).vector(0)(1) == doctest::Approx(1.0));
}

TEST_CASE("embed_corpus covers the corpus and is deterministic") {
  CorpusStore store = split(gen::tiny_corpus(60, 2), 0.75, 1);
  EmbedOptions o;
  o.skipgram.dim = 8;
  o.skipgram.epochs = 2;
  for (Provenance p : {Provenance::kToken, Provenance::kAst}) {
    std::vector<std::string> skipped;
    const CorpusEmbedding a = embed_corpus(store, p, o, &skipped);
    CHECK(a.vectors.size() + skipped.size() == store.size());
    CHECK(a.vectors.provenance() == p);
    CHECK(a.vectors.dim() == 8);
    CHECK(embed_corpus(store, p, o).vectors == a.vectors);
  }
}
