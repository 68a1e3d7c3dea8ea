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

#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "gen.hpp"
#include "neuronmine/corpus.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/lexparse.hpp"

using namespace neuronmine;

namespace {

std::vector<std::string> texts(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const Token& t : tokens) out.push_back(t.text);
  return out;
}

bool case_only_under_switch(const SyntaxTree& t, bool parent_is_switch) {
  if ((t.kind == NodeKind::kCase || t.kind == NodeKind::kDefault) && !parent_is_switch) {
    return false;
  }
  for (const SyntaxTree& c : t.children) {
    if (!case_only_under_switch(c, t.kind == NodeKind::kSwitch)) return false;
  }
  return true;
}

int node_count(const SyntaxTree& t) {
  int n = 1;
  for (const SyntaxTree& c : t.children) n += node_count(c);
  return n;
}

}  // namespace

TEST_CASE("tokenize classifies and replaces literals") {
  const auto tokens = tokenize("int x = 0x1F + 'c' + \"s\\\"q\" + 1.5e-3f; // tail");
  const std::vector<std::string> expect = {"int", "x", "=", "LIT", "+", "LIT",
                                           "+",   "LIT", "+", "LIT", ";"};
  CHECK(texts(tokens) == expect);
  CHECK(tokens[0].kind == TokenKind::kKeyword);
  CHECK(tokens[1].kind == TokenKind::kIdentifier);
  CHECK(tokens[2].kind == TokenKind::kOperator);
  CHECK(tokens[3].kind == TokenKind::kLiteral);
  CHECK(tokens.back().kind == TokenKind::kPunctuation);
}

TEST_CASE("tokenize records 1-based positions") {
  const auto tokens = tokenize("a\n  /* c\n */ b");
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[0].line == 1);
  CHECK(tokens[0].column == 1);
  CHECK(tokens[1].line == 3);
  CHECK(tokens[1].column == 5);
}

TEST_CASE("operators use longest match") {
  CHECK(texts(tokenize("a >>>= b")) == std::vector<std::string>{"a", ">>>=", "b"});
  CHECK(texts(tokenize("x -> y")) == std::vector<std::string>{"x", "->", "y"});
  CHECK(texts(tokenize("f(String... a)")) ==
        std::vector<std::string>{"f", "(", "String", "...", "a", ")"});
  CHECK(texts(tokenize("a&&b||c")) == std::vector<std::string>{"a", "&&", "b", "||", "c"});
}

TEST_CASE("true false null are literals") {
  for (const Token& t : tokenize("true false null")) {
    CHECK(t.kind == TokenKind::kLiteral);
    CHECK(t.text == kLiteralPlaceholder);
  }
}

TEST_CASE("unterminated constructs raise ParseError at their start") {
  try {
    tokenize("int a;\n  String s = \"open");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 14);
  }
  CHECK_THROWS_AS(tokenize("a /* never closed"), ParseError);
  CHECK_THROWS_AS(tokenize("char c = 'x"), ParseError);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_method("void a() { if (x) { }"), ParseError);
  CHECK_THROWS_AS(parse_method("void a() { x = (1; }"), ParseError);
  CHECK_THROWS_AS(parse_method("void a();"), ParseError);
  CHECK_THROWS_AS(parse_method(""), ParseError);
  try {
    parse_method("void a() {\n  x = ];\n}");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("method name is taken from the declaration") {
  CHECK(parse_method("public static int quickSortItems(int a) { return a; }").text ==
        "quickSortItems");
  CHECK(parse_method("@Deprecated(since = \"1\") List<Map<K, V>> load() { return null; }").text ==
        "load");
}

TEST_CASE("hand-counted fixtures") {
  for (const auto& f : fixtures::kCounted) {
    CAPTURE(f.label);
    const SyntaxTree tree = parse_method(f.source);
    CHECK(cyclomatic(tree) == f.cc);
    CHECK(cyclomatic(tree, {.count_catch = false}) == f.cc_without_catch);
  }
}

TEST_CASE("node kinds of a small method") {
  const SyntaxTree t = parse_method("int f(int a) { int b = a; if (a > 0 && b) b = 2; return b; }");
  const auto h = kind_histogram(t);
  CHECK(h[static_cast<int>(NodeKind::kMethod)] == 1);
  CHECK(h[static_cast<int>(NodeKind::kIf)] == 1);
  CHECK(h[static_cast<int>(NodeKind::kCondAnd)] == 1);
  CHECK(h[static_cast<int>(NodeKind::kDecl)] == 1);
  CHECK(h[static_cast<int>(NodeKind::kAssign)] == 1);
  CHECK(h[static_cast<int>(NodeKind::kReturn)] == 1);
  CHECK(kind_name(NodeKind::kCondAnd) == "cond_and");
}

TEST_CASE("property: generator and parser agree on complexity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SynthOptions o;
    o.count = 400;
    o.seed = seed;
    o.max_complexity = 30;
    const CorpusStore store = gen_synthetic(o);
    for (const Method& m : store.methods()) {
      CAPTURE(m.source);
      const SyntaxTree tree = parse_method(m.source);
      CHECK(cyclomatic(tree) == *m.cc_true);
      CHECK(tree.text == m.name);
      CHECK(case_only_under_switch(tree, false));
      int total = 0;
      for (int c : kind_histogram(tree)) total += c;
      CHECK(total == node_count(tree));
    }
  }
}

TEST_CASE("property: pretty printing preserves token texts and complexity") {
  const CorpusStore store = gen::tiny_corpus(150, 9);
  for (const Method& m : store.methods()) {
    const auto tokens = tokenize(m.source);
    const std::string printed = pretty_print(tokens);
    CHECK(texts(tokenize(printed)) == texts(tokens));
    CHECK(cyclomatic(parse_method(printed)) == cyclomatic(parse_method(tokens)));
  }
}

TEST_CASE("property: truncated or shuffled sources parse or raise ParseError") {
  const CorpusStore store = gen::tiny_corpus(60, 4);
  Rng rng(77);
  for (const Method& m : store.methods()) {
    for (int trial = 0; trial < 10; ++trial) {
      std::string src = m.source.substr(0, rng.below(m.source.size() + 1));
      if (trial % 2) {
        auto tokens = tokenize(m.source);
        rng.shuffle(tokens);
        src = pretty_print(tokens);
      }
      try {
        const SyntaxTree t = parse_method(src);
        CHECK(cyclomatic(t) >= 1);
      } catch (const ParseError&) {
      }
    }
  }
}
