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

#ifndef NEURONMINE_TESTS_FIXTURES_HPP_
#define NEURONMINE_TESTS_FIXTURES_HPP_

#include <array>
#include <cmath>
#include <vector>
#include <string_view>

namespace fixtures {

struct CountedMethod {
  std::string_view label;
  std::string_view source;
  int cc;  // counted by hand, catch included
  int cc_without_catch;
};

// Hand-counted cyclomatic complexities.
inline constexpr std::array<CountedMethod, 34> kCounted = {{
    {"straight line", "void a() { x = 1; }", 1, 1},
    {"single if", "void a() { if (x > 0) { y(); } }", 2, 2},
    {"if else", "void a() { if (a) b(); else c(); }", 2, 2},
    {"else-if chain",
     "void a() { if (a) { p(); } else if (b) { q(); } else if (c) { r(); } else { s(); } }", 4, 4},
    {"and in if", "void a() { if (a && b) { go(); } }", 3, 3},
    {"and or in if", "void a() { if (a && b || c) { go(); } }", 4, 4},
    {"while with and", "void a() { while (i < n && !done) { i++; } }", 3, 3},
    {"counted for", "void a() { for (int i = 0; i < n; i++) { sum += i; } }", 2, 2},
    {"for each", "void a(List<String> items) { for (String s : items) { use(s); } }", 2, 2},
    {"do while", "void a() { do { i++; } while (i < n); }", 2, 2},
    {"do while or", "void a() { do { i++; } while (i < n || retry); }", 3, 3},
    {"switch with default",
     "int a(int k) { switch (k) { case 1: a(); break; case 2: b(); break; default: c(); } "
     "return 0; }",
     4, 4},
    {"switch fallthrough", "void a(int k) { switch (k) { case 1: case 2: a(); break; } }", 3, 3},
    {"arrow switch",
     "void a(int k) { switch (k) { case 1 -> a(); case 2 -> b(); default -> c(); } }", 4, 4},
    {"try catch", "void a() { try { a(); } catch (IOException e) { b(); } }", 2, 1},
    {"two catches and finally",
     "void a() { try { a(); } catch (IOException e) { b(); } catch (Exception e) { c(); } "
     "finally { d(); } }",
     3, 1},
    {"ternary", "int a(int x, int y) { int m = x > y ? x : y; return m; }", 2, 2},
    {"ternary with and", "int a() { int m = (p && q) ? 1 : 2; return m; }", 3, 3},
    {"and outside condition", "boolean a() { boolean f = p && q; return f; }", 1, 1},
    {"and inside call argument", "void a() { if (check(p && q)) { go(); } }", 2, 2},
    {"decoys in comments and strings",
     "void a() {\n  // if (a) { while (b) {} }\n  String s = \"while (x) { if }\";\n"
     "  /* for (;;) {} */ char c = '{';\n}",
     1, 1},
    {"nested loops",
     "void a() { for (int i = 0; i < n; i++) { if (ok) { while (more) { step(); } } } }", 4, 4},
    {"return ternary", "int a(int x) { return x > 0 ? x : -x; }", 2, 2},
    {"or in nested else",
     "void a() { if (p) { x(); } else { if (q || r) { y(); } } }", 4, 4},
    {"try with resources",
     "void a() { try (Reader r = open()) { r.read(); } catch (IOException e) { log(e); } }", 2,
     1},
    {"annotated generic signature",
     "@Override public Map<String, List<Integer>> f(int a) { if (a > 0) return null; "
     "return null; }",
     2, 2},
    {"labelled loops",
     "void a() { outer: for (int i = 0; i < n; i++) { for (int j = 0; j < m; j++) { "
     "if (i == j) continue outer; } } }",
     4, 4},
    {"synchronized block", "void a() { synchronized (lock) { if (p) q(); } }", 2, 2},
    {"multi catch", "void a() { try { a(); } catch (IOException | RuntimeException e) { b(); } }",
     2, 1},
    {"bitwise and", "void a() { if ((flags & MASK) != 0) { go(); } }", 2, 2},
    {"switch selector with or",
     "void a() { switch (p || q ? 1 : 0) { case 1: go(); break; default: stop(); } }", 5, 5},
    {"while true with break",
     "void a() { while (true) { if (done) break; step(); } }", 3, 3},
    {"generic shift decoy",
     "void a() { Map<String, List<Integer>> m = new HashMap<>(); int s = x >> 2; "
     "if (s > 1 && s < 9) go(); }",
     3, 3},
    {"mixed",
     "public int score(int mode, List<String> items) {\n"
     "  int total = 0;\n"
     "  for (String s : items) {\n"
     "    switch (mode) {\n"
     "      case 0: total += s.length(); break;\n"
     "      case 1: total -= 1; break;\n"
     "      default: break;\n"
     "    }\n"
     "  }\n"
     "  try {\n"
     "    total = check(total) ? total : 0;\n"
     "  } catch (IllegalStateException e) {\n"
     "    total = -1;\n"
     "  }\n"
     "  while (total > 100 || total < -100) total /= 2;\n"
     "  return total;\n"
     "}\n",
     9, 8},
}};

struct PearsonCase {
  std::vector<double> x;
  std::vector<double> y;
  double rho;  // closed form
  bool degenerate;
};

// Product-moment correlations worked out by hand.
inline std::vector<PearsonCase> pearson_cases() {
  return {
      {{1, 2, 3}, {2, 4, 6}, 1.0, false},
      {{1, 2, 3}, {3, 2, 1}, -1.0, false},
      {{1, 2, 3, 4}, {1, 3, 2, 4}, 0.8, false},
      {{1, 2}, {5, 3}, -1.0, false},
      {{1, 2, 3}, {1, 3, 2}, 0.5, false},
      {{0, 0, 1, 1}, {0, 1, 0, 1}, 0.0, false},
      {{1, 2, 3, 4, 5}, {2, 1, 4, 3, 5}, 0.8, false},
      {{1, 0, 0}, {0, 1, 0}, -0.5, false},
      {{1, 2, 3, 4}, {1, 4, 9, 16}, 25.0 / std::sqrt(645.0), false},
      {{2, 4, 6, 8}, {1, 1, 2, 2}, 2.0 / std::sqrt(5.0), false},
      {{1, 0, 0}, {3, 2, 1}, std::sqrt(3.0) / 2.0, false},
      {{0, 3}, {7, 7}, 0.0, true},
      {{5, 5, 5}, {1, 2, 3}, 0.0, true},
  };
}

}  // namespace fixtures

#endif  // NEURONMINE_TESTS_FIXTURES_HPP_
