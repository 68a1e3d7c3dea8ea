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

// Synthetic Java-like corpus with known cyclomatic complexity.
//
// Every emitted construct knows its own decision-point cost, so the recorded
// cc_true is exact by construction and independent of the parser. Decoys
// (&& outside conditions, control keywords inside literals and comments)
// keep the parser honest.

#include <cstdio>
#include <string>
#include <vector>

#include "neuronmine/corpus.hpp"
#include "neuronmine/error.hpp"
#include "neuronmine/rng.hpp"

namespace neuronmine {

namespace {

const std::vector<std::string> kPatternTerms = {"sort", "find", "search",
                                                "locate", "hash", "crypt"};
const std::vector<std::string> kNeutralVerbs = {
    "get",   "set",   "compute", "update", "load",  "save",  "parse",
    "build", "process", "handle", "render", "check", "init", "reset",
    "apply", "merge", "count",   "read",   "write", "validate"};
const std::vector<std::string> kPrefixes = {"quick", "fast", "safe",
                                            "deep",  "local", "lazy"};
const std::vector<std::string> kObjects = {
    "Items", "Index", "Value",  "Users",  "Nodes", "Keys",
    "Buffer", "Record", "Entry", "Path",  "Config", "Token"};
const std::vector<std::string> kVars = {"value", "total", "count", "result",
                                        "offset", "limit", "size", "state"};
const std::vector<std::string> kReturnTypes = {"void", "int", "boolean",
                                               "String", "List<String>"};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.below(v.size())];
}

class MethodWriter {
 public:
  explicit MethodWriter(Rng& rng) : rng_(rng) {}

  std::string text() const { return out_; }

  void line(const std::string& s) {
    out_.append(static_cast<std::size_t>(indent_) * 4, ' ');
    out_ += s;
    out_ += '\n';
  }
  void open(const std::string& s) {
    line(s);
    ++indent_;
  }
  void close(const std::string& s = "}") {
    --indent_;
    line(s);
  }

  // A condition with exactly `ops` && / || operators.
  std::string condition(int ops) {
    std::string c = atom();
    for (int i = 0; i < ops; ++i) {
      const char* op = rng_.chance(0.5) ? " && " : " || ";
      if (i + 1 < ops && rng_.chance(0.3)) {
        const char* inner = rng_.chance(0.5) ? " && " : " || ";
        c += std::string(op) + "(" + atom() + inner + atom() + ")";
        ++i;
      } else {
        c += op + atom();
      }
    }
    return c;
  }

  void filler() {
    const std::string& v = pick(rng_, kVars);
    switch (rng_.below(12)) {
      case 0: line(v + " += offset;"); break;
      case 1: line("int " + v + std::to_string(rng_.below(10)) + " = " + v + " * 2 + 1;"); break;
      case 2: line("log.info(\"if (" + v + " && ready) { while (x) }\");"); break;
      case 3: line("// note: if (" + v + " || other) for (;;)"); break;
      case 4: line("boolean ok" + std::to_string(rng_.below(10)) + " = " + v + " > 0 && ready;"); break;
      case 5: line("result.add(" + v + ");"); break;
      case 6: line(v + "++;"); break;
      case 7: line("String label = name.trim();"); break;
      case 8: line("char open = '{';"); break;
      case 9: line("/* switch (" + v + ") { case 1: } */ " + v + " = limit - 1;"); break;
      case 10: line("List<String> names = new ArrayList<>();"); break;
      default: line("Map<String, List<Integer>> groups = new HashMap<>();"); break;
    }
  }

  void fillers(int max) {
    const int n = static_cast<int>(rng_.below(static_cast<std::uint64_t>(max) + 1));
    for (int i = 0; i < n; ++i) filler();
  }

  // Emits statements whose decision points sum to exactly `budget`.
  void statements(int budget, int depth) {
    fillers(2);
    while (budget > 0) {
      budget -= construct(budget, depth);
      fillers(2);
    }
  }

  void motif(const std::string& term) {
    if (term == "sort") {
      line("int tmp = items[i];");
      line("items[i] = items[j];");
      line("items[j] = tmp;");
      line("Arrays.sort(items);");
    } else if (term == "find") {
      line("int idx = items.indexOf(target);");
      line("result = items.get(idx);");
    } else if (term == "search") {
      line("int pos = Collections.binarySearch(keys, target);");
      line("visited.put(target, pos);");
    } else if (term == "locate") {
      line("Node where = registry.lookup(target);");
      line("where.mark();");
    } else if (term == "hash") {
      line("int h = 17;");
      line("h = 31 * h + key.hashCode();");
      line("h ^= (h >>> 16);");
    } else if (term == "crypt") {
      line("Cipher cipher = Cipher.getInstance(\"AES\");");
      line("cipher.init(Cipher.ENCRYPT_MODE, secret);");
      line("byte[] sealed = cipher.doFinal(data);");
    }
  }

 private:
  std::string atom() {
    switch (rng_.below(7)) {
      case 0: return pick(rng_, kVars) + " > 0";
      case 1: return "ready";
      case 2: return "items.isEmpty()";
      case 3: return "!done";
      case 4: return "node != null";
      case 5: return "offset < limit";
      default: return "name.equals(\"x\")";
    }
  }

  int ops_for(int avail) {
    const int cap = std::min(avail, 2);
    return cap <= 0 ? 0 : static_cast<int>(rng_.below(static_cast<std::uint64_t>(cap) + 1));
  }

  int nested_for(int avail, int depth) {
    if (depth >= 3 || avail <= 0) return 0;
    return static_cast<int>(rng_.below(static_cast<std::uint64_t>(avail) + 1));
  }

  // Emits one construct costing at most `budget` (and at least 1); returns
  // its cost.
  int construct(int budget, int depth) {
    for (;;) {
      const int kind = static_cast<int>(rng_.below(10));
      switch (kind) {
        case 0: {  // if
          const int ops = ops_for(budget - 1);
          const int inner = nested_for(budget - 1 - ops, depth);
          open("if (" + condition(ops) + ") {");
          statements(inner, depth + 1);
          close();
          return 1 + ops + inner;
        }
        case 1: {  // if / else
          const int ops = ops_for(budget - 1);
          const int inner = nested_for(budget - 1 - ops, depth);
          const int left = inner == 0 ? 0 : static_cast<int>(rng_.below(static_cast<std::uint64_t>(inner) + 1));
          open("if (" + condition(ops) + ") {");
          statements(left, depth + 1);
          close("} else {");
          ++indent_;
          statements(inner - left, depth + 1);
          close();
          return 1 + ops + inner;
        }
        case 2: {  // else-if chain
          if (budget < 2) continue;
          const int arms = budget >= 3 && rng_.chance(0.5) ? 3 : 2;
          int cost = 0;
          for (int a = 0; a < arms; ++a) {
            const int ops = ops_for(budget - arms - cost);
            const std::string c = condition(ops);
            if (a == 0) {
              open("if (" + c + ") {");
            } else {
              close("} else if (" + c + ") {");
              ++indent_;
            }
            fillers(1);
            cost += ops;
          }
          if (rng_.chance(0.5)) {
            close("} else {");
            ++indent_;
            fillers(1);
          }
          close();
          return arms + cost;
        }
        case 3: {  // counted for
          const int ops = ops_for(budget - 1);
          const int inner = nested_for(budget - 1 - ops, depth);
          std::string cond = "i" + std::to_string(depth) + " < limit";
          for (int o = 0; o < ops; ++o) cond += o % 2 == 0 ? " && !done" : " || ready";
          const std::string var = "i" + std::to_string(depth);
          open("for (int " + var + " = 0; " + cond + "; " + var + "++) {");
          statements(inner, depth + 1);
          close();
          return 1 + ops + inner;
        }
        case 4: {  // enhanced for
          const int inner = nested_for(budget - 1, depth);
          open("for (String item" + std::to_string(depth) + " : names) {");
          statements(inner, depth + 1);
          close();
          return 1 + inner;
        }
        case 5: {  // while
          const int ops = ops_for(budget - 1);
          const int inner = nested_for(budget - 1 - ops, depth);
          open("while (" + condition(ops) + ") {");
          statements(inner, depth + 1);
          line("break;");
          close();
          return 1 + ops + inner;
        }
        case 6: {  // do / while
          const int ops = ops_for(budget - 1);
          const int inner = nested_for(budget - 1 - ops, depth);
          open("do {");
          statements(inner, depth + 1);
          close("} while (" + condition(ops) + ");");
          return 1 + ops + inner;
        }
        case 7: {  // switch
          const int max_labels = std::min(budget, 4);
          const int labels = 1 + static_cast<int>(rng_.below(static_cast<std::uint64_t>(max_labels)));
          const bool with_default = labels >= 2 ? rng_.chance(0.6) : rng_.chance(0.3);
          const int cases = with_default ? labels - 1 : labels;
          open("switch (mode) {");
          for (int c = 0; c < cases; ++c) {
            if (rng_.chance(0.3)) {
              open("case " + std::to_string(c) + ": {");
              fillers(2);
              line("break;");
              close();
            } else {
              open("case " + std::to_string(c) + ":");
              fillers(2);
              line("break;");
              --indent_;
            }
          }
          if (with_default) {
            open("default:");
            fillers(1);
            --indent_;
          }
          close();
          return labels;
        }
        case 8: {  // ternary
          const int ops = ops_for(budget - 1);
          if (ops == 0) {
            line(pick(rng_, kVars) + " = ready ? offset : limit;");
          } else {
            line("int pick = (" + condition(ops) + ") ? 1 : 0;");
          }
          return 1 + ops;
        }
        default: {  // try / catch
          const int catches = budget >= 2 && rng_.chance(0.3) ? 2 : 1;
          const int inner = nested_for(budget - catches, depth);
          open("try {");
          statements(inner, depth + 1);
          close("} catch (IllegalStateException e) {");
          ++indent_;
          line("log.warn(\"catch (x) if\");");
          if (catches == 2) {
            close("} catch (RuntimeException e) {");
            ++indent_;
            line("throw e;");
          }
          if (rng_.chance(0.4)) {
            close("} finally {");
            ++indent_;
            line("close(handle);");
          }
          close();
          return catches + inner;
        }
      }
    }
  }

  Rng& rng_;
  std::string out_;
  int indent_ = 0;
};

}  // namespace

const std::vector<std::string>& synthetic_pattern_terms() { return kPatternTerms; }

CorpusStore gen_synthetic(const SynthOptions& options) {
  if (options.min_complexity < 1 || options.max_complexity < options.min_complexity) {
    throw UsageError("complexity range must satisfy 1 <= min <= max");
  }
  Rng rng(options.seed);
  std::vector<Method> methods;
  methods.reserve(options.count);
  for (std::size_t n = 0; n < options.count; ++n) {
    const int complexity = rng.between(options.min_complexity, options.max_complexity);
    std::string term;
    std::string name;
    if (rng.chance(0.3)) name = pick(rng, kPrefixes);
    if (rng.chance(options.pattern_rate)) {
      term = pick(rng, kPatternTerms);
      name += name.empty() ? term : capitalize(term);
    } else {
      const std::string& verb = pick(rng, kNeutralVerbs);
      name += name.empty() ? verb : capitalize(verb);
    }
    name += pick(rng, kObjects);

    MethodWriter w(rng);
    const std::string& ret = pick(rng, kReturnTypes);
    w.open("public " + ret + " " + name + "(int mode, String name, List<String> items) {");
    const bool with_motif = !term.empty() && rng.chance(options.motif_rate);
    const int split_at = complexity > 1 ? rng.between(0, complexity - 1) : 0;
    w.statements(split_at, 0);
    if (with_motif) w.motif(term);
    w.statements(complexity - 1 - split_at, 0);
    if (ret == "int") w.line("return total;");
    if (ret == "boolean") w.line("return ready;");
    if (ret == "String") w.line("return name.trim();");
    if (ret == "List<String>") w.line("return names;");
    w.close();

    Method m;
    char id[32];
    std::snprintf(id, sizeof(id), "syn%06zu", n);
    m.id = id;
    m.name = name;
    m.source = w.text();
    char repo[32];
    std::snprintf(repo, sizeof(repo), "synthetic/repo%02u",
                  static_cast<unsigned>(rng.below(16)));
    m.repo = repo;
    m.cc_true = complexity;
    methods.push_back(std::move(m));
  }
  return CorpusStore(std::move(methods));
}

}  // namespace neuronmine
