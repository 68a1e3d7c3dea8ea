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

#include "neuronmine/lexparse.hpp"

#include <array>
#include <cctype>
#include <limits>
#include <unordered_set>

#include "neuronmine/error.hpp"

namespace neuronmine {

namespace {

const std::unordered_set<std::string_view>& keywords() {
  static const std::unordered_set<std::string_view> kSet = {
      "abstract", "assert",     "boolean",   "break",     "byte",
      "case",     "catch",      "char",      "class",     "const",
      "continue", "default",    "do",        "double",    "else",
      "enum",     "extends",    "final",     "finally",   "float",
      "for",      "goto",       "if",        "implements", "import",
      "instanceof", "int",      "interface", "long",      "native",
      "new",      "package",    "private",   "protected", "public",
      "return",   "short",      "static",    "strictfp",  "super",
      "switch",   "synchronized", "this",    "throw",     "throws",
      "transient", "try",       "void",      "volatile",  "while"};
  return kSet;
}

bool is_primitive(std::string_view s) {
  return s == "int" || s == "long" || s == "short" || s == "byte" ||
         s == "char" || s == "boolean" || s == "float" || s == "double" ||
         s == "void";
}

// Longest match first.
constexpr std::array<std::string_view, 26> kOperators = {
    ">>>=", "<<=", ">>=", ">>>", "->", "::", "++", "--", "&&",
    "||",   "==",  "!=",  "<=",  ">=", "+=", "-=", "*=", "/=",
    "%=",   "&=",  "|=",  "^=",  "<<", ">>", "...", "?"};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}

bool ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < src_.size()) {
      const unsigned char c = src_[pos_];
      if (std::isspace(c)) {
        advance(1);
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance(1);
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        const int line = line_, col = col_;
        auto close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) {
          throw ParseError("unterminated comment", line, col);
        }
        advance(close + 2 - pos_);
        continue;
      }
      const int line = line_, col = col_;
      if (c == '"' || c == '\'') {
        lex_quoted(static_cast<char>(c));
        out.push_back({TokenKind::kLiteral, std::string(kLiteralPlaceholder), line, col});
        continue;
      }
      if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        lex_number();
        out.push_back({TokenKind::kLiteral, std::string(kLiteralPlaceholder), line, col});
        continue;
      }
      if (ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < src_.size() && ident_char(src_[pos_])) advance(1);
        std::string_view word = src_.substr(start, pos_ - start);
        if (word == "true" || word == "false" || word == "null") {
          out.push_back({TokenKind::kLiteral, std::string(kLiteralPlaceholder), line, col});
        } else if (keywords().contains(word)) {
          out.push_back({TokenKind::kKeyword, std::string(word), line, col});
        } else {
          out.push_back({TokenKind::kIdentifier, std::string(word), line, col});
        }
        continue;
      }
      if (std::string_view("(){}[];,.@").find(static_cast<char>(c)) != std::string_view::npos &&
          !(c == '.' && src_.substr(pos_, 3) == "...")) {
        out.push_back({TokenKind::kPunctuation, std::string(1, static_cast<char>(c)), line, col});
        advance(1);
        continue;
      }
      std::string_view op;
      for (std::string_view cand : kOperators) {
        if (src_.substr(pos_, cand.size()) == cand) {
          op = cand;
          break;
        }
      }
      if (op.empty()) op = src_.substr(pos_, 1);
      out.push_back({TokenKind::kOperator, std::string(op), line, col});
      advance(op.size());
    }
    return out;
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i, ++pos_) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
    }
  }

  void lex_quoted(char quote) {
    const int line = line_, col = col_;
    const char* what = quote == '"' ? "unterminated string literal"
                                    : "unterminated char literal";
    if (quote == '"' && src_.substr(pos_, 3) == "\"\"\"") {
      advance(3);
      while (pos_ < src_.size()) {
        if (src_[pos_] == '\\') {
          advance(2);
        } else if (src_.substr(pos_, 3) == "\"\"\"") {
          advance(3);
          return;
        } else {
          advance(1);
        }
      }
      throw ParseError("unterminated text block", line, col);
    }
    advance(1);
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') break;
      if (c == '\\') {
        if (peek(1) == '\n' || pos_ + 1 >= src_.size()) break;
        advance(2);
        continue;
      }
      advance(1);
      if (c == quote) return;
    }
    throw ParseError(what, line, col);
  }

  void lex_number() {
    const bool hex = src_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X');
    while (pos_ < src_.size()) {
      const unsigned char c = src_[pos_];
      if (std::isalnum(c) || c == '_' ||
          (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        advance(1);
      } else if (c == '.' && !std::isalpha(static_cast<unsigned char>(peek(1)))) {
        advance(1);  // "1." and "1.f"
      } else if ((c == '+' || c == '-') && pos_ > 0) {
        const char prev = src_[pos_ - 1];
        const bool exp = hex ? (prev == 'p' || prev == 'P')
                             : (prev == 'e' || prev == 'E');
        if (!exp) break;
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

bool is_assign_op(std::string_view s) {
  return s == "=" || s == "+=" || s == "-=" || s == "*=" || s == "/=" ||
         s == "%=" || s == "&=" || s == "|=" || s == "^=" || s == "<<=" ||
         s == ">>=" || s == ">>>=";
}

SyntaxTree node(NodeKind kind, std::optional<std::string> text = std::nullopt) {
  SyntaxTree n;
  n.kind = kind;
  n.text = std::move(text);
  return n;
}

class Parser {
 public:
  explicit Parser(std::span<const Token> tokens)
      : t_(tokens), match_(tokens.size(), kNone) {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i].kind != TokenKind::kPunctuation) continue;
      const std::string& s = t_[i].text;
      if (s == "(" || s == "[" || s == "{") {
        stack.push_back(i);
      } else if (s == ")" || s == "]" || s == "}") {
        const char want = s == ")" ? '(' : s == "]" ? '[' : '{';
        if (stack.empty() || t_[stack.back()].text[0] != want) {
          throw ParseError("unbalanced '" + s + "'", t_[i].line, t_[i].column);
        }
        match_[stack.back()] = i;
        match_[i] = stack.back();
        stack.pop_back();
      }
    }
    if (!stack.empty()) {
      const Token& open = t_[stack.back()];
      throw ParseError("unclosed '" + open.text + "'", open.line, open.column);
    }
  }

  SyntaxTree parse() {
    std::size_t body = kNone;
    std::optional<std::string> name;
    for (std::size_t i = 0; i < t_.size();) {
      if (sym(i, "{")) {
        body = i;
        break;
      }
      if (sym(i, "(")) {
        if (!name && i > 0 && ident(i - 1) && !(i >= 2 && sym(i - 2, "@"))) {
          name = t_[i - 1].text;
        }
        i = match_[i] + 1;
      } else if (sym(i, "[")) {
        i = match_[i] + 1;
      } else {
        ++i;
      }
    }
    if (body == kNone) {
      const int line = t_.empty() ? 1 : t_.back().line;
      const int col = t_.empty() ? 1 : t_.back().column;
      throw ParseError("method has no body", line, col);
    }
    SyntaxTree root = node(NodeKind::kMethod, name);
    root.children.push_back(parse_block(body));
    return root;
  }

 private:
  bool sym(std::size_t i, std::string_view s) const {
    return i < t_.size() &&
           (t_[i].kind == TokenKind::kPunctuation || t_[i].kind == TokenKind::kOperator) &&
           t_[i].text == s;
  }
  bool kw(std::size_t i, std::string_view s) const {
    return i < t_.size() && t_[i].kind == TokenKind::kKeyword && t_[i].text == s;
  }
  bool ident(std::size_t i) const {
    return i < t_.size() && t_[i].kind == TokenKind::kIdentifier;
  }
  bool opener(std::size_t i) const {
    return sym(i, "(") || sym(i, "[") || sym(i, "{");
  }
  // Steps over a bracket group when sitting on its opener.
  std::size_t step(std::size_t i) const {
    return opener(i) ? match_[i] + 1 : i + 1;
  }

  SyntaxTree parse_block(std::size_t open) {
    SyntaxTree block = node(NodeKind::kBlock);
    parse_statements(open + 1, match_[open], block.children);
    return block;
  }

  void parse_statements(std::size_t b, std::size_t e, std::vector<SyntaxTree>& out) {
    std::size_t i = b;
    while (i < e) i = parse_statement(i, e, out);
  }

  std::size_t statement_end(std::size_t b, std::size_t e) const {
    for (std::size_t i = b; i < e; i = step(i)) {
      if (sym(i, ";")) return i;
    }
    return e;
  }

  // Parses one statement starting at `i`; appends zero or more nodes and
  // returns the index just past it (always > i).
  std::size_t parse_statement(std::size_t i, std::size_t e, std::vector<SyntaxTree>& out) {
    if (sym(i, ";")) return i + 1;
    if (sym(i, "{")) {
      out.push_back(parse_block(i));
      return match_[i] + 1;
    }
    if (kw(i, "if") && sym(i + 1, "(")) return parse_if(i, e, out);
    if (kw(i, "for") && sym(i + 1, "(")) return parse_for(i, e, out);
    if (kw(i, "while") && sym(i + 1, "(")) {
      SyntaxTree loop = node(NodeKind::kWhile);
      const std::size_t close = match_[i + 1];
      parse_expr(i + 2, close, true, loop.children);
      const std::size_t next = close + 1 < e ? parse_statement(close + 1, e, loop.children) : close + 1;
      out.push_back(std::move(loop));
      return next;
    }
    if (kw(i, "do")) return parse_do(i, e, out);
    if (kw(i, "switch") && sym(i + 1, "(") && sym(match_[i + 1] + 1, "{")) {
      return parse_switch(i, out);
    }
    if (kw(i, "try")) return parse_try(i, e, out);
    if (kw(i, "return")) {
      SyntaxTree ret = node(NodeKind::kReturn);
      const std::size_t end = statement_end(i + 1, e);
      parse_expr(i + 1, end, false, ret.children);
      out.push_back(std::move(ret));
      return end < e ? end + 1 : e;
    }
    if (kw(i, "synchronized") && sym(i + 1, "(")) {
      const std::size_t next = match_[i + 1] + 1;
      return next < e ? parse_statement(next, e, out) : next;
    }
    if (kw(i, "class") || kw(i, "interface") || kw(i, "enum")) {
      // Local type declaration: opaque.
      std::optional<std::string> name;
      if (ident(i + 1)) name = t_[i + 1].text;
      std::size_t j = i + 1;
      while (j < e && !sym(j, "{") && !sym(j, ";")) j = step(j);
      out.push_back(node(NodeKind::kExpr, name));
      if (j < e && sym(j, "{")) return match_[j] + 1;
      return j < e ? j + 1 : e;
    }
    if (ident(i) && sym(i + 1, ":")) {
      // Labelled statement.
      return i + 2 < e ? parse_statement(i + 2, e, out) : i + 2;
    }
    if (kw(i, "else") || kw(i, "case") || kw(i, "default")) {
      // Out of place; keep going after the keyword.
      out.push_back(node(NodeKind::kExpr));
      return i + 1;
    }
    const std::size_t end = statement_end(i, e);
    parse_simple(i, end, out);
    if (end == i) return i + 1;
    return end < e ? end + 1 : e;
  }

  std::size_t parse_if(std::size_t i, std::size_t e, std::vector<SyntaxTree>& out) {
    SyntaxTree branch = node(NodeKind::kIf);
    const std::size_t close = match_[i + 1];
    parse_expr(i + 2, close, true, branch.children);
    std::size_t next = close + 1;
    if (next < e) next = parse_statement(next, e, branch.children);
    if (next < e && kw(next, "else")) {
      SyntaxTree alt = node(NodeKind::kElse);
      next = next + 1 < e ? parse_statement(next + 1, e, alt.children) : next + 1;
      branch.children.push_back(std::move(alt));
    }
    out.push_back(std::move(branch));
    return next;
  }

  std::size_t parse_for(std::size_t i, std::size_t e, std::vector<SyntaxTree>& out) {
    SyntaxTree loop = node(NodeKind::kFor);
    const std::size_t open = i + 1, close = match_[open];
    std::size_t semi[2] = {kNone, kNone};
    std::size_t colon = kNone;
    int n_semi = 0;
    for (std::size_t j = open + 1; j < close; j = step(j)) {
      if (sym(j, ";") && n_semi < 2) semi[n_semi++] = j;
      if (sym(j, ":") && colon == kNone) colon = j;
    }
    if (n_semi == 2) {
      parse_simple(open + 1, semi[0], loop.children);
      parse_expr(semi[0] + 1, semi[1], true, loop.children);
      for (auto [b, en] : split_top(semi[1] + 1, close, ",")) {
        parse_simple(b, en, loop.children);
      }
    } else if (colon != kNone) {
      std::optional<std::string> var;
      for (std::size_t j = open + 1; j < colon; ++j) {
        if (ident(j)) var = t_[j].text;
      }
      SyntaxTree decl = node(NodeKind::kDecl, var);
      parse_expr(colon + 1, close, false, decl.children);
      loop.children.push_back(std::move(decl));
    } else {
      parse_expr(open + 1, close, false, loop.children);
    }
    std::size_t next = close + 1;
    if (next < e) next = parse_statement(next, e, loop.children);
    out.push_back(std::move(loop));
    return next;
  }

  std::size_t parse_do(std::size_t i, std::size_t e, std::vector<SyntaxTree>& out) {
    SyntaxTree loop = node(NodeKind::kDo);
    std::size_t next = i + 1 < e ? parse_statement(i + 1, e, loop.children) : i + 1;
    if (kw(next, "while") && next + 1 < e && sym(next + 1, "(")) {
      const std::size_t close = match_[next + 1];
      parse_expr(next + 2, close, true, loop.children);
      next = close + 1;
      if (next < e && sym(next, ";")) ++next;
    }
    out.push_back(std::move(loop));
    return next;
  }

  std::size_t parse_switch(std::size_t i, std::vector<SyntaxTree>& out) {
    SyntaxTree sw = node(NodeKind::kSwitch);
    const std::size_t close_sel = match_[i + 1];
    parse_expr(i + 2, close_sel, true, sw.children);
    const std::size_t open = close_sel + 1, close = match_[open];
    std::size_t current = kNone;  // index of the open case/default group
    std::size_t j = open + 1;
    while (j < close) {
      const bool is_case = kw(j, "case");
      const bool is_default = kw(j, "default") && (sym(j + 1, ":") || sym(j + 1, "->"));
      if (is_case || is_default) {
        std::size_t label_end = j + 1;
        while (label_end < close && !sym(label_end, ":") && !sym(label_end, "->")) {
          label_end = step(label_end);
        }
        SyntaxTree group = node(is_case ? NodeKind::kCase : NodeKind::kDefault);
        if (is_case) {
          if (j + 1 < label_end) {
            const Token& first = t_[j + 1];
            if (first.kind == TokenKind::kIdentifier || first.kind == TokenKind::kLiteral) {
              group.text = first.text;
            }
          }
          parse_expr(j + 1, label_end, false, group.children);
        }
        if (label_end < close && sym(label_end, "->")) {
          j = label_end + 1 < close ? parse_statement(label_end + 1, close, group.children)
                                    : label_end + 1;
          sw.children.push_back(std::move(group));
          current = kNone;
        } else {
          sw.children.push_back(std::move(group));
          current = sw.children.size() - 1;
          j = label_end + 1;
        }
        continue;
      }
      std::vector<SyntaxTree>& target =
          current == kNone ? sw.children : sw.children[current].children;
      j = parse_statement(j, close, target);
    }
    out.push_back(std::move(sw));
    return close + 1;
  }

  std::size_t parse_try(std::size_t i, std::size_t e, std::vector<SyntaxTree>& out) {
    SyntaxTree tr = node(NodeKind::kTry);
    std::size_t j = i + 1;
    if (sym(j, "(")) {
      for (auto [b, en] : split_top(j + 1, match_[j], ";")) parse_simple(b, en, tr.children);
      j = match_[j] + 1;
    }
    if (j < e && sym(j, "{")) {
      tr.children.push_back(parse_block(j));
      j = match_[j] + 1;
    }
    while (j < e && kw(j, "catch")) {
      SyntaxTree handler = node(NodeKind::kCatch);
      ++j;
      if (sym(j, "(")) {
        for (std::size_t k = j + 1; k < match_[j]; ++k) {
          if (ident(k)) {
            handler.text = t_[k].text;
            break;
          }
        }
        j = match_[j] + 1;
      }
      if (j < e && sym(j, "{")) {
        handler.children.push_back(parse_block(j));
        j = match_[j] + 1;
      }
      tr.children.push_back(std::move(handler));
    }
    if (j < e && kw(j, "finally")) {
      SyntaxTree fin = node(NodeKind::kFinally);
      ++j;
      if (j < e && sym(j, "{")) {
        fin.children.push_back(parse_block(j));
        j = match_[j] + 1;
      }
      tr.children.push_back(std::move(fin));
    }
    out.push_back(std::move(tr));
    return std::max(j, i + 1);
  }

  // Top-level split of [b, e) at `sep`, skipping bracket groups.
  std::vector<std::pair<std::size_t, std::size_t>> split_top(std::size_t b, std::size_t e,
                                                             std::string_view sep) const {
    std::vector<std::pair<std::size_t, std::size_t>> parts;
    std::size_t start = b;
    for (std::size_t j = b; j < e; j = step(j)) {
      if (sym(j, sep)) {
        parts.emplace_back(start, j);
        start = j + 1;
      }
    }
    parts.emplace_back(start, e);
    return parts;
  }

  // Index past a type expression starting at i, or kNone.
  std::size_t skip_type(std::size_t i, std::size_t e) const {
    if (i >= e) return kNone;
    if (t_[i].kind == TokenKind::kKeyword && is_primitive(t_[i].text)) {
      ++i;
    } else if (ident(i)) {
      ++i;
      while (i + 1 < e && sym(i, ".") && ident(i + 1)) i += 2;
    } else {
      return kNone;
    }
    if (i < e && sym(i, "<")) {
      int depth = 0;
      while (i < e) {
        const Token& tok = t_[i];
        if (sym(i, "<")) {
          ++depth;
        } else if (sym(i, ">")) {
          depth -= 1;
        } else if (sym(i, ">>")) {
          depth -= 2;
        } else if (sym(i, ">>>")) {
          depth -= 3;
        } else if (!(tok.kind == TokenKind::kIdentifier || tok.kind == TokenKind::kKeyword ||
                     sym(i, ",") || sym(i, "?") || sym(i, ".") || sym(i, "[") ||
                     sym(i, "]") || sym(i, "&"))) {
          return kNone;
        }
        ++i;
        if (depth <= 0) break;
      }
      if (depth > 0) return kNone;
    }
    while (i + 1 < e && sym(i, "[") && sym(i + 1, "]")) i += 2;
    if (i < e && sym(i, "...")) ++i;
    return i;
  }

  std::optional<std::string> last_identifier(std::size_t b, std::size_t e) const {
    std::optional<std::string> name;
    for (std::size_t j = b; j < e; ++j) {
      if (ident(j)) name = t_[j].text;
    }
    return name;
  }

  // Statement without its terminating semicolon.
  void parse_simple(std::size_t b, std::size_t e, std::vector<SyntaxTree>& out) {
    if (b >= e) return;
    std::size_t d = b;
    while (d < e) {
      if (kw(d, "final")) {
        ++d;
      } else if (sym(d, "@") && ident(d + 1)) {
        d += 2;
        if (d < e && sym(d, "(")) d = match_[d] + 1;
      } else {
        break;
      }
    }
    const std::size_t after_type = skip_type(d, e);
    if (after_type != kNone && after_type < e && ident(after_type) &&
        (after_type + 1 == e || sym(after_type + 1, "=") || sym(after_type + 1, ",") ||
         sym(after_type + 1, "[") || sym(after_type + 1, ":"))) {
      parse_declarators(after_type, e, out);
      return;
    }
    if ((sym(b, "++") || sym(b, "--")) ||
        (e - b >= 2 && (sym(e - 1, "++") || sym(e - 1, "--")))) {
      SyntaxTree asg = node(NodeKind::kAssign, last_identifier(b, e));
      parse_expr(b, e, false, asg.children);
      out.push_back(std::move(asg));
      return;
    }
    for (std::size_t j = b; j < e; j = step(j)) {
      if (t_[j].kind == TokenKind::kOperator && is_assign_op(t_[j].text)) {
        SyntaxTree asg = node(NodeKind::kAssign, last_identifier(b, j));
        parse_expr(b, j, false, asg.children);
        parse_expr(j + 1, e, false, asg.children);
        out.push_back(std::move(asg));
        return;
      }
    }
    if (sym(e - 1, ")")) {
      const std::size_t open = match_[e - 1];
      if (open > b && callee(open - 1)) {
        SyntaxTree call = node(NodeKind::kCall, t_[open - 1].text);
        parse_expr(b, open - 1, false, call.children);
        for (auto [ab, ae] : split_top(open + 1, e - 1, ",")) {
          parse_expr(ab, ae, false, call.children);
        }
        out.push_back(std::move(call));
        return;
      }
    }
    SyntaxTree expr = node(NodeKind::kExpr);
    for (std::size_t j = b; j < e; ++j) {
      if (t_[j].kind == TokenKind::kIdentifier || t_[j].kind == TokenKind::kLiteral) {
        expr.text = t_[j].text;
        break;
      }
    }
    parse_expr(b, e, false, expr.children);
    out.push_back(std::move(expr));
  }

  void parse_declarators(std::size_t b, std::size_t e, std::vector<SyntaxTree>& out) {
    std::vector<std::size_t> starts = {b};
    for (std::size_t j = b; j < e; j = step(j)) {
      if (sym(j, ",") && ident(j + 1) &&
          (j + 2 == e || sym(j + 2, "=") || sym(j + 2, ",") || sym(j + 2, "["))) {
        starts.push_back(j + 1);
      }
    }
    for (std::size_t k = 0; k < starts.size(); ++k) {
      const std::size_t s = starts[k];
      const std::size_t en = k + 1 < starts.size() ? starts[k + 1] - 1 : e;
      SyntaxTree decl = node(NodeKind::kDecl, t_[s].text);
      for (std::size_t j = s + 1; j < en; j = step(j)) {
        if (sym(j, "=")) {
          parse_expr(j + 1, en, false, decl.children);
          break;
        }
      }
      out.push_back(std::move(decl));
    }
  }

  bool callee(std::size_t i) const {
    return ident(i) || kw(i, "this") || kw(i, "super");
  }

  // Emits call, ternary and (inside conditions) cond_and/cond_or nodes.
  void parse_expr(std::size_t b, std::size_t e, bool condition, std::vector<SyntaxTree>& out) {
    if (b >= e) return;
    for (std::size_t j = b; j < e; j = step(j)) {
      if (t_[j].kind == TokenKind::kOperator && is_assign_op(t_[j].text)) {
        parse_expr(b, j, false, out);
        parse_expr(j + 1, e, condition, out);
        return;
      }
    }
    for (std::size_t q = b; q < e; q = step(q)) {
      if (!sym(q, "?")) continue;
      int nest = 1;
      for (std::size_t c = q + 1; c < e; c = step(c)) {
        if (sym(c, "?")) ++nest;
        if (sym(c, ":") && --nest == 0) {
          SyntaxTree tern = node(NodeKind::kTernary);
          parse_expr(b, q, true, tern.children);
          parse_expr(q + 1, c, condition, tern.children);
          parse_expr(c + 1, e, condition, tern.children);
          out.push_back(std::move(tern));
          return;
        }
      }
      break;
    }
    std::size_t j = b;
    while (j < e) {
      if (sym(j, "&&") || sym(j, "||")) {
        if (condition) out.push_back(node(sym(j, "&&") ? NodeKind::kCondAnd : NodeKind::kCondOr));
        ++j;
      } else if (sym(j, "(")) {
        const std::size_t close = match_[j];
        const std::size_t name = callee_index(j, b);
        if (name != kNone) {
          SyntaxTree call = node(NodeKind::kCall, t_[name].text);
          for (auto [ab, ae] : split_top(j + 1, close, ",")) {
            parse_expr(ab, ae, false, call.children);
          }
          out.push_back(std::move(call));
        } else {
          parse_expr(j + 1, close, condition, out);
        }
        j = close + 1;
      } else if (sym(j, "[")) {
        parse_expr(j + 1, match_[j], false, out);
        j = match_[j] + 1;
      } else if (sym(j, "{")) {
        j = match_[j] + 1;  // array initializer or lambda body
      } else {
        ++j;
      }
    }
  }

  // Token naming the function called by the "(" at `open`, looking through
  // explicit generic arguments ("new ArrayList<>()").
  std::size_t callee_index(std::size_t open, std::size_t b) const {
    if (open == b) return kNone;
    if (callee(open - 1)) return open - 1;
    if (!(sym(open - 1, ">") || sym(open - 1, ">>"))) return kNone;
    int depth = 0;
    for (std::size_t j = open; j-- > b;) {
      if (sym(j, ">")) {
        ++depth;
      } else if (sym(j, ">>")) {
        depth += 2;
      } else if (sym(j, "<")) {
        if (--depth == 0) return j > b && ident(j - 1) ? j - 1 : kNone;
      } else if (!(ident(j) || sym(j, ",") || sym(j, "?") || sym(j, "."))) {
        return kNone;
      }
    }
    return kNone;
  }

  std::span<const Token> t_;
  std::vector<std::size_t> match_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source) { return Lexer(source).run(); }

std::string pretty_print(std::span<const Token> tokens) {
  std::string out;
  for (const Token& tok : tokens) {
    if (!out.empty()) out += ' ';
    out += tok.text;
  }
  return out;
}

std::string_view kind_name(NodeKind kind) {
  static constexpr std::array<std::string_view, kNodeKindCount> kNames = {
      "method", "block", "if",     "else",   "for",    "while",    "do",
      "switch", "case",  "default", "try",   "catch",  "finally",  "return",
      "call",   "assign", "decl",  "expr",   "cond_and", "cond_or", "ternary"};
  return kNames[static_cast<std::size_t>(kind)];
}

SyntaxTree parse_method(std::span<const Token> tokens) { return Parser(tokens).parse(); }

std::vector<int> kind_histogram(const SyntaxTree& tree) {
  std::vector<int> counts(kNodeKindCount, 0);
  std::vector<const SyntaxTree*> stack = {&tree};
  while (!stack.empty()) {
    const SyntaxTree* n = stack.back();
    stack.pop_back();
    ++counts[static_cast<std::size_t>(n->kind)];
    for (const SyntaxTree& c : n->children) stack.push_back(&c);
  }
  return counts;
}

int cyclomatic(const SyntaxTree& tree, CyclomaticOptions options) {
  const std::vector<int> h = kind_histogram(tree);
  auto n = [&](NodeKind k) { return h[static_cast<std::size_t>(k)]; };
  int score = 1 + n(NodeKind::kIf) + n(NodeKind::kTernary) + n(NodeKind::kCase) +
              n(NodeKind::kDefault) + n(NodeKind::kFor) + n(NodeKind::kWhile) +
              n(NodeKind::kDo) + n(NodeKind::kCondAnd) + n(NodeKind::kCondOr);
  if (options.count_catch) score += n(NodeKind::kCatch);
  return score;
}

}  // namespace neuronmine
