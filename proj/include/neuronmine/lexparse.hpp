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

#ifndef NEURONMINE_LEXPARSE_HPP_
#define NEURONMINE_LEXPARSE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace neuronmine {

enum class TokenKind : std::uint8_t {
  kKeyword,
  kIdentifier,
  kLiteral,
  kOperator,
  kPunctuation,
};

// Spelling used for every literal token; literal contents are dropped.
inline constexpr std::string_view kLiteralPlaceholder = "LIT";

struct Token {
  TokenKind kind;
  std::string text;
  int line = 1;
  int column = 1;

  friend bool operator==(const Token&, const Token&) = default;
};

// Tokenizes Java-like source. Comments vanish, literals become "LIT".
// Throws ParseError on an unterminated string, char literal or comment.
std::vector<Token> tokenize(std::string_view source);

// Token texts joined by single spaces.
std::string pretty_print(std::span<const Token> tokens);

enum class NodeKind : std::uint8_t {
  kMethod,
  kBlock,
  kIf,
  kElse,
  kFor,
  kWhile,
  kDo,
  kSwitch,
  kCase,
  kDefault,
  kTry,
  kCatch,
  kFinally,
  kReturn,
  kCall,
  kAssign,
  kDecl,
  kExpr,
  kCondAnd,
  kCondOr,
  kTernary,
};

inline constexpr int kNodeKindCount = 21;

// Lower-case name used in AST sentences ("method", "if", "cond_and", ...).
std::string_view kind_name(NodeKind kind);

struct SyntaxTree {
  NodeKind kind = NodeKind::kMethod;
  std::vector<SyntaxTree> children;
  // Identifier or literal spelling. Only meaningful on leaves, except the
  // root, which carries the declared method name.
  std::optional<std::string> text;

  friend bool operator==(const SyntaxTree&, const SyntaxTree&) = default;
};

// Tolerant recursive descent over one method declaration. Unknown statements
// degrade to expr nodes. Throws ParseError on unbalanced brackets or when no
// method body is present.
SyntaxTree parse_method(std::span<const Token> tokens);

inline SyntaxTree parse_method(std::string_view source) {
  return parse_method(tokenize(source));
}

struct CyclomaticOptions {
  // catch blocks are conditional constructs of the control flow graph; turn
  // off to count only the constructs listed by the original rule set.
  bool count_catch = true;
};

// 1 + if + ternary + case + default + for + while + do + catch + && + ||,
// where && and || are counted only inside conditions.
int cyclomatic(const SyntaxTree& tree, CyclomaticOptions options = {});

// Counts of each node kind in the tree, indexed by NodeKind.
std::vector<int> kind_histogram(const SyntaxTree& tree);

}  // namespace neuronmine

#endif  // NEURONMINE_LEXPARSE_HPP_
