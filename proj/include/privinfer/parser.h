//
// Copyright 2026 The PrivInfer Authors
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
//

#ifndef PRIVINFER_PARSER_H_
#define PRIVINFER_PARSER_H_

#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/lexer.h"
#include "privinfer/types.h"

namespace privinfer {

// Parses a program: a sequence of top-level declarations
//
//   let [rec] name params [: type] = expr
//
// optionally followed by a body expression. Declarations desugar to nested
// Let / LetRec nodes; the body defaults to the last declared name.
ExprPtr Parse(std::string_view text, const std::string& file = "<input>");

// Parses a single expression.
ExprPtr ParseExpression(std::string_view text,
                        const std::string& file = "<input>");

SimpleType ParseSimpleType(std::string_view text);

// Canonical concrete syntax; Parse(Pretty(e)) is structurally equal to e.
std::string Pretty(const Expr& e);

// Cursor over a token vector with expected-token bookkeeping for
// diagnostics. Shared by the program and relational-type parsers.
class TokenCursor {
 public:
  explicit TokenCursor(std::vector<Token> tokens)
      : tokens_(std::move(tokens)) {}

  const Token& Peek(std::size_t ahead = 0) const;
  Token Advance();
  bool AtEnd() const { return Peek().kind == Token::Kind::kEof; }

  // True if the next token is the given symbol or keyword.
  bool Check(std::string_view text, std::size_t ahead = 0) const;
  bool CheckIdent() const;
  bool CheckNumber() const;
  bool Accept(std::string_view text);
  Token Expect(std::string_view text);
  Token ExpectIdent();
  Token ExpectNumber();

  [[noreturn]] void Fail(const std::string& what) const;
  SourceSpan SpanFrom(const SourceSpan& start) const;
  void ClearExpected() { expected_.clear(); }
  void NoteExpected(std::string what) { expected_.insert(std::move(what)); }

  // For bounded backtracking.
  std::size_t position() const { return pos_; }
  void Rewind(std::size_t pos) {
    pos_ = pos;
    expected_.clear();
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::set<std::string> expected_;
};

SimpleType ParseSimpleTypeAt(TokenCursor& cursor);

bool IsKeyword(std::string_view word);

}  // namespace privinfer

#endif  // PRIVINFER_PARSER_H_
