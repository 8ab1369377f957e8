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

#include "privinfer/lexer.h"

#include <cctype>

namespace privinfer {
namespace {

constexpr std::string_view kSymbols[] = {
    "::", "->", "=>", "<=", ">=", "<>", "&&", "||", "/\\", "\\/",
    "(", ")", "[", "]", "{", "}", ",", ":", "=", "<", ">", "+",
    "-", "*", "/", "|", "^", ".", ";", "!", "~",
};

constexpr std::string_view kLeftTriangle = "\xE2\x97\x81";   // U+25C1
constexpr std::string_view kRightTriangle = "\xE2\x96\xB7";  // U+25B7

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  Lexer(std::string_view text, const std::string& file, LexOptions options)
      : text_(text), file_(file), options_(options) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    while (true) {
      SkipTrivia();
      if (pos_ >= text_.size()) {
        out.push_back({Token::Kind::kEof, "", Span(pos_, pos_)});
        return out;
      }
      out.push_back(Next());
    }
  }

 private:
  SourceSpan Span(std::size_t start, std::size_t end) const {
    SourceSpan s;
    s.file = file_;
    s.start = start;
    s.end = end;
    int line = 1, col = 1;
    for (std::size_t i = 0; i < start && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    s.line = line;
    s.column = col;
    return s;
  }

  void SkipTrivia() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (text_.substr(pos_, 2) == "(*") {
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size()) {
          if (text_.substr(pos_, 2) == "(*") {
            ++depth;
            pos_ += 2;
          } else if (text_.substr(pos_, 2) == "*)") {
            --depth;
            pos_ += 2;
            if (depth == 0) break;
          } else {
            ++pos_;
          }
        }
        if (depth != 0) {
          throw SyntaxError("unterminated comment", Span(start, pos_));
        }
      } else {
        return;
      }
    }
  }

  Token Next() {
    std::size_t start = pos_;
    char c = text_[pos_];
    if (IsIdentStart(c)) {
      while (pos_ < text_.size() && IsIdentChar(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (options_.relational_instances) {
        if (text_.substr(pos_, kLeftTriangle.size()) == kLeftTriangle) {
          pos_ += kLeftTriangle.size();
          return {Token::Kind::kRelLeft, name, Span(start, pos_)};
        }
        if (text_.substr(pos_, kRightTriangle.size()) == kRightTriangle) {
          pos_ += kRightTriangle.size();
          return {Token::Kind::kRelRight, name, Span(start, pos_)};
        }
        if (pos_ < text_.size() && (text_[pos_] == '<' || text_[pos_] == '>')) {
          char next = pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0';
          if (next != '=' && !(text_[pos_] == '<' && next == '>')) {
            Token::Kind kind = text_[pos_] == '<' ? Token::Kind::kRelLeft
                                                  : Token::Kind::kRelRight;
            ++pos_;
            return {kind, name, Span(start, pos_)};
          }
        }
      }
      return {Token::Kind::kIdent, name, Span(start, pos_)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        ++pos_;
        while (pos_ < text_.size() &&
               std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          ++pos_;
        }
      }
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
          ++pos_;
        }
        if (pos_ < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
          }
        } else {
          pos_ = save;
        }
      }
      return {Token::Kind::kNumber, std::string(text_.substr(start, pos_ - start)),
              Span(start, pos_)};
    }
    for (std::string_view sym : kSymbols) {
      if (text_.substr(pos_, sym.size()) == sym) {
        pos_ += sym.size();
        return {Token::Kind::kSymbol, std::string(sym), Span(start, pos_)};
      }
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'",
                      Span(start, start + 1));
  }

  std::string_view text_;
  std::string file_;
  LexOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Token> Lex(std::string_view text, const std::string& file,
                       LexOptions options) {
  return Lexer(text, file, options).Run();
}

}  // namespace privinfer
