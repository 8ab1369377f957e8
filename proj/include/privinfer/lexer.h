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

#ifndef PRIVINFER_LEXER_H_
#define PRIVINFER_LEXER_H_

#include <string>
#include <string_view>
#include <vector>

#include "privinfer/error.h"

namespace privinfer {

struct Token {
  enum class Kind {
    kIdent,
    kNumber,
    kSymbol,
    // x< or x> in relational assertions (also accepted: the unicode
    // triangles after an identifier).
    kRelLeft,
    kRelRight,
    kEof,
  };
  Kind kind = Kind::kEof;
  std::string text;
  SourceSpan span;
};

struct LexOptions {
  // When set, an identifier immediately followed by '<' or '>' (and not by
  // '<=' / '>=' / '->') lexes as a relational instance.
  bool relational_instances = false;
};

// Comments: '#' to end of line, and nested "(* ... *)".
std::vector<Token> Lex(std::string_view text, const std::string& file,
                       LexOptions options = {});

}  // namespace privinfer

#endif  // PRIVINFER_LEXER_H_
