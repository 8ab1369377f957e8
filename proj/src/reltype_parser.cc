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

#include <string>
#include <vector>

#include "privinfer/lexer.h"
#include "privinfer/parser.h"
#include "privinfer/reltype.h"

namespace privinfer {
namespace {

class RelParser {
 public:
  RelParser(std::string_view text, const std::string& file)
      : c_(Lex(text, file, LexOptions{true})) {}

  std::vector<RelSignature> Signatures() {
    std::vector<RelSignature> out;
    while (!c_.AtEnd()) {
      Token name = c_.ExpectIdent();
      c_.Expect(":");
      RelType t = Type();
      out.push_back({name.text, std::move(t), c_.SpanFrom(name.span)});
    }
    return out;
  }

  RelType WholeType() {
    RelType t = Type();
    if (!c_.AtEnd()) c_.Fail("trailing input after type");
    return t;
  }

  IndexExpr WholeIndex() {
    IndexExpr e = Index();
    if (!c_.AtEnd()) c_.Fail("trailing input after index");
    return e;
  }

 private:
  RelType Type() {
    RelType lhs = TypeAtom();
    if (c_.Accept("->")) return RelType::Arrow(std::move(lhs), Type());
    return lhs;
  }

  RelType TypeAtom() {
    if (c_.Check("(")) {
      c_.Advance();
      RelType t = Type();
      c_.Expect(")");
      return t;
    }
    if (c_.Check("M") && c_.Check("[", 1)) {
      c_.Advance();
      c_.Advance();
      FIndex f = Divergence();
      c_.Expect(",");
      IndexExpr delta = Index();
      c_.Expect("]");
      RelType inner = Refinement();
      return RelType::Monad(std::move(f), std::move(delta), inner.binder,
                            inner.type, inner.refinement);
    }
    if (c_.Check("{")) return Refinement();
    c_.NoteExpected("'{'");
    c_.NoteExpected("'M['");
    c_.Fail("relational types are refinements {x :: T | phi} or monads");
  }

  RelType Refinement() {
    c_.Expect("{");
    Token binder = c_.ExpectIdent();
    c_.Expect("::");
    SimpleType type = ParseSimpleTypeAt(c_);
    Assertion phi = Assertion::True();
    if (c_.Accept("|")) phi = Formula();
    c_.Expect("}");
    return RelType::Base(binder.text, std::move(type), std::move(phi));
  }

  FIndex Divergence() {
    Token t = c_.ExpectIdent();
    if (t.text == "SD") return FIndex::SD();
    if (t.text == "HD") return FIndex::HD();
    if (t.text == "KL") return FIndex::KL();
    if (t.text == "epsD") {
      c_.Expect("(");
      IndexExpr e = Index();
      c_.Expect(")");
      return FIndex::EpsD(std::move(e));
    }
    throw SyntaxError("unknown divergence '" + t.text +
                          "'; expected SD, HD, KL or epsD(...)",
                      t.span);
  }

  // --- index expressions -----------------------------------------------

  IndexExpr Index() {
    IndexExpr e = IndexTerm();
    while (c_.Accept("+")) e = e + IndexTerm();
    return e;
  }

  IndexExpr IndexTerm() {
    IndexExpr e = IndexFactor();
    while (c_.Accept("*")) e = e * IndexFactor();
    return e;
  }

  IndexExpr IndexFactor() {
    if (c_.CheckNumber()) return IndexExpr::Constant(ParseDecimal(c_.Advance().text));
    if (c_.Accept("(")) {
      IndexExpr e = Index();
      c_.Expect(")");
      return e;
    }
    Token t = c_.ExpectIdent();
    if (t.text == "inf") return IndexExpr::Infinity();
    if (t.text == "max") {
      c_.Expect("(");
      IndexExpr a = Index();
      c_.Expect(",");
      IndexExpr b = Index();
      c_.Expect(")");
      return IndexExpr::Max(a, b);
    }
    IndexAtom atom{t.text, {}};
    if (c_.Accept("(")) {
      do {
        atom.args.push_back(c_.ExpectIdent().text);
      } while (c_.Accept(","));
      c_.Expect(")");
    }
    return IndexExpr::Atom(std::move(atom));
  }

  // --- assertions --------------------------------------------------------

  Assertion Formula() {
    Assertion lhs = Disjunction();
    if (c_.Accept("=>")) {
      Assertion a;
      a.kind = Assertion::Kind::kImplies;
      a.kids = {std::move(lhs), Formula()};
      return a;
    }
    return lhs;
  }

  Assertion Disjunction() {
    Assertion first = Conjunction();
    if (!c_.Check("\\/")) return first;
    Assertion a;
    a.kind = Assertion::Kind::kOr;
    a.kids.push_back(std::move(first));
    while (c_.Accept("\\/")) a.kids.push_back(Conjunction());
    return a;
  }

  Assertion Conjunction() {
    std::vector<Assertion> kids{Unary()};
    while (c_.Accept("/\\")) kids.push_back(Unary());
    if (kids.size() == 1) return kids[0];
    return Assertion::And(std::move(kids));
  }

  bool AtFormulaEnd(std::size_t ahead) const {
    const Token& t = c_.Peek(ahead);
    return t.kind == Token::Kind::kEof ||
           (t.kind == Token::Kind::kSymbol &&
            (t.text == "}" || t.text == ")" || t.text == "/\\" ||
             t.text == "\\/" || t.text == "=>"));
  }

  Assertion Unary() {
    if (c_.Accept("~")) {
      Assertion a;
      a.kind = Assertion::Kind::kNot;
      a.kids = {Unary()};
      return a;
    }
    if (c_.Check("=") && AtFormulaEnd(1)) {
      c_.Advance();
      return Assertion::Diag();
    }
    if (c_.Check("true")) {
      c_.Advance();
      return Assertion::True();
    }
    if (c_.Check("false")) {
      c_.Advance();
      Assertion a;
      a.kind = Assertion::Kind::kFalse;
      return a;
    }
    if (c_.Check("(")) {
      // Either a parenthesized formula or a parenthesized term starting a
      // comparison; try the atom first.
      std::size_t save = c_.position();
      try {
        return Atom();
      } catch (const SyntaxError&) {
        c_.Rewind(save);
      }
      c_.Advance();
      Assertion a = Formula();
      c_.Expect(")");
      return a;
    }
    return Atom();
  }

  Assertion Atom() {
    const Token& t = c_.Peek();
    if (t.kind == Token::Kind::kIdent &&
        (t.text == "SD" || t.text == "HD" || t.text == "KL" ||
         t.text == "epsD") &&
        c_.Check("(", 1)) {
      Assertion a;
      a.kind = Assertion::Kind::kDiv;
      a.f = Divergence();
      c_.Expect("(");
      a.lhs = Term();
      c_.Expect(",");
      a.rhs = Term();
      c_.Expect(")");
      c_.Expect("<=");
      a.bound = Index();
      return a;
    }
    RelExpr lhs = Term();
    Assertion a;
    if (c_.Check("Phi")) {
      c_.Advance();
      a.kind = Assertion::Kind::kAdj;
      a.lhs = std::move(lhs);
      a.rhs = Term();
      return a;
    }
    for (const char* op : {"<=", ">=", "=", "<", ">"}) {
      if (c_.Accept(op)) {
        a.kind = Assertion::Kind::kCmp;
        a.op = op;
        a.lhs = std::move(lhs);
        a.rhs = Term();
        return a;
      }
    }
    c_.NoteExpected("Phi");
    c_.Fail("expected a comparison");
  }

  RelExpr Term() {
    RelExpr e = Product();
    while (c_.Check("+") || c_.Check("-")) {
      bool add = c_.Advance().text == "+";
      RelExpr r;
      r.kind = add ? RelExpr::Kind::kAdd : RelExpr::Kind::kSub;
      r.kids = {std::move(e), Product()};
      e = std::move(r);
    }
    return e;
  }

  RelExpr Product() {
    RelExpr e = Factor();
    while (c_.Accept("*")) {
      RelExpr r;
      r.kind = RelExpr::Kind::kMul;
      r.kids = {std::move(e), Factor()};
      e = std::move(r);
    }
    return e;
  }

  RelExpr Factor() {
    const Token& t = c_.Peek();
    RelExpr e;
    switch (t.kind) {
      case Token::Kind::kRelLeft:
        e.kind = RelExpr::Kind::kLeft;
        e.name = c_.Advance().text;
        return e;
      case Token::Kind::kRelRight:
        e.kind = RelExpr::Kind::kRight;
        e.name = c_.Advance().text;
        return e;
      case Token::Kind::kNumber:
        e.kind = RelExpr::Kind::kNumber;
        e.number = ParseDecimal(c_.Advance().text);
        return e;
      case Token::Kind::kIdent:
        e.kind = RelExpr::Kind::kVar;
        e.name = c_.Advance().text;
        return e;
      default: break;
    }
    if (c_.Accept("(")) {
      e = Term();
      c_.Expect(")");
      return e;
    }
    if (c_.Accept("|")) {
      e.kind = RelExpr::Kind::kAbs;
      e.kids = {Term()};
      c_.Expect("|");
      return e;
    }
    c_.NoteExpected("term");
    c_.Fail("");
  }

  TokenCursor c_;
};

}  // namespace

std::vector<RelSignature> ParseRelSignatures(std::string_view text,
                                             const std::string& file) {
  return RelParser(text, file).Signatures();
}

RelType ParseRelType(std::string_view text) {
  return RelParser(text, "<type>").WholeType();
}

IndexExpr ParseIndex(std::string_view text) {
  return RelParser(text, "<index>").WholeIndex();
}

}  // namespace privinfer
