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

#include "privinfer/parser.h"

#include <algorithm>

namespace privinfer {

namespace {

constexpr std::string_view kKeywords[] = {
    "let", "rec", "in", "fun", "mlet", "return", "observe", "infer", "ran",
    "match", "with", "if", "then", "else", "true", "false", "not",
};

std::string Describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::kEof: return "end of input";
    case Token::Kind::kRelLeft: return "'" + t.text + "<'";
    case Token::Kind::kRelRight: return "'" + t.text + ">'";
    default: return "'" + t.text + "'";
  }
}

}  // namespace

bool IsKeyword(std::string_view word) {
  return std::find(std::begin(kKeywords), std::end(kKeywords), word) !=
         std::end(kKeywords);
}

// ---------------------------------------------------------------------------
// TokenCursor

const Token& TokenCursor::Peek(std::size_t ahead) const {
  std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
  return tokens_[i];
}

Token TokenCursor::Advance() {
  Token t = Peek();
  if (pos_ + 1 < tokens_.size()) ++pos_;
  else pos_ = tokens_.size();
  expected_.clear();
  return t;
}

bool TokenCursor::Check(std::string_view text, std::size_t ahead) const {
  const Token& t = Peek(ahead);
  return (t.kind == Token::Kind::kSymbol || t.kind == Token::Kind::kIdent) &&
         t.text == text;
}

bool TokenCursor::CheckIdent() const {
  const Token& t = Peek();
  return t.kind == Token::Kind::kIdent && !IsKeyword(t.text);
}

bool TokenCursor::CheckNumber() const {
  return Peek().kind == Token::Kind::kNumber;
}

bool TokenCursor::Accept(std::string_view text) {
  if (Check(text)) {
    Advance();
    return true;
  }
  expected_.insert("'" + std::string(text) + "'");
  return false;
}

Token TokenCursor::Expect(std::string_view text) {
  if (Check(text)) return Advance();
  expected_.insert("'" + std::string(text) + "'");
  Fail("");
}

Token TokenCursor::ExpectIdent() {
  if (CheckIdent()) return Advance();
  expected_.insert("identifier");
  Fail("");
}

Token TokenCursor::ExpectNumber() {
  if (CheckNumber()) return Advance();
  expected_.insert("number");
  Fail("");
}

void TokenCursor::Fail(const std::string& what) const {
  std::string msg = "unexpected " + Describe(Peek());
  if (!what.empty()) msg += " (" + what + ")";
  if (!expected_.empty()) {
    msg += "; expected one of:";
    bool first = true;
    for (const auto& e : expected_) {
      msg += first ? " " : ", ";
      msg += e;
      first = false;
    }
  }
  throw SyntaxError(msg, Peek().span);
}

SourceSpan TokenCursor::SpanFrom(const SourceSpan& start) const {
  SourceSpan s = start;
  std::size_t end = start.end;
  if (pos_ > 0) end = std::max(end, tokens_[std::min(pos_, tokens_.size()) - 1].span.end);
  s.end = end;
  return s;
}

// ---------------------------------------------------------------------------
// Types

namespace {

int ParseSmallInt(TokenCursor& c) {
  Token t = c.ExpectNumber();
  Rational r = ParseDecimal(t.text);
  if (denominator(r) != 1 || r < 0 || r > 1000000) {
    throw SyntaxError("expected a small natural number", t.span);
  }
  return static_cast<int>(numerator(r));
}

SimpleType ParseTypeUnary(TokenCursor& c);

SimpleType ParseTypeProduct(TokenCursor& c) {
  std::vector<SimpleType> parts{ParseTypeUnary(c)};
  while (c.Accept("*")) parts.push_back(ParseTypeUnary(c));
  if (parts.size() == 1) return parts[0];
  return SimpleType::Tuple(std::move(parts));
}

SimpleType ParseTypeAtom(TokenCursor& c) {
  const Token& t = c.Peek();
  if (c.Accept("(")) {
    SimpleType inner = ParseSimpleTypeAt(c);
    c.Expect(")");
    return inner;
  }
  if (c.Accept("[")) {
    Token lo = c.ExpectNumber();
    if (c.Accept(",")) {
      Token hi = c.ExpectNumber();
      c.Expect("]");
      if (ParseDecimal(lo.text) != 0 || ParseDecimal(hi.text) != 1) {
        throw SyntaxError("only the interval [0,1] is a type", lo.span);
      }
      return SimpleType::UnitInterval();
    }
    c.Expect("]");
    Rational k = ParseDecimal(lo.text);
    if (denominator(k) != 1 || k < 1 || k > 1000000) {
      throw SyntaxError("enum size must be a positive integer", lo.span);
    }
    return SimpleType::Enum(static_cast<int>(numerator(k)));
  }
  if (t.kind == Token::Kind::kIdent) {
    std::string name = t.text;
    SourceSpan span = t.span;
    c.Advance();
    if (name == "unit") return SimpleType::Unit();
    if (name == "bool") return SimpleType::Bool();
    if (name == "nat" || name == "N") return SimpleType::Nat();
    if (name == "real" || name == "R") {
      if (c.Accept("+")) {
        if (c.Check("inf")) {
          c.Advance();
          return SimpleType::RealExt();
        }
        return SimpleType::RealPos();
      }
      return SimpleType::Real();
    }
    if (name == "list") return SimpleType::List(ParseTypeUnary(c));
    if (name == "M" || name == "D") {
      c.Expect("[");
      SimpleType inner = ParseSimpleTypeAt(c);
      c.Expect("]");
      return name == "M" ? SimpleType::Monad(inner)
                         : SimpleType::Symbolic(inner);
    }
    throw SyntaxError("unknown type '" + name + "'", span);
  }
  c.NoteExpected("type");
  c.Fail("");
}

SimpleType ParseTypeUnary(TokenCursor& c) {
  SimpleType base = ParseTypeAtom(c);
  if (c.Accept("^")) {
    int n = ParseSmallInt(c);
    if (n < 1) throw SyntaxError("exponent must be positive", c.Peek().span);
    if (n == 1) return base;
    return SimpleType::Tuple(std::vector<SimpleType>(n, base));
  }
  return base;
}

}  // namespace

SimpleType ParseSimpleTypeAt(TokenCursor& c) {
  SimpleType lhs = ParseTypeProduct(c);
  if (c.Accept("->")) {
    return SimpleType::Arrow(lhs, ParseSimpleTypeAt(c));
  }
  return lhs;
}

SimpleType ParseSimpleType(std::string_view text) {
  TokenCursor c(Lex(text, "<type>"));
  SimpleType t = ParseSimpleTypeAt(c);
  if (!c.AtEnd()) c.Fail("trailing input after type");
  return t;
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : c_(std::move(tokens)) {}

  ExprPtr Program() {
    struct Decl {
      SourceSpan start;
      bool rec = false;
      Pattern pattern;
      std::optional<SimpleType> annot;
      ExprPtr value;
      // Only for rec.
      std::vector<Param> params;
      ExprPtr fn_body;
      SourceSpan name_span;
    };
    std::vector<Decl> decls;
    ExprPtr body;
    while (c_.Check("let")) {
      Decl d;
      d.start = c_.Peek().span;
      c_.Advance();
      if (c_.Accept("rec")) {
        d.rec = true;
        Token name = c_.ExpectIdent();
        d.name_span = name.span;
        d.pattern = Pattern::Var(name.text);
        d.params = Params(/*at_least_one=*/true);
        if (c_.Accept(":")) d.annot = ParseSimpleTypeAt(c_);
        c_.Expect("=");
        d.fn_body = Expr0();
      } else {
        d.name_span = c_.Peek().span;
        LetHead(&d.pattern, &d.annot, &d.value, d.start);
      }
      if (c_.Check("in")) {
        c_.Advance();
        ExprPtr inner = Expr0();
        body = d.rec ? Node(node::LetRec{d.pattern.name(), d.params, d.annot,
                                         d.fn_body, inner},
                            d.start)
                     : Node(node::Let{d.pattern, d.annot, d.value, inner},
                            d.start);
        break;
      }
      decls.push_back(std::move(d));
    }
    if (!body) {
      if (!c_.AtEnd()) {
        body = Expr0();
      } else if (decls.empty()) {
        c_.NoteExpected("expression");
        c_.Fail("empty program");
      } else {
        const Decl& last = decls.back();
        if (last.pattern.is_tuple) {
          throw SyntaxError("program without a body must end in a named "
                            "declaration",
                            last.name_span);
        }
        body = MakeExpr(node::Var{last.pattern.name()}, last.name_span);
      }
    }
    if (!c_.AtEnd()) {
      c_.NoteExpected("end of input");
      c_.Fail("");
    }
    SourceSpan end = c_.SpanFrom(c_.Peek().span);
    for (auto it = decls.rbegin(); it != decls.rend(); ++it) {
      SourceSpan span = it->start;
      span.end = std::max(end.end, body->span().end);
      if (it->rec) {
        body = MakeExpr(node::LetRec{it->pattern.name(), it->params, it->annot,
                                     it->fn_body, body},
                        span);
      } else {
        body = MakeExpr(node::Let{it->pattern, it->annot, it->value, body},
                        span);
      }
    }
    return body;
  }

  ExprPtr Single() {
    ExprPtr e = Expr0();
    if (!c_.AtEnd()) {
      c_.NoteExpected("end of input");
      c_.Fail("");
    }
    return e;
  }

 private:
  template <typename T>
  ExprPtr Node(T n, const SourceSpan& start) {
    return MakeExpr(std::move(n), c_.SpanFrom(start));
  }

  // Parses `pattern [params] [: type] = value` after `let` and desugars
  // function sugar into lambdas.
  void LetHead(Pattern* pattern, std::optional<SimpleType>* annot,
               ExprPtr* value, const SourceSpan& start) {
    if (c_.Check("(")) {
      *pattern = TuplePattern();
      if (c_.Accept(":")) *annot = ParseSimpleTypeAt(c_);
      c_.Expect("=");
      *value = Expr0();
      return;
    }
    Token name = c_.ExpectIdent();
    *pattern = Pattern::Var(name.text);
    std::vector<Param> params = Params(/*at_least_one=*/false);
    std::optional<SimpleType> type;
    if (c_.Accept(":")) type = ParseSimpleTypeAt(c_);
    c_.Expect("=");
    ExprPtr body = Expr0();
    if (params.empty()) {
      *annot = type;
      *value = body;
      return;
    }
    if (type) body = MakeExpr(node::Ascribe{body, *type}, body->span());
    for (auto it = params.rbegin(); it != params.rend(); ++it) {
      SourceSpan s = body->span();
      s.start = start.start;
      s.line = start.line;
      s.column = start.column;
      s.end = std::max(s.end, body->span().end);
      body = MakeExpr(node::Lambda{it->pattern, it->type, body}, s);
    }
    *value = body;
  }

  // '(' ident (',' ident)+ ')'
  Pattern TuplePattern() {
    c_.Expect("(");
    std::vector<std::string> names{c_.ExpectIdent().text};
    while (c_.Accept(",")) names.push_back(c_.ExpectIdent().text);
    c_.Expect(")");
    if (names.size() == 1) return Pattern::Var(names[0]);
    return Pattern::Tuple(std::move(names));
  }

  // Pattern for mlet: ident or tuple.
  Pattern BindPattern() {
    if (c_.Check("(")) return TuplePattern();
    return Pattern::Var(c_.ExpectIdent().text);
  }

  bool AtParamStart() const { return c_.CheckIdent() || c_.Check("("); }

  // x | (x [: T]) | (a, b [: T])
  Param OneParam() {
    if (c_.CheckIdent()) return Param{Pattern::Var(c_.Advance().text), {}};
    c_.Expect("(");
    std::vector<std::string> names{c_.ExpectIdent().text};
    while (c_.Accept(",")) names.push_back(c_.ExpectIdent().text);
    Param p;
    p.pattern = names.size() == 1 ? Pattern::Var(names[0])
                                  : Pattern::Tuple(std::move(names));
    if (c_.Accept(":")) p.type = ParseSimpleTypeAt(c_);
    c_.Expect(")");
    return p;
  }

  std::vector<Param> Params(bool at_least_one) {
    std::vector<Param> out;
    if (at_least_one) {
      if (!AtParamStart()) {
        c_.NoteExpected("parameter");
        c_.Fail("");
      }
    }
    while (AtParamStart()) out.push_back(OneParam());
    return out;
  }

  ExprPtr Expr0() {
    const Token& t = c_.Peek();
    SourceSpan start = t.span;
    if (c_.Check("let")) {
      c_.Advance();
      if (c_.Accept("rec")) {
        std::string name = c_.ExpectIdent().text;
        std::vector<Param> params = Params(true);
        std::optional<SimpleType> ret;
        if (c_.Accept(":")) ret = ParseSimpleTypeAt(c_);
        c_.Expect("=");
        ExprPtr fn_body = Expr0();
        c_.Expect("in");
        ExprPtr body = Expr0();
        return Node(node::LetRec{name, std::move(params), ret, fn_body, body},
                    start);
      }
      Pattern pattern;
      std::optional<SimpleType> annot;
      ExprPtr value;
      LetHead(&pattern, &annot, &value, start);
      c_.Expect("in");
      ExprPtr body = Expr0();
      return Node(node::Let{pattern, annot, value, body}, start);
    }
    if (c_.Check("fun")) {
      c_.Advance();
      std::vector<Param> params = Params(true);
      c_.Expect("->");
      ExprPtr body = Expr0();
      SourceSpan span = c_.SpanFrom(start);
      for (auto it = params.rbegin(); it != params.rend(); ++it) {
        body = MakeExpr(node::Lambda{it->pattern, it->type, body}, span);
      }
      return body;
    }
    if (c_.Check("mlet")) {
      c_.Advance();
      Pattern p = BindPattern();
      c_.Expect("=");
      ExprPtr value = Expr0();
      c_.Expect("in");
      ExprPtr body = Expr0();
      return Node(node::Bind{p, value, body}, start);
    }
    if (c_.Check("observe")) {
      c_.Advance();
      return ObserveRest(start);
    }
    if (c_.Check("if")) {
      c_.Advance();
      ExprPtr cond = Expr0();
      c_.Expect("then");
      ExprPtr a = Expr0();
      c_.Expect("else");
      ExprPtr b = Expr0();
      return Node(node::If{cond, a, b}, start);
    }
    if (c_.Check("match")) {
      c_.Advance();
      return MatchRest(start);
    }
    return Or();
  }

  ExprPtr ObserveRest(const SourceSpan& start) {
    if (c_.Check("(") && c_.Check("fun", 1)) {
      c_.Advance();
      c_.Advance();
      std::vector<Param> params = Params(true);
      c_.Expect("->");
      ExprPtr pred = Expr0();
      c_.Expect(")");
      Pattern binder;
      std::optional<SimpleType> annot;
      if (params.size() == 1) {
        binder = params[0].pattern;
        annot = params[0].type;
      } else {
        // fun r s -> e observes a tuple-valued prior.
        std::vector<std::string> names;
        std::vector<SimpleType> types;
        bool all_typed = true;
        for (const Param& p : params) {
          if (p.pattern.is_tuple) {
            throw SyntaxError("nested tuple binder in observe", start);
          }
          names.push_back(p.pattern.name());
          if (p.type) types.push_back(*p.type);
          else all_typed = false;
        }
        binder = Pattern::Tuple(std::move(names));
        if (all_typed) annot = SimpleType::Tuple(std::move(types));
      }
      ExprPtr prior = App();
      return Node(node::Observe{binder, annot, pred, prior}, start);
    }
    Param p = OneParam();
    c_.Expect("=>");
    ExprPtr pred = Expr0();
    c_.Expect("in");
    ExprPtr prior = Expr0();
    return Node(node::Observe{p.pattern, p.type, pred, prior}, start);
  }

  ExprPtr MatchRest(const SourceSpan& start) {
    ExprPtr scrutinee = Expr0();
    c_.Expect("with");
    ExprPtr nil_branch, cons_branch;
    std::string head, tail;
    c_.Accept("|");
    for (int i = 0; i < 2; ++i) {
      if (i == 1) c_.Expect("|");
      if (!nil_branch && c_.Check("[")) {
        c_.Advance();
        c_.Expect("]");
        c_.Expect("->");
        nil_branch = Expr0();
      } else if (!cons_branch) {
        if (!c_.CheckIdent()) {
          if (!nil_branch) c_.NoteExpected("'['");
          c_.NoteExpected("identifier");
          c_.Fail("");
        }
        head = c_.Advance().text;
        c_.Expect("::");
        tail = c_.ExpectIdent().text;
        c_.Expect("->");
        cons_branch = Expr0();
      } else {
        c_.NoteExpected("'['");
        c_.Fail("");
      }
    }
    return Node(node::Match{scrutinee, nil_branch, head, tail, cons_branch},
                start);
  }

  ExprPtr Or() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = And();
    while (c_.Accept("||")) {
      ExprPtr rhs = And();
      lhs = Node(node::Binary{BinOp::kOr, lhs, rhs}, start);
    }
    return lhs;
  }

  ExprPtr And() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = Cmp();
    while (c_.Accept("&&")) {
      ExprPtr rhs = Cmp();
      lhs = Node(node::Binary{BinOp::kAnd, lhs, rhs}, start);
    }
    return lhs;
  }

  ExprPtr Cmp() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = Cons();
    static const std::pair<std::string_view, BinOp> kOps[] = {
        {"=", BinOp::kEq}, {"<>", BinOp::kNe}, {"<=", BinOp::kLe},
        {">=", BinOp::kGe}, {"<", BinOp::kLt}, {">", BinOp::kGt},
    };
    for (const auto& [text, op] : kOps) {
      if (c_.Accept(text)) {
        ExprPtr rhs = Cons();
        return Node(node::Binary{op, lhs, rhs}, start);
      }
    }
    return lhs;
  }

  ExprPtr Cons() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = Add();
    if (c_.Accept("::")) {
      ExprPtr rhs = Cons();
      return Node(node::Binary{BinOp::kCons, lhs, rhs}, start);
    }
    return lhs;
  }

  ExprPtr Add() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = Mul();
    while (true) {
      BinOp op;
      if (c_.Accept("+")) op = BinOp::kAdd;
      else if (c_.Accept("-")) op = BinOp::kSub;
      else return lhs;
      ExprPtr rhs = Mul();
      lhs = Node(node::Binary{op, lhs, rhs}, start);
    }
  }

  ExprPtr Mul() {
    SourceSpan start = c_.Peek().span;
    ExprPtr lhs = Unary();
    while (true) {
      BinOp op;
      if (c_.Accept("*")) op = BinOp::kMul;
      else if (c_.Accept("/")) op = BinOp::kDiv;
      else return lhs;
      ExprPtr rhs = Unary();
      lhs = Node(node::Binary{op, lhs, rhs}, start);
    }
  }

  ExprPtr Unary() {
    SourceSpan start = c_.Peek().span;
    if (c_.Check("-")) {
      c_.Advance();
      if (c_.CheckNumber()) {
        Token t = c_.Advance();
        node::Literal lit;
        lit.kind = node::Literal::Kind::kNumber;
        lit.number = -ParseDecimal(t.text);
        return Node(lit, start);
      }
      ExprPtr operand = Unary();
      return Node(node::Unary{UnOp::kNeg, operand}, start);
    }
    if (c_.Check("not")) {
      c_.Advance();
      ExprPtr operand = Unary();
      return Node(node::Unary{UnOp::kNot, operand}, start);
    }
    return App();
  }

  bool AtAtomStart() const {
    const Token& t = c_.Peek();
    if (t.kind == Token::Kind::kNumber) return true;
    if (t.kind == Token::Kind::kIdent) {
      return !IsKeyword(t.text) || t.text == "true" || t.text == "false";
    }
    return c_.Check("(") || c_.Check("[");
  }

  ExprPtr App() {
    SourceSpan start = c_.Peek().span;
    for (auto [kw, which] : {std::pair{"return", 0}, std::pair{"infer", 1},
                             std::pair{"ran", 2}}) {
      if (c_.Check(kw)) {
        c_.Advance();
        ExprPtr operand = App();
        if (which == 0) return Node(node::Return{operand}, start);
        if (which == 1) return Node(node::Infer{operand}, start);
        return Node(node::Ran{operand}, start);
      }
    }
    ExprPtr head;
    if (c_.Peek().kind == Token::Kind::kIdent &&
        PrimFromName(c_.Peek().text)) {
      head = PrimCall(/*allow_juxtaposition=*/true);
    } else {
      if (!AtAtomStart()) {
        c_.NoteExpected("expression");
        c_.Fail("");
      }
      head = Atom();
    }
    while (AtAtomStart()) {
      ExprPtr arg = Atom();
      head = Node(node::Apply{head, arg}, start);
    }
    return head;
  }

  ExprPtr PrimCall(bool allow_juxtaposition) {
    Token name = c_.Advance();
    PrimOp op = *PrimFromName(name.text);
    auto [lo, hi] = PrimArity(op);
    std::vector<ExprPtr> args;
    if (c_.Check("(")) {
      c_.Advance();
      std::vector<ExprPtr> inner;
      if (!c_.Check(")")) {
        inner.push_back(Expr0());
        while (c_.Accept(",")) inner.push_back(Expr0());
      }
      c_.Expect(")");
      int n = static_cast<int>(inner.size());
      if (n >= lo && (hi < 0 || n <= hi)) {
        return Node(node::Prim{op, std::move(inner)}, name.span);
      }
      if (n == 1 && allow_juxtaposition) {
        // `H (infer x) out`: the parenthesized expression is the first of
        // several juxtaposed arguments.
        args.push_back(inner[0]);
      } else {
        throw SyntaxError(std::string(PrimName(op)) + " expects " +
                              ArityText(lo, hi) + " argument(s), got " +
                              std::to_string(n),
                          c_.SpanFrom(name.span));
      }
    } else if (!allow_juxtaposition) {
      c_.Expect("(");
    }
    while (static_cast<int>(args.size()) < lo) {
      if (!AtAtomStart()) {
        c_.NoteExpected("argument of " + std::string(PrimName(op)));
        c_.Fail("");
      }
      args.push_back(Atom());
    }
    return Node(node::Prim{op, std::move(args)}, name.span);
  }

  static std::string ArityText(int lo, int hi) {
    if (lo == hi) return std::to_string(lo);
    if (hi < 0) return "at least " + std::to_string(lo);
    return std::to_string(lo) + " to " + std::to_string(hi);
  }

  ExprPtr Atom() {
    const Token& t = c_.Peek();
    SourceSpan start = t.span;
    if (t.kind == Token::Kind::kNumber) {
      Token tok = c_.Advance();
      node::Literal lit;
      lit.kind = node::Literal::Kind::kNumber;
      lit.number = ParseDecimal(tok.text);
      return Node(lit, start);
    }
    if (c_.Check("true") || c_.Check("false")) {
      node::Literal lit;
      lit.kind = node::Literal::Kind::kBool;
      lit.boolean = c_.Advance().text == "true";
      return Node(lit, start);
    }
    if (t.kind == Token::Kind::kIdent && PrimFromName(t.text)) {
      return PrimCall(/*allow_juxtaposition=*/false);
    }
    if (c_.CheckIdent()) {
      return Node(node::Var{c_.Advance().text}, start);
    }
    if (c_.Accept("(")) {
      if (c_.Accept(")")) {
        return Node(node::Literal{node::Literal::Kind::kUnit, false, 0}, start);
      }
      ExprPtr first = Expr0();
      if (c_.Accept(":")) {
        SimpleType type = ParseSimpleTypeAt(c_);
        c_.Expect(")");
        return Node(node::Ascribe{first, type}, start);
      }
      if (c_.Check(",")) {
        std::vector<ExprPtr> elems{first};
        while (c_.Accept(",")) elems.push_back(Expr0());
        c_.Expect(")");
        return Node(node::Tuple{std::move(elems)}, start);
      }
      c_.Expect(")");
      return first;
    }
    if (c_.Accept("[")) {
      std::vector<ExprPtr> elems;
      if (!c_.Check("]")) {
        elems.push_back(Expr0());
        while (c_.Accept(",")) elems.push_back(Expr0());
      }
      Token close = c_.Expect("]");
      node::Literal nil;
      nil.kind = node::Literal::Kind::kNil;
      ExprPtr out = MakeExpr(nil, close.span);
      for (auto it = elems.rbegin(); it != elems.rend(); ++it) {
        SourceSpan s = (*it)->span();
        s.end = close.span.end;
        out = MakeExpr(node::Binary{BinOp::kCons, *it, out}, s);
      }
      if (!elems.empty()) return out;
      return MakeExpr(nil, c_.SpanFrom(start));
    }
    c_.NoteExpected("expression");
    c_.Fail("");
  }

  TokenCursor c_;
};

}  // namespace

ExprPtr Parse(std::string_view text, const std::string& file) {
  return Parser(Lex(text, file)).Program();
}

ExprPtr ParseExpression(std::string_view text, const std::string& file) {
  return Parser(Lex(text, file)).Single();
}

}  // namespace privinfer
