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

#include "privinfer/simple_types.h"

#include <functional>

namespace privinfer {

TypeEnv TypeEnv::Extend(const std::string& name, SimpleType type) const {
  TypeEnv out = *this;
  for (auto& [n, t] : out.bindings_) {
    if (n == name) {
      t = std::move(type);
      return out;
    }
  }
  out.bindings_.emplace_back(name, std::move(type));
  return out;
}

const SimpleType* TypeEnv::Lookup(const std::string& name) const {
  for (const auto& [n, t] : bindings_) {
    if (n == name) return &t;
  }
  return nullptr;
}

SimpleType LiteralType(const Rational& v) {
  if (v < 0) return SimpleType::Real();
  if (v <= 1) return SimpleType::UnitInterval();
  if (denominator(v) == 1) return SimpleType::Nat();
  return SimpleType::RealPos();
}

namespace {

using Kind = SimpleType::Kind;

const SimpleType kUnitI = SimpleType::UnitInterval();
const SimpleType kRealPos = SimpleType::RealPos();
const SimpleType kReal = SimpleType::Real();
const SimpleType kBool = SimpleType::Bool();

bool Le(const SimpleType& a, const SimpleType& b) { return IsSubtype(a, b); }

SimpleType Power(const SimpleType& t, int n) {
  if (n == 1) return t;
  return SimpleType::Tuple(std::vector<SimpleType>(n, t));
}

class Checker {
 public:
  explicit Checker(TypeTable* table) : table_(table) {}

  SimpleType Synth(const TypeEnv& env, const Expr& e) {
    SimpleType t = std::visit(
        [&](const auto& n) { return SynthNode(env, e, n); }, e.node());
    Record(e, t);
    return t;
  }

  SimpleType Check(const TypeEnv& env, const Expr& e,
                   const SimpleType& expected) {
    SimpleType t = CheckNode(env, e, expected);
    Record(e, t);
    return t;
  }

 private:
  void Record(const Expr& e, const SimpleType& t) {
    if (table_) table_->node_types[e.id()] = t;
  }

  [[noreturn]] static void Fail(const std::string& rule,
                                const std::string& msg, const Expr& e) {
    throw TypeError(rule, msg, e.span());
  }

  static void WellFormed(const SimpleType& t, const Expr& e) {
    if (!t.IsWellFormed()) {
      Fail("WellFormed", "ill-formed type " + t.ToString(), e);
    }
  }

  static std::string RuleOf(const Expr& e) {
    static const char* kNames[] = {
        "Var",  "Const", "Lambda", "App",   "Let",    "LetRec",
        "If",   "Match", "UnitM",  "BindM", "Observe", "Infer",
        "Ran",  "Prim",  "Op",     "Op",    "Tuple",  "Ascribe",
    };
    return kNames[e.node().index()];
  }

  TypeEnv BindPattern(const TypeEnv& env, const Pattern& p,
                      const SimpleType& t, const Expr& at,
                      const std::string& rule) {
    if (!p.is_tuple) return env.Extend(p.name(), t);
    if (t.kind() != Kind::kTuple || t.children().size() != p.names.size()) {
      Fail(rule,
           "pattern " + p.ToString() + " does not match type " + t.ToString(),
           at);
    }
    TypeEnv out = env;
    for (std::size_t i = 0; i < p.names.size(); ++i) {
      out = out.Extend(p.names[i], t.children()[i]);
    }
    return out;
  }

  SimpleType CheckNode(const TypeEnv& env, const Expr& e,
                       const SimpleType& expected) {
    if (const auto* n = e.As<node::Literal>()) {
      if (n->kind == node::Literal::Kind::kNil) {
        if (expected.kind() != Kind::kList) {
          Fail("Nil", "[] used where " + expected.ToString() + " is expected",
               e);
        }
        return expected;
      }
    }
    if (const auto* n = e.As<node::Lambda>()) {
      if (expected.kind() != Kind::kArrow) {
        Fail("Lambda", "function used where " + expected.ToString() +
                           " is expected", e);
      }
      SimpleType param = expected.from();
      if (n->annot) {
        WellFormed(*n->annot, e);
        if (!Le(expected.from(), *n->annot)) {
          Fail("Lambda", "parameter annotated " + n->annot->ToString() +
                             " but " + expected.from().ToString() +
                             " is expected", e);
        }
        param = *n->annot;
      }
      TypeEnv inner = BindPattern(env, n->param, param, e, "Lambda");
      Check(inner, *n->body, expected.to());
      return expected;
    }
    if (const auto* n = e.As<node::If>()) {
      Check(env, *n->cond, kBool);
      Check(env, *n->then_branch, expected);
      Check(env, *n->else_branch, expected);
      return expected;
    }
    if (const auto* n = e.As<node::Match>()) {
      SimpleType s = Synth(env, *n->scrutinee);
      if (s.kind() != Kind::kList) {
        Fail("Match", "match on non-list type " + s.ToString(), e);
      }
      Check(env, *n->nil_branch, expected);
      TypeEnv inner = env.Extend(n->head, s.elem()).Extend(n->tail, s);
      Check(inner, *n->cons_branch, expected);
      return expected;
    }
    if (const auto* n = e.As<node::Let>()) {
      TypeEnv inner = LetBinding(env, e, *n);
      Check(inner, *n->body, expected);
      return expected;
    }
    if (const auto* n = e.As<node::LetRec>()) {
      TypeEnv inner = LetRecBinding(env, e, *n);
      Check(inner, *n->body, expected);
      return expected;
    }
    if (const auto* n = e.As<node::Return>()) {
      if (expected.kind() == Kind::kMonad) {
        Check(env, *n->value, expected.elem());
        return expected;
      }
    }
    if (const auto* n = e.As<node::Bind>()) {
      SimpleType inner = MonadArg(Synth(env, *n->value), *n->value, "BindM");
      TypeEnv benv = BindPattern(env, n->pattern, inner, e, "BindM");
      if (expected.kind() != Kind::kMonad) {
        Fail("BindM", "mlet used where " + expected.ToString() +
                          " is expected", e);
      }
      Check(benv, *n->body, expected);
      return expected;
    }
    if (const auto* n = e.As<node::Tuple>()) {
      if (expected.kind() == Kind::kTuple &&
          expected.children().size() == n->elems.size()) {
        for (std::size_t i = 0; i < n->elems.size(); ++i) {
          Check(env, *n->elems[i], expected.children()[i]);
        }
        return expected;
      }
    }
    if (const auto* n = e.As<node::Binary>()) {
      if (n->op == BinOp::kCons && expected.kind() == Kind::kList) {
        Check(env, *n->lhs, expected.elem());
        Check(env, *n->rhs, expected);
        return expected;
      }
    }
    SimpleType got = Synth(env, e);
    if (!Le(got, expected)) {
      Fail(RuleOf(e), "expected " + expected.ToString() + ", found " +
                          got.ToString(), e);
    }
    return expected;
  }

  SimpleType MonadArg(const SimpleType& t, const Expr& e,
                      const std::string& rule) {
    if (t.kind() != Kind::kMonad) {
      Fail(rule, "expected a distribution M[...], found " + t.ToString(), e);
    }
    return t.elem();
  }

  TypeEnv LetBinding(const TypeEnv& env, const Expr& e, const node::Let& n) {
    SimpleType vt;
    if (n.annot) {
      WellFormed(*n.annot, e);
      vt = Check(env, *n.value, *n.annot);
    } else {
      vt = Synth(env, *n.value);
    }
    return BindPattern(env, n.pattern, vt, e, "Let");
  }

  static SimpleType FunctionType(const node::LetRec& n, const Expr& e) {
    if (!n.ret) Fail("LetRec", "recursive function needs a result type", e);
    SimpleType t = *n.ret;
    for (auto it = n.params.rbegin(); it != n.params.rend(); ++it) {
      if (!it->type) {
        Fail("LetRec", "parameter " + it->pattern.ToString() +
                           " of a recursive function needs a type", e);
      }
      t = SimpleType::Arrow(*it->type, t);
    }
    return t;
  }

  TypeEnv LetRecBinding(const TypeEnv& env, const Expr& e,
                        const node::LetRec& n) {
    SimpleType ft = FunctionType(n, e);
    WellFormed(ft, e);
    TypeEnv with_f = env.Extend(n.name, ft);
    TypeEnv inner = with_f;
    for (const Param& p : n.params) {
      inner = BindPattern(inner, p.pattern, *p.type, e, "LetRec");
    }
    Check(inner, *n.fn_body, *n.ret);
    return with_f;
  }

  // Synthesizes both branches; a branch that cannot synthesize alone (an
  // empty list) is checked against the other.
  SimpleType SynthBranches(const TypeEnv& a_env, const Expr& a,
                           const TypeEnv& b_env, const Expr& b,
                           const Expr& whole) {
    SimpleType ta, tb;
    try {
      ta = Synth(a_env, a);
    } catch (const TypeError& err) {
      if (err.rule() != "Nil") throw;
      tb = Synth(b_env, b);
      Check(a_env, a, tb);
      return tb;
    }
    try {
      tb = Synth(b_env, b);
    } catch (const TypeError& err) {
      if (err.rule() != "Nil") throw;
      Check(b_env, b, ta);
      return ta;
    }
    SimpleType j;
    if (!Join(ta, tb, &j)) {
      Fail(RuleOf(whole), "branches have incompatible types " +
                              ta.ToString() + " and " + tb.ToString(), whole);
    }
    return j;
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Var& n) {
    const SimpleType* t = env.Lookup(n.name);
    if (!t) Fail("Var", "unbound variable '" + n.name + "'", e);
    return *t;
  }

  SimpleType SynthNode(const TypeEnv&, const Expr& e,
                       const node::Literal& n) {
    switch (n.kind) {
      case node::Literal::Kind::kUnit: return SimpleType::Unit();
      case node::Literal::Kind::kBool: return kBool;
      case node::Literal::Kind::kNumber: return LiteralType(n.number);
      case node::Literal::Kind::kNil:
        Fail("Nil", "cannot determine the element type of []; add a type "
                    "annotation", e);
    }
    return SimpleType::Unit();
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Lambda& n) {
    if (!n.annot) {
      Fail("Lambda", "parameter " + n.param.ToString() +
                         " needs a type annotation here", e);
    }
    WellFormed(*n.annot, e);
    TypeEnv inner = BindPattern(env, n.param, *n.annot, e, "Lambda");
    return SimpleType::Arrow(*n.annot, Synth(inner, *n.body));
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Apply& n) {
    SimpleType f = Synth(env, *n.fn);
    if (f.kind() != Kind::kArrow) {
      Fail("App", "applying a value of non-function type " + f.ToString(), e);
    }
    Check(env, *n.arg, f.from());
    return f.to();
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Let& n) {
    return Synth(LetBinding(env, e, n), *n.body);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::LetRec& n) {
    return Synth(LetRecBinding(env, e, n), *n.body);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e, const node::If& n) {
    Check(env, *n.cond, kBool);
    return SynthBranches(env, *n.then_branch, env, *n.else_branch, e);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Match& n) {
    SimpleType s = Synth(env, *n.scrutinee);
    if (s.kind() != Kind::kList) {
      Fail("Match", "match on non-list type " + s.ToString(), e);
    }
    TypeEnv inner = env.Extend(n.head, s.elem()).Extend(n.tail, s);
    return SynthBranches(env, *n.nil_branch, inner, *n.cons_branch, e);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Return& n) {
    SimpleType t = Synth(env, *n.value);
    SimpleType m = SimpleType::Monad(t);
    if (!m.IsWellFormed()) {
      Fail("UnitM", "cannot return a value of type " + t.ToString() +
                        " (monads range over base types and D[...])", e);
    }
    return m;
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Bind& n) {
    SimpleType inner = MonadArg(Synth(env, *n.value), *n.value, "BindM");
    TypeEnv benv = BindPattern(env, n.pattern, inner, e, "BindM");
    SimpleType body = Synth(benv, *n.body);
    if (body.kind() != Kind::kMonad) {
      Fail("BindM", "body of mlet must have type M[...], found " +
                        body.ToString(), *n.body);
    }
    return body;
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Observe& n) {
    SimpleType prior = Synth(env, *n.prior);
    if (prior.kind() != Kind::kMonad || !prior.elem().IsBase()) {
      Fail("Observe", "prior must have type M[base], found " +
                          prior.ToString(), e);
    }
    SimpleType binder = prior.elem();
    if (n.annot) {
      WellFormed(*n.annot, e);
      if (!Le(binder, *n.annot)) {
        Fail("Observe", "binder annotated " + n.annot->ToString() +
                            " but the prior ranges over " + binder.ToString(),
             e);
      }
      binder = *n.annot;
    }
    TypeEnv inner = BindPattern(env, n.binder, binder, e, "Observe");
    SimpleType pred = Synth(inner, *n.predicate);
    if (!Le(pred, SimpleType::Monad(kBool))) {
      Fail("Observe", "predicate must have type M[bool], found " +
                          pred.ToString(), e);
    }
    return prior;
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Infer& n) {
    SimpleType t = Synth(env, *n.value);
    if (t.kind() != Kind::kMonad || !t.elem().IsBase()) {
      Fail("Infer", "infer expects M[base], found " + t.ToString(), e);
    }
    return SimpleType::Symbolic(t.elem());
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Ran& n) {
    SimpleType t = Synth(env, *n.value);
    if (t.kind() != Kind::kSymbolic) {
      Fail("Ran", "ran expects D[...], found " + t.ToString(), e);
    }
    return SimpleType::Monad(t.elem());
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Prim& n) {
    return SynthPrim(env, e, n);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Binary& n) {
    if (n.op == BinOp::kCons) {
      SimpleType h = Synth(env, *n.lhs);
      SimpleType list = SimpleType::List(h);
      if (n.rhs->Is<node::Literal>() &&
          n.rhs->As<node::Literal>()->kind == node::Literal::Kind::kNil) {
        Check(env, *n.rhs, list);
        WellFormed(list, e);
        return list;
      }
      SimpleType t = Synth(env, *n.rhs);
      SimpleType j;
      if (t.kind() != Kind::kList || !Join(list, t, &j)) {
        Fail("Op", "cannot cons " + h.ToString() + " onto " + t.ToString(),
             e);
      }
      WellFormed(j, e);
      return j;
    }
    SimpleType a = Synth(env, *n.lhs);
    SimpleType b = Synth(env, *n.rhs);
    std::string op(BinOpText(n.op));
    auto need_numeric = [&]() {
      if (!a.IsNumeric() || !b.IsNumeric()) {
        Fail("Op", "operator " + op + " expects numbers, found " +
                       a.ToString() + " and " + b.ToString(), e);
      }
    };
    auto both = [&](const SimpleType& t) { return Le(a, t) && Le(b, t); };
    switch (n.op) {
      case BinOp::kAdd:
        need_numeric();
        if (both(SimpleType::Nat())) return SimpleType::Nat();
        if (both(kRealPos)) return kRealPos;
        if (both(SimpleType::RealExt())) return SimpleType::RealExt();
        if (both(kReal)) return kReal;
        break;
      case BinOp::kSub:
        need_numeric();
        if (both(kReal)) return kReal;
        break;
      case BinOp::kMul:
        need_numeric();
        if (both(SimpleType::Nat())) return SimpleType::Nat();
        if (both(kUnitI)) return kUnitI;
        if (both(kRealPos)) return kRealPos;
        if (both(kReal)) return kReal;
        break;
      case BinOp::kDiv:
        need_numeric();
        if (both(kRealPos)) return kRealPos;
        if (both(kReal)) return kReal;
        break;
      case BinOp::kLt:
      case BinOp::kLe:
      case BinOp::kGt:
      case BinOp::kGe:
        need_numeric();
        return kBool;
      case BinOp::kEq:
      case BinOp::kNe: {
        SimpleType j;
        if (!a.IsBase() || !b.IsBase() || !Join(a, b, &j)) {
          Fail("Op", "cannot compare " + a.ToString() + " with " +
                         b.ToString(), e);
        }
        return kBool;
      }
      case BinOp::kAnd:
      case BinOp::kOr:
        if (a != kBool || b != kBool) {
          Fail("Op", "operator " + op + " expects booleans", e);
        }
        return kBool;
      case BinOp::kCons:
        break;
    }
    Fail("Op", "operator " + op + " is not defined on " + a.ToString() +
                   " and " + b.ToString(), e);
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Unary& n) {
    SimpleType t = Synth(env, *n.operand);
    if (n.op == UnOp::kNot) {
      if (t != kBool) Fail("Op", "not expects bool, found " + t.ToString(), e);
      return kBool;
    }
    if (!Le(t, kReal)) {
      Fail("Op", "negation expects a real, found " + t.ToString(), e);
    }
    return kReal;
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr&,
                       const node::Tuple& n) {
    std::vector<SimpleType> elems;
    for (const auto& x : n.elems) elems.push_back(Synth(env, *x));
    return SimpleType::Tuple(std::move(elems));
  }

  SimpleType SynthNode(const TypeEnv& env, const Expr& e,
                       const node::Ascribe& n) {
    WellFormed(n.type, e);
    return Check(env, *n.value, n.type);
  }

  // --- primitives -------------------------------------------------------

  SimpleType SynthPrim(const TypeEnv& env, const Expr& e,
                       const node::Prim& n) {
    const std::string rule = "Prim:" + std::string(PrimName(n.op));
    auto [lo, hi] = PrimArity(n.op);
    int count = static_cast<int>(n.args.size());
    if (count < lo || (hi >= 0 && count > hi)) {
      Fail(rule, "wrong number of arguments", e);
    }
    auto arg = [&](int i, const SimpleType& t) { Check(env, *n.args[i], t); };
    auto sym_arg = [&](int i) {
      SimpleType t = Synth(env, *n.args[i]);
      if (t.kind() != Kind::kSymbolic) {
        Fail(rule, "expected a symbolic distribution D[...], found " +
                       t.ToString(), *n.args[i]);
      }
      return t.elem();
    };
    auto numeric_arg = [&](int i) {
      SimpleType t = Synth(env, *n.args[i]);
      if (!t.IsNumeric()) {
        Fail(rule, "expected a number, found " + t.ToString(), *n.args[i]);
      }
      return t;
    };
    switch (n.op) {
      case PrimOp::kBernoulli:
        arg(0, kUnitI);
        return SimpleType::Symbolic(kBool);
      case PrimOp::kNormal:
        arg(0, kReal);
        arg(1, kRealPos);
        return SimpleType::Symbolic(kReal);
      case PrimOp::kBeta:
        arg(0, kRealPos);
        arg(1, kRealPos);
        return SimpleType::Symbolic(kUnitI);
      case PrimOp::kUniform:
        return SimpleType::Symbolic(kUnitI);
      case PrimOp::kDirichlet:
        for (int i = 0; i < count; ++i) arg(i, kRealPos);
        return SimpleType::Symbolic(Power(kUnitI, count - 1));
      case PrimOp::kMultinomial:
        for (int i = 0; i < count; ++i) arg(i, kUnitI);
        return SimpleType::Symbolic(SimpleType::Enum(count + 1));
      case PrimOp::kLapMech:
      case PrimOp::kGaussMech:
        arg(0, kRealPos);
        arg(1, kReal);
        return SimpleType::Monad(kReal);
      case PrimOp::kGaussSigma:
        arg(0, kRealPos);
        arg(1, kRealPos);
        return kRealPos;
      case PrimOp::kExpMech:
        return SynthExpMech(env, e, n, rule);
      case PrimOp::kGetParams: {
        SimpleType t = sym_arg(0);
        if (t == kBool) return kUnitI;
        if (t == kUnitI) return Power(kRealPos, 2);
        if (t == kReal) return SimpleType::Tuple({kReal, kRealPos});
        if (t.kind() == Kind::kEnum) {
          if (t.enum_size() < 2) Fail(rule, "degenerate multinomial", e);
          return Power(kUnitI, t.enum_size() - 1);
        }
        if (t.kind() == Kind::kTuple &&
            std::all_of(t.children().begin(), t.children().end(),
                        [](const SimpleType& c) { return c == kUnitI; })) {
          return Power(kRealPos, static_cast<int>(t.children().size()) + 1);
        }
        Fail(rule, "no parametric family over " + t.ToString(), e);
      }
      case PrimOp::kGetMean: {
        SimpleType t = sym_arg(0);
        if (t == kReal) return kReal;
        if (t == kUnitI || t == kBool) return kUnitI;
        Fail(rule, "getMean is defined for D[real], D[[0,1]] and D[bool]", e);
      }
      case PrimOp::kHellinger:
      case PrimOp::kStatDist: {
        SimpleType a = sym_arg(0);
        SimpleType b = sym_arg(1);
        SimpleType j;
        if (!Join(a, b, &j)) {
          Fail(rule, "distributions over different types", e);
        }
        return kUnitI;
      }
      case PrimOp::kMax:
      case PrimOp::kMin: {
        SimpleType a = numeric_arg(0);
        SimpleType b = numeric_arg(1);
        SimpleType j;
        if (!Join(a, b, &j)) Fail(rule, "incomparable arguments", e);
        // max(x, y) >= y: a nonnegative argument bounds the result below.
        if (n.op == PrimOp::kMax && j == kReal &&
            (Le(a, kRealPos) || Le(b, kRealPos))) {
          return kRealPos;
        }
        return j;
      }
      case PrimOp::kSqrt:
        arg(0, kRealPos);
        return kRealPos;
      case PrimOp::kExp:
        arg(0, kReal);
        return kRealPos;
      case PrimOp::kLog:
        arg(0, kRealPos);
        return kReal;
      case PrimOp::kAbs:
        arg(0, kReal);
        return kRealPos;
    }
    Fail(rule, "unknown primitive", e);
  }

  SimpleType SynthExpMech(const TypeEnv& env, const Expr& e,
                          const node::Prim& n, const std::string& rule) {
    Check(env, *n.args[0], kReal);
    SimpleType score = Synth(env, *n.args[1]);
    SimpleType db, range, result;
    if (score.kind() == Kind::kArrow && score.to().kind() == Kind::kArrow) {
      db = score.from();
      range = score.to().from();
      result = score.to().to();
    } else if (score.kind() == Kind::kArrow &&
               score.from().kind() == Kind::kTuple &&
               score.from().children().size() == 2) {
      db = score.from().children()[0];
      range = score.from().children()[1];
      result = score.to();
    } else {
      Fail(rule, "score must have type D -> R -> real (or (D * R) -> real), "
                 "found " + score.ToString(), *n.args[1]);
    }
    if (!Le(result, kReal)) {
      Fail(rule, "score must return a real, found " + result.ToString(),
           *n.args[1]);
    }
    Check(env, *n.args[2], db);
    if (n.args.size() == 4) {
      Check(env, *n.args[3], SimpleType::List(range));
    } else if (!range.IsFinite()) {
      Fail(rule, "output type " + range.ToString() +
                     " is infinite; pass the candidate outputs as a fourth "
                     "argument", e);
    }
    SimpleType m = SimpleType::Monad(range);
    if (!m.IsWellFormed()) {
      Fail(rule, "output type " + range.ToString() + " is not a base type",
           e);
    }
    if (table_) table_->mech_ranges[e.id()] = range;
    return m;
  }

  TypeTable* table_;
};

}  // namespace

SimpleType Typecheck(const TypeEnv& env, const Expr& e, TypeTable* table) {
  return Checker(table).Synth(env, e);
}

SimpleType PrimitiveSignature(std::string_view name) {
  auto op = PrimFromName(name);
  if (!op) throw DomainError("unknown primitive '" + std::string(name) + "'");
  auto pair = [](SimpleType a, SimpleType b) {
    return SimpleType::Tuple({std::move(a), std::move(b)});
  };
  auto d = [](SimpleType t) { return SimpleType::Symbolic(std::move(t)); };
  auto m = [](SimpleType t) { return SimpleType::Monad(std::move(t)); };
  auto arrow = SimpleType::Arrow;
  switch (*op) {
    case PrimOp::kBernoulli: return arrow(kUnitI, d(kBool));
    case PrimOp::kNormal: return arrow(pair(kReal, kRealPos), d(kReal));
    case PrimOp::kBeta: return arrow(pair(kRealPos, kRealPos), d(kUnitI));
    case PrimOp::kUniform: return arrow(SimpleType::Unit(), d(kUnitI));
    case PrimOp::kDirichlet:
      return arrow(Power(kRealPos, 3), d(Power(kUnitI, 2)));
    case PrimOp::kMultinomial:
      return arrow(Power(kUnitI, 2), d(SimpleType::Enum(3)));
    case PrimOp::kLapMech:
    case PrimOp::kGaussMech: return arrow(pair(kRealPos, kReal), m(kReal));
    case PrimOp::kExpMech: {
      SimpleType db = SimpleType::List(kBool);
      SimpleType score = arrow(db, arrow(kBool, kReal));
      return arrow(SimpleType::Tuple({kReal, score, db}), m(kBool));
    }
    case PrimOp::kGaussSigma: return arrow(pair(kRealPos, kRealPos), kRealPos);
    case PrimOp::kGetParams: return arrow(d(kUnitI), pair(kRealPos, kRealPos));
    case PrimOp::kGetMean: return arrow(d(kReal), kReal);
    case PrimOp::kHellinger:
    case PrimOp::kStatDist: return arrow(pair(d(kUnitI), d(kUnitI)), kUnitI);
    case PrimOp::kMax:
    case PrimOp::kMin: return arrow(pair(kReal, kReal), kReal);
    case PrimOp::kSqrt: return arrow(kRealPos, kRealPos);
    case PrimOp::kExp: return arrow(kReal, kRealPos);
    case PrimOp::kLog: return arrow(kRealPos, kReal);
    case PrimOp::kAbs: return arrow(kReal, kRealPos);
  }
  throw DomainError("unknown primitive");
}

std::vector<std::pair<std::string, SimpleType>> TopLevelTypes(const Expr& e) {
  TypeTable table;
  Typecheck(e, &table);
  std::vector<std::pair<std::string, SimpleType>> out;
  const Expr* cur = &e;
  while (true) {
    if (const auto* n = cur->As<node::Let>()) {
      if (!n->pattern.is_tuple) {
        const SimpleType* t = table.Find(n->value->id());
        if (t) out.emplace_back(n->pattern.name(), *t);
      }
      cur = n->body.get();
    } else if (const auto* n = cur->As<node::LetRec>()) {
      SimpleType t = *n->ret;
      for (auto it = n->params.rbegin(); it != n->params.rend(); ++it) {
        t = SimpleType::Arrow(*it->type, t);
      }
      out.emplace_back(n->name, t);
      cur = n->body.get();
    } else {
      break;
    }
  }
  return out;
}

}  // namespace privinfer
