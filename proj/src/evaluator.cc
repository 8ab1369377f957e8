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

#include "privinfer/evaluator.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <tuple>
#include <utility>

#include "privinfer/divergence.h"
#include "privinfer/error.h"
#include "privinfer/inference.h"
#include "privinfer/mechanisms.h"
#include "privinfer/numeric.h"

namespace privinfer {

Env Env::Extend(const std::string& name, Value v) const {
  Env out;
  out.head_ = std::make_shared<const Node>(Node{name, std::move(v), head_});
  return out;
}

const Value* Env::Lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get()) {
    if (n->name == name) return &n->value;
  }
  return nullptr;
}

namespace {

using Family = SymDist::Family;

[[noreturn]] void DynamicError(const std::string& what, const Expr& at) {
  throw EvalError("dynamic type error", what, at.span());
}

// Support type of a symbolic distribution.
SimpleType FamilySupport(const SymDist& s) {
  switch (s.family) {
    case Family::kBernoulli: return SimpleType::Bool();
    case Family::kBeta:
    case Family::kUniform: return SimpleType::UnitInterval();
    case Family::kNormal: return SimpleType::Real();
    case Family::kDirichlet: {
      std::size_t k = s.params.size();
      if (k == 2) return SimpleType::UnitInterval();
      return SimpleType::Tuple(
          std::vector<SimpleType>(k - 1, SimpleType::UnitInterval()));
    }
    case Family::kMultinomial:
      return SimpleType::Enum(static_cast<int>(s.params.size()) + 1);
  }
  return SimpleType::Unit();
}


bool IsVar(const ExprPtr& e, const std::string& name) {
  const auto* v = e->As<node::Var>();
  return v && v->name == name;
}

bool Mentions(const Expr& e, const std::vector<std::string>& names) {
  for (const std::string& v : FreeVars(e)) {
    if (std::find(names.begin(), names.end(), v) != names.end()) return true;
  }
  return false;
}

class Evaluator {
 public:
  explicit Evaluator(const EvalConfig& config)
      : config_(config), fuel_(config.fuel) {}

  Value Eval(const Env& env, const Expr& e) {
    return std::visit([&](const auto& n) { return Visit(env, e, n); },
                      e.node());
  }

  Value Apply(const Value& fn, const Value& arg, const SourceSpan& span) {
    if (fn.kind() != Value::Kind::kClosure) {
      throw EvalError("dynamic type error",
                      "applying a non-function " + fn.ToString(), span);
    }
    const Closure& c = fn.AsClosure();
    if (c.kind == Closure::Kind::kLambda) {
      if (c.annot) CheckValue(arg, *c.annot, span);
      return Eval(BindPattern(c.env, c.param, arg, span), *c.body);
    }
    std::vector<Value> args = c.args;
    args.push_back(arg);
    const RecDef& def = *c.rec;
    if (args.size() < def.params.size()) {
      auto partial = std::make_shared<Closure>(c);
      partial->args = std::move(args);
      return Value::Function(std::move(partial));
    }
    if (--fuel_ < 0) throw FuelExhausted(span);
    auto self = std::make_shared<Closure>(c);
    self->args.clear();
    Env env = c.env.Extend(def.name, Value::Function(std::move(self)));
    for (std::size_t i = 0; i < def.params.size(); ++i) {
      if (def.params[i].type) CheckValue(args[i], *def.params[i].type, span);
      env = BindPattern(env, def.params[i].pattern, args[i], span);
    }
    return Eval(env, *def.body);
  }

  std::vector<std::string> TakeWarnings() {
    return {warnings_.begin(), warnings_.end()};
  }

 private:
  void Warn(std::string w) {
    if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end()) {
      warnings_.push_back(std::move(w));
    }
  }

  void CheckValue(const Value& v, const SimpleType& t, const SourceSpan& span) {
    if (config_.validate && !Inhabits(v, t)) {
      throw EvalError("dynamic type error",
                      v.ToString() + " does not inhabit " + t.ToString(),
                      span);
    }
  }

  Env BindPattern(const Env& env, const Pattern& p, const Value& v,
                  const SourceSpan& span) {
    if (!p.is_tuple) return env.Extend(p.name(), v);
    if (v.kind() != Value::Kind::kTuple || v.Elems().size() != p.names.size()) {
      throw EvalError("dynamic type error",
                      "pattern " + p.ToString() + " does not match " +
                          v.ToString(),
                      span);
    }
    Env out = env;
    for (std::size_t i = 0; i < p.names.size(); ++i) {
      out = out.Extend(p.names[i], v.Elems()[i]);
    }
    return out;
  }

  const Dist& AsDist(const Value& v, const Expr& at) {
    if (v.kind() != Value::Kind::kDist) {
      DynamicError("expected a distribution, found " + v.ToString(), at);
    }
    return v.AsDist();
  }

  double Real(const Env& env, const Expr& e) {
    Value v = Eval(env, e);
    if (v.kind() != Value::Kind::kReal) {
      DynamicError("expected a number, found " + v.ToString(), e);
    }
    return v.AsReal();
  }

  const SymDist& Sym(const Value& v, const Expr& at) {
    if (v.kind() != Value::Kind::kSymDist) {
      DynamicError("expected a symbolic distribution, found " + v.ToString(),
                   at);
    }
    return v.AsSym();
  }

  Value Visit(const Env& env, const Expr& e, const node::Var& n) {
    const Value* v = env.Lookup(n.name);
    if (!v) throw EvalError("unbound variable", n.name, e.span());
    return *v;
  }

  Value Visit(const Env&, const Expr&, const node::Literal& n) {
    switch (n.kind) {
      case node::Literal::Kind::kUnit: return Value::Unit();
      case node::Literal::Kind::kBool: return Value::Bool(n.boolean);
      case node::Literal::Kind::kNumber: return Value::Real(ToDouble(n.number));
      case node::Literal::Kind::kNil: return Value::List({});
    }
    return Value::Unit();
  }

  Value Visit(const Env& env, const Expr&, const node::Lambda& n) {
    auto c = std::make_shared<Closure>();
    c->kind = Closure::Kind::kLambda;
    c->env = env;
    c->param = n.param;
    c->annot = n.annot;
    c->body = n.body;
    return Value::Function(std::move(c));
  }

  Value Visit(const Env& env, const Expr& e, const node::Apply& n) {
    Value f = Eval(env, *n.fn);
    Value a = Eval(env, *n.arg);
    return Apply(f, a, e.span());
  }

  Value Visit(const Env& env, const Expr& e, const node::Let& n) {
    Value v = Eval(env, *n.value);
    if (n.annot) CheckValue(v, *n.annot, e.span());
    return Eval(BindPattern(env, n.pattern, v, e.span()), *n.body);
  }

  Value Visit(const Env& env, const Expr& e, const node::LetRec& n) {
    if (n.params.empty()) {
      throw EvalError("dynamic type error",
                      "recursive definition " + n.name + " takes no arguments",
                      e.span());
    }
    auto c = std::make_shared<Closure>();
    c->kind = Closure::Kind::kRec;
    c->env = env;
    c->rec = std::make_shared<const RecDef>(RecDef{n.name, n.params, n.fn_body});
    return Eval(env.Extend(n.name, Value::Function(std::move(c))), *n.body);
  }

  Value Visit(const Env& env, const Expr& e, const node::If& n) {
    Value c = Eval(env, *n.cond);
    if (c.kind() != Value::Kind::kBool) {
      DynamicError("condition is not a boolean", e);
    }
    return Eval(env, c.AsBool() ? *n.then_branch : *n.else_branch);
  }

  Value Visit(const Env& env, const Expr& e, const node::Match& n) {
    Value s = Eval(env, *n.scrutinee);
    if (s.kind() != Value::Kind::kList) DynamicError("match on a non-list", e);
    const auto& xs = s.Elems();
    if (xs.empty()) return Eval(env, *n.nil_branch);
    std::vector<Value> rest(xs.begin() + 1, xs.end());
    Env inner = env.Extend(n.head, xs.front())
                    .Extend(n.tail, Value::List(std::move(rest)));
    return Eval(inner, *n.cons_branch);
  }

  Value Visit(const Env& env, const Expr&, const node::Return& n) {
    return Value::Distribution(Dist::Dirac(Eval(env, *n.value)));
  }

  Value Visit(const Env& env, const Expr& e, const node::Bind& n) {
    Value head = Eval(env, *n.value);
    const Dist& mu = AsDist(head, *n.value);
    Dist out = DistBind(mu, [&](const Value& v) {
      Value r = Eval(BindPattern(env, n.pattern, v, e.span()), *n.body);
      return AsDist(r, *n.body);
    });
    return Value::Distribution(std::move(out));
  }

  Value Visit(const Env& env, const Expr& e, const node::Observe& n) {
    Value pv = Eval(env, *n.prior);
    const Dist& prior = AsDist(pv, *n.prior);
    if (auto shape = MatchLikelihood(n)) {
      return Value::Distribution(ObserveLikelihood(env, e, n, prior, *shape));
    }
    std::vector<Dist::Entry> weighted;
    weighted.reserve(prior.size());
    ++in_predicate_;
    for (const auto& [g, m] : prior.entries()) {
      Value r = Eval(BindPattern(env, n.binder, g, e.span()), *n.predicate);
      double p = AsDist(r, *n.predicate).Mass(Value::Bool(true));
      weighted.emplace_back(g, m * p);
    }
    --in_predicate_;
    return Value::Distribution(Renormalize(std::move(weighted), e));
  }

  Dist Renormalize(std::vector<Dist::Entry> weighted, const Expr& at,
                   std::optional<Provenance> prov = std::nullopt) {
    CompensatedSum z;
    for (const auto& [v, w] : weighted) z.Add(w);
    if (!(z.Value() > 0)) throw ZeroMassObservation(at.span());
    for (auto& [v, w] : weighted) w /= z.Value();
    return Dist::FromEntries(std::move(weighted)).WithProvenance(std::move(prov));
  }

  // Bayes update against a named likelihood. The observation probability is
  // the mass the discretized likelihood puts on the observed value's cell,
  // which is what the generic path computes too. Conjugate shapes also
  // advance the prior's provenance so infer can return the closed form.
  Dist ObserveLikelihood(const Env& env, const Expr& e, const node::Observe& n,
                         const Dist& prior, const LikelihoodShape& shape) {
    Value observed = Eval(env, *shape.observed);
    const Expr& ran_prim = *n.predicate->As<node::Bind>()->value->As<node::Ran>()->value;
    std::vector<Dist::Entry> weighted;
    weighted.reserve(prior.size());
    for (const auto& [g, m] : prior.entries()) {
      Value s = Eval(BindPattern(env, n.binder, g, e.span()), ran_prim);
      const SymDist& sym = Sym(s, ran_prim);
      weighted.emplace_back(g, m * CachedMassAt(sym, observed));
    }
    std::optional<Provenance> prov =
        AdvanceProvenance(env, n, prior, shape, observed);
    CompensatedSum z;
    for (const auto& [v, w] : weighted) z.Add(w);
    if (!(z.Value() > 0) && prov) {
      // Every product underflowed (a far-off real observation). The tracked
      // statistics still determine the posterior, so rebuild it from the
      // closed form, whose discretization works in log space.
      Warn("observe: likelihood underflow; posterior rebuilt from the "
           "conjugate closed form");
      return Discretize(ConjugatePosterior(*prov), config_.grid)
          .WithProvenance(prov);
    }
    return Renormalize(std::move(weighted), e, std::move(prov));
  }

  // Normal cell likelihoods renormalize over the whole lattice, and the same
  // (mean, variance, cell) triples recur across a brute-force run.
  double CachedMassAt(const SymDist& sym, const Value& observed) {
    if (sym.family != Family::kNormal) {
      return MassAt(sym, observed, config_.grid);
    }
    auto key = std::make_tuple(sym.params[0], sym.params[1],
                               config_.grid.RealCell(observed.AsReal()));
    auto it = normal_cache_.find(key);
    if (it != normal_cache_.end()) return it->second;
    double m = MassAt(sym, observed, config_.grid);
    normal_cache_.emplace(key, m);
    return m;
  }

  std::optional<Provenance> AdvanceProvenance(const Env& env,
                                              const node::Observe& n,
                                              const Dist& prior,
                                              const LikelihoodShape& shape,
                                              const Value& observed) {
    if (!prior.provenance()) return std::nullopt;
    Provenance p = *prior.provenance();
    const auto& args = shape.prim->args;
    const auto& names = n.binder.names;
    Family fam = p.prior.family;
    switch (shape.prim->op) {
      case PrimOp::kBernoulli:
        if (fam != Family::kBeta && fam != Family::kUniform) return std::nullopt;
        if (n.binder.is_tuple || !IsVar(args[0], names[0])) return std::nullopt;
        if (observed.kind() != Value::Kind::kBool) return std::nullopt;
        p.stats.at(observed.AsBool() ? 0 : 1) += 1;
        return p;
      case PrimOp::kMultinomial: {
        if (fam != Family::kDirichlet) return std::nullopt;
        if (args.size() != names.size() ||
            args.size() + 1 != p.prior.params.size()) {
          return std::nullopt;
        }
        if ((args.size() > 1) != n.binder.is_tuple) return std::nullopt;
        for (std::size_t i = 0; i < args.size(); ++i) {
          if (!IsVar(args[i], names[i])) return std::nullopt;
        }
        if (observed.kind() != Value::Kind::kEnum) return std::nullopt;
        int k = observed.AsEnum();
        if (k < 0 || k >= static_cast<int>(p.stats.size())) return std::nullopt;
        p.stats[k] += 1;
        return p;
      }
      case PrimOp::kNormal: {
        if (fam != Family::kNormal || n.binder.is_tuple) return std::nullopt;
        if (!IsVar(args[0], names[0]) || Mentions(*args[1], names)) {
          return std::nullopt;
        }
        if (observed.kind() != Value::Kind::kReal) return std::nullopt;
        double kv = Real(env, *args[1]);
        if (p.stats.at(0) > 0 && p.kv != kv) return std::nullopt;
        p.kv = kv;
        p.stats[0] += 1;
        p.stats[1] += observed.AsReal();
        return p;
      }
      default:
        return std::nullopt;
    }
  }

  Value Visit(const Env& env, const Expr& e, const node::Infer& n) {
    Value v = Eval(env, *n.value);
    const Dist& mu = AsDist(v, *n.value);
    std::optional<SimpleType> hint;
    if (config_.types) {
      if (const SimpleType* t = config_.types->Find(e.id());
          t && t->kind() == SimpleType::Kind::kSymbolic) {
        hint = t->elem();
      }
    }
    try {
      return Value::Symbolic(AlgInf(mu, hint, config_.grid));
    } catch (const NoFamilyMatch& err) {
      throw NoFamilyMatch(err.message(), e.span());
    }
  }

  Value Visit(const Env& env, const Expr& e, const node::Ran& n) {
    Value v = Eval(env, *n.value);
    const SymDist& s = Sym(v, *n.value);
    if (auto w = CoverageWarning(s, config_.grid)) Warn(*w);
    try {
      return Value::Distribution(Discretize(s, config_.grid));
    } catch (const DomainError& err) {
      throw EvalError("domain error", err.message(), e.span());
    }
  }

  Value Visit(const Env& env, const Expr& e, const node::Prim& n) {
    try {
      return Primitive(env, e, n);
    } catch (const DomainError& err) {
      throw EvalError("domain error", err.message(), e.span());
    }
  }

  Value Primitive(const Env& env, const Expr& e, const node::Prim& n) {
    auto real = [&](std::size_t i) { return Real(env, *n.args[i]); };
    auto reals = [&]() {
      std::vector<double> out;
      for (std::size_t i = 0; i < n.args.size(); ++i) out.push_back(real(i));
      return out;
    };
    auto sym = [&](std::size_t i) {
      Value v = Eval(env, *n.args[i]);
      return Sym(v, *n.args[i]);
    };
    auto checked = [](SymDist s) {
      s.Validate();
      return Value::Symbolic(std::move(s));
    };
    switch (n.op) {
      case PrimOp::kBernoulli: return checked(SymDist::Bernoulli(real(0)));
      case PrimOp::kNormal: return checked(SymDist::Normal(real(0), real(1)));
      case PrimOp::kBeta: return checked(SymDist::Beta(real(0), real(1)));
      case PrimOp::kUniform: return checked(SymDist::Uniform());
      case PrimOp::kDirichlet: return checked(SymDist::Dirichlet(reals()));
      case PrimOp::kMultinomial: return checked(SymDist::Multinomial(reals()));
      case PrimOp::kLapMech: {
        double eps = real(0), x = real(1);
        if (eps > 0 && (x - 12 / eps < config_.grid.RealLo() ||
                        x + 12 / eps > config_.grid.RealHi())) {
          Warn("lapMech at " + FormatDouble(x) + " with epsilon " +
               FormatDouble(eps) +
               ": the real lattice does not cover 12/epsilon on each side; "
               "tail mass is folded into the end cells");
        }
        return Value::Distribution(LaplaceMech(eps, x, config_.grid));
      }
      case PrimOp::kGaussMech: {
        double sigma = real(0), x = real(1);
        if (sigma > 0) {
          if (auto w = CoverageWarning(SymDist::Normal(x, sigma * sigma),
                                       config_.grid)) {
            Warn("gaussMech: " + *w + " (folded into the end cells)");
          }
        }
        return Value::Distribution(GaussMech(sigma, x, config_.grid));
      }
      case PrimOp::kExpMech: return ExpMechanism(env, e, n);
      case PrimOp::kGaussSigma: return Value::Real(GaussSigma(real(0), real(1)));
      case PrimOp::kGetParams: return GetParams(sym(0));
      case PrimOp::kGetMean: return GetMean(sym(0));
      case PrimOp::kHellinger:
      case PrimOp::kStatDist: {
        Dist a = Discretize(sym(0), config_.grid);
        Dist b = Discretize(sym(1), config_.grid);
        double d = n.op == PrimOp::kHellinger ? HellingerDistance(a, b)
                                              : FDiv(FDivKind::SD(), a, b);
        return Value::Real(d);
      }
      case PrimOp::kMax: return Value::Real(std::max(real(0), real(1)));
      case PrimOp::kMin: return Value::Real(std::min(real(0), real(1)));
      case PrimOp::kSqrt: {
        double x = real(0);
        if (x < 0) throw DomainError("sqrt of a negative number");
        return Value::Real(std::sqrt(x));
      }
      case PrimOp::kExp: return Value::Real(std::exp(real(0)));
      case PrimOp::kLog: {
        double x = real(0);
        if (!(x > 0)) throw DomainError("log of a nonpositive number");
        return Value::Real(std::log(x));
      }
      case PrimOp::kAbs: return Value::Real(std::abs(real(0)));
    }
    DynamicError("unknown primitive", e);
  }

  Value ExpMechanism(const Env& env, const Expr& e, const node::Prim& n) {
    double eps = Real(env, *n.args[0]);
    Value score = Eval(env, *n.args[1]);
    Value db = Eval(env, *n.args[2]);
    bool paired = false;
    if (config_.types) {
      if (const SimpleType* t = config_.types->Find(n.args[1]->id())) {
        paired = t->kind() == SimpleType::Kind::kArrow &&
                 t->to().kind() != SimpleType::Kind::kArrow;
      }
    }
    std::vector<Value> outputs;
    if (n.args.size() == 4) {
      Value c = Eval(env, *n.args[3]);
      if (c.kind() != Value::Kind::kList) {
        DynamicError("expMech candidates must be a list", *n.args[3]);
      }
      outputs = c.Elems();
    } else {
      const SimpleType* range = nullptr;
      if (config_.types) {
        auto it = config_.types->mech_ranges.find(e.id());
        if (it != config_.types->mech_ranges.end()) range = &it->second;
      }
      if (!range) {
        throw EvalError("missing type information",
                        "expMech without candidates needs the program to be "
                        "typechecked first",
                        e.span());
      }
      outputs = EnumerateFinite(*range);
    }
    auto q = [&](const Value& r) {
      Value s = paired ? Apply(score, Value::Tuple({db, r}), e.span())
                       : Apply(Apply(score, db, e.span()), r, e.span());
      if (s.kind() != Value::Kind::kReal) {
        DynamicError("score returned " + s.ToString(), *n.args[1]);
      }
      return s.AsReal();
    };
    return Value::Distribution(ExpMech(eps, q, outputs));
  }

  Value Visit(const Env& env, const Expr& e, const node::Binary& n) {
    if (n.op == BinOp::kAnd || n.op == BinOp::kOr) {
      Value l = Eval(env, *n.lhs);
      if (l.kind() != Value::Kind::kBool) DynamicError("expected a boolean", *n.lhs);
      if (l.AsBool() == (n.op == BinOp::kOr)) return l;
      Value r = Eval(env, *n.rhs);
      if (r.kind() != Value::Kind::kBool) DynamicError("expected a boolean", *n.rhs);
      return r;
    }
    Value l = Eval(env, *n.lhs);
    Value r = Eval(env, *n.rhs);
    switch (n.op) {
      case BinOp::kCons: {
        if (r.kind() != Value::Kind::kList) DynamicError("cons onto a non-list", e);
        std::vector<Value> xs;
        xs.reserve(r.Elems().size() + 1);
        xs.push_back(l);
        xs.insert(xs.end(), r.Elems().begin(), r.Elems().end());
        return Value::List(std::move(xs));
      }
      case BinOp::kEq:
      case BinOp::kNe: {
        bool eq = in_predicate_ > 0 ? GridEqual(l, r, config_.grid)
                                    : Compare(l, r) == 0;
        return Value::Bool(eq == (n.op == BinOp::kEq));
      }
      default: break;
    }
    if (l.kind() != Value::Kind::kReal || r.kind() != Value::Kind::kReal) {
      DynamicError("arithmetic on non-numbers", e);
    }
    double a = l.AsReal(), b = r.AsReal();
    switch (n.op) {
      case BinOp::kAdd: return Value::Real(a + b);
      case BinOp::kSub: return Value::Real(a - b);
      case BinOp::kMul: return Value::Real(a * b);
      case BinOp::kDiv:
        if (b == 0) throw EvalError("domain error", "division by zero", e.span());
        return Value::Real(a / b);
      case BinOp::kLt: return Value::Bool(a < b);
      case BinOp::kLe: return Value::Bool(a <= b);
      case BinOp::kGt: return Value::Bool(a > b);
      case BinOp::kGe: return Value::Bool(a >= b);
      default: break;
    }
    DynamicError("unknown operator", e);
  }

  Value Visit(const Env& env, const Expr& e, const node::Unary& n) {
    Value v = Eval(env, *n.operand);
    if (n.op == UnOp::kNot) {
      if (v.kind() != Value::Kind::kBool) DynamicError("not of a non-boolean", e);
      return Value::Bool(!v.AsBool());
    }
    if (v.kind() != Value::Kind::kReal) DynamicError("negating a non-number", e);
    return Value::Real(-v.AsReal());
  }

  Value Visit(const Env& env, const Expr&, const node::Tuple& n) {
    std::vector<Value> xs;
    for (const ExprPtr& x : n.elems) xs.push_back(Eval(env, *x));
    return Value::Tuple(std::move(xs));
  }

  Value Visit(const Env& env, const Expr& e, const node::Ascribe& n) {
    Value v = Eval(env, *n.value);
    CheckValue(v, n.type, e.span());
    return v;
  }

  const EvalConfig& config_;
  std::int64_t fuel_;
  int in_predicate_ = 0;
  std::vector<std::string> warnings_;
  std::map<std::tuple<double, double, int>, double> normal_cache_;
};

Env FromValuation(const Valuation& theta) {
  Env env;
  for (const auto& [name, v] : theta) env = env.Extend(name, v);
  return env;
}

}  // namespace

// Predicate of the form  mlet z = ran FAM(args) in return (obs = z).
std::optional<LikelihoodShape> MatchLikelihood(const node::Observe& o) {
  const auto* bind = o.predicate->As<node::Bind>();
  if (!bind || bind->pattern.is_tuple) return std::nullopt;
  const auto* ran = bind->value->As<node::Ran>();
  if (!ran) return std::nullopt;
  const auto* prim = ran->value->As<node::Prim>();
  if (!prim) return std::nullopt;
  if (prim->op != PrimOp::kBernoulli && prim->op != PrimOp::kNormal &&
      prim->op != PrimOp::kMultinomial) {
    return std::nullopt;
  }
  const auto* ret = bind->body->As<node::Return>();
  if (!ret) return std::nullopt;
  const auto* eq = ret->value->As<node::Binary>();
  if (!eq || eq->op != BinOp::kEq) return std::nullopt;
  const std::string& z = bind->pattern.name();
  auto is_z = [&](const Expr& x) {
    const auto* v = x.As<node::Var>();
    return v && v->name == z;
  };
  const Expr* observed = nullptr;
  if (is_z(*eq->rhs)) observed = eq->lhs.get();
  else if (is_z(*eq->lhs)) observed = eq->rhs.get();
  if (!observed) return std::nullopt;
  std::vector<std::string> fv = FreeVars(*observed);
  for (const std::string& name : fv) {
    if (name == z) return std::nullopt;
    for (const std::string& b : o.binder.names) {
      if (name == b) return std::nullopt;
    }
  }
  return LikelihoodShape{prim, observed};
}

EvalOutcome Evaluate(const Valuation& theta, const Expr& e,
                     const EvalConfig& config) {
  config.grid.Validate();
  Evaluator ev(config);
  Value v = ev.Eval(FromValuation(theta), e);
  return {std::move(v), ev.TakeWarnings()};
}

EvalOutcome ApplyFunction(const Value& fn, const std::vector<Value>& args,
                          const EvalConfig& config) {
  config.grid.Validate();
  Evaluator ev(config);
  Value v = fn;
  for (const Value& a : args) v = ev.Apply(v, a, SourceSpan{});
  return {std::move(v), ev.TakeWarnings()};
}

std::vector<Value> EnumerateFinite(const SimpleType& t) {
  using Kind = SimpleType::Kind;
  switch (t.kind()) {
    case Kind::kUnit: return {Value::Unit()};
    case Kind::kBool: return {Value::Bool(false), Value::Bool(true)};
    case Kind::kEnum: {
      std::vector<Value> out;
      for (int i = 0; i < t.enum_size(); ++i) out.push_back(Value::Enum(i));
      return out;
    }
    case Kind::kTuple: {
      std::vector<std::vector<Value>> partial{{}};
      for (const SimpleType& c : t.children()) {
        std::vector<Value> vs = EnumerateFinite(c);
        std::vector<std::vector<Value>> next;
        for (const auto& p : partial) {
          for (const Value& v : vs) {
            next.push_back(p);
            next.back().push_back(v);
          }
        }
        partial = std::move(next);
      }
      std::vector<Value> out;
      for (auto& p : partial) out.push_back(Value::Tuple(std::move(p)));
      return out;
    }
    default:
      throw DomainError("type " + t.ToString() + " is not finite");
  }
}

bool Inhabits(const Value& v, const SimpleType& t) {
  using Kind = SimpleType::Kind;
  auto real = [&](auto pred) {
    return v.kind() == Value::Kind::kReal && pred(v.AsReal());
  };
  switch (t.kind()) {
    case Kind::kUnit: return v.kind() == Value::Kind::kUnit;
    case Kind::kBool: return v.kind() == Value::Kind::kBool;
    case Kind::kNat:
      return real([](double x) { return x >= 0 && std::floor(x) == x &&
                                        std::isfinite(x); });
    case Kind::kReal: return real([](double x) { return std::isfinite(x); });
    case Kind::kRealPos:
      return real([](double x) { return x >= 0 && std::isfinite(x); });
    case Kind::kRealExt: return real([](double x) { return x >= 0; });
    case Kind::kUnitInterval:
      return real([](double x) { return x >= 0 && x <= 1; });
    case Kind::kEnum:
      return v.kind() == Value::Kind::kEnum && v.AsEnum() >= 0 &&
             v.AsEnum() < t.enum_size();
    case Kind::kList:
      return v.kind() == Value::Kind::kList &&
             std::all_of(v.Elems().begin(), v.Elems().end(),
                         [&](const Value& x) { return Inhabits(x, t.elem()); });
    case Kind::kTuple: {
      if (v.kind() != Value::Kind::kTuple ||
          v.Elems().size() != t.children().size()) {
        return false;
      }
      for (std::size_t i = 0; i < v.Elems().size(); ++i) {
        if (!Inhabits(v.Elems()[i], t.children()[i])) return false;
      }
      return true;
    }
    case Kind::kMonad:
      return v.kind() == Value::Kind::kDist &&
             std::all_of(v.AsDist().entries().begin(),
                         v.AsDist().entries().end(),
                         [&](const Dist::Entry& e) {
                           return Inhabits(e.first, t.elem());
                         });
    case Kind::kSymbolic:
      return v.kind() == Value::Kind::kSymDist &&
             IsSubtype(FamilySupport(v.AsSym()), t.elem());
    case Kind::kArrow: return v.kind() == Value::Kind::kClosure;
  }
  return false;
}

}  // namespace privinfer
