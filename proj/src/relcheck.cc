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

// Relational checker. Each expression gets a relational fact describing how
// its values in the two runs relate; monadic facts carry (f, delta) bounds.
// Checking is against user-supplied signatures for top-level declarations.

#include "privinfer/relcheck.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>

#include "json.hpp"
#include "privinfer/evaluator.h"
#include "privinfer/lemmas.h"
#include "privinfer/parser.h"
#include "privinfer/simple_types.h"
#include "privinfer/value.h"

namespace privinfer {
namespace {

using nlohmann::json;
using Tag = FDivKind::Tag;

struct MBound {
  FIndex f;
  IndexExpr delta;
};

struct FunInfo;

struct Fact {
  enum class Kind {
    kAny,
    kEq,
    kAdj,
    kAbsDiff,
    kDiv,
    kParams,
    kMonad,
    kTuple,
    kFun,
  };
  Kind kind = Kind::kAny;
  AdjacencyKind adj = AdjacencyKind::kFlip;
  IndexExpr k;                 // kAbsDiff
  std::vector<MBound> bounds;  // kDiv, kMonad; every listed bound holds
  bool exact = false;          // kMonad: lifted for every f at 0
  std::vector<Fact> elems;     // kTuple, kParams; kMonad keeps its inner here
  SymDist::Family family = SymDist::Family::kBernoulli;
  std::shared_ptr<const FunInfo> fun;

  static Fact Any() { return {}; }
  static Fact Eq() {
    Fact f;
    f.kind = Kind::kEq;
    return f;
  }
  static Fact Adj(AdjacencyKind a) {
    Fact f;
    f.kind = Kind::kAdj;
    f.adj = a;
    return f;
  }
  static Fact AbsDiff(IndexExpr k) {
    Fact f;
    f.kind = Kind::kAbsDiff;
    f.k = std::move(k);
    return f;
  }
  static Fact Div(std::vector<MBound> b) {
    Fact f;
    f.kind = Kind::kDiv;
    f.bounds = std::move(b);
    return f;
  }
  static Fact Monad(bool exact, std::vector<MBound> b, Fact inner) {
    Fact f;
    f.kind = Kind::kMonad;
    f.exact = exact;
    f.bounds = std::move(b);
    f.elems.push_back(std::move(inner));
    return f;
  }
  static Fact Tuple(std::vector<Fact> elems) {
    Fact f;
    f.kind = Kind::kTuple;
    f.elems = std::move(elems);
    return f;
  }
  static Fact Params(SymDist::Family fam, std::vector<Fact> elems) {
    Fact f;
    f.kind = Kind::kParams;
    f.family = fam;
    f.elems = std::move(elems);
    return f;
  }
  static Fact Fun(std::shared_ptr<const FunInfo> info) {
    Fact f;
    f.kind = Kind::kFun;
    f.fun = std::move(info);
    return f;
  }
  const Fact& inner() const { return elems.at(0); }
};

struct RelEnv {
  std::vector<std::pair<std::string, Fact>> vars;
  std::vector<Assertion> hyps;

  const Fact* Find(const std::string& name) const {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }
  RelEnv With(const std::string& name, Fact f) const {
    RelEnv e = *this;
    e.vars.emplace_back(name, std::move(f));
    return e;
  }
};

struct FunInfo {
  std::string name;
  std::optional<RelType> declared;
  // Inline body: a Lambda node and the environment it closes over.
  const Expr* lambda = nullptr;
  std::shared_ptr<const RelEnv> env;
  // Recursive definition, for recognizing conjugate folds.
  const node::LetRec* rec = nullptr;
  // The function is the same value in both runs.
  bool eq_like = false;
};

// --- facts -----------------------------------------------------------------

bool ZeroBound(const MBound& b) {
  if (!b.delta.IsZero()) return false;
  return b.f.tag != Tag::kEpsD || b.f.eps.IsZero();
}

bool IsEqLike(const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::kEq: return true;
    case Fact::Kind::kAbsDiff: return f.k.IsZero();
    case Fact::Kind::kFun: return f.fun && f.fun->eq_like;
    case Fact::Kind::kTuple:
    case Fact::Kind::kParams:
      return std::all_of(f.elems.begin(), f.elems.end(), IsEqLike);
    case Fact::Kind::kMonad:
      if (!IsEqLike(f.inner())) return false;
      return f.exact || std::any_of(f.bounds.begin(), f.bounds.end(), ZeroBound);
    case Fact::Kind::kDiv:
      return std::any_of(f.bounds.begin(), f.bounds.end(), ZeroBound);
    default: return false;
  }
}

Fact Normalize(Fact f) {
  if (f.kind != Fact::Kind::kFun && IsEqLike(f)) return Fact::Eq();
  return f;
}

std::string BoundsText(const std::vector<MBound>& bounds) {
  std::string out;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (i) out += "; ";
    out += bounds[i].f.ToString() + ", " + bounds[i].delta.ToString();
  }
  return out;
}

std::string FactText(const Fact& f) {
  switch (f.kind) {
    case Fact::Kind::kAny: return "any";
    case Fact::Kind::kEq: return "=";
    case Fact::Kind::kAdj:
      return f.adj == AdjacencyKind::kFlip ? "Phi(flip)" : "Phi(l1)";
    case Fact::Kind::kAbsDiff: return "|<-> - <->| <= " + f.k.ToString();
    case Fact::Kind::kDiv: {
      std::string out = "D{";
      for (std::size_t i = 0; i < f.bounds.size(); ++i) {
        if (i) out += ", ";
        out += f.bounds[i].f.ToString() + " <= " +
               f.bounds[i].delta.ToString();
      }
      return out + "}";
    }
    case Fact::Kind::kParams:
    case Fact::Kind::kTuple: {
      std::string out = f.kind == Fact::Kind::kParams
                            ? std::string(FamilyName(f.family)) + "("
                            : "(";
      for (std::size_t i = 0; i < f.elems.size(); ++i) {
        if (i) out += ", ";
        out += FactText(f.elems[i]);
      }
      return out + ")";
    }
    case Fact::Kind::kMonad:
      return "M[" + (f.exact ? std::string("*, 0") : BoundsText(f.bounds)) +
             "]{" + FactText(f.inner()) + "}";
    case Fact::Kind::kFun:
      if (f.fun->declared) return f.fun->declared->ToString();
      return "fun " + (f.fun->name.empty() ? std::string("<inline>")
                                           : f.fun->name);
  }
  return "?";
}

using Comparisons = std::vector<std::pair<IndexExpr, IndexExpr>>;

bool IndexLeRecorded(const IndexExpr& a, const IndexExpr& b, Comparisons* used) {
  bool ok = IndexLe(a, b);
  if (ok && used) used->emplace_back(a, b);
  return ok;
}

bool BoundCovered(const std::vector<MBound>& have, const MBound& want,
                  Comparisons* used, std::string* why) {
  if (want.delta.is_infinite()) {
    if (why) *why = "monad bound must be finite";
    return false;
  }
  for (const MBound& h : have) {
    if (h.f.tag != want.f.tag) continue;
    if (!IndexLe(h.delta, want.delta)) continue;
    if (h.f.tag == Tag::kEpsD && !IndexLe(h.f.eps, want.f.eps)) continue;
    if (h.f.tag == Tag::kEpsD) IndexLeRecorded(h.f.eps, want.f.eps, used);
    IndexLeRecorded(h.delta, want.delta, used);
    return true;
  }
  if (why) {
    *why = "no bound among [" + BoundsText(have) + "] implies " +
           want.f.ToString() + ", " + want.delta.ToString();
  }
  return false;
}

// have implies want. Every relation used here is reflexive, so identical
// values satisfy any requirement.
bool FactLe(const Fact& have, const Fact& want, Comparisons* used,
            std::string* why) {
  using K = Fact::Kind;
  if (want.kind == K::kAny) return true;
  if (IsEqLike(have)) return true;
  auto fail = [&](const std::string& msg) {
    if (why && why->empty()) *why = msg;
    return false;
  };
  std::string mismatch =
      "fact " + FactText(have) + " does not imply " + FactText(want);
  switch (want.kind) {
    case K::kEq:
      return fail(mismatch);
    case K::kAdj:
      if (have.kind == K::kAdj && have.adj == want.adj) return true;
      return fail(mismatch);
    case K::kAbsDiff:
      if (have.kind == K::kAbsDiff && IndexLeRecorded(have.k, want.k, used)) {
        return true;
      }
      return fail(mismatch);
    case K::kDiv:
      if (have.kind != K::kDiv) return fail(mismatch);
      for (const MBound& w : want.bounds) {
        if (!BoundCovered(have.bounds, w, used, why)) return false;
      }
      return true;
    case K::kParams:
    case K::kTuple:
      if (have.kind != want.kind || have.elems.size() != want.elems.size()) {
        return fail(mismatch);
      }
      for (std::size_t i = 0; i < want.elems.size(); ++i) {
        if (!FactLe(have.elems[i], want.elems[i], used, why)) return false;
      }
      return true;
    case K::kMonad: {
      if (have.kind != K::kMonad) return fail(mismatch);
      if (!FactLe(have.inner(), want.inner(), used, why)) return false;
      if (want.exact) {
        return have.exact ? true : fail(mismatch);
      }
      for (const MBound& w : want.bounds) {
        if (have.exact) {
          if (w.delta.is_infinite()) return fail("monad bound must be finite");
          continue;
        }
        if (!BoundCovered(have.bounds, w, used, why)) return false;
      }
      return true;
    }
    case K::kFun:
      if (have.kind == K::kFun && have.fun->declared && want.fun->declared &&
          have.fun->declared->ToString() == want.fun->declared->ToString()) {
        return true;
      }
      return fail(mismatch);
    default:
      return fail(mismatch);
  }
}

std::vector<MBound> JoinBounds(const std::vector<MBound>& a,
                               const std::vector<MBound>& b) {
  std::vector<MBound> out;
  for (const MBound& x : a) {
    for (const MBound& y : b) {
      if (x.f.tag != y.f.tag) continue;
      FIndex f = x.f;
      if (f.tag == Tag::kEpsD) f.eps = IndexExpr::Max(x.f.eps, y.f.eps);
      out.push_back({f, IndexExpr::Max(x.delta, y.delta)});
      break;
    }
  }
  return out;
}

// Least fact implied by both.
Fact Join(const Fact& a, const Fact& b) {
  using K = Fact::Kind;
  if (FactLe(a, b, nullptr, nullptr)) return b;
  if (FactLe(b, a, nullptr, nullptr)) return a;
  if (a.kind == K::kAbsDiff && b.kind == K::kAbsDiff) {
    return Fact::AbsDiff(IndexExpr::Max(a.k, b.k));
  }
  auto as_monad = [](const Fact& f) {
    return f.kind == K::kMonad ? f : Fact::Monad(true, {}, f);
  };
  if (a.kind == K::kMonad || b.kind == K::kMonad) {
    Fact ma = as_monad(a), mb = as_monad(b);
    Fact inner = Join(ma.inner(), mb.inner());
    if (ma.exact && mb.exact) return Fact::Monad(true, {}, inner);
    std::vector<MBound> bounds = ma.exact   ? mb.bounds
                                 : mb.exact ? ma.bounds
                                            : JoinBounds(ma.bounds, mb.bounds);
    if (bounds.empty()) return Fact::Any();
    return Fact::Monad(false, std::move(bounds), std::move(inner));
  }
  if (a.kind == K::kDiv && b.kind == K::kDiv) {
    auto bounds = JoinBounds(a.bounds, b.bounds);
    if (bounds.empty()) return Fact::Any();
    return Fact::Div(std::move(bounds));
  }
  if (a.kind == b.kind && (a.kind == K::kTuple || a.kind == K::kParams) &&
      a.elems.size() == b.elems.size() && a.family == b.family) {
    std::vector<Fact> elems;
    for (std::size_t i = 0; i < a.elems.size(); ++i) {
      elems.push_back(Join(a.elems[i], b.elems[i]));
    }
    Fact out = a;
    out.elems = std::move(elems);
    return out;
  }
  return Fact::Any();
}

// --- refinements -----------------------------------------------------------

AdjacencyKind AdjacencyFor(const SimpleType& t) {
  if (t.kind() == SimpleType::Kind::kList) {
    auto k = t.elem().kind();
    if (k == SimpleType::Kind::kReal || k == SimpleType::Kind::kRealPos ||
        k == SimpleType::Kind::kRealExt) {
      return AdjacencyKind::kL1;
    }
  }
  return AdjacencyKind::kFlip;
}

bool IsInstance(const RelExpr& e, RelExpr::Kind kind, const std::string& x) {
  return e.kind == kind && e.name == x;
}

struct RefinedFact {
  Fact fact;
  std::vector<Assertion> hyps;
};

RefinedFact FactOfRefinement(const std::string& x, const SimpleType& type,
                             const Assertion& phi) {
  using AK = Assertion::Kind;
  using RK = RelExpr::Kind;
  RefinedFact out;
  std::vector<Fact> found;
  for (const Assertion& c : phi.Conjuncts()) {
    if (c.kind == AK::kTrue) continue;
    if (c.kind == AK::kDiag) {
      found.push_back(Fact::Eq());
      continue;
    }
    bool left_right = IsInstance(c.lhs, RK::kLeft, x) &&
                      IsInstance(c.rhs, RK::kRight, x);
    if (c.kind == AK::kAdj && left_right) {
      found.push_back(Fact::Adj(AdjacencyFor(type)));
      continue;
    }
    if (c.kind == AK::kCmp && c.op == "=" && left_right) {
      found.push_back(Fact::Eq());
      continue;
    }
    if (c.kind == AK::kCmp && c.op == "<=" && c.lhs.kind == RK::kAbs &&
        c.lhs.kids.size() == 1 && c.lhs.kids[0].kind == RK::kSub &&
        IsInstance(c.lhs.kids[0].kids[0], RK::kLeft, x) &&
        IsInstance(c.lhs.kids[0].kids[1], RK::kRight, x)) {
      if (auto k = c.rhs.AsIndex()) {
        found.push_back(Fact::AbsDiff(*k));
        continue;
      }
    }
    if (c.kind == AK::kDiv && left_right) {
      found.push_back(Fact::Div({{c.f, c.bound}}));
      continue;
    }
    out.hyps.push_back(c);
  }
  out.fact = Fact::Any();
  for (const Fact& f : found) {
    if (f.kind == Fact::Kind::kEq) {
      out.fact = f;
      break;
    }
    if (out.fact.kind == Fact::Kind::kAny) {
      out.fact = f;
    } else if (out.fact.kind == Fact::Kind::kDiv && f.kind == Fact::Kind::kDiv) {
      out.fact.bounds.insert(out.fact.bounds.end(), f.bounds.begin(),
                             f.bounds.end());
    }
  }
  out.fact = Normalize(out.fact);
  return out;
}

RefinedFact FactOfType(const RelType& t) {
  switch (t.kind) {
    case RelType::Kind::kBase:
      return FactOfRefinement(t.binder, t.type, t.refinement);
    case RelType::Kind::kMonad: {
      RefinedFact inner = FactOfRefinement(t.binder, t.type, t.refinement);
      RefinedFact out;
      out.fact =
          Normalize(Fact::Monad(false, {{t.f, t.delta}}, std::move(inner.fact)));
      out.hyps = std::move(inner.hyps);
      return out;
    }
    case RelType::Kind::kArrow: {
      auto info = std::make_shared<FunInfo>();
      info->declared = t;
      return {Fact::Fun(info), {}};
    }
  }
  return {};
}

// --- arithmetic on hypotheses ----------------------------------------------

struct UpperBoundValue {
  double value = 0;
  bool strict = false;
};

std::optional<UpperBoundValue> HypothesisBound(const RelEnv& env,
                                               const std::string& name) {
  using RK = RelExpr::Kind;
  std::optional<UpperBoundValue> best;
  auto names_var = [&](const RelExpr& e) {
    return (e.kind == RK::kLeft || e.kind == RK::kRight ||
            e.kind == RK::kVar) &&
           e.name == name;
  };
  for (const Assertion& h : env.hyps) {
    if (h.kind != Assertion::Kind::kCmp) continue;
    const RelExpr* var = nullptr;
    const RelExpr* num = nullptr;
    bool strict = false;
    if ((h.op == "<" || h.op == "<=") && names_var(h.lhs) &&
        h.rhs.kind == RK::kNumber) {
      var = &h.lhs;
      num = &h.rhs;
      strict = h.op == "<";
    } else if ((h.op == ">" || h.op == ">=") && names_var(h.rhs) &&
               h.lhs.kind == RK::kNumber) {
      var = &h.rhs;
      num = &h.lhs;
      strict = h.op == ">";
    }
    if (!var) continue;
    UpperBoundValue v{ToDouble(num->number), strict};
    if (!best || v.value < best->value ||
        (v.value == best->value && v.strict)) {
      best = v;
    }
  }
  return best;
}

std::optional<UpperBoundValue> AtomBound(const RelEnv& env,
                                         const IndexAtom& atom) {
  if (atom.args.empty()) {
    if (atom.name == "rho") return UpperBoundValue{Rho(), false};
    if (atom.name == "zeta") return UpperBoundValue{Zeta(), false};
    return HypothesisBound(env, atom.name);
  }
  // s(hv, kv) = hv / (kv + hv) with kv > 0.
  if (atom.name == "s") return UpperBoundValue{1.0, true};
  return std::nullopt;
}

// Upper bound of an index over nonnegative atoms.
std::optional<UpperBoundValue> UpperBound(const RelEnv& env,
                                          const IndexExpr& e) {
  if (e.is_infinite()) return std::nullopt;
  UpperBoundValue best{0.0, false};
  for (const Poly& poly : e.alternatives()) {
    UpperBoundValue total{0.0, false};
    for (const auto& [mono, coef] : poly) {
      double c = ToDouble(coef);
      if (c <= 0) continue;
      double prod = c;
      bool strict = false;
      for (const IndexAtom& atom : mono) {
        auto b = AtomBound(env, atom);
        if (!b) return std::nullopt;
        prod *= b->value;
        strict = strict || b->strict;
      }
      total.value += prod;
      total.strict = total.strict || (strict && prod > 0);
    }
    if (total.value > best.value ||
        (total.value == best.value && !total.strict)) {
      best = total;
    }
  }
  return best;
}

bool IsNonnegType(const SimpleType* t) {
  if (!t) return false;
  switch (t->kind()) {
    case SimpleType::Kind::kNat:
    case SimpleType::Kind::kRealPos:
    case SimpleType::Kind::kRealExt:
    case SimpleType::Kind::kUnitInterval:
      return true;
    default:
      return false;
  }
}

bool IsBoundedUnit(const SimpleType* t) {
  return t && t->kind() == SimpleType::Kind::kUnitInterval;
}

const Expr& StripAscribe(const Expr& e) {
  const Expr* cur = &e;
  while (const auto* a = cur->As<node::Ascribe>()) cur = a->value.get();
  return *cur;
}

bool IsVarNamed(const Expr& e, const std::string& name) {
  const auto* v = StripAscribe(e).As<node::Var>();
  return v && v->name == name;
}

// Application spine f a1 ... an.
const Expr* Spine(const Expr& e, std::vector<const Expr*>* args) {
  const Expr* cur = &StripAscribe(e);
  while (const auto* app = cur->As<node::Apply>()) {
    args->push_back(app->arg.get());
    cur = &StripAscribe(*app->fn);
  }
  std::reverse(args->begin(), args->end());
  return cur;
}

struct FoldShape {
  SymDist::Family likelihood = SymDist::Family::kBernoulli;
  int variance_param = -1;
  std::string variance_text;
};

// let rec F (l) (prior) (extra...) =
//   match l with [] -> prior
//   | d :: ds -> observe (fun r.. -> mlet z = ran LIK(r..) in return (d = z))
//                        (F ds prior extra...)
std::optional<FoldShape> ConjugateFold(const node::LetRec& def) {
  if (def.params.size() < 2) return std::nullopt;
  for (const Param& p : def.params) {
    if (p.pattern.is_tuple) return std::nullopt;
  }
  const std::string& list = def.params[0].pattern.name();
  const std::string& prior = def.params[1].pattern.name();
  const auto* m = StripAscribe(*def.fn_body).As<node::Match>();
  if (!m || !IsVarNamed(*m->scrutinee, list) ||
      !IsVarNamed(*m->nil_branch, prior)) {
    return std::nullopt;
  }
  const auto* obs = StripAscribe(*m->cons_branch).As<node::Observe>();
  if (!obs) return std::nullopt;
  auto shape = MatchLikelihood(*obs);
  if (!shape || !IsVarNamed(*shape->observed, m->head)) return std::nullopt;
  std::vector<const Expr*> args;
  const Expr* head = Spine(*obs->prior, &args);
  if (!IsVarNamed(*head, def.name) || args.size() != def.params.size()) {
    return std::nullopt;
  }
  if (!IsVarNamed(*args[0], m->tail)) return std::nullopt;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (!IsVarNamed(*args[i], def.params[i].pattern.name())) {
      return std::nullopt;
    }
  }
  const auto& binders = obs->binder.names;
  const auto& pargs = shape->prim->args;
  FoldShape out;
  switch (shape->prim->op) {
    case PrimOp::kBernoulli:
      if (binders.size() != 1 || pargs.size() != 1 ||
          !IsVarNamed(*pargs[0], binders[0])) {
        return std::nullopt;
      }
      out.likelihood = SymDist::Family::kBernoulli;
      return out;
    case PrimOp::kMultinomial:
      if (pargs.size() != binders.size()) return std::nullopt;
      for (std::size_t i = 0; i < binders.size(); ++i) {
        if (!IsVarNamed(*pargs[i], binders[i])) return std::nullopt;
      }
      out.likelihood = SymDist::Family::kMultinomial;
      return out;
    case PrimOp::kNormal: {
      if (binders.size() != 1 || pargs.size() != 2 ||
          !IsVarNamed(*pargs[0], binders[0])) {
        return std::nullopt;
      }
      out.likelihood = SymDist::Family::kNormal;
      const Expr& v = StripAscribe(*pargs[1]);
      if (const auto* var = v.As<node::Var>()) {
        for (std::size_t i = 2; i < def.params.size(); ++i) {
          if (def.params[i].pattern.name() == var->name) {
            out.variance_param = static_cast<int>(i);
          }
        }
        if (out.variance_param < 0) return std::nullopt;
      } else if (v.Is<node::Literal>()) {
        out.variance_text = Pretty(v);
      } else {
        return std::nullopt;
      }
      return out;
    }
    default:
      return std::nullopt;
  }
}

std::optional<SymDist::Family> FamilyOfPrim(PrimOp op) {
  switch (op) {
    case PrimOp::kBernoulli: return SymDist::Family::kBernoulli;
    case PrimOp::kBeta: return SymDist::Family::kBeta;
    case PrimOp::kNormal: return SymDist::Family::kNormal;
    case PrimOp::kUniform: return SymDist::Family::kUniform;
    case PrimOp::kDirichlet: return SymDist::Family::kDirichlet;
    case PrimOp::kMultinomial: return SymDist::Family::kMultinomial;
    default: return std::nullopt;
  }
}

std::string Subject(const Expr& e) {
  std::string s = Pretty(e);
  for (char& c : s) {
    if (c == '\n') c = ' ';
  }
  std::string out;
  for (char c : s) {
    if (c == ' ' && !out.empty() && out.back() == ' ') continue;
    out += c;
  }
  if (out.size() > 96) out = out.substr(0, 93) + "...";
  return out;
}

struct ArgInfo {
  Fact fact;
  const Expr* expr = nullptr;
};

// --- the checker -----------------------------------------------------------

class Checker {
 public:
  explicit Checker(const Expr* program) {
    if (program) Typecheck(*program, &table_);
  }

  std::vector<VC> vcs;

  Fact Analyze(const RelEnv& env, const Expr& e, Derivation& parent) {
    Derivation node;
    node.span = e.span();
    node.subject = Subject(e);
    Fact f;
    if (!e.Is<node::Var>() && !e.Is<node::Lambda>() && AllEqLike(env, e)) {
      node.rule = "Refl";
      f = Fact::Eq();
    } else {
      f = std::visit([&](const auto& n) { return Visit(env, e, n, node); },
                     e.node());
    }
    if (f.kind != Fact::Kind::kFun) f = Normalize(f);
    node.conclusion = FactText(f);
    parent.premises.push_back(std::move(node));
    return f;
  }

  // Checks a declaration against its signature.
  DeclCheck CheckDecl(const RelEnv& outer, const std::string& name,
                      const RelType& type, const std::vector<Pattern>& params,
                      const Expr& body, const SourceSpan& span,
                      std::optional<Fact> self) {
    std::size_t mark = vcs.size();
    DeclCheck out;
    out.name = name;
    out.type = type.ToString();
    Derivation& root = out.derivation;
    root.rule = "Decl";
    root.span = span;
    root.subject = name;
    root.conclusion = type.ToString();
    RelEnv env = outer;
    if (self) env = env.With(name, *self);
    RelType t = Freshen(type);
    for (const Pattern& p : params) {
      if (t.kind != RelType::Kind::kArrow) {
        Emit(root, "Decl", span, name + " : " + type.ToString(), env, nullptr,
             false, "signature has fewer parameters than the definition", {});
        break;
      }
      if (p.is_tuple) {
        Emit(root, "Decl", span, name + " : " + type.ToString(), env, nullptr,
             false, "tuple parameters cannot carry a relational signature",
             {});
        for (const std::string& n : p.names) env = env.With(n, Fact::Any());
        t = *t.to;
        continue;
      }
      t = t.Rename(t.from->binder, p.name());
      RefinedFact rf = FactOfType(*t.from);
      env = env.With(p.name(), rf.fact);
      env.hyps.insert(env.hyps.end(), rf.hyps.begin(), rf.hyps.end());
      t = *t.to;
    }
    Fact f = Analyze(env, body, root);
    RefinedFact want = FactOfType(t);
    CheckSub(root, "Sub", body.span(), env, &body, f, want.fact,
             t.ToString());
    out.accepted = AllDischarged(mark);
    return out;
  }

  void Emit(Derivation& node, const std::string& rule, const SourceSpan& span,
            const std::string& goal, const RelEnv& env, const Expr* e,
            bool ok, const std::string& justification,
            const Comparisons& used) {
    VC vc;
    vc.id = static_cast<int>(vcs.size());
    vc.rule = rule;
    vc.span = span;
    vc.goal = goal;
    vc.context = Context(env, e);
    vc.discharged = ok;
    vc.justification = justification;
    for (const auto& [a, b] : used) {
      vc.index_le.emplace_back(a.ToString(), b.ToString());
    }
    node.vcs.push_back(vc.id);
    vcs.push_back(std::move(vc));
  }

  bool CheckSub(Derivation& node, const std::string& rule,
                const SourceSpan& span, const RelEnv& env, const Expr* e,
                const Fact& have, const Fact& want,
                const std::string& want_text) {
    Comparisons used;
    std::string why;
    bool ok = FactLe(have, want, &used, &why);
    Emit(node, rule, span, FactText(have) + " <: " + want_text, env, e, ok,
         ok ? SubJustification(have, want) : why, used);
    return ok;
  }

  bool AllDischarged(std::size_t mark) const {
    for (std::size_t i = mark; i < vcs.size(); ++i) {
      if (!vcs[i].discharged) return false;
    }
    return true;
  }

  const TypeTable& table() const { return table_; }

 private:
  static std::string SubJustification(const Fact& have, const Fact& want) {
    if (want.kind == Fact::Kind::kAny) return "S-Top";
    if (IsEqLike(have)) return "S-Refl: identical values satisfy every "
                               "reflexive relation";
    if (want.kind == Fact::Kind::kMonad) return "S-M: f and delta widening";
    return "S-Refine: index comparison";
  }

  std::vector<std::string> Context(const RelEnv& env, const Expr* e) const {
    std::vector<std::string> out;
    if (e) {
      for (const std::string& v : FreeVars(*e)) {
        const Fact* f = env.Find(v);
        if (f && f->kind != Fact::Kind::kFun) {
          out.push_back(v + " : " + FactText(*f));
        }
      }
    }
    for (const Assertion& h : env.hyps) out.push_back(h.ToString());
    return out;
  }

  RelType Freshen(const RelType& t) {
    if (t.kind != RelType::Kind::kArrow) return t;
    RelType renamed = t.Rename(t.from->binder, "%" + std::to_string(fresh_++));
    RelType rest = Freshen(*renamed.to);
    return RelType::Arrow(*renamed.from, rest);
  }

  bool AllEqLike(const RelEnv& env, const Expr& e) const {
    for (const std::string& v : FreeVars(e)) {
      const Fact* f = env.Find(v);
      if (!f || !IsEqLike(*f)) return false;
    }
    return true;
  }

  const SimpleType* TypeOf(const Expr& e) const { return table_.Find(e.id()); }

  // Index denoting the (common) value of an expression in both runs.
  std::optional<IndexExpr> IndexOf(const RelEnv& env, const Expr& e) const {
    const Expr& s = StripAscribe(e);
    if (const auto* lit = s.As<node::Literal>()) {
      if (lit->kind == node::Literal::Kind::kNumber &&
          lit->number >= Rational(0)) {
        return IndexExpr::Constant(lit->number);
      }
      return std::nullopt;
    }
    if (!AllEqLike(env, s)) return std::nullopt;
    if (const auto* v = s.As<node::Var>()) return IndexExpr::Var(v->name);
    if (const auto* b = s.As<node::Binary>()) {
      if (b->op == BinOp::kAdd || b->op == BinOp::kMul) {
        auto l = IndexOf(env, *b->lhs);
        auto r = IndexOf(env, *b->rhs);
        if (l && r) return b->op == BinOp::kAdd ? *l + *r : *l * *r;
      }
    }
    if (!IsNonnegType(TypeOf(s))) return std::nullopt;
    return IndexExpr::Var("(" + Subject(s) + ")");
  }

  struct Sens {
    IndexExpr k;
    bool from_range = false;
  };

  static std::optional<Sens> Sensitivity(const Fact& f, const SimpleType* t) {
    if (IsEqLike(f)) return Sens{IndexExpr::Zero(), false};
    if (f.kind == Fact::Kind::kAbsDiff) return Sens{f.k, false};
    if (IsBoundedUnit(t)) return Sens{IndexExpr::Constant(Rational(1)), true};
    return std::nullopt;
  }

  RelEnv BindPattern(RelEnv env, const Pattern& p, const Fact& f) const {
    if (!p.is_tuple) return env.With(p.name(), f);
    for (std::size_t i = 0; i < p.names.size(); ++i) {
      Fact fi = Fact::Any();
      if (IsEqLike(f)) {
        fi = Fact::Eq();
      } else if ((f.kind == Fact::Kind::kTuple ||
                  f.kind == Fact::Kind::kParams) &&
                 f.elems.size() == p.names.size()) {
        fi = f.elems[i];
      }
      env = env.With(p.names[i], fi);
    }
    return env;
  }

  // --- visitors ------------------------------------------------------------

  Fact Visit(const RelEnv& env, const Expr& e, const node::Var& n,
             Derivation& node) {
    node.rule = "Var";
    if (const Fact* f = env.Find(n.name)) return *f;
    Emit(node, "Var", e.span(), n.name, env, nullptr, false,
         "unbound variable " + n.name, {});
    return Fact::Any();
  }

  Fact Visit(const RelEnv&, const Expr&, const node::Literal&,
             Derivation& node) {
    node.rule = "Refl";
    return Fact::Eq();
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Lambda&,
             Derivation& node) {
    node.rule = "Abs";
    auto info = std::make_shared<FunInfo>();
    info->lambda = &e;
    info->env = std::make_shared<RelEnv>(env);
    info->eq_like = AllEqLike(env, e);
    return Fact::Fun(info);
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Apply&,
             Derivation& node) {
    std::vector<const Expr*> arg_exprs;
    const Expr* head = Spine(e, &arg_exprs);
    Fact hf = Analyze(env, *head, node);
    std::vector<ArgInfo> args;
    for (const Expr* a : arg_exprs) args.push_back({Analyze(env, *a, node), a});
    return ApplyFact(env, hf, args, e, node);
  }

  Fact ApplyFact(const RelEnv& env, const Fact& fn,
                 const std::vector<ArgInfo>& args, const Expr& site,
                 Derivation& node) {
    if (args.empty()) return fn;
    bool args_eq = std::all_of(args.begin(), args.end(),
                               [](const ArgInfo& a) { return IsEqLike(a.fact); });
    if (fn.kind != Fact::Kind::kFun) {
      node.rule = "App";
      if (IsEqLike(fn) && args_eq) return Fact::Eq();
      return Fact::Any();
    }
    const FunInfo& info = *fn.fun;
    if (info.declared) {
      std::size_t mark = vcs.size();
      Derivation attempt = node;
      Fact r = ApplyDeclared(env, *info.declared, args, site, attempt);
      if (AllDischarged(mark) || !info.lambda) {
        attempt.rule = "App-Sig";
        node = std::move(attempt);
        return r;
      }
      vcs.resize(mark);
    }
    if (info.lambda) {
      node.rule = "App-Inline";
      return ApplyInline(info, args, site, node);
    }
    node.rule = "App";
    if (info.eq_like && args_eq) return Fact::Eq();
    Emit(node, "App", site.span(), Subject(site), env, &site, false,
         "no relational signature for " +
             (info.name.empty() ? std::string("function") : info.name) +
             " and its arguments differ between runs",
         {});
    return Fact::Any();
  }

  Fact ApplyInline(const FunInfo& info, const std::vector<ArgInfo>& args,
                   const Expr& site, Derivation& node) {
    const auto& lam = *info.lambda->As<node::Lambda>();
    RelEnv inner = BindPattern(*info.env, lam.param, args[0].fact);
    Fact r = Analyze(inner, *lam.body, node);
    if (args.size() == 1) return r;
    std::vector<ArgInfo> rest(args.begin() + 1, args.end());
    return ApplyFact(inner, r, rest, site, node);
  }

  // Name standing for an argument inside the remaining signature.
  std::optional<std::string> ArgName(const ArgInfo& a) const {
    if (!a.expr) return std::nullopt;
    const Expr& s = StripAscribe(*a.expr);
    if (const auto* v = s.As<node::Var>()) return v->name;
    if (IsEqLike(a.fact)) return "(" + Subject(s) + ")";
    return std::nullopt;
  }

  Fact ApplyDeclared(const RelEnv& env, const RelType& declared,
                     const std::vector<ArgInfo>& args, const Expr& site,
                     Derivation& node) {
    RelType t = Freshen(declared);
    bool all_eq = true;
    for (const ArgInfo& a : args) {
      const Expr* ae = a.expr ? a.expr : &site;
      if (t.kind != RelType::Kind::kArrow) {
        Emit(node, "App-Sig", ae->span(), Subject(site), env, &site, false,
             "too many arguments for " + declared.ToString(), {});
        return Fact::Any();
      }
      const RelType& p = *t.from;
      RefinedFact want = FactOfType(p);
      CheckSub(node, "App-Arg", ae->span(), env, a.expr, a.fact, want.fact,
               p.ToString());
      std::optional<std::string> name = ArgName(a);
      for (const Assertion& h : want.hyps) {
        if (!name) {
          Emit(node, "App-Hyp", ae->span(), h.ToString(), env, a.expr, false,
               "argument has no name to instantiate the hypothesis", {});
          continue;
        }
        Assertion goal = h.Rename(p.binder, *name);
        std::string why;
        bool ok = Discharge(env, goal, &why);
        Emit(node, "App-Hyp", ae->span(), goal.ToString(), env, a.expr, ok,
             why, {});
      }
      if (!IsEqLike(a.fact)) all_eq = false;
      RelType next = *t.to;
      if (name) {
        next = next.Rename(p.binder, *name);
      } else if (next.Rename(p.binder, "%none").ToString() != next.ToString()) {
        Emit(node, "App-Sig", ae->span(), next.ToString(), env, a.expr, false,
             "the signature depends on an argument that differs between runs",
             {});
      }
      t = next;
    }
    if (t.kind == RelType::Kind::kArrow) {
      auto info = std::make_shared<FunInfo>();
      info->declared = t;
      info->eq_like = all_eq;
      return Fact::Fun(info);
    }
    return FactOfType(t).fact;
  }

  // Arithmetic goals  e < c, e <= c  over hypotheses of the environment.
  bool Discharge(const RelEnv& env, const Assertion& goal, std::string* why) {
    if (goal.kind == Assertion::Kind::kTrue) {
      *why = "trivial";
      return true;
    }
    for (const Assertion& h : env.hyps) {
      if (h == goal) {
        *why = "hypothesis";
        return true;
      }
    }
    if (goal.kind == Assertion::Kind::kCmp) {
      const RelExpr* lhs = &goal.lhs;
      const RelExpr* rhs = &goal.rhs;
      std::string op = goal.op;
      if (op == ">" || op == ">=") {
        std::swap(lhs, rhs);
        op = op == ">" ? "<" : "<=";
      }
      if ((op == "<" || op == "<=") && rhs->kind == RelExpr::Kind::kNumber) {
        if (auto idx = RelToIndex(env, *lhs)) {
          return DischargeBelow(env, *idx, ToDouble(rhs->number), op == "<",
                                why);
        }
      }
    }
    *why = "unproved: " + goal.ToString();
    return false;
  }

  bool DischargeBelow(const RelEnv& env, const IndexExpr& e, double c,
                      bool strict, std::string* why) {
    auto ub = UpperBound(env, e);
    if (!ub) {
      *why = "unproved: no upper bound for " + e.ToString();
      return false;
    }
    bool ok = strict ? (ub->value < c || (ub->value == c && ub->strict))
                     : ub->value <= c;
    *why = (ok ? "arithmetic: " : "unproved: ") + e.ToString() +
           (ub->strict ? " < " : " <= ") + FormatDouble(ub->value) +
           " from hypotheses";
    return ok;
  }

  std::optional<IndexExpr> RelToIndex(const RelEnv& env,
                                      const RelExpr& e) const {
    using RK = RelExpr::Kind;
    switch (e.kind) {
      case RK::kNumber:
        if (e.number < Rational(0)) return std::nullopt;
        return IndexExpr::Constant(e.number);
      case RK::kLeft:
      case RK::kRight:
      case RK::kVar: {
        const Fact* f = env.Find(e.name);
        if (e.kind != RK::kVar && f && !IsEqLike(*f)) return std::nullopt;
        return IndexExpr::Var(e.name);
      }
      case RK::kAdd:
      case RK::kMul: {
        auto a = RelToIndex(env, e.kids[0]);
        auto b = RelToIndex(env, e.kids[1]);
        if (!a || !b) return std::nullopt;
        return e.kind == RK::kAdd ? *a + *b : *a * *b;
      }
      default:
        return std::nullopt;
    }
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Let& n,
             Derivation& node) {
    node.rule = "Let";
    Fact v = Analyze(env, *n.value, node);
    return Analyze(BindPattern(env, n.pattern, v), *n.body, node);
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::LetRec& n,
             Derivation& node) {
    node.rule = "LetRec";
    auto info = std::make_shared<FunInfo>();
    info->name = n.name;
    info->rec = &n;
    RelEnv probe = env.With(n.name, Fact::Eq());
    info->eq_like = AllEqLike(probe, *n.fn_body) || [&] {
      std::set<std::string> params;
      for (const Param& p : n.params) {
        for (const std::string& x : p.pattern.names) params.insert(x);
      }
      for (const std::string& v : FreeVars(*n.fn_body)) {
        if (params.count(v) || v == n.name) continue;
        const Fact* f = env.Find(v);
        if (!f || !IsEqLike(*f)) return false;
      }
      return true;
    }();
    return Analyze(env.With(n.name, Fact::Fun(info)), *n.body, node);
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::If& n,
             Derivation& node) {
    Fact c = Analyze(env, *n.cond, node);
    Fact t = Analyze(env, *n.then_branch, node);
    Fact f = Analyze(env, *n.else_branch, node);
    if (IsEqLike(c)) {
      node.rule = "If";
      return Join(t, f);
    }
    node.rule = "If-Rel";
    return Fact::Any();
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Match& n,
             Derivation& node) {
    Fact s = Analyze(env, *n.scrutinee, node);
    Fact nil = Analyze(env, *n.nil_branch, node);
    if (IsEqLike(s)) {
      node.rule = "Match";
      Fact cons = Analyze(env.With(n.head, Fact::Eq()).With(n.tail, Fact::Eq()),
                          *n.cons_branch, node);
      return Join(nil, cons);
    }
    if (s.kind == Fact::Kind::kAdj) {
      node.rule = "Match-Adj";
      // The lists differ at the head and agree on the tail, or agree on the
      // head and stay adjacent on the tail.
      Fact head_diff = s.adj == AdjacencyKind::kFlip
                           ? Fact::Any()
                           : Fact::AbsDiff(IndexExpr::Constant(Rational(1)));
      Fact a = Analyze(env.With(n.head, head_diff).With(n.tail, Fact::Eq()),
                       *n.cons_branch, node);
      Fact b = Analyze(env.With(n.head, Fact::Eq()).With(n.tail, s),
                       *n.cons_branch, node);
      return Join(nil, Join(a, b));
    }
    node.rule = "Match-Rel";
    Fact cons = Analyze(env.With(n.head, Fact::Any()).With(n.tail, Fact::Any()),
                        *n.cons_branch, node);
    Join(nil, cons);
    return Fact::Any();
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Return& n,
             Derivation& node) {
    node.rule = "UnitM";
    Fact v = Analyze(env, *n.value, node);
    return Fact::Monad(true, {}, v);
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Bind& n,
             Derivation& node) {
    node.rule = "BindM";
    Fact h = Analyze(env, *n.value, node);
    Fact hm;
    if (IsEqLike(h)) {
      hm = Fact::Monad(true, {}, Fact::Eq());
    } else if (h.kind == Fact::Kind::kMonad) {
      hm = h;
    } else {
      Analyze(BindPattern(env, n.pattern, Fact::Any()), *n.body, node);
      Emit(node, "BindM", n.value->span(), Subject(*n.value), env, n.value.get(),
           false, "no monadic relation for the bound computation", {});
      return Fact::Any();
    }
    Fact b = Analyze(BindPattern(env, n.pattern, hm.inner()), *n.body, node);
    Fact bm;
    if (IsEqLike(b)) {
      bm = Fact::Monad(true, {}, Fact::Eq());
    } else if (b.kind == Fact::Kind::kMonad) {
      bm = b;
    } else {
      return Fact::Any();
    }
    if (hm.exact) return bm;
    if (bm.exact) return Fact::Monad(false, hm.bounds, bm.inner());
    std::vector<MBound> out;
    std::vector<std::string> failed;
    for (const MBound& x : hm.bounds) {
      for (const MBound& y : bm.bounds) {
        if (auto f3 = ComposeIndex(x.f, y.f)) {
          out.push_back({*f3, x.delta + y.delta});
        } else {
          failed.push_back(x.f.ToString() + " then " + y.f.ToString());
        }
      }
    }
    if (out.empty()) {
      std::string msg = "no composable pair:";
      for (const std::string& f : failed) msg += " (" + f + ")";
      Emit(node, "BindM", e.span(), "composable(" + BoundsText(hm.bounds) +
                                        " ; " + BoundsText(bm.bounds) + ")",
           env, &e, false, msg, {});
      return Fact::Any();
    }
    return Fact::Monad(false, std::move(out), bm.inner());
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Observe& n,
             Derivation& node) {
    node.rule = "Observe";
    Fact prior = Analyze(env, *n.prior, node);
    RelEnv penv = env;
    for (const std::string& b : n.binder.names) penv = penv.With(b, Fact::Eq());
    Fact pred = Analyze(penv, *n.predicate, node);
    if (IsEqLike(prior) && IsEqLike(pred)) return Fact::Eq();
    auto fail = [&](const std::string& why) {
      Emit(node, "Observe", e.span(), "observe premise for " + Subject(e), env,
           &e, false, why, {});
      return Fact::Any();
    };
    auto shape = MatchLikelihood(n);
    if (!shape) return fail("unproved: predicate is not a conjugate likelihood");
    auto fam = FamilyOfPrim(shape->prim->op);
    const auto& pargs = shape->prim->args;
    std::set<std::string> binders(n.binder.names.begin(), n.binder.names.end());
    for (const ExprPtr& a : pargs) {
      const auto* v = StripAscribe(*a).As<node::Var>();
      if (v && binders.count(v->name)) continue;
      if (!AllEqLike(env, *a)) {
        return fail("unproved: likelihood parameter " + Subject(*a) +
                    " differs between runs");
      }
    }
    Fact obs = Analyze(env, *shape->observed, node);
    std::vector<ObserveBound> steps = ObserveStepBounds(*fam);
    if (IsEqLike(prior) && !IsEqLike(obs)) {
      if (steps.empty()) {
        return fail("unproved: no lemma bounds one " +
                    std::string(FamilyName(*fam)) + " observation");
      }
      std::vector<MBound> bounds;
      for (const ObserveBound& s : steps) {
        FIndex f{s.f, {}};
        const Lemma& l = FindLemma(s.lemma);
        Emit(node, "Observe", e.span(),
             f.ToString() + "(observe posteriors) <= " + s.bound.ToString(),
             env, &e, true, s.lemma + " lemma (assumes " + l.assumption + ")",
             {});
        bounds.push_back({f, s.bound});
      }
      return Fact::Monad(false, std::move(bounds), Fact::Eq());
    }
    if (prior.kind == Fact::Kind::kMonad && !prior.exact &&
        IsEqLike(prior.inner()) && IsEqLike(obs)) {
      std::vector<MBound> kept;
      for (const MBound& b : prior.bounds) {
        bool covered = std::any_of(
            steps.begin(), steps.end(),
            [&](const ObserveBound& s) { return s.f == b.f.tag; });
        if (covered) kept.push_back(b);
      }
      if (kept.empty()) {
        return fail("unproved: no observe lemma for " + BoundsText(prior.bounds));
      }
      const Lemma& l = FindLemma("Observe-DPI");
      Emit(node, "Observe", e.span(),
           "observe keeps " + BoundsText(kept), env, &e, true,
           "Observe-DPI (assumes " + l.assumption + ")", {});
      return Fact::Monad(false, std::move(kept), Fact::Eq());
    }
    return fail("unproved: prior and observation both differ between runs");
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Infer& n,
             Derivation& node) {
    if (auto f = InferConjugate(env, e, n, node)) {
      node.rule = "Infer-Conjugate";
      return *f;
    }
    node.rule = "Infer";
    Fact m = Analyze(env, *n.value, node);
    if (IsEqLike(m)) return Fact::Eq();
    if (m.kind == Fact::Kind::kMonad && !m.exact && IsEqLike(m.inner())) {
      return Fact::Div(m.bounds);
    }
    return Fact::Any();
  }

  std::optional<Fact> InferConjugate(const RelEnv& env, const Expr& e,
                                     const node::Infer& n, Derivation& node) {
    std::vector<const Expr*> args;
    const Expr* head = Spine(*n.value, &args);
    const auto* hv = head->As<node::Var>();
    if (!hv) return std::nullopt;
    const Fact* hf = env.Find(hv->name);
    if (!hf || hf->kind != Fact::Kind::kFun || !hf->fun->rec) {
      return std::nullopt;
    }
    const node::LetRec& def = *hf->fun->rec;
    auto fold = ConjugateFold(def);
    if (!fold || args.size() != def.params.size()) return std::nullopt;
    const auto* ran = StripAscribe(*args[1]).As<node::Ran>();
    if (!ran) return std::nullopt;
    const auto* prior = StripAscribe(*ran->value).As<node::Prim>();
    if (!prior) return std::nullopt;
    auto prior_fam = FamilyOfPrim(prior->op);
    if (!prior_fam) return std::nullopt;
    for (std::size_t i = 1; i < args.size(); ++i) {
      if (!AllEqLike(env, *args[i])) return std::nullopt;
    }
    Derivation probe;
    Fact db = Analyze(env, *args[0], probe);
    if (db.kind != Fact::Kind::kAdj) return std::nullopt;
    std::string hv_text, kv_text;
    if (*prior_fam == SymDist::Family::kNormal && prior->args.size() == 2) {
      hv_text = Subject(*prior->args[1]);
    }
    kv_text = fold->variance_param >= 0 ? Subject(*args[fold->variance_param])
                                        : fold->variance_text;
    auto sens = ConjugateParamSensitivity(
        *prior_fam, static_cast<int>(prior->args.size()), fold->likelihood,
        db.adj, hv_text, kv_text);
    if (!sens) return std::nullopt;
    node.premises.push_back(std::move(probe.premises.at(0)));
    std::vector<Fact> elems;
    for (const IndexExpr& b : sens->bounds) {
      elems.push_back(b.IsZero() ? Fact::Eq() : Fact::AbsDiff(b));
    }
    Fact out = Fact::Params(sens->posterior, std::move(elems));
    Emit(node, "Infer-Conjugate", e.span(),
         "params(infer " + Subject(*n.value) + ") : " + FactText(out), env, &e,
         true, sens->lemma + " lemma (" + FindLemma(sens->lemma).statement + ")",
         {});
    return out;
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Ran& n,
             Derivation& node) {
    node.rule = "Ran";
    Fact d = Analyze(env, *n.value, node);
    if (IsEqLike(d)) return Fact::Eq();
    if (d.kind == Fact::Kind::kDiv) return Fact::Monad(false, d.bounds, Fact::Eq());
    return Fact::Any();
  }

  Fact Visit(const RelEnv& env, const Expr& e, const node::Prim& n,
             Derivation& node) {
    node.rule = std::string(PrimName(n.op));
    switch (n.op) {
      case PrimOp::kLapMech: return LapMech(env, e, n, node);
      case PrimOp::kGaussMech: return GaussMech(env, e, n, node);
      case PrimOp::kExpMech: return ExpMech(env, e, n, node);
      default: break;
    }
    std::vector<Fact> facts;
    for (const ExprPtr& a : n.args) facts.push_back(Analyze(env, *a, node));
    if (auto fam = FamilyOfPrim(n.op)) return Fact::Params(*fam, facts);
    switch (n.op) {
      case PrimOp::kGetParams:
        if (facts[0].kind == Fact::Kind::kParams) {
          if (facts[0].elems.size() == 1) return facts[0].elems[0];
          return Fact::Tuple(facts[0].elems);
        }
        return Fact::Any();
      case PrimOp::kGetMean:
        if (facts[0].kind == Fact::Kind::kParams &&
            facts[0].family == SymDist::Family::kNormal) {
          return facts[0].elems.at(0);
        }
        return Fact::Any();
      case PrimOp::kHellinger:
      case PrimOp::kStatDist:
        return DistanceFact(env, e, n, facts, node);
      case PrimOp::kMax:
      case PrimOp::kMin: {
        auto a = Sensitivity(facts[0], TypeOf(*n.args[0]));
        auto b = Sensitivity(facts[1], TypeOf(*n.args[1]));
        if (a && b) return Fact::AbsDiff(IndexExpr::Max(a->k, b->k));
        return Fact::Any();
      }
      case PrimOp::kAbs:
        if (facts[0].kind == Fact::Kind::kAbsDiff) return facts[0];
        return Fact::Any();
      default:
        return Fact::Any();
    }
  }

  Fact DistanceFact(const RelEnv& env, const Expr& e, const node::Prim& n,
                    const std::vector<Fact>& facts, Derivation& node) {
    Tag tag = n.op == PrimOp::kHellinger ? Tag::kHD : Tag::kSD;
    auto bound = [&](const Fact& f) -> std::optional<IndexExpr> {
      if (IsEqLike(f)) return IndexExpr::Zero();
      if (f.kind != Fact::Kind::kDiv) return std::nullopt;
      for (const MBound& b : f.bounds) {
        if (b.f.tag == tag) return b.delta;
      }
      return std::nullopt;
    };
    auto a = bound(facts[0]);
    auto b = bound(facts[1]);
    if (!a || !b) return Fact::Any();
    IndexExpr k = *a + *b;
    Emit(node, PrimName(n.op).data(), e.span(),
         "|" + Subject(e) + "< - " + Subject(e) + ">| <= " + k.ToString(), env,
         &e, true, "hellinger-triangle lemma (triangle inequality of the metric)",
         {});
    return Fact::AbsDiff(k);
  }

  std::optional<IndexExpr> PrivacyIndex(const RelEnv& env, const Expr& eps,
                                        Derivation& node, const Expr& site) {
    Fact fe = Analyze(env, eps, node);
    auto idx = IsEqLike(fe) ? IndexOf(env, eps) : std::nullopt;
    if (!idx) {
      Emit(node, node.rule, eps.span(), Subject(eps) + " is public", env, &site,
           false, "unproved: privacy parameter differs between runs or is not "
                  "an index",
           {});
    }
    return idx;
  }

  Fact LapMech(const RelEnv& env, const Expr& e, const node::Prim& n,
               Derivation& node) {
    auto eps = PrivacyIndex(env, *n.args[0], node, e);
    Fact fx = Analyze(env, *n.args[1], node);
    if (!eps) return Fact::Any();
    auto sens = Sensitivity(fx, TypeOf(*n.args[1]));
    if (!sens) {
      Emit(node, "lapMech", n.args[1]->span(),
           "sensitivity of " + Subject(*n.args[1]), env, &e, false,
           "unproved: no sensitivity bound", {});
      return Fact::Any();
    }
    if (sens->k.IsZero()) return Fact::Eq();
    if (sens->from_range) {
      RangeVc(node, *n.args[1], Subject(*n.args[1]), env);
    }
    return Fact::Monad(false, {{FIndex::EpsD(sens->k * *eps), IndexExpr::Zero()}},
                       Fact::Eq());
  }

  void RangeVc(Derivation& node, const Expr& x, const std::string& text,
               const RelEnv& env) {
    Emit(node, "score-range", x.span(), "|" + text + "< - " + text + ">| <= 1",
         env, &x, true, "score-range lemma (values in [0, 1])", {});
  }

  Fact GaussMech(const RelEnv& env, const Expr& e, const node::Prim& n,
                 Derivation& node) {
    Fact fs = Analyze(env, *n.args[0], node);
    Fact fx = Analyze(env, *n.args[1], node);
    const auto* sigma = StripAscribe(*n.args[0]).As<node::Prim>();
    if (!sigma || sigma->op != PrimOp::kGaussSigma || !IsEqLike(fs)) {
      Emit(node, "gaussMech", n.args[0]->span(), Subject(*n.args[0]), env, &e,
           false, "unproved: noise scale is not gaussSigma(eps, delta) of "
                  "public values",
           {});
      return Fact::Any();
    }
    auto eps = IndexOf(env, *sigma->args[0]);
    auto delta = IndexOf(env, *sigma->args[1]);
    auto sens = Sensitivity(fx, TypeOf(*n.args[1]));
    if (!eps || !delta || !sens) {
      Emit(node, "gaussMech", e.span(), Subject(e), env, &e, false,
           "unproved: parameters are not indices or input sensitivity unknown",
           {});
      return Fact::Any();
    }
    if (sens->k.IsZero()) return Fact::Eq();
    IndexExpr scaled = sens->k * *eps;
    std::string why;
    bool ok = DischargeBelow(env, scaled, 1.0, true, &why);
    Emit(node, "gaussMech", e.span(), scaled.ToString() + " < 1", env, &e, ok,
         why, {});
    return Fact::Monad(false, {{FIndex::EpsD(scaled), *delta}}, Fact::Eq());
  }

  Fact ExpMech(const RelEnv& env, const Expr& e, const node::Prim& n,
               Derivation& node) {
    auto eps = PrivacyIndex(env, *n.args[0], node, e);
    Fact score = Analyze(env, *n.args[1], node);
    Fact db = Analyze(env, *n.args[2], node);
    if (n.args.size() > 3) {
      Fact cands = Analyze(env, *n.args[3], node);
      if (!IsEqLike(cands)) {
        Emit(node, "expMech", n.args[3]->span(), Subject(*n.args[3]), env, &e,
             false, "unproved: candidate outputs differ between runs", {});
        return Fact::Any();
      }
    }
    if (!eps) return Fact::Any();
    const SimpleType* st = TypeOf(*n.args[1]);
    bool paired = st && st->kind() == SimpleType::Kind::kArrow &&
                  st->to().kind() != SimpleType::Kind::kArrow;
    const SimpleType* codomain = st;
    while (codomain && codomain->kind() == SimpleType::Kind::kArrow) {
      codomain = &codomain->to();
    }
    Derivation app;
    app.rule = "App";
    app.span = n.args[1]->span();
    app.subject = "score application";
    Fact r = paired ? ApplyFact(env, score,
                                {{Fact::Tuple({db, Fact::Eq()}), nullptr}},
                                e, app)
                    : ApplyFact(env, score,
                                {{db, n.args[2].get()}, {Fact::Eq(), nullptr}},
                                e, app);
    if (r.kind != Fact::Kind::kFun) r = Normalize(r);
    app.conclusion = FactText(r);
    node.premises.push_back(std::move(app));
    auto sens = Sensitivity(r, codomain);
    if (!sens) {
      Emit(node, "expMech", n.args[1]->span(),
           "sensitivity of " + Subject(*n.args[1]), env, &e, false,
           "unproved: no sensitivity bound for the score", {});
      return Fact::Any();
    }
    if (sens->k.IsZero()) return Fact::Eq();
    if (sens->from_range) {
      RangeVc(node, *n.args[1],
              Subject(*n.args[1]) + " " + Subject(*n.args[2]) + " r", env);
    }
    return Fact::Monad(false, {{FIndex::EpsD(sens->k * *eps), IndexExpr::Zero()}},
                       Fact::Eq());
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Binary& n,
             Derivation& node) {
    node.rule = std::string(BinOpText(n.op));
    Fact a = Analyze(env, *n.lhs, node);
    Fact b = Analyze(env, *n.rhs, node);
    switch (n.op) {
      case BinOp::kAdd:
      case BinOp::kSub: {
        auto sa = Sensitivity(a, TypeOf(*n.lhs));
        auto sb = Sensitivity(b, TypeOf(*n.rhs));
        if (sa && sb) return Fact::AbsDiff(sa->k + sb->k);
        return Fact::Any();
      }
      case BinOp::kMul: {
        auto scale = [&](const Expr& c, const Fact& fc, const Expr& x,
                         const Fact& fx) -> std::optional<Fact> {
          if (!IsEqLike(fc) || fx.kind != Fact::Kind::kAbsDiff) {
            return std::nullopt;
          }
          const Expr& s = StripAscribe(c);
          if (const auto* lit = s.As<node::Literal>()) {
            if (lit->kind != node::Literal::Kind::kNumber) return std::nullopt;
            Rational v = lit->number < Rational(0) ? -lit->number : lit->number;
            return Fact::AbsDiff(IndexExpr::Constant(v) * fx.k);
          }
          if (!IsNonnegType(TypeOf(s))) return std::nullopt;
          auto idx = IndexOf(env, s);
          if (!idx) return std::nullopt;
          (void)x;
          return Fact::AbsDiff(*idx * fx.k);
        };
        if (auto f = scale(*n.lhs, a, *n.rhs, b)) return *f;
        if (auto f = scale(*n.rhs, b, *n.lhs, a)) return *f;
        return Fact::Any();
      }
      default:
        return Fact::Any();
    }
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Unary& n,
             Derivation& node) {
    node.rule = n.op == UnOp::kNeg ? "neg" : "not";
    Fact a = Analyze(env, *n.operand, node);
    if (n.op == UnOp::kNeg) {
      if (auto s = Sensitivity(a, TypeOf(*n.operand))) {
        return Fact::AbsDiff(s->k);
      }
    }
    return Fact::Any();
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Tuple& n,
             Derivation& node) {
    node.rule = "Tuple";
    std::vector<Fact> elems;
    for (const ExprPtr& x : n.elems) elems.push_back(Analyze(env, *x, node));
    return Fact::Tuple(std::move(elems));
  }

  Fact Visit(const RelEnv& env, const Expr&, const node::Ascribe& n,
             Derivation& node) {
    node.rule = "Ascribe";
    return Analyze(env, *n.value, node);
  }

  TypeTable table_;
  int fresh_ = 0;
};

// --- JSON ------------------------------------------------------------------

json SpanJson(const SourceSpan& s) {
  return {{"file", s.file}, {"line", s.line}, {"column", s.column}};
}

json DerivationJson(const Derivation& d) {
  json out = {{"rule", d.rule},
              {"span", SpanJson(d.span)},
              {"subject", d.subject},
              {"conclusion", d.conclusion}};
  if (!d.vcs.empty()) out["vcs"] = d.vcs;
  if (!d.premises.empty()) {
    json prem = json::array();
    for (const Derivation& p : d.premises) prem.push_back(DerivationJson(p));
    out["premises"] = std::move(prem);
  }
  return out;
}

json VcJson(const VC& vc) {
  json out = {{"id", vc.id},
              {"rule", vc.rule},
              {"span", SpanJson(vc.span)},
              {"goal", vc.goal},
              {"context", vc.context},
              {"status", vc.discharged ? "discharged" : "unproved"},
              {"justification", vc.justification}};
  json cmp = json::array();
  for (const auto& [a, b] : vc.index_le) cmp.push_back({a, b});
  out["index_le"] = std::move(cmp);
  return out;
}

json ReportJson(const RelCheckReport& r) {
  json decls = json::array();
  for (const DeclCheck& d : r.decls) {
    decls.push_back({{"name", d.name},
                     {"type", d.type},
                     {"accepted", d.accepted},
                     {"derivation", DerivationJson(d.derivation)}});
  }
  json vcs = json::array();
  for (const VC& vc : r.vcs) vcs.push_back(VcJson(vc));
  return {{"accepted", r.accepted()}, {"declarations", decls}, {"vcs", vcs}};
}

void CollectRules(const json& node, std::vector<std::string>* out) {
  out->push_back(node.value("rule", ""));
  if (node.contains("premises")) {
    for (const json& p : node["premises"]) CollectRules(p, out);
  }
}

// First path where two derivation trees differ.
std::optional<std::string> FirstDifference(const json& a, const json& b,
                                           const std::string& path) {
  for (const char* key : {"rule", "subject", "conclusion", "vcs"}) {
    if (a.value(key, json()) != b.value(key, json())) {
      return path + "." + key;
    }
  }
  json pa = a.value("premises", json::array());
  json pb = b.value("premises", json::array());
  if (pa.size() != pb.size()) return path + ".premises";
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (auto d = FirstDifference(pa[i], pb[i],
                                 path + ".premises[" + std::to_string(i) + "]")) {
      return d;
    }
  }
  return std::nullopt;
}

}  // namespace

bool RelCheckReport::accepted() const {
  return std::all_of(vcs.begin(), vcs.end(),
                     [](const VC& v) { return v.discharged; }) &&
         std::all_of(decls.begin(), decls.end(),
                     [](const DeclCheck& d) { return d.accepted; });
}

std::vector<const VC*> RelCheckReport::Unproved() const {
  std::vector<const VC*> out;
  for (const VC& v : vcs) {
    if (!v.discharged) out.push_back(&v);
  }
  return out;
}

std::string RelCheckReport::ToJson(int indent) const {
  return ReportJson(*this).dump(indent);
}

RelCheckReport RelCheckProgram(const Expr& program,
                               const std::vector<RelSignature>& signatures) {
  Checker checker(&program);
  RelCheckReport report;
  std::map<std::string, const RelSignature*> sigs;
  for (const RelSignature& s : signatures) sigs[s.name] = &s;
  std::map<std::string, SimpleType> simple;
  for (auto& [name, t] : TopLevelTypes(program)) simple[name] = t;
  std::set<std::string> seen;
  Derivation scratch;

  auto erasure_ok = [&](const RelSignature& sig, Derivation& node) {
    auto it = simple.find(sig.name);
    if (it == simple.end() || it->second == sig.type.Erase()) return true;
    checker.Emit(node, "Erasure", sig.span, sig.name + " : " + sig.type.ToString(),
                 RelEnv(), nullptr, false,
                 "signature erases to " + sig.type.Erase().ToString() +
                     " but the definition has type " + it->second.ToString(),
                 {});
    return false;
  };

  RelEnv env;
  const Expr* cur = &program;
  while (true) {
    if (const auto* n = cur->As<node::Let>()) {
      if (n->pattern.is_tuple) {
        Fact v = checker.Analyze(env, *n->value, scratch);
        for (std::size_t i = 0; i < n->pattern.names.size(); ++i) {
          env = env.With(n->pattern.names[i],
                         IsEqLike(v) ? Fact::Eq() : Fact::Any());
        }
        cur = n->body.get();
        continue;
      }
      const std::string& name = n->pattern.name();
      seen.insert(name);
      auto info = std::make_shared<FunInfo>();
      info->name = name;
      Fact fact;
      auto it = sigs.find(name);
      if (it != sigs.end()) {
        const RelSignature& sig = *it->second;
        std::vector<Pattern> params;
        const Expr* body = n->value.get();
        std::size_t arity = sig.type.Params().size();
        while (params.size() < arity) {
          const auto* lam = StripAscribe(*body).As<node::Lambda>();
          if (!lam) break;
          params.push_back(lam->param);
          body = lam->body.get();
        }
        DeclCheck decl = checker.CheckDecl(env, name, sig.type, params, *body,
                                           sig.span, std::nullopt);
        if (!erasure_ok(sig, decl.derivation)) decl.accepted = false;
        report.decls.push_back(std::move(decl));
        if (StripAscribe(*n->value).Is<node::Lambda>()) {
          info->declared = sig.type;
          info->lambda = &StripAscribe(*n->value);
          info->env = std::make_shared<RelEnv>(env);
          info->eq_like = true;
          fact = Fact::Fun(info);
        } else {
          fact = FactOfType(sig.type).fact;
        }
      } else {
        fact = checker.Analyze(env, *n->value, scratch);
        if (fact.kind == Fact::Kind::kFun) {
          auto named = std::make_shared<FunInfo>(*fact.fun);
          named->name = name;
          fact.fun = named;
        }
      }
      env = env.With(name, fact);
      cur = n->body.get();
    } else if (const auto* n = cur->As<node::LetRec>()) {
      seen.insert(n->name);
      auto info = std::make_shared<FunInfo>();
      info->name = n->name;
      info->rec = n;
      info->eq_like = true;
      auto it = sigs.find(n->name);
      if (it != sigs.end()) {
        const RelSignature& sig = *it->second;
        info->declared = sig.type;
        std::vector<Pattern> params;
        for (const Param& p : n->params) params.push_back(p.pattern);
        DeclCheck decl = checker.CheckDecl(env, n->name, sig.type, params,
                                           *n->fn_body, sig.span,
                                           Fact::Fun(info));
        if (!erasure_ok(sig, decl.derivation)) decl.accepted = false;
        report.decls.push_back(std::move(decl));
      }
      env = env.With(n->name, Fact::Fun(info));
      cur = n->body.get();
    } else {
      break;
    }
  }
  for (const RelSignature& s : signatures) {
    if (seen.count(s.name)) continue;
    DeclCheck missing;
    missing.name = s.name;
    missing.type = s.type.ToString();
    missing.derivation.rule = "Decl";
    missing.derivation.span = s.span;
    missing.derivation.subject = s.name;
    checker.Emit(missing.derivation, "Decl", s.span, s.name, RelEnv(), nullptr,
                 false, "no top-level definition named " + s.name, {});
    report.decls.push_back(std::move(missing));
  }
  report.vcs = std::move(checker.vcs);
  return report;
}

RelCheckReport RelCheck(
    const std::vector<std::pair<std::string, RelType>>& bindings,
    const Expr& e, const RelType& type) {
  Checker checker(nullptr);
  RelEnv env;
  for (const auto& [name, t] : bindings) {
    RefinedFact rf = FactOfType(t.Rename(t.binder, name));
    env = env.With(name, rf.fact);
    env.hyps.insert(env.hyps.end(), rf.hyps.begin(), rf.hyps.end());
  }
  std::vector<Pattern> params;
  const Expr* body = &e;
  std::size_t arity = type.Params().size();
  while (params.size() < arity) {
    const auto* lam = StripAscribe(*body).As<node::Lambda>();
    if (!lam) break;
    params.push_back(lam->param);
    body = lam->body.get();
  }
  RelCheckReport report;
  report.decls.push_back(checker.CheckDecl(env, "<expr>", type, params, *body,
                                           e.span(), std::nullopt));
  report.vcs = std::move(checker.vcs);
  return report;
}

std::vector<VC> Subtype(const RelType& sub, const RelType& super) {
  Checker checker(nullptr);
  Derivation node;
  if (!IsSubtype(sub.Erase(), super.Erase())) {
    checker.Emit(node, "Sub", {}, sub.ToString() + " <: " + super.ToString(),
                 RelEnv(), nullptr, false, "erasures differ", {});
    return std::move(checker.vcs);
  }
  if (sub.kind == RelType::Kind::kArrow || super.kind == RelType::Kind::kArrow) {
    bool same = sub.ToString() == super.ToString();
    checker.Emit(node, "Sub", {}, sub.ToString() + " <: " + super.ToString(),
                 RelEnv(), nullptr, same,
                 same ? "S-Refl" : "unproved: arrow subtyping beyond equality",
                 {});
    return std::move(checker.vcs);
  }
  RefinedFact have = FactOfType(sub);
  RefinedFact want = FactOfType(super);
  RelEnv env;
  env.hyps = have.hyps;
  checker.CheckSub(node, "Sub", {}, env, nullptr, have.fact, want.fact,
                   super.ToString());
  for (const Assertion& h : want.hyps) {
    Assertion goal = h.Rename(super.binder, sub.binder);
    bool ok = std::find(have.hyps.begin(), have.hyps.end(), goal) !=
              have.hyps.end();
    checker.Emit(node, "Sub", {}, goal.ToString(), env, nullptr, ok,
                 ok ? "hypothesis" : "unproved: " + goal.ToString(), {});
  }
  return std::move(checker.vcs);
}

const std::vector<std::string>& RelRuleNames() {
  static const std::vector<std::string> kRules = [] {
    std::vector<std::string> r = {
        "Decl", "Refl", "Var", "Abs", "App", "App-Sig", "App-Inline",
        "Let", "LetRec", "If", "If-Rel", "Match", "Match-Adj", "Match-Rel",
        "UnitM", "BindM", "Observe", "Infer", "Infer-Conjugate", "Ran",
        "Tuple", "Ascribe", "neg", "not"};
    for (PrimOp op : {PrimOp::kBernoulli, PrimOp::kNormal, PrimOp::kBeta,
                      PrimOp::kUniform, PrimOp::kDirichlet,
                      PrimOp::kMultinomial, PrimOp::kLapMech,
                      PrimOp::kGaussMech, PrimOp::kExpMech,
                      PrimOp::kGaussSigma, PrimOp::kGetParams,
                      PrimOp::kGetMean, PrimOp::kHellinger, PrimOp::kStatDist,
                      PrimOp::kMax, PrimOp::kMin, PrimOp::kSqrt, PrimOp::kExp,
                      PrimOp::kLog, PrimOp::kAbs}) {
      r.emplace_back(PrimName(op));
    }
    for (BinOp op : {BinOp::kAdd, BinOp::kSub, BinOp::kMul, BinOp::kDiv,
                     BinOp::kEq, BinOp::kNe, BinOp::kLt, BinOp::kLe,
                     BinOp::kGt, BinOp::kGe, BinOp::kAnd, BinOp::kOr,
                     BinOp::kCons}) {
      r.emplace_back(BinOpText(op));
    }
    return r;
  }();
  return kRules;
}

ReplayResult ReplayDerivation(const std::string& text, const Expr& program,
                              const std::vector<RelSignature>& signatures) {
  ReplayResult out;
  json recorded;
  try {
    recorded = json::parse(text);
  } catch (const json::exception& e) {
    out.problems.push_back(std::string("malformed derivation: ") + e.what());
    return out;
  }
  const auto& known = RelRuleNames();
  std::vector<std::string> rules;
  for (const json& d : recorded.value("declarations", json::array())) {
    CollectRules(d.value("derivation", json::object()), &rules);
  }
  for (const std::string& r : rules) {
    if (std::find(known.begin(), known.end(), r) == known.end()) {
      out.problems.push_back("unknown rule " + r);
    }
  }
  for (const json& vc : recorded.value("vcs", json::array())) {
    bool discharged = vc.value("status", "") == "discharged";
    for (const json& cmp : vc.value("index_le", json::array())) {
      bool holds = false;
      try {
        holds = IndexLe(ParseIndex(cmp[0].get<std::string>()),
                        ParseIndex(cmp[1].get<std::string>()));
      } catch (const Error& e) {
        out.problems.push_back("vc " + std::to_string(vc.value("id", -1)) +
                               ": " + e.what());
        continue;
      }
      if (discharged && !holds) {
        out.problems.push_back("vc " + std::to_string(vc.value("id", -1)) +
                               ": " + cmp[0].get<std::string>() +
                               " <= " + cmp[1].get<std::string>() +
                               " does not hold");
      }
    }
  }
  json fresh = ReportJson(RelCheckProgram(program, signatures));
  if (fresh["accepted"] != recorded.value("accepted", json())) {
    out.problems.push_back("verdict differs");
  }
  const json& fd = fresh["declarations"];
  json rd = recorded.value("declarations", json::array());
  if (fd.size() != rd.size()) {
    out.problems.push_back("declaration count differs");
  } else {
    for (std::size_t i = 0; i < fd.size(); ++i) {
      if (auto diff = FirstDifference(rd[i].value("derivation", json::object()),
                                      fd[i]["derivation"],
                                      rd[i].value("name", "?"))) {
        out.problems.push_back("derivation differs at " + *diff);
      }
    }
  }
  json rv = recorded.value("vcs", json::array());
  const json& fv = fresh["vcs"];
  if (rv.size() != fv.size()) {
    out.problems.push_back("vc count differs");
  } else {
    for (std::size_t i = 0; i < rv.size(); ++i) {
      if (rv[i].value("goal", "") != fv[i]["goal"] ||
          rv[i].value("status", "") != fv[i]["status"]) {
        out.problems.push_back("vc " + std::to_string(i) + " differs");
      }
    }
  }
  out.ok = out.problems.empty();
  return out;
}

}  // namespace privinfer
