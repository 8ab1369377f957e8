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

#include "privinfer/ast.h"

#include <algorithm>
#include <atomic>
#include <set>

#include "json.hpp"

namespace privinfer {
namespace {

std::atomic<int> next_id{1};

struct PrimInfo {
  PrimOp op;
  std::string_view name;
  int min_args;
  int max_args;
};

constexpr PrimInfo kPrims[] = {
    {PrimOp::kBernoulli, "bernoulli", 1, 1},
    {PrimOp::kNormal, "normal", 2, 2},
    {PrimOp::kBeta, "beta", 2, 2},
    {PrimOp::kUniform, "uniform", 0, 0},
    {PrimOp::kDirichlet, "dirichlet", 2, -1},
    {PrimOp::kMultinomial, "multinomial", 1, -1},
    {PrimOp::kLapMech, "lapMech", 2, 2},
    {PrimOp::kGaussMech, "gaussMech", 2, 2},
    {PrimOp::kExpMech, "expMech", 3, 4},
    {PrimOp::kGaussSigma, "gaussSigma", 2, 2},
    {PrimOp::kGetParams, "getParams", 1, 1},
    {PrimOp::kGetMean, "getMean", 1, 1},
    {PrimOp::kHellinger, "H", 2, 2},
    {PrimOp::kStatDist, "SD", 2, 2},
    {PrimOp::kMax, "max", 2, 2},
    {PrimOp::kMin, "min", 2, 2},
    {PrimOp::kSqrt, "sqrt", 1, 1},
    {PrimOp::kExp, "exp", 1, 1},
    {PrimOp::kLog, "log", 1, 1},
    {PrimOp::kAbs, "abs", 1, 1},
};

const PrimInfo& Info(PrimOp op) {
  for (const auto& p : kPrims) {
    if (p.op == op) return p;
  }
  throw std::logic_error("unknown primitive");
}

bool ListEqual(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(*a[i], *b[i])) return false;
  }
  return true;
}

struct EqualVisitor {
  const ExprNode& other;

  template <typename T>
  const T& O() const { return std::get<T>(other); }

  bool operator()(const node::Var& a) const {
    return a.name == O<node::Var>().name;
  }
  bool operator()(const node::Literal& a) const {
    const auto& b = O<node::Literal>();
    if (a.kind != b.kind) return false;
    if (a.kind == node::Literal::Kind::kBool) return a.boolean == b.boolean;
    if (a.kind == node::Literal::Kind::kNumber) return a.number == b.number;
    return true;
  }
  bool operator()(const node::Lambda& a) const {
    const auto& b = O<node::Lambda>();
    return a.param == b.param && a.annot == b.annot &&
           StructurallyEqual(*a.body, *b.body);
  }
  bool operator()(const node::Apply& a) const {
    const auto& b = O<node::Apply>();
    return StructurallyEqual(*a.fn, *b.fn) && StructurallyEqual(*a.arg, *b.arg);
  }
  bool operator()(const node::Let& a) const {
    const auto& b = O<node::Let>();
    return a.pattern == b.pattern && a.annot == b.annot &&
           StructurallyEqual(*a.value, *b.value) &&
           StructurallyEqual(*a.body, *b.body);
  }
  bool operator()(const node::LetRec& a) const {
    const auto& b = O<node::LetRec>();
    if (a.name != b.name || a.params.size() != b.params.size() ||
        a.ret != b.ret) {
      return false;
    }
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      if (!(a.params[i].pattern == b.params[i].pattern) ||
          a.params[i].type != b.params[i].type) {
        return false;
      }
    }
    return StructurallyEqual(*a.fn_body, *b.fn_body) &&
           StructurallyEqual(*a.body, *b.body);
  }
  bool operator()(const node::If& a) const {
    const auto& b = O<node::If>();
    return StructurallyEqual(*a.cond, *b.cond) &&
           StructurallyEqual(*a.then_branch, *b.then_branch) &&
           StructurallyEqual(*a.else_branch, *b.else_branch);
  }
  bool operator()(const node::Match& a) const {
    const auto& b = O<node::Match>();
    return a.head == b.head && a.tail == b.tail &&
           StructurallyEqual(*a.scrutinee, *b.scrutinee) &&
           StructurallyEqual(*a.nil_branch, *b.nil_branch) &&
           StructurallyEqual(*a.cons_branch, *b.cons_branch);
  }
  bool operator()(const node::Return& a) const {
    return StructurallyEqual(*a.value, *O<node::Return>().value);
  }
  bool operator()(const node::Bind& a) const {
    const auto& b = O<node::Bind>();
    return a.pattern == b.pattern && StructurallyEqual(*a.value, *b.value) &&
           StructurallyEqual(*a.body, *b.body);
  }
  bool operator()(const node::Observe& a) const {
    const auto& b = O<node::Observe>();
    return a.binder == b.binder && a.annot == b.annot &&
           StructurallyEqual(*a.predicate, *b.predicate) &&
           StructurallyEqual(*a.prior, *b.prior);
  }
  bool operator()(const node::Infer& a) const {
    return StructurallyEqual(*a.value, *O<node::Infer>().value);
  }
  bool operator()(const node::Ran& a) const {
    return StructurallyEqual(*a.value, *O<node::Ran>().value);
  }
  bool operator()(const node::Prim& a) const {
    const auto& b = O<node::Prim>();
    return a.op == b.op && ListEqual(a.args, b.args);
  }
  bool operator()(const node::Binary& a) const {
    const auto& b = O<node::Binary>();
    return a.op == b.op && StructurallyEqual(*a.lhs, *b.lhs) &&
           StructurallyEqual(*a.rhs, *b.rhs);
  }
  bool operator()(const node::Unary& a) const {
    const auto& b = O<node::Unary>();
    return a.op == b.op && StructurallyEqual(*a.operand, *b.operand);
  }
  bool operator()(const node::Tuple& a) const {
    return ListEqual(a.elems, O<node::Tuple>().elems);
  }
  bool operator()(const node::Ascribe& a) const {
    const auto& b = O<node::Ascribe>();
    return a.type == b.type && StructurallyEqual(*a.value, *b.value);
  }
};

class FreeVarCollector {
 public:
  void Visit(const Expr& e, std::set<std::string> bound) {
    std::visit([&](const auto& n) { VisitNode(n, bound); }, e.node());
  }
  std::vector<std::string> result;

 private:
  static void BindPattern(const Pattern& p, std::set<std::string>& bound) {
    for (const auto& n : p.names) bound.insert(n);
  }
  void Add(const std::string& name) {
    if (std::find(result.begin(), result.end(), name) == result.end()) {
      result.push_back(name);
    }
  }
  void VisitNode(const node::Var& n, const std::set<std::string>& bound) {
    if (!bound.count(n.name)) Add(n.name);
  }
  void VisitNode(const node::Literal&, const std::set<std::string>&) {}
  void VisitNode(const node::Lambda& n, std::set<std::string> bound) {
    BindPattern(n.param, bound);
    Visit(*n.body, bound);
  }
  void VisitNode(const node::Apply& n, const std::set<std::string>& bound) {
    Visit(*n.fn, bound);
    Visit(*n.arg, bound);
  }
  void VisitNode(const node::Let& n, std::set<std::string> bound) {
    Visit(*n.value, bound);
    BindPattern(n.pattern, bound);
    Visit(*n.body, bound);
  }
  void VisitNode(const node::LetRec& n, std::set<std::string> bound) {
    bound.insert(n.name);
    auto inner = bound;
    for (const auto& p : n.params) BindPattern(p.pattern, inner);
    Visit(*n.fn_body, inner);
    Visit(*n.body, bound);
  }
  void VisitNode(const node::If& n, const std::set<std::string>& bound) {
    Visit(*n.cond, bound);
    Visit(*n.then_branch, bound);
    Visit(*n.else_branch, bound);
  }
  void VisitNode(const node::Match& n, std::set<std::string> bound) {
    Visit(*n.scrutinee, bound);
    Visit(*n.nil_branch, bound);
    bound.insert(n.head);
    bound.insert(n.tail);
    Visit(*n.cons_branch, bound);
  }
  void VisitNode(const node::Return& n, const std::set<std::string>& bound) {
    Visit(*n.value, bound);
  }
  void VisitNode(const node::Bind& n, std::set<std::string> bound) {
    Visit(*n.value, bound);
    BindPattern(n.pattern, bound);
    Visit(*n.body, bound);
  }
  void VisitNode(const node::Observe& n, std::set<std::string> bound) {
    Visit(*n.prior, bound);
    BindPattern(n.binder, bound);
    Visit(*n.predicate, bound);
  }
  void VisitNode(const node::Infer& n, const std::set<std::string>& bound) {
    Visit(*n.value, bound);
  }
  void VisitNode(const node::Ran& n, const std::set<std::string>& bound) {
    Visit(*n.value, bound);
  }
  void VisitNode(const node::Prim& n, const std::set<std::string>& bound) {
    for (const auto& a : n.args) Visit(*a, bound);
  }
  void VisitNode(const node::Binary& n, const std::set<std::string>& bound) {
    Visit(*n.lhs, bound);
    Visit(*n.rhs, bound);
  }
  void VisitNode(const node::Unary& n, const std::set<std::string>& bound) {
    Visit(*n.operand, bound);
  }
  void VisitNode(const node::Tuple& n, const std::set<std::string>& bound) {
    for (const auto& a : n.elems) Visit(*a, bound);
  }
  void VisitNode(const node::Ascribe& n, const std::set<std::string>& bound) {
    Visit(*n.value, bound);
  }
};

using nlohmann::json;

json PatternJson(const Pattern& p) {
  if (!p.is_tuple) return p.name();
  return json(p.names);
}

json TypeJson(const std::optional<SimpleType>& t) {
  return t ? json(t->ToString()) : json(nullptr);
}

json ToJson(const Expr& e, bool spans);

json ListJson(const std::vector<ExprPtr>& xs, bool spans) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(ToJson(*x, spans));
  return out;
}

json ToJson(const Expr& e, bool spans) {
  json j = std::visit(
      [&](const auto& n) -> json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Var>) {
          return {{"kind", "Var"}, {"name", n.name}};
        } else if constexpr (std::is_same_v<T, node::Literal>) {
          switch (n.kind) {
            case node::Literal::Kind::kUnit:
              return {{"kind", "Const"}, {"unit", true}};
            case node::Literal::Kind::kBool:
              return {{"kind", "Const"}, {"bool", n.boolean}};
            case node::Literal::Kind::kNumber:
              return {{"kind", "Const"},
                      {"number", RationalToString(n.number)}};
            case node::Literal::Kind::kNil:
              return {{"kind", "Nil"}};
          }
          return {};
        } else if constexpr (std::is_same_v<T, node::Lambda>) {
          return {{"kind", "Lambda"},
                  {"param", PatternJson(n.param)},
                  {"type", TypeJson(n.annot)},
                  {"body", ToJson(*n.body, spans)}};
        } else if constexpr (std::is_same_v<T, node::Apply>) {
          return {{"kind", "Apply"},
                  {"fn", ToJson(*n.fn, spans)},
                  {"arg", ToJson(*n.arg, spans)}};
        } else if constexpr (std::is_same_v<T, node::Let>) {
          return {{"kind", "Let"},
                  {"pattern", PatternJson(n.pattern)},
                  {"type", TypeJson(n.annot)},
                  {"value", ToJson(*n.value, spans)},
                  {"body", ToJson(*n.body, spans)}};
        } else if constexpr (std::is_same_v<T, node::LetRec>) {
          json params = json::array();
          for (const auto& p : n.params) {
            params.push_back({{"pattern", PatternJson(p.pattern)},
                              {"type", TypeJson(p.type)}});
          }
          return {{"kind", "LetRec"},
                  {"name", n.name},
                  {"params", params},
                  {"ret", TypeJson(n.ret)},
                  {"fn_body", ToJson(*n.fn_body, spans)},
                  {"body", ToJson(*n.body, spans)}};
        } else if constexpr (std::is_same_v<T, node::If>) {
          return {{"kind", "If"},
                  {"cond", ToJson(*n.cond, spans)},
                  {"then", ToJson(*n.then_branch, spans)},
                  {"else", ToJson(*n.else_branch, spans)}};
        } else if constexpr (std::is_same_v<T, node::Match>) {
          return {{"kind", "Match"},
                  {"scrutinee", ToJson(*n.scrutinee, spans)},
                  {"nil", ToJson(*n.nil_branch, spans)},
                  {"head", n.head},
                  {"tail", n.tail},
                  {"cons", ToJson(*n.cons_branch, spans)}};
        } else if constexpr (std::is_same_v<T, node::Return>) {
          return {{"kind", "UnitM"}, {"value", ToJson(*n.value, spans)}};
        } else if constexpr (std::is_same_v<T, node::Bind>) {
          return {{"kind", "BindM"},
                  {"pattern", PatternJson(n.pattern)},
                  {"value", ToJson(*n.value, spans)},
                  {"body", ToJson(*n.body, spans)}};
        } else if constexpr (std::is_same_v<T, node::Observe>) {
          return {{"kind", "Observe"},
                  {"binder", PatternJson(n.binder)},
                  {"type", TypeJson(n.annot)},
                  {"predicate", ToJson(*n.predicate, spans)},
                  {"prior", ToJson(*n.prior, spans)}};
        } else if constexpr (std::is_same_v<T, node::Infer>) {
          return {{"kind", "Infer"}, {"value", ToJson(*n.value, spans)}};
        } else if constexpr (std::is_same_v<T, node::Ran>) {
          return {{"kind", "Ran"}, {"value", ToJson(*n.value, spans)}};
        } else if constexpr (std::is_same_v<T, node::Prim>) {
          return {{"kind", "Prim"},
                  {"op", std::string(PrimName(n.op))},
                  {"args", ListJson(n.args, spans)}};
        } else if constexpr (std::is_same_v<T, node::Binary>) {
          return {{"kind", "Binary"},
                  {"op", std::string(BinOpText(n.op))},
                  {"lhs", ToJson(*n.lhs, spans)},
                  {"rhs", ToJson(*n.rhs, spans)}};
        } else if constexpr (std::is_same_v<T, node::Unary>) {
          return {{"kind", "Unary"},
                  {"op", n.op == UnOp::kNeg ? "-" : "not"},
                  {"operand", ToJson(*n.operand, spans)}};
        } else if constexpr (std::is_same_v<T, node::Tuple>) {
          return {{"kind", "Tuple"}, {"elems", ListJson(n.elems, spans)}};
        } else {
          return {{"kind", "Ascribe"},
                  {"value", ToJson(*n.value, spans)},
                  {"type", n.type.ToString()}};
        }
      },
      e.node());
  if (spans) {
    j["span"] = {{"start", e.span().start},
                 {"end", e.span().end},
                 {"line", e.span().line},
                 {"column", e.span().column}};
  }
  return j;
}

}  // namespace

std::string Pattern::ToString() const {
  if (!is_tuple) return name();
  std::string out = "(";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ", ";
    out += names[i];
  }
  return out + ")";
}

std::string_view PrimName(PrimOp op) { return Info(op).name; }

std::optional<PrimOp> PrimFromName(std::string_view name) {
  for (const auto& p : kPrims) {
    if (p.name == name) return p.op;
  }
  return std::nullopt;
}

std::pair<int, int> PrimArity(PrimOp op) {
  const auto& info = Info(op);
  return {info.min_args, info.max_args};
}

std::string_view BinOpText(BinOp op) {
  switch (op) {
    case BinOp::kAdd: return "+";
    case BinOp::kSub: return "-";
    case BinOp::kMul: return "*";
    case BinOp::kDiv: return "/";
    case BinOp::kEq: return "=";
    case BinOp::kNe: return "<>";
    case BinOp::kLt: return "<";
    case BinOp::kLe: return "<=";
    case BinOp::kGt: return ">";
    case BinOp::kGe: return ">=";
    case BinOp::kAnd: return "&&";
    case BinOp::kOr: return "||";
    case BinOp::kCons: return "::";
  }
  return "?";
}

Expr::Expr(ExprNode node, SourceSpan span)
    : node_(std::move(node)), span_(std::move(span)), id_(next_id++) {}

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.node().index() != b.node().index()) return false;
  return std::visit(EqualVisitor{b.node()}, a.node());
}

std::vector<std::string> FreeVars(const Expr& e) {
  FreeVarCollector c;
  c.Visit(e, {});
  return c.result;
}

std::string AstToJson(const Expr& e, bool with_spans) {
  return ToJson(e, with_spans).dump(2);
}

}  // namespace privinfer
