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

#ifndef PRIVINFER_AST_H_
#define PRIVINFER_AST_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "privinfer/error.h"
#include "privinfer/numeric.h"
#include "privinfer/types.h"

namespace privinfer {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// A binder: either a single variable or a flat tuple of variables.
struct Pattern {
  std::vector<std::string> names;
  bool is_tuple = false;

  static Pattern Var(std::string name) { return {{std::move(name)}, false}; }
  static Pattern Tuple(std::vector<std::string> names) {
    return {std::move(names), true};
  }
  const std::string& name() const { return names.at(0); }
  std::string ToString() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;
};

struct Param {
  Pattern pattern;
  std::optional<SimpleType> type;
};

enum class PrimOp {
  kBernoulli,
  kNormal,
  kBeta,
  kUniform,
  kDirichlet,
  kMultinomial,
  kLapMech,
  kGaussMech,
  kExpMech,
  kGaussSigma,
  kGetParams,
  kGetMean,
  kHellinger,
  kStatDist,
  kMax,
  kMin,
  kSqrt,
  kExp,
  kLog,
  kAbs,
};

std::string_view PrimName(PrimOp op);
std::optional<PrimOp> PrimFromName(std::string_view name);
// Accepted argument counts; dirichlet and multinomial are variadic (min..max
// with max == -1), expMech accepts an optional explicit output list.
std::pair<int, int> PrimArity(PrimOp op);

enum class BinOp { kAdd, kSub, kMul, kDiv, kEq, kNe, kLt, kLe, kGt, kGe,
                   kAnd, kOr, kCons };
enum class UnOp { kNeg, kNot };

std::string_view BinOpText(BinOp op);

namespace node {

struct Var { std::string name; };
struct Literal {
  enum class Kind { kUnit, kBool, kNumber, kNil };
  Kind kind = Kind::kUnit;
  bool boolean = false;
  Rational number;
};
struct Lambda {
  Pattern param;
  std::optional<SimpleType> annot;
  ExprPtr body;
};
struct Apply { ExprPtr fn; ExprPtr arg; };
struct Let {
  Pattern pattern;
  std::optional<SimpleType> annot;
  ExprPtr value;
  ExprPtr body;
};
struct LetRec {
  std::string name;
  std::vector<Param> params;
  std::optional<SimpleType> ret;
  ExprPtr fn_body;
  ExprPtr body;
};
struct If { ExprPtr cond; ExprPtr then_branch; ExprPtr else_branch; };
struct Match {
  ExprPtr scrutinee;
  ExprPtr nil_branch;
  std::string head;
  std::string tail;
  ExprPtr cons_branch;
};
struct Return { ExprPtr value; };
struct Bind { Pattern pattern; ExprPtr value; ExprPtr body; };
// observe x => predicate in prior
struct Observe {
  Pattern binder;
  std::optional<SimpleType> annot;
  ExprPtr predicate;
  ExprPtr prior;
};
struct Infer { ExprPtr value; };
struct Ran { ExprPtr value; };
struct Prim { PrimOp op; std::vector<ExprPtr> args; };
struct Binary { BinOp op; ExprPtr lhs; ExprPtr rhs; };
struct Unary { UnOp op; ExprPtr operand; };
struct Tuple { std::vector<ExprPtr> elems; };
struct Ascribe { ExprPtr value; SimpleType type; };

}  // namespace node

using ExprNode =
    std::variant<node::Var, node::Literal, node::Lambda, node::Apply,
                 node::Let, node::LetRec, node::If, node::Match, node::Return,
                 node::Bind, node::Observe, node::Infer, node::Ran, node::Prim,
                 node::Binary, node::Unary, node::Tuple, node::Ascribe>;

// Immutable AST node. Every node carries a span and a process-unique id used
// to key side tables (e.g. types recorded by the checker).
class Expr {
 public:
  Expr(ExprNode node, SourceSpan span);

  const ExprNode& node() const { return node_; }
  const SourceSpan& span() const { return span_; }
  int id() const { return id_; }

  template <typename T>
  const T* As() const { return std::get_if<T>(&node_); }
  template <typename T>
  bool Is() const { return std::holds_alternative<T>(node_); }

 private:
  ExprNode node_;
  SourceSpan span_;
  int id_;
};

template <typename T>
ExprPtr MakeExpr(T node, SourceSpan span = {}) {
  return std::make_shared<const Expr>(ExprNode(std::move(node)),
                                      std::move(span));
}

// Equality up to spans and node ids.
bool StructurallyEqual(const Expr& a, const Expr& b);

// Free variables of `e`, in first-occurrence order.
std::vector<std::string> FreeVars(const Expr& e);

// Serializes the AST to JSON text (see docs in README: "kind" tags mirror the
// node names).
std::string AstToJson(const Expr& e, bool with_spans = true);

}  // namespace privinfer

#endif  // PRIVINFER_AST_H_
