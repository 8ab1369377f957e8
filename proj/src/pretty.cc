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

#include "privinfer/parser.h"

namespace privinfer {
namespace {

// Binding strength of the printed form; a child is parenthesized when its
// level is below what the context requires.
enum Level {
  kPrefix = 0,
  kOr = 1,
  kAnd = 2,
  kCmp = 3,
  kCons = 4,
  kAdd = 5,
  kMul = 6,
  kUnary = 7,
  kApp = 8,
  kAtom = 9,
};

int BinLevel(BinOp op) {
  switch (op) {
    case BinOp::kOr: return kOr;
    case BinOp::kAnd: return kAnd;
    case BinOp::kEq:
    case BinOp::kNe:
    case BinOp::kLt:
    case BinOp::kLe:
    case BinOp::kGt:
    case BinOp::kGe: return kCmp;
    case BinOp::kCons: return kCons;
    case BinOp::kAdd:
    case BinOp::kSub: return kAdd;
    case BinOp::kMul:
    case BinOp::kDiv: return kMul;
  }
  return kAtom;
}

std::string ParamText(const Pattern& p, const std::optional<SimpleType>& t) {
  if (!p.is_tuple && !t) return p.name();
  std::string out = "(";
  for (std::size_t i = 0; i < p.names.size(); ++i) {
    if (i) out += ", ";
    out += p.names[i];
  }
  if (t) out += " : " + t->ToString();
  return out + ")";
}

class Printer {
 public:
  // Returns the text of `e` and its level.
  std::pair<std::string, int> Print(const Expr& e) {
    return std::visit([this](const auto& n) { return Do(n); }, e.node());
  }

  std::string At(const Expr& e, int required) {
    auto [text, level] = Print(e);
    if (level < required) return "(" + text + ")";
    return text;
  }

 private:
  using Out = std::pair<std::string, int>;

  Out Do(const node::Var& n) { return {n.name, kAtom}; }

  Out Do(const node::Literal& n) {
    switch (n.kind) {
      case node::Literal::Kind::kUnit: return {"()", kAtom};
      case node::Literal::Kind::kNil: return {"[]", kAtom};
      case node::Literal::Kind::kBool:
        return {n.boolean ? "true" : "false", kAtom};
      case node::Literal::Kind::kNumber:
        return {RationalToString(n.number), n.number < 0 ? kUnary : kAtom};
    }
    return {"()", kAtom};
  }

  Out Do(const node::Lambda& n) {
    return {"fun " + ParamText(n.param, n.annot) + " -> " + At(*n.body, 0),
            kPrefix};
  }

  Out Do(const node::Apply& n) {
    int fn_level = n.fn->Is<node::Apply>() ? kApp : kAtom;
    return {At(*n.fn, fn_level) + " " + At(*n.arg, kAtom), kApp};
  }

  Out Do(const node::Let& n) {
    std::string head = "let ";
    if (n.pattern.is_tuple) {
      head += ParamText(n.pattern, std::nullopt);
    } else {
      head += n.pattern.name();
    }
    if (n.annot) head += " : " + n.annot->ToString();
    return {head + " = " + At(*n.value, 0) + " in\n" + At(*n.body, 0),
            kPrefix};
  }

  Out Do(const node::LetRec& n) {
    std::string head = "let rec " + n.name;
    for (const Param& p : n.params) head += " " + ParamText(p.pattern, p.type);
    if (n.ret) head += " : " + n.ret->ToString();
    return {head + " =\n" + At(*n.fn_body, 0) + " in\n" + At(*n.body, 0),
            kPrefix};
  }

  Out Do(const node::If& n) {
    return {"if " + At(*n.cond, 0) + " then " + At(*n.then_branch, 0) +
                " else " + At(*n.else_branch, 0),
            kPrefix};
  }

  Out Do(const node::Match& n) {
    return {"match " + At(*n.scrutinee, 0) + " with\n| [] -> " +
                At(*n.nil_branch, kOr) + "\n| " + n.head + " :: " + n.tail +
                " -> " + At(*n.cons_branch, 0),
            kPrefix};
  }

  Out Do(const node::Return& n) {
    return {"return " + At(*n.value, kApp), kApp};
  }

  Out Do(const node::Bind& n) {
    std::string pat = n.pattern.is_tuple ? ParamText(n.pattern, std::nullopt)
                                         : n.pattern.name();
    return {"mlet " + pat + " = " + At(*n.value, 0) + " in\n" + At(*n.body, 0),
            kPrefix};
  }

  Out Do(const node::Observe& n) {
    return {"observe (fun " + ParamText(n.binder, n.annot) + " -> " +
                At(*n.predicate, 0) + ") " + At(*n.prior, kAtom),
            kPrefix};
  }

  Out Do(const node::Infer& n) {
    return {"infer " + At(*n.value, kApp), kApp};
  }

  Out Do(const node::Ran& n) { return {"ran " + At(*n.value, kApp), kApp}; }

  Out Do(const node::Prim& n) {
    std::string out(PrimName(n.op));
    out += "(";
    for (std::size_t i = 0; i < n.args.size(); ++i) {
      if (i) out += ", ";
      out += At(*n.args[i], 0);
    }
    return {out + ")", kAtom};
  }

  Out Do(const node::Binary& n) {
    int level = BinLevel(n.op);
    int lhs = level, rhs = level + 1;
    if (n.op == BinOp::kCons) {
      lhs = level + 1;
      rhs = level;
    } else if (level == kCmp) {
      lhs = level + 1;
    }
    return {At(*n.lhs, lhs) + " " + std::string(BinOpText(n.op)) + " " +
                At(*n.rhs, rhs),
            level};
  }

  Out Do(const node::Unary& n) {
    if (n.op == UnOp::kNot) return {"not " + At(*n.operand, kUnary), kUnary};
    std::string inner = At(*n.operand, kUnary);
    const auto* lit = n.operand->As<node::Literal>();
    if ((lit && lit->kind == node::Literal::Kind::kNumber) ||
        inner.front() == '-') {
      inner = "(" + inner + ")";
    }
    return {"-" + inner, kUnary};
  }

  Out Do(const node::Tuple& n) {
    std::string out = "(";
    for (std::size_t i = 0; i < n.elems.size(); ++i) {
      if (i) out += ", ";
      out += At(*n.elems[i], 0);
    }
    return {out + ")", kAtom};
  }

  Out Do(const node::Ascribe& n) {
    return {"(" + At(*n.value, 0) + " : " + n.type.ToString() + ")", kAtom};
  }
};

}  // namespace

std::string Pretty(const Expr& e) { return Printer().At(e, 0); }

}  // namespace privinfer
