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

#include "privinfer/reltype.h"

namespace privinfer {

std::string FIndex::ToString() const {
  switch (tag) {
    case FDivKind::Tag::kSD: return "SD";
    case FDivKind::Tag::kHD: return "HD";
    case FDivKind::Tag::kKL: return "KL";
    case FDivKind::Tag::kEpsD: return "epsD(" + eps.ToString() + ")";
  }
  return "?";
}

FIndex FIndex::Rename(const std::string& from, const std::string& to) const {
  FIndex out = *this;
  out.eps = eps.Rename(from, to);
  return out;
}

bool FIndexLe(const FIndex& a, const FIndex& b) {
  if (a.tag != b.tag) return false;
  if (a.tag != FDivKind::Tag::kEpsD) return true;
  return IndexLe(a.eps, b.eps);
}

std::optional<FIndex> ComposeIndex(const FIndex& a, const FIndex& b) {
  if (a.tag != b.tag) return std::nullopt;
  if (a.tag == FDivKind::Tag::kEpsD) return FIndex::EpsD(a.eps + b.eps);
  return a;
}

// --- RelExpr ---------------------------------------------------------------

std::string RelExpr::ToString() const {
  switch (kind) {
    case Kind::kLeft: return name + "<";
    case Kind::kRight: return name + ">";
    case Kind::kVar: return name;
    case Kind::kNumber: return RationalToString(number);
    case Kind::kAdd: return "(" + kids[0].ToString() + " + " + kids[1].ToString() + ")";
    case Kind::kSub: return "(" + kids[0].ToString() + " - " + kids[1].ToString() + ")";
    case Kind::kMul: return kids[0].ToString() + " * " + kids[1].ToString();
    case Kind::kAbs: return "|" + kids[0].ToString() + "|";
  }
  return "?";
}

RelExpr RelExpr::Rename(const std::string& from, const std::string& to) const {
  RelExpr out = *this;
  if (!name.empty() && name == from) out.name = to;
  for (RelExpr& k : out.kids) k = k.Rename(from, to);
  return out;
}

std::optional<IndexExpr> RelExpr::AsIndex() const {
  switch (kind) {
    case Kind::kVar: return IndexExpr::Var(name);
    case Kind::kNumber:
      if (number < 0) return std::nullopt;
      return IndexExpr::Constant(number);
    case Kind::kAdd:
    case Kind::kMul: {
      auto a = kids[0].AsIndex();
      auto b = kids[1].AsIndex();
      if (!a || !b) return std::nullopt;
      return kind == Kind::kAdd ? *a + *b : *a * *b;
    }
    default: return std::nullopt;
  }
}

// --- Assertion -------------------------------------------------------------

Assertion Assertion::And(std::vector<Assertion> kids) {
  std::vector<Assertion> flat;
  for (Assertion& k : kids) {
    if (k.kind == Kind::kTrue) continue;
    if (k.kind == Kind::kAnd) {
      flat.insert(flat.end(), k.kids.begin(), k.kids.end());
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return True();
  if (flat.size() == 1) return flat[0];
  Assertion a;
  a.kind = Kind::kAnd;
  a.kids = std::move(flat);
  return a;
}

std::string Assertion::ToString() const {
  auto join = [&](const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (i) s += sep;
      bool paren = kids[i].kind == Kind::kOr || kids[i].kind == Kind::kAnd ||
                   kids[i].kind == Kind::kImplies;
      s += paren ? "(" + kids[i].ToString() + ")" : kids[i].ToString();
    }
    return s;
  };
  switch (kind) {
    case Kind::kTrue: return "true";
    case Kind::kFalse: return "false";
    case Kind::kNot: return "~(" + kids[0].ToString() + ")";
    case Kind::kAnd: return join(" /\\ ");
    case Kind::kOr: return join(" \\/ ");
    case Kind::kImplies: return join(" => ");
    case Kind::kDiag: return "=";
    case Kind::kAdj: return lhs.ToString() + " Phi " + rhs.ToString();
    case Kind::kCmp: return lhs.ToString() + " " + op + " " + rhs.ToString();
    case Kind::kDiv:
      return f.ToString() + "(" + lhs.ToString() + ", " + rhs.ToString() +
             ") <= " + bound.ToString();
  }
  return "?";
}

Assertion Assertion::Rename(const std::string& from,
                            const std::string& to) const {
  Assertion out = *this;
  for (Assertion& k : out.kids) k = k.Rename(from, to);
  out.lhs = lhs.Rename(from, to);
  out.rhs = rhs.Rename(from, to);
  out.f = f.Rename(from, to);
  out.bound = bound.Rename(from, to);
  return out;
}

std::vector<Assertion> Assertion::Conjuncts() const {
  if (kind == Kind::kAnd) return kids;
  if (kind == Kind::kTrue) return {};
  return {*this};
}

// --- RelType ---------------------------------------------------------------

RelType RelType::Base(std::string binder, SimpleType type,
                      Assertion refinement) {
  RelType t;
  t.kind = Kind::kBase;
  t.binder = std::move(binder);
  t.type = std::move(type);
  t.refinement = std::move(refinement);
  return t;
}

RelType RelType::Monad(FIndex f, IndexExpr delta, std::string binder,
                       SimpleType type, Assertion refinement) {
  RelType t = Base(std::move(binder), std::move(type), std::move(refinement));
  t.kind = Kind::kMonad;
  t.f = std::move(f);
  t.delta = std::move(delta);
  return t;
}

RelType RelType::Arrow(RelType from, RelType to) {
  RelType t;
  t.kind = Kind::kArrow;
  t.binder = from.binder;
  t.from = std::make_shared<const RelType>(std::move(from));
  t.to = std::make_shared<const RelType>(std::move(to));
  return t;
}

SimpleType RelType::Erase() const {
  switch (kind) {
    case Kind::kBase: return type;
    case Kind::kMonad: return SimpleType::Monad(type);
    case Kind::kArrow: return SimpleType::Arrow(from->Erase(), to->Erase());
  }
  return type;
}

std::string RelType::ToString() const {
  auto refined = [&] {
    return "{" + binder + " :: " + type.ToString() + " | " +
           refinement.ToString() + "}";
  };
  switch (kind) {
    case Kind::kBase: return refined();
    case Kind::kMonad:
      return "M[" + f.ToString() + ", " + delta.ToString() + "]" + refined();
    case Kind::kArrow: {
      std::string lhs = from->ToString();
      if (from->kind == Kind::kArrow) lhs = "(" + lhs + ")";
      return lhs + " -> " + to->ToString();
    }
  }
  return "?";
}

RelType RelType::Rename(const std::string& old_name,
                        const std::string& new_name) const {
  RelType t = *this;
  if (t.binder == old_name) t.binder = new_name;
  t.refinement = refinement.Rename(old_name, new_name);
  t.f = f.Rename(old_name, new_name);
  t.delta = delta.Rename(old_name, new_name);
  if (kind == Kind::kArrow) {
    t.from = std::make_shared<const RelType>(from->Rename(old_name, new_name));
    t.to = std::make_shared<const RelType>(to->Rename(old_name, new_name));
    t.binder = t.from->binder;
  }
  return t;
}

std::vector<const RelType*> RelType::Params() const {
  std::vector<const RelType*> out;
  for (const RelType* t = this; t->kind == Kind::kArrow; t = t->to.get()) {
    out.push_back(t->from.get());
  }
  return out;
}

const RelType& RelType::Result() const {
  const RelType* t = this;
  while (t->kind == Kind::kArrow) t = t->to.get();
  return *t;
}

}  // namespace privinfer
