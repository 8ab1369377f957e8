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

#include "privinfer/types.h"

#include <algorithm>

namespace privinfer {
namespace {

using Kind = SimpleType::Kind;

bool IsNumericKind(Kind k) {
  return k == Kind::kNat || k == Kind::kReal || k == Kind::kRealPos ||
         k == Kind::kRealExt || k == Kind::kUnitInterval;
}

std::vector<Kind> NumericSupers(Kind k) {
  switch (k) {
    case Kind::kUnitInterval:
      return {Kind::kUnitInterval, Kind::kRealPos, Kind::kReal,
              Kind::kRealExt};
    case Kind::kNat:
      return {Kind::kNat, Kind::kRealPos, Kind::kReal, Kind::kRealExt};
    case Kind::kRealPos:
      return {Kind::kRealPos, Kind::kReal, Kind::kRealExt};
    case Kind::kReal:
      return {Kind::kReal};
    case Kind::kRealExt:
      return {Kind::kRealExt};
    default:
      return {k};
  }
}

bool NumericLe(Kind a, Kind b) {
  auto s = NumericSupers(a);
  return std::find(s.begin(), s.end(), b) != s.end();
}

}  // namespace

SimpleType SimpleType::Enum(int k) {
  SimpleType t(Kind::kEnum);
  t.enum_size_ = k;
  return t;
}

SimpleType SimpleType::List(SimpleType elem) {
  SimpleType t(Kind::kList);
  t.children_.push_back(std::move(elem));
  return t;
}

SimpleType SimpleType::Tuple(std::vector<SimpleType> elems) {
  SimpleType t(Kind::kTuple);
  t.children_ = std::move(elems);
  return t;
}

SimpleType SimpleType::Monad(SimpleType inner) {
  SimpleType t(Kind::kMonad);
  t.children_.push_back(std::move(inner));
  return t;
}

SimpleType SimpleType::Symbolic(SimpleType inner) {
  SimpleType t(Kind::kSymbolic);
  t.children_.push_back(std::move(inner));
  return t;
}

SimpleType SimpleType::Arrow(SimpleType from, SimpleType to) {
  SimpleType t(Kind::kArrow);
  t.children_.push_back(std::move(from));
  t.children_.push_back(std::move(to));
  return t;
}

bool SimpleType::IsBase() const {
  switch (kind_) {
    case Kind::kMonad:
    case Kind::kSymbolic:
    case Kind::kArrow:
      return false;
    case Kind::kList:
      return elem().IsBase();
    case Kind::kTuple:
      return std::all_of(children_.begin(), children_.end(),
                         [](const SimpleType& c) { return c.IsBase(); });
    default:
      return true;
  }
}

bool SimpleType::IsNumeric() const { return IsNumericKind(kind_); }

bool SimpleType::IsFinite() const {
  switch (kind_) {
    case Kind::kUnit:
    case Kind::kBool:
    case Kind::kEnum:
      return true;
    case Kind::kTuple:
      return std::all_of(children_.begin(), children_.end(),
                         [](const SimpleType& c) { return c.IsFinite(); });
    default:
      return false;
  }
}

bool SimpleType::IsWellFormed() const {
  switch (kind_) {
    case Kind::kEnum:
      return enum_size_ >= 1;
    case Kind::kList:
      // Lists of symbolic distributions hold explicit candidate sets.
      return (elem().IsBase() || elem().kind() == Kind::kSymbolic) &&
             elem().IsWellFormed();
    case Kind::kTuple:
      return children_.size() >= 2 &&
             std::all_of(children_.begin(), children_.end(),
                         [](const SimpleType& c) { return c.IsWellFormed(); });
    case Kind::kSymbolic:
      return elem().IsBase() && elem().IsWellFormed();
    case Kind::kMonad:
      if (elem().kind() == Kind::kSymbolic) return elem().IsWellFormed();
      return elem().IsBase() && elem().IsWellFormed();
    case Kind::kArrow:
      return from().IsWellFormed() && to().IsWellFormed();
    default:
      return true;
  }
}

std::string SimpleType::ToString() const {
  switch (kind_) {
    case Kind::kUnit: return "unit";
    case Kind::kBool: return "bool";
    case Kind::kNat: return "nat";
    case Kind::kReal: return "real";
    case Kind::kRealPos: return "real+";
    case Kind::kRealExt: return "real+inf";
    case Kind::kUnitInterval: return "[0,1]";
    case Kind::kEnum: return "[" + std::to_string(enum_size_) + "]";
    case Kind::kList: {
      std::string e = elem().ToString();
      if (elem().kind() == Kind::kArrow || elem().kind() == Kind::kList) {
        e = "(" + e + ")";
      }
      return "list " + e;
    }
    case Kind::kTuple: {
      std::string out = "(";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += " * ";
        out += children_[i].ToString();
      }
      return out + ")";
    }
    case Kind::kMonad: return "M[" + elem().ToString() + "]";
    case Kind::kSymbolic: return "D[" + elem().ToString() + "]";
    case Kind::kArrow: {
      std::string f = from().ToString();
      if (from().kind() == Kind::kArrow) f = "(" + f + ")";
      return f + " -> " + to().ToString();
    }
  }
  return "?";
}

bool operator==(const SimpleType& a, const SimpleType& b) {
  return a.kind_ == b.kind_ && a.enum_size_ == b.enum_size_ &&
         a.children_ == b.children_;
}

bool IsSubtype(const SimpleType& sub, const SimpleType& super) {
  if (sub.IsNumeric() && super.IsNumeric()) {
    return NumericLe(sub.kind(), super.kind());
  }
  if (sub.kind() != super.kind()) return false;
  switch (sub.kind()) {
    case Kind::kEnum:
      return sub.enum_size() == super.enum_size();
    case Kind::kList:
    case Kind::kMonad:
    case Kind::kSymbolic:
      return IsSubtype(sub.elem(), super.elem());
    case Kind::kTuple: {
      if (sub.children().size() != super.children().size()) return false;
      for (std::size_t i = 0; i < sub.children().size(); ++i) {
        if (!IsSubtype(sub.children()[i], super.children()[i])) return false;
      }
      return true;
    }
    case Kind::kArrow:
      return IsSubtype(super.from(), sub.from()) &&
             IsSubtype(sub.to(), super.to());
    default:
      return true;
  }
}

bool Join(const SimpleType& a, const SimpleType& b, SimpleType* out) {
  if (a.IsNumeric() && b.IsNumeric()) {
    auto sa = NumericSupers(a.kind());
    auto sb = NumericSupers(b.kind());
    for (Kind k : sa) {  // supers are listed from least to greatest
      if (std::find(sb.begin(), sb.end(), k) != sb.end()) {
        *out = k == Kind::kNat           ? SimpleType::Nat()
               : k == Kind::kUnitInterval ? SimpleType::UnitInterval()
               : k == Kind::kRealPos      ? SimpleType::RealPos()
               : k == Kind::kReal         ? SimpleType::Real()
                                          : SimpleType::RealExt();
        return true;
      }
    }
    return false;
  }
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::kList:
    case Kind::kMonad:
    case Kind::kSymbolic: {
      SimpleType inner;
      if (!Join(a.elem(), b.elem(), &inner)) return false;
      *out = a.kind() == Kind::kList    ? SimpleType::List(inner)
             : a.kind() == Kind::kMonad ? SimpleType::Monad(inner)
                                        : SimpleType::Symbolic(inner);
      return true;
    }
    case Kind::kTuple: {
      if (a.children().size() != b.children().size()) return false;
      std::vector<SimpleType> elems;
      for (std::size_t i = 0; i < a.children().size(); ++i) {
        SimpleType j;
        if (!Join(a.children()[i], b.children()[i], &j)) return false;
        elems.push_back(j);
      }
      *out = SimpleType::Tuple(std::move(elems));
      return true;
    }
    default:
      if (a == b) {
        *out = a;
        return true;
      }
      return false;
  }
}

}  // namespace privinfer
