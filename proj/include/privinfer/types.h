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

#ifndef PRIVINFER_TYPES_H_
#define PRIVINFER_TYPES_H_

#include <string>
#include <vector>

namespace privinfer {

// Simple (non-relational) types of the language.
//
//   base  ::= unit | bool | nat | real | real+ | real+inf | [0,1] | [k]
//           | list base | (base * ... * base)
//   type  ::= base | M[base] | M[D[base]] | D[base] | type -> type
//
// Tuples are an extension used for parameter pairs and simplex points; a
// tuple of base types is itself a base type.
class SimpleType {
 public:
  enum class Kind {
    kUnit,
    kBool,
    kNat,
    kReal,
    kRealPos,
    kRealExt,
    kUnitInterval,
    kEnum,
    kList,
    kTuple,
    kMonad,
    kSymbolic,
    kArrow,
  };

  SimpleType() : kind_(Kind::kUnit) {}

  static SimpleType Unit() { return SimpleType(Kind::kUnit); }
  static SimpleType Bool() { return SimpleType(Kind::kBool); }
  static SimpleType Nat() { return SimpleType(Kind::kNat); }
  static SimpleType Real() { return SimpleType(Kind::kReal); }
  static SimpleType RealPos() { return SimpleType(Kind::kRealPos); }
  static SimpleType RealExt() { return SimpleType(Kind::kRealExt); }
  static SimpleType UnitInterval() { return SimpleType(Kind::kUnitInterval); }
  static SimpleType Enum(int k);
  static SimpleType List(SimpleType elem);
  static SimpleType Tuple(std::vector<SimpleType> elems);
  static SimpleType Monad(SimpleType inner);
  static SimpleType Symbolic(SimpleType inner);
  static SimpleType Arrow(SimpleType from, SimpleType to);

  Kind kind() const { return kind_; }
  int enum_size() const { return enum_size_; }
  const std::vector<SimpleType>& children() const { return children_; }
  const SimpleType& elem() const { return children_.at(0); }
  const SimpleType& from() const { return children_.at(0); }
  const SimpleType& to() const { return children_.at(1); }

  bool IsBase() const;
  bool IsNumeric() const;
  // True when the type has finitely many inhabitants (bool, unit, [k] and
  // tuples of those).
  bool IsFinite() const;
  // Checks the grammar restrictions: monads and symbolic distributions only
  // over base types (or M over D[base]); lists of bases or of D[base].
  bool IsWellFormed() const;

  std::string ToString() const;

  friend bool operator==(const SimpleType& a, const SimpleType& b);
  friend bool operator!=(const SimpleType& a, const SimpleType& b) {
    return !(a == b);
  }

 private:
  explicit SimpleType(Kind kind) : kind_(kind) {}

  Kind kind_;
  int enum_size_ = 0;
  std::vector<SimpleType> children_;
};

// Numeric subsumption [0,1] <= real+ <= real, nat <= real+, real+ <= real+inf,
// lifted covariantly through lists, tuples, M, D and arrow codomains
// (contravariantly through arrow domains).
bool IsSubtype(const SimpleType& sub, const SimpleType& super);

// Least upper bound under IsSubtype, if one exists.
bool Join(const SimpleType& a, const SimpleType& b, SimpleType* out);

}  // namespace privinfer

#endif  // PRIVINFER_TYPES_H_
