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

#ifndef PRIVINFER_RELTYPE_H_
#define PRIVINFER_RELTYPE_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "privinfer/divergence.h"
#include "privinfer/error.h"
#include "privinfer/index_expr.h"
#include "privinfer/numeric.h"
#include "privinfer/types.h"

namespace privinfer {

// Divergence index of a relational monad. The epsilon of epsD is symbolic.
struct FIndex {
  FDivKind::Tag tag = FDivKind::Tag::kSD;
  IndexExpr eps;

  static FIndex SD() { return {FDivKind::Tag::kSD, {}}; }
  static FIndex HD() { return {FDivKind::Tag::kHD, {}}; }
  static FIndex KL() { return {FDivKind::Tag::kKL, {}}; }
  static FIndex EpsD(IndexExpr eps) {
    return {FDivKind::Tag::kEpsD, std::move(eps)};
  }

  std::string ToString() const;
  FIndex Rename(const std::string& from, const std::string& to) const;
  friend bool operator==(const FIndex&, const FIndex&) = default;
};

// f1 <= f2: a bound for f1 implies the same bound for f2. Only equal tags
// compare; epsD is antitone in epsilon, so epsD(e1) <= epsD(e2) iff e1 <= e2.
bool FIndexLe(const FIndex& a, const FIndex& b);

// Composability of monad indices: equal SD/HD/KL tags compose to
// themselves, epsD(e1) with epsD(e2) to epsD(e1 + e2).
std::optional<FIndex> ComposeIndex(const FIndex& a, const FIndex& b);

// Terms of the assertion language.
struct RelExpr {
  enum class Kind { kLeft, kRight, kVar, kNumber, kAdd, kSub, kMul, kAbs };
  Kind kind = Kind::kNumber;
  std::string name;  // kLeft / kRight / kVar
  Rational number;   // kNumber
  std::vector<RelExpr> kids;

  std::string ToString() const;
  RelExpr Rename(const std::string& from, const std::string& to) const;
  // Reads a nonrelational term as an index; nullopt for instances and
  // subtraction.
  std::optional<IndexExpr> AsIndex() const;
  friend bool operator==(const RelExpr&, const RelExpr&) = default;
};

struct Assertion {
  enum class Kind {
    kTrue,
    kFalse,
    kNot,
    kAnd,
    kOr,
    kImplies,
    // x< = x> for the refinement's binder (written '=').
    kDiag,
    // lhs Phi rhs.
    kAdj,
    // lhs op rhs with op one of = < <= > >=.
    kCmp,
    // f(lhs, rhs) <= bound.
    kDiv,
  };
  Kind kind = Kind::kTrue;
  std::vector<Assertion> kids;
  std::string op;
  RelExpr lhs, rhs;
  FIndex f;
  IndexExpr bound;

  static Assertion True() { return {}; }
  static Assertion Diag() {
    Assertion a;
    a.kind = Kind::kDiag;
    return a;
  }
  static Assertion And(std::vector<Assertion> kids);

  std::string ToString() const;
  Assertion Rename(const std::string& from, const std::string& to) const;
  // Conjuncts of a top-level conjunction (the assertion itself otherwise).
  std::vector<Assertion> Conjuncts() const;
  friend bool operator==(const Assertion&, const Assertion&) = default;
};

struct RelType {
  enum class Kind { kBase, kMonad, kArrow };
  Kind kind = Kind::kBase;
  // kBase and kMonad: {binder :: type | refinement}.
  std::string binder = "_";
  SimpleType type;
  Assertion refinement;
  // kMonad.
  FIndex f;
  IndexExpr delta;
  // kArrow: Pi (from.binder :: from). to.
  std::shared_ptr<const RelType> from;
  std::shared_ptr<const RelType> to;

  static RelType Base(std::string binder, SimpleType type, Assertion refinement);
  static RelType Monad(FIndex f, IndexExpr delta, std::string binder,
                       SimpleType type, Assertion refinement);
  static RelType Arrow(RelType from, RelType to);

  // The simple type this relational type refines.
  SimpleType Erase() const;
  std::string ToString() const;
  // Renames a variable in every assertion and index. Binders equal to `from`
  // are renamed too.
  RelType Rename(const std::string& from, const std::string& to) const;
  // Argument types of an arrow chain, and its final result.
  std::vector<const RelType*> Params() const;
  const RelType& Result() const;
};

struct RelSignature {
  std::string name;
  RelType type;
  SourceSpan span;
};

// A file of "name : type" declarations.
std::vector<RelSignature> ParseRelSignatures(std::string_view text,
                                             const std::string& file);
RelType ParseRelType(std::string_view text);
IndexExpr ParseIndex(std::string_view text);

}  // namespace privinfer

#endif  // PRIVINFER_RELTYPE_H_
