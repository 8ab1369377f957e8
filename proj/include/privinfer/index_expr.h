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

#ifndef PRIVINFER_INDEX_EXPR_H_
#define PRIVINFER_INDEX_EXPR_H_

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "privinfer/numeric.h"

namespace privinfer {

// A symbol in a monad index: a plain name ("eps", "rho") or a named function
// of program variables ("s(hV, kV)"). All symbols denote nonnegative reals.
struct IndexAtom {
  std::string name;
  std::vector<std::string> args;

  std::string ToString() const;
  friend auto operator<=>(const IndexAtom&, const IndexAtom&) = default;
};

// Product of atoms, kept sorted.
using Monomial = std::vector<IndexAtom>;

// Sum of monomials with nonnegative rational coefficients.
using Poly = std::map<Monomial, Rational>;

// max(p1, ..., pn) of polynomials, or +inf. The empty max is 0.
class IndexExpr {
 public:
  IndexExpr() = default;

  static IndexExpr Zero() { return IndexExpr(); }
  static IndexExpr Constant(const Rational& c);
  static IndexExpr Atom(IndexAtom atom);
  static IndexExpr Var(const std::string& name) { return Atom({name, {}}); }
  static IndexExpr Infinity();

  bool is_infinite() const { return infinite_; }
  bool IsZero() const;
  const std::vector<Poly>& alternatives() const { return alts_; }

  friend IndexExpr operator+(const IndexExpr& a, const IndexExpr& b);
  friend IndexExpr operator*(const IndexExpr& a, const IndexExpr& b);
  static IndexExpr Max(const IndexExpr& a, const IndexExpr& b);

  // Renames the program variable `from` wherever it occurs: as an atom, or
  // as an argument of a function atom.
  IndexExpr Rename(const std::string& from, const std::string& to) const;
  // Replaces the plain atom `name` by an expression.
  IndexExpr Substitute(const std::string& name, const IndexExpr& by) const;

  std::set<std::string> VariableNames() const;

  double Evaluate(const std::function<double(const IndexAtom&)>& atom) const;

  std::string ToString() const;

  friend bool operator==(const IndexExpr& a, const IndexExpr& b) {
    return a.infinite_ == b.infinite_ && a.alts_ == b.alts_;
  }

 private:
  void Simplify();

  bool infinite_ = false;
  std::vector<Poly> alts_;
};

// Sound check of a <= b for every nonnegative value of the atoms: each
// polynomial of `a` must be dominated coefficientwise by one of `b`.
bool IndexLe(const IndexExpr& a, const IndexExpr& b);

}  // namespace privinfer

#endif  // PRIVINFER_INDEX_EXPR_H_
