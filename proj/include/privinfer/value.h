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

#ifndef PRIVINFER_VALUE_H_
#define PRIVINFER_VALUE_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace privinfer {

class Dist;
struct Closure;

// A symbolic distribution: family tag plus parameters.
//
//   bernoulli(p)            p in [0,1]                 over bool
//   beta(a, b)              a, b > 0                   over [0,1]
//   normal(m, v)            v > 0 is the variance      over real
//   uniform()                                          over [0,1]
//   dirichlet(a1, ..., ak)  ai > 0, k >= 2             over [0,1]^(k-1)
//   multinomial(p1, ..., p(k-1))  sum <= 1             over [k]
struct SymDist {
  enum class Family {
    kBernoulli,
    kBeta,
    kNormal,
    kUniform,
    kDirichlet,
    kMultinomial,
  };

  Family family = Family::kBernoulli;
  std::vector<double> params;

  static SymDist Bernoulli(double p) { return {Family::kBernoulli, {p}}; }
  static SymDist Beta(double a, double b) { return {Family::kBeta, {a, b}}; }
  static SymDist Normal(double m, double v) {
    return {Family::kNormal, {m, v}};
  }
  static SymDist Uniform() { return {Family::kUniform, {}}; }
  static SymDist Dirichlet(std::vector<double> a) {
    return {Family::kDirichlet, std::move(a)};
  }
  static SymDist Multinomial(std::vector<double> p) {
    return {Family::kMultinomial, std::move(p)};
  }

  // Throws DomainError when parameters are outside the family's domain.
  void Validate() const;
  std::string ToString() const;

  friend bool operator==(const SymDist&, const SymDist&) = default;
};

std::string_view FamilyName(SymDist::Family family);
int Compare(const SymDist& a, const SymDist& b);

// Runtime values. Numbers of every numeric type are binary64 reals; finite
// enums carry their constructor index.
class Value {
 public:
  enum class Kind {
    kUnit,
    kBool,
    kReal,
    kEnum,
    kList,
    kTuple,
    kClosure,
    kDist,
    kSymDist,
  };

  Value() = default;

  static Value Unit() { return Value(); }
  static Value Bool(bool b);
  static Value Real(double x);
  static Value Enum(int k);
  static Value List(std::vector<Value> elems);
  static Value Tuple(std::vector<Value> elems);
  static Value Function(std::shared_ptr<const Closure> closure);
  static Value Distribution(std::shared_ptr<const Dist> dist);
  static Value Distribution(Dist dist);
  static Value Symbolic(SymDist sym);

  Kind kind() const { return kind_; }
  bool AsBool() const;
  double AsReal() const;
  int AsEnum() const;
  // Elements of a list or tuple.
  const std::vector<Value>& Elems() const;
  const Closure& AsClosure() const;
  const Dist& AsDist() const;
  const std::shared_ptr<const Dist>& DistPtr() const { return dist_; }
  const SymDist& AsSym() const;

  std::string ToString() const;

 private:
  Kind kind_ = Kind::kUnit;
  bool bool_ = false;
  double real_ = 0.0;
  int enum_ = 0;
  std::shared_ptr<const std::vector<Value>> elems_;
  std::shared_ptr<const Closure> closure_;
  std::shared_ptr<const Dist> dist_;
  std::shared_ptr<const SymDist> sym_;
};

// Total order on values: by kind, then structurally. Closures compare by
// identity.
int Compare(const Value& a, const Value& b);

inline bool operator<(const Value& a, const Value& b) {
  return Compare(a, b) < 0;
}
inline bool operator==(const Value& a, const Value& b) {
  return Compare(a, b) == 0;
}
inline bool operator!=(const Value& a, const Value& b) {
  return Compare(a, b) != 0;
}

}  // namespace privinfer

#endif  // PRIVINFER_VALUE_H_
