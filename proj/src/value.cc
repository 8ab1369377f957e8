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

#include "privinfer/value.h"

#include <cmath>
#include <functional>

#include "privinfer/dist.h"
#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {

std::string_view FamilyName(SymDist::Family family) {
  switch (family) {
    case SymDist::Family::kBernoulli: return "bernoulli";
    case SymDist::Family::kBeta: return "beta";
    case SymDist::Family::kNormal: return "normal";
    case SymDist::Family::kUniform: return "uniform";
    case SymDist::Family::kDirichlet: return "dirichlet";
    case SymDist::Family::kMultinomial: return "multinomial";
  }
  return "?";
}

void SymDist::Validate() const {
  auto fail = [this](const std::string& why) {
    throw DomainError("invalid " + ToString() + ": " + why);
  };
  for (double p : params) {
    if (!std::isfinite(p)) fail("non-finite parameter");
  }
  auto arity = [&](std::size_t n) {
    if (params.size() != n) fail("wrong number of parameters");
  };
  switch (family) {
    case Family::kBernoulli:
      arity(1);
      if (params[0] < 0 || params[0] > 1) fail("p must lie in [0,1]");
      break;
    case Family::kBeta:
      arity(2);
      if (params[0] <= 0 || params[1] <= 0) fail("a and b must be positive");
      break;
    case Family::kNormal:
      arity(2);
      if (params[1] <= 0) fail("variance must be positive");
      break;
    case Family::kUniform:
      arity(0);
      break;
    case Family::kDirichlet:
      if (params.size() < 2) fail("needs at least two concentrations");
      for (double a : params) {
        if (a <= 0) fail("concentrations must be positive");
      }
      break;
    case Family::kMultinomial: {
      if (params.empty()) fail("needs at least one probability");
      double sum = 0;
      for (double p : params) {
        if (p < 0 || p > 1) fail("probabilities must lie in [0,1]");
        sum += p;
      }
      if (sum > 1 + 1e-12) fail("probabilities sum above 1");
      break;
    }
  }
}

std::string SymDist::ToString() const {
  std::string out(FamilyName(family));
  out += "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += FormatDouble(params[i]);
  }
  return out + ")";
}

int Compare(const SymDist& a, const SymDist& b) {
  if (a.family != b.family) return a.family < b.family ? -1 : 1;
  if (a.params.size() != b.params.size()) {
    return a.params.size() < b.params.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i] != b.params[i]) return a.params[i] < b.params[i] ? -1 : 1;
  }
  return 0;
}

Value Value::Bool(bool b) {
  Value v;
  v.kind_ = Kind::kBool;
  v.bool_ = b;
  return v;
}

Value Value::Real(double x) {
  Value v;
  v.kind_ = Kind::kReal;
  v.real_ = x == 0.0 ? 0.0 : x;  // fold -0 into +0
  return v;
}

Value Value::Enum(int k) {
  Value v;
  v.kind_ = Kind::kEnum;
  v.enum_ = k;
  return v;
}

Value Value::List(std::vector<Value> elems) {
  Value v;
  v.kind_ = Kind::kList;
  v.elems_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return v;
}

Value Value::Tuple(std::vector<Value> elems) {
  Value v;
  v.kind_ = Kind::kTuple;
  v.elems_ = std::make_shared<const std::vector<Value>>(std::move(elems));
  return v;
}

Value Value::Function(std::shared_ptr<const Closure> closure) {
  Value v;
  v.kind_ = Kind::kClosure;
  v.closure_ = std::move(closure);
  return v;
}

Value Value::Distribution(std::shared_ptr<const Dist> dist) {
  Value v;
  v.kind_ = Kind::kDist;
  v.dist_ = std::move(dist);
  return v;
}

Value Value::Distribution(Dist dist) {
  return Distribution(std::make_shared<const Dist>(std::move(dist)));
}

Value Value::Symbolic(SymDist sym) {
  Value v;
  v.kind_ = Kind::kSymDist;
  v.sym_ = std::make_shared<const SymDist>(std::move(sym));
  return v;
}

namespace {
[[noreturn]] void WrongKind(const char* want, const Value& v) {
  throw EvalError("dynamic type error",
                  std::string("expected ") + want + ", found " + v.ToString());
}
}  // namespace

bool Value::AsBool() const {
  if (kind_ != Kind::kBool) WrongKind("bool", *this);
  return bool_;
}

double Value::AsReal() const {
  if (kind_ != Kind::kReal) WrongKind("number", *this);
  return real_;
}

int Value::AsEnum() const {
  if (kind_ != Kind::kEnum) WrongKind("enum constructor", *this);
  return enum_;
}

const std::vector<Value>& Value::Elems() const {
  if (kind_ != Kind::kList && kind_ != Kind::kTuple) {
    WrongKind("list or tuple", *this);
  }
  return *elems_;
}

const Closure& Value::AsClosure() const {
  if (kind_ != Kind::kClosure) WrongKind("function", *this);
  return *closure_;
}

const Dist& Value::AsDist() const {
  if (kind_ != Kind::kDist) WrongKind("distribution", *this);
  return *dist_;
}

const SymDist& Value::AsSym() const {
  if (kind_ != Kind::kSymDist) WrongKind("symbolic distribution", *this);
  return *sym_;
}

std::string Value::ToString() const {
  switch (kind_) {
    case Kind::kUnit: return "()";
    case Kind::kBool: return bool_ ? "true" : "false";
    case Kind::kReal: return FormatDouble(real_);
    case Kind::kEnum: return "#" + std::to_string(enum_);
    case Kind::kList:
    case Kind::kTuple: {
      std::string out = kind_ == Kind::kList ? "[" : "(";
      for (std::size_t i = 0; i < elems_->size(); ++i) {
        if (i) out += ", ";
        out += (*elems_)[i].ToString();
      }
      return out + (kind_ == Kind::kList ? "]" : ")");
    }
    case Kind::kClosure: return "<fun>";
    case Kind::kDist: return dist_->ToString();
    case Kind::kSymDist: return sym_->ToString();
  }
  return "?";
}

int Compare(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Value::Kind::kUnit: return 0;
    case Value::Kind::kBool: return int(a.AsBool()) - int(b.AsBool());
    case Value::Kind::kReal: {
      double x = a.AsReal(), y = b.AsReal();
      return x < y ? -1 : (y < x ? 1 : 0);
    }
    case Value::Kind::kEnum: {
      int x = a.AsEnum(), y = b.AsEnum();
      return x < y ? -1 : (y < x ? 1 : 0);
    }
    case Value::Kind::kList:
    case Value::Kind::kTuple: {
      const auto& x = a.Elems();
      const auto& y = b.Elems();
      std::size_t n = std::min(x.size(), y.size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = Compare(x[i], y[i]);
        if (c) return c;
      }
      if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
      return 0;
    }
    case Value::Kind::kClosure: {
      const void* x = &a.AsClosure();
      const void* y = &b.AsClosure();
      return std::less<const void*>()(x, y) ? -1 : (x == y ? 0 : 1);
    }
    case Value::Kind::kDist:
      if (a.DistPtr() == b.DistPtr()) return 0;
      return Compare(a.AsDist(), b.AsDist());
    case Value::Kind::kSymDist: return Compare(a.AsSym(), b.AsSym());
  }
  return 0;
}

}  // namespace privinfer
