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

#ifndef PRIVINFER_EVALUATOR_H_
#define PRIVINFER_EVALUATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/discretize.h"
#include "privinfer/dist.h"
#include "privinfer/simple_types.h"
#include "privinfer/value.h"

namespace privinfer {

// Persistent environment: a shared singly linked list, newest binding first.
class Env {
 public:
  Env() = default;
  Env Extend(const std::string& name, Value v) const;
  const Value* Lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    Value value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

struct RecDef {
  std::string name;
  std::vector<Param> params;
  ExprPtr body;
};

struct Closure {
  enum class Kind { kLambda, kRec };
  Kind kind = Kind::kLambda;
  Env env;
  // kLambda
  Pattern param;
  std::optional<SimpleType> annot;
  ExprPtr body;
  // kRec: the definition plus the arguments applied so far. The function
  // itself is rebound on each saturated call, so `env` never contains it.
  std::shared_ptr<const RecDef> rec;
  std::vector<Value> args;
};

using Valuation = std::map<std::string, Value>;

struct EvalConfig {
  GridConfig grid;
  // Budget of recursive-function calls for one evaluation.
  std::int64_t fuel = 1000000;
  // Types from a prior Typecheck of the same tree. Needed for expMech with a
  // paired score or without an explicit candidate list, and used as the
  // family hint for infer.
  const TypeTable* types = nullptr;
  // Check every bound value against its annotation.
  bool validate = false;
};

struct EvalOutcome {
  Value value;
  std::vector<std::string> warnings;
};

EvalOutcome Evaluate(const Valuation& theta, const Expr& e,
                     const EvalConfig& config);

inline Value Eval(const Valuation& theta, const Expr& e,
                  const EvalConfig& config) {
  return Evaluate(theta, e, config).value;
}

// Applies a function value to arguments one at a time.
EvalOutcome ApplyFunction(const Value& fn, const std::vector<Value>& args,
                          const EvalConfig& config);

// Every inhabitant of a finite type, in increasing order.
// Observe predicates of the form  mlet z = ran FAM(args) in return (o = z)
// with FAM bernoulli, normal or multinomial and o not mentioning z or the
// observe binder.
struct LikelihoodShape {
  const node::Prim* prim = nullptr;
  const Expr* observed = nullptr;
};
std::optional<LikelihoodShape> MatchLikelihood(const node::Observe& o);

std::vector<Value> EnumerateFinite(const SimpleType& t);

// Whether v lies in the interpretation of t. Arrows accept any closure.
bool Inhabits(const Value& v, const SimpleType& t);

}  // namespace privinfer

#endif  // PRIVINFER_EVALUATOR_H_
