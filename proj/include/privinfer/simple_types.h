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

#ifndef PRIVINFER_SIMPLE_TYPES_H_
#define PRIVINFER_SIMPLE_TYPES_H_

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/types.h"

namespace privinfer {

// Ordered variable-to-type bindings; later bindings shadow earlier ones.
class TypeEnv {
 public:
  TypeEnv() = default;
  TypeEnv Extend(const std::string& name, SimpleType type) const;
  const SimpleType* Lookup(const std::string& name) const;
  const std::vector<std::pair<std::string, SimpleType>>& bindings() const {
    return bindings_;
  }

 private:
  std::vector<std::pair<std::string, SimpleType>> bindings_;
};

// Types recorded per node id during checking. The evaluator reads the output
// range of three-argument expMech calls from here.
struct TypeTable {
  std::unordered_map<int, SimpleType> node_types;
  // expMech node id -> output type R.
  std::unordered_map<int, SimpleType> mech_ranges;

  const SimpleType* Find(int id) const {
    auto it = node_types.find(id);
    return it == node_types.end() ? nullptr : &it->second;
  }
};

SimpleType Typecheck(const TypeEnv& env, const Expr& e,
                     TypeTable* table = nullptr);

// Type of a closed program.
inline SimpleType Typecheck(const Expr& e, TypeTable* table = nullptr) {
  return Typecheck(TypeEnv(), e, table);
}

// Signatures of the fixed-arity primitives. Variadic and type-dependent
// primitives (dirichlet, multinomial, expMech, getParams, getMean, H, SD,
// max, min) report a representative instance. Throws DomainError for an
// unknown name.
SimpleType PrimitiveSignature(std::string_view name);

// Simple type of a numeric literal: [0,1], nat, real+ or real.
SimpleType LiteralType(const Rational& value);

// Top-level declarations of a program in order, with their types.
std::vector<std::pair<std::string, SimpleType>> TopLevelTypes(const Expr& e);

}  // namespace privinfer

#endif  // PRIVINFER_SIMPLE_TYPES_H_
