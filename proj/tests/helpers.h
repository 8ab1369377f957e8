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

#ifndef PRIVINFER_TESTS_HELPERS_H_
#define PRIVINFER_TESTS_HELPERS_H_

#include <memory>
#include <string>
#include <vector>

#include "privinfer/corpus.h"
#include "privinfer/evaluator.h"
#include "privinfer/parser.h"
#include "privinfer/simple_types.h"

namespace privinfer::testing {

// A parsed and typechecked program with its type table kept alive.
struct Program {
  ExprPtr expr;
  TypeTable table;
  EvalConfig config;

  Value Run() const { return Eval({}, *expr, config); }
  EvalOutcome Apply(const std::vector<Value>& args) const {
    return ApplyFunction(Run(), args, config);
  }
};

inline std::unique_ptr<Program> Compile(const std::string& text,
                                        const GridConfig& grid = {},
                                        bool expression = true) {
  auto p = std::make_unique<Program>();
  p->expr = expression ? ParseExpression(text) : Parse(text, "<test>");
  Typecheck(*p->expr, &p->table);
  p->config.grid = grid;
  p->config.types = &p->table;
  return p;
}

inline std::unique_ptr<Program> CompileFixture(const std::string& name,
                                               const GridConfig& grid = {}) {
  auto p = std::make_unique<Program>();
  std::string path = DefaultFixtureDir() + "/" + name + ".pinf";
  p->expr = Parse(ReadFile(path), path);
  Typecheck(*p->expr, &p->table);
  p->config.grid = grid;
  p->config.types = &p->table;
  return p;
}

inline Value EvalText(const std::string& text, const GridConfig& grid = {}) {
  return Compile(text, grid)->Run();
}

inline Value BoolList(const std::vector<bool>& bits) {
  std::vector<Value> v;
  for (bool b : bits) v.push_back(Value::Bool(b));
  return Value::List(std::move(v));
}

}  // namespace privinfer::testing

#endif  // PRIVINFER_TESTS_HELPERS_H_
