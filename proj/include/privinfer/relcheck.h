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

#ifndef PRIVINFER_RELCHECK_H_
#define PRIVINFER_RELCHECK_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/error.h"
#include "privinfer/index_expr.h"
#include "privinfer/reltype.h"

namespace privinfer {

// A verification condition: a goal produced by a rule application, either
// discharged with a justification or left unproved.
struct VC {
  int id = 0;
  std::string rule;
  SourceSpan span;
  std::string goal;
  // Relational facts of the variables in scope, as text.
  std::vector<std::string> context;
  bool discharged = false;
  std::string justification;
  // Index comparisons lhs <= rhs the justification relies on. Replay
  // re-checks each of them.
  std::vector<std::pair<std::string, std::string>> index_le;
};

struct Derivation {
  std::string rule;
  SourceSpan span;
  std::string subject;
  std::string conclusion;
  std::vector<int> vcs;
  std::vector<Derivation> premises;
};

struct DeclCheck {
  std::string name;
  std::string type;
  bool accepted = false;
  Derivation derivation;
};

struct RelCheckReport {
  std::vector<DeclCheck> decls;
  std::vector<VC> vcs;

  bool accepted() const;
  std::vector<const VC*> Unproved() const;
  // {"accepted", "declarations": [...], "vcs": [...]}
  std::string ToJson(int indent = 2) const;
};

// Checks every top-level declaration of `program` that has a signature.
// Declarations without one are analyzed but never fail on their own.
RelCheckReport RelCheckProgram(const Expr& program,
                               const std::vector<RelSignature>& signatures);

// Checks `e` against `type` with the free variables bound by `env`.
RelCheckReport RelCheck(
    const std::vector<std::pair<std::string, RelType>>& env, const Expr& e,
    const RelType& type);

// Subtyping between relational types. Returns the VCs of the comparison;
// the subtyping holds when all are discharged.
std::vector<VC> Subtype(const RelType& sub, const RelType& super);

// Replays a derivation produced by RelCheckProgram: every rule name must be
// known, every recorded index comparison must still hold, and re-running the
// checker must reproduce the same tree and verdicts.
struct ReplayResult {
  bool ok = false;
  std::vector<std::string> problems;
};
ReplayResult ReplayDerivation(const std::string& json, const Expr& program,
                              const std::vector<RelSignature>& signatures);

// Rule names that can appear in derivations.
const std::vector<std::string>& RelRuleNames();

}  // namespace privinfer

#endif  // PRIVINFER_RELCHECK_H_
