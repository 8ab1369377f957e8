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

// The example corpus: each program with the relational type it claims, the
// finite input space the brute-force checker enumerates, and the numeric
// instance of the claimed bound.

#ifndef PRIVINFER_CORPUS_H_
#define PRIVINFER_CORPUS_H_

#include <optional>
#include <string>
#include <vector>

#include "privinfer/dp_verify.h"
#include "privinfer/relcheck.h"

namespace privinfer {

struct Fixture {
  std::string name;
  std::string program_path;
  std::string types_path;
  // Arguments of main; the single empty slot receives the database.
  std::vector<std::optional<std::string>> args;
  std::vector<Value> inputs;
  AdjacencyRel rel = AdjacencyRel::Flip();
  // The claimed monad index of main at the argument values above.
  FDivKind kind;
  double delta = 0.0;
  double slack = 0.0;
  // Replaces the run's grid, for programs whose noise needs a wider lattice.
  std::optional<GridConfig> grid;
  // Mutants must be rejected by the type checker or refuted by brute force.
  bool mutant = false;
};

std::string DefaultFixtureDir();

// The seven programs followed by the mutants. Input spaces shrink when
// `quick` is set.
std::vector<Fixture> CorpusFixtures(const GridConfig& grid,
                                    const std::string& dir = DefaultFixtureDir(),
                                    bool quick = false);

struct FixtureResult {
  std::string name;
  std::string claimed;  // declared type of main
  bool mutant = false;
  bool relcheck_accepted = false;
  std::vector<std::string> unproved;
  std::optional<DPReport> dp;
  std::string error;  // set when loading or evaluation failed
  std::vector<std::string> warnings;

  bool brute_force_pass() const { return dp && dp->pass; }
  // Originals: accepted and passed. Mutants: rejected or refuted.
  bool ok() const;
};

FixtureResult RunFixture(const Fixture& f, const GridConfig& grid,
                         const CheckOptions& options = {});

std::string CorpusTable(const std::vector<FixtureResult>& results);
std::string CorpusJson(const std::vector<FixtureResult>& results);

std::string ReadFile(const std::string& path);

}  // namespace privinfer

#endif  // PRIVINFER_CORPUS_H_
