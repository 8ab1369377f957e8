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

#ifndef PRIVINFER_DP_VERIFY_H_
#define PRIVINFER_DP_VERIFY_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/discretize.h"
#include "privinfer/divergence.h"
#include "privinfer/dist.h"
#include "privinfer/evaluator.h"
#include "privinfer/value.h"

namespace privinfer {

struct AdjacencyRel {
  enum class Tag { kBoolListFlip, kRealListL1, kCustom };
  Tag tag = Tag::kBoolListFlip;
  // l1 only: allow the unit of perturbation to be spread over several
  // entries. The default moves a single entry by at most 1.
  bool multi_element = false;
  std::function<bool(const Value&, const Value&)> custom;

  static AdjacencyRel Flip() { return {Tag::kBoolListFlip, false, {}}; }
  static AdjacencyRel L1(bool multi_element = false) {
    return {Tag::kRealListL1, multi_element, {}};
  }
  static AdjacencyRel Custom(std::function<bool(const Value&, const Value&)> f) {
    return {Tag::kCustom, false, std::move(f)};
  }

  // Symmetric; a value is never adjacent to itself.
  bool Adjacent(const Value& a, const Value& b) const;
  std::string ToString() const;
};

// All boolean lists of length 0..max_len.
std::vector<Value> BoolLists(int max_len);
// All lists of length 0..max_len over the given reals.
std::vector<Value> RealLists(int max_len, const std::vector<double>& values);
// All lists of length 0..max_len over the tags 0..classes-1.
std::vector<Value> EnumLists(int max_len, int classes);

struct PairResult {
  Value d1;
  Value d2;
  // max of both orientations.
  double divergence = 0.0;
  double forward = 0.0;   // f(mu(d1), mu(d2))
  double backward = 0.0;  // f(mu(d2), mu(d1))
};

struct DPReport {
  FDivKind kind;
  double claimed_delta = 0.0;
  std::string adjacency;
  std::size_t inputs = 0;
  std::vector<PairResult> pairs;
  std::optional<PairResult> worst;
  double max_divergence = 0.0;
  double slack = 0.0;
  bool pass = false;
  std::vector<std::string> warnings;

  std::string ToJson(bool with_pairs = false) const;
};

struct CheckOptions {
  std::size_t max_inputs = 4096;
  bool override_cap = false;
  // 0 picks the hardware concurrency.
  int threads = 0;
  // Discretization slack added to the claimed delta.
  double slack = 0.0;
};

using Mechanism = std::function<Dist(const Value&)>;

DPReport CheckProgram(const Mechanism& mechanism, const AdjacencyRel& rel,
                      const std::vector<Value>& inputs, const FDivKind& kind,
                      double delta, const CheckOptions& options = {});

// A mechanism from a program whose value is a curried function. `args`
// holds every argument; the empty slot receives the private input. The
// result must be a distribution (M-typed).
Mechanism ProgramMechanism(const Expr& program,
                           std::vector<std::optional<Value>> args,
                           const EvalConfig& config,
                           std::vector<std::string>* warnings = nullptr);

struct CertificateCheck {
  std::string lemma;
  std::string instance;
  double measured = 0.0;
  double bound = 0.0;
  // lower: measured must be >= bound (tightness); otherwise <=.
  bool lower = false;
  bool within_assumption = true;
  bool pass = false;
};

struct CertificateReport {
  std::vector<CertificateCheck> checks;
  // Every check inside its lemma's assumption passed.
  bool pass = false;
  std::string ToJson() const;
};

inline constexpr double kLemmaTolerance = 1e-3;

CertificateReport CheckLemmaCertificates(const GridConfig& grid);

struct PropertyStat {
  std::string name;
  int trials = 0;
  int failures = 0;
  double max_violation = 0.0;  // largest lhs - rhs seen (can be negative)
};

struct CompositionReport {
  std::vector<PropertyStat> stats;
  bool pass = false;
  std::string ToJson() const;
};

inline constexpr double kPropertySlack = 1e-9;

CompositionReport CheckCompositionAndDpi(int trials, std::uint64_t seed);

}  // namespace privinfer

#endif  // PRIVINFER_DP_VERIFY_H_
