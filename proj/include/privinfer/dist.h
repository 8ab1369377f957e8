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

#ifndef PRIVINFER_DIST_H_
#define PRIVINFER_DIST_H_

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "privinfer/value.h"

namespace privinfer {

// Sufficient statistics threaded through conjugate observations so that
// `infer` can return the closed-form posterior.
struct Provenance {
  // The prior the pmf was discretized from.
  SymDist prior;
  // bernoulli: {#true, #false}; multinomial: per-class counts;
  // normal: {n, sum of observations}.
  std::vector<double> stats;
  // Known likelihood variance for normal observations.
  double kv = 0.0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// Finite probability mass function. Entries are sorted by value, distinct,
// and carry positive mass.
class Dist {
 public:
  using Entry = std::pair<Value, double>;

  Dist() = default;

  // Merges duplicate values, drops nonpositive masses, sorts. Masses are
  // taken as given (no renormalization).
  static Dist FromEntries(std::vector<Entry> entries);
  static Dist Dirac(Value v);
  // Uniform over the distinct given values.
  static Dist Uniform(std::vector<Value> values);
  static Dist Bernoulli(double p);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double Mass(const Value& v) const;
  double Total() const;
  // Dist scaled to total mass 1. Throws DomainError on zero total.
  Dist Normalized() const;

  const std::optional<Provenance>& provenance() const { return provenance_; }
  Dist WithProvenance(std::optional<Provenance> p) const;

  std::string ToString() const;

 private:
  std::vector<Entry> entries_;
  std::optional<Provenance> provenance_;
};

// Compares supports and masses exactly (provenance is ignored).
int Compare(const Dist& a, const Dist& b);

using Kernel = std::function<Dist(const Value&)>;

Dist DistUnit(Value v);
// Exact mixture sum_a mu(a) * k(a).
Dist DistBind(const Dist& mu, const Kernel& k);
// Pushforward along a deterministic function.
Dist DistMap(const Dist& mu, const std::function<Value(const Value&)>& f);

// Largest pointwise mass difference over the union of supports.
double MaxAbsDiff(const Dist& a, const Dist& b);

}  // namespace privinfer

#endif  // PRIVINFER_DIST_H_
