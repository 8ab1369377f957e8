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

#ifndef PRIVINFER_DIVERGENCE_H_
#define PRIVINFER_DIVERGENCE_H_

#include <optional>
#include <string>
#include <string_view>

#include "privinfer/dist.h"

namespace privinfer {

// An f-divergence: statistical distance, Hellinger, KL, or the
// epsilon-distance used for differential privacy.
struct FDivKind {
  enum class Tag { kSD, kHD, kKL, kEpsD };

  Tag tag = Tag::kSD;
  double eps = 0.0;  // only for kEpsD

  static FDivKind SD() { return {Tag::kSD, 0.0}; }
  static FDivKind HD() { return {Tag::kHD, 0.0}; }
  static FDivKind KL() { return {Tag::kKL, 0.0}; }
  static FDivKind EpsD(double eps) { return {Tag::kEpsD, eps}; }

  // The generator f, convex on x > 0 with f(1) = 0.
  double Generator(double x) const;
  // lim_{u -> inf} f(u) / u, the weight of mass where mu2 vanishes.
  double GeneratorSlope() const;
  std::string ToString() const;

  friend bool operator==(const FDivKind&, const FDivKind&) = default;
};

// Parses "sd", "hd", "kl" or "eps:<value>". Throws DomainError.
FDivKind ParseFDivKind(std::string_view text);

// sum_a mu2(a) f(mu1(a) / mu2(a)) in closed form:
//   SD    1/2 sum |mu1 - mu2|
//   HD    1/2 sum (sqrt mu1 - sqrt mu2)^2
//   KL    sum mu1 ln(mu1 / mu2), +inf if mu1 is not dominated by mu2
//   EpsD  sum max(mu1 - e^eps mu2, 0)
double FDiv(const FDivKind& kind, const Dist& mu1, const Dist& mu2);

// The Hellinger distance, sqrt(FDiv(HD)). This is the quantity bounded by
// the beta and dirichlet lemmas and tracked by HD monad indices.
double HellingerDistance(const Dist& mu1, const Dist& mu2);

// Existence of an (f, delta)-lifting of the diagonal relation. For the
// diagonal this is exactly FDiv(kind, mu1, mu2) <= delta.
bool CheckDiagonalLifting(const FDivKind& kind, double delta, const Dist& mu1,
                          const Dist& mu2);

// Composition table: (SD,SD)->SD, (HD,HD)->HD, (KL,KL)->KL,
// (EpsD e1, EpsD e2)->EpsD(e1+e2); nothing else.
std::optional<FDivKind> Composable(const FDivKind& f1, const FDivKind& f2);

}  // namespace privinfer

#endif  // PRIVINFER_DIVERGENCE_H_
