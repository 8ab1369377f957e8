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

#ifndef PRIVINFER_INFERENCE_H_
#define PRIVINFER_INFERENCE_H_

#include <optional>
#include <string>

#include "privinfer/discretize.h"
#include "privinfer/dist.h"
#include "privinfer/error.h"
#include "privinfer/types.h"
#include "privinfer/value.h"

namespace privinfer {

class NoFamilyMatch : public EvalError {
 public:
  explicit NoFamilyMatch(const std::string& message, SourceSpan span = {})
      : EvalError("no family match", message, std::move(span)) {}
};

// Closed-form conjugate posterior for a provenance tag.
SymDist ConjugatePosterior(const Provenance& p);

struct FamilyFit {
  SymDist dist;
  // Total variation distance between mu and the discretized fit.
  double residual = 0.0;
};

// Least-squares fit of `family` to mu on the grid. Throws NoFamilyMatch when
// the family cannot describe mu's support at all.
FamilyFit FitFamily(const Dist& mu, SymDist::Family family,
                    const GridConfig& grid);

// Fits whose total variation residual exceeds this are rejected.
inline constexpr double kFitTolerance = 1e-3;

// Exact inference: the conjugate closed form when mu carries provenance,
// otherwise a grid fit of the family suggested by `hint` (the element type
// of mu) or, failing that, by mu's values.
SymDist AlgInf(const Dist& mu, const std::optional<SimpleType>& hint,
               const GridConfig& grid);

// Family parameters in declaration order; a single parameter is returned
// as a bare real, several as a tuple.
Value GetParams(const SymDist& s);

// Closed-form mean. Throws DomainError for dirichlet and multinomial.
Value GetMean(const SymDist& s);

}  // namespace privinfer

#endif  // PRIVINFER_INFERENCE_H_
