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

#ifndef PRIVINFER_MECHANISMS_H_
#define PRIVINFER_MECHANISMS_H_

#include <functional>
#include <vector>

#include "privinfer/discretize.h"
#include "privinfer/dist.h"

namespace privinfer {

// Grid-valued Laplace mechanism: the query answer is rounded to the real
// lattice and each output cell receives the exact probability of the
// Laplace(1/eps) noise landing in it (closed-form CDF differences). The end
// cells absorb the tails, so no renormalization is needed.
Dist LaplaceMech(double eps, double x, const GridConfig& grid);

// Same construction with N(0, sigma^2) noise.
Dist GaussMech(double sigma, double x, const GridConfig& grid);

// sqrt(2 ln(1.25 / delta)) / eps.
double GaussSigma(double eps, double delta);

// mass(r) proportional to exp(score(r) * eps / 2), computed with the
// maximum score subtracted. Throws DomainError on an empty output list or a
// non-finite score.
Dist ExpMech(double eps, const std::function<double(const Value&)>& score,
             const std::vector<Value>& outputs);

// Extra epsilon-distance that rounding to the lattice can add on top of the
// continuous guarantee. Rounding moves two inputs at distance k at most one
// step further apart; for Laplace that costs 1 - exp(-eps * step).
double LaplaceSlack(double eps, const GridConfig& grid);

// epsilon-distance between N(0, sigma^2) and N(shift, sigma^2).
double GaussianEpsDistance(double sigma, double eps, double shift);

// GaussianEpsDistance at shift k + step minus the value at shift k.
double GaussSlack(double sigma, double eps, double k, const GridConfig& grid);

}  // namespace privinfer

#endif  // PRIVINFER_MECHANISMS_H_
