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

#ifndef PRIVINFER_DISCRETIZE_H_
#define PRIVINFER_DISCRETIZE_H_

#include <optional>
#include <string>

#include "privinfer/dist.h"
#include "privinfer/value.h"

namespace privinfer {

// Grids used to turn symbolic continuous families into finite pmfs.
//
//   [0,1]       unit_cells equal cells, midpoint representatives
//   2-simplex   simplex_cells^2 square cells, kept when the midpoint has
//               x + y < 1
//   real        the lattice {k * real_step : |k| <= K}, K = round(
//               real_extent / real_step); cell k covers
//               [(k - 1/2) step, (k + 1/2) step), and the two end cells
//               absorb everything beyond
struct GridConfig {
  int unit_cells = 1000;
  int simplex_cells = 200;
  double real_step = 0.25;
  double real_extent = 16.0;

  // Throws DomainError when a grid is degenerate.
  void Validate() const;

  int RealHalfCells() const;  // K
  int RealCellCount() const { return 2 * RealHalfCells() + 1; }
  // Cell index in [0, 2K] of x (clamped to the end cells).
  int RealCell(double x) const;
  double RealCenter(int cell) const;
  // Center of the cell containing x.
  double Snap(double x) const { return RealCenter(RealCell(x)); }
  double RealLo() const;
  double RealHi() const;

  double UnitMid(int i) const;
  int UnitCell(double x) const;

  // Defaults, with PRIVINFER_GRID_N overriding unit_cells when set.
  static GridConfig FromEnvironment();
};

// Discretizes a symbolic distribution. Bernoulli and multinomial are exact;
// beta, uniform and normal use the midpoint rule and renormalize; dirichlet
// (three classes) uses the simplex grid. The result of beta, uniform,
// dirichlet and normal carries a provenance tag with the prior and zero
// sufficient statistics.
Dist Discretize(const SymDist& s, const GridConfig& grid);

// Probability that the discretization of `s` assigns to the cell or point of
// `v` (the likelihood used by conjugate observations).
double MassAt(const SymDist& s, const Value& v, const GridConfig& grid);

// Warning text when the real lattice does not cover mean +- 8 sd of a
// normal.
std::optional<std::string> CoverageWarning(const SymDist& s,
                                           const GridConfig& grid);

// Support of the discretization without masses (cell representatives).
std::vector<Value> GridSupport(const SymDist& s, const GridConfig& grid);

// Equality on base values with reals compared by real-lattice cell.
bool GridEqual(const Value& a, const Value& b, const GridConfig& grid);

}  // namespace privinfer

#endif  // PRIVINFER_DISCRETIZE_H_
