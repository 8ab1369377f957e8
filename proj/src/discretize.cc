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

#include "privinfer/discretize.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {

void GridConfig::Validate() const {
  if (unit_cells < 2) throw DomainError("unit grid needs at least 2 cells");
  if (simplex_cells < 2) {
    throw DomainError("simplex grid needs at least 2 cells per axis");
  }
  if (!(real_step > 0) || !(real_extent >= real_step)) {
    throw DomainError("real lattice needs 0 < step <= extent");
  }
}

int GridConfig::RealHalfCells() const {
  return static_cast<int>(std::lround(real_extent / real_step));
}

int GridConfig::RealCell(double x) const {
  int k = RealHalfCells();
  double idx = std::round(x / real_step);
  if (idx < -k) return 0;
  if (idx > k) return 2 * k;
  return static_cast<int>(idx) + k;
}

double GridConfig::RealCenter(int cell) const {
  return (cell - RealHalfCells()) * real_step;
}

double GridConfig::RealLo() const {
  return (-RealHalfCells() - 0.5) * real_step;
}

double GridConfig::RealHi() const {
  return (RealHalfCells() + 0.5) * real_step;
}

double GridConfig::UnitMid(int i) const { return (i + 0.5) / unit_cells; }

int GridConfig::UnitCell(double x) const {
  int i = static_cast<int>(std::floor(x * unit_cells));
  return std::clamp(i, 0, unit_cells - 1);
}

GridConfig GridConfig::FromEnvironment() {
  GridConfig g;
  if (const char* n = std::getenv("PRIVINFER_GRID_N")) {
    g.unit_cells = std::atoi(n);
    g.Validate();
  }
  return g;
}

namespace {

double LogBeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Unnormalized log-density of beta(a, b) at x.
double BetaLogDensity(double a, double b, double x) {
  return (a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - LogBeta(a, b);
}

double DirichletLogDensity(const std::vector<double>& a, double x, double y) {
  return (a[0] - 1) * std::log(x) + (a[1] - 1) * std::log(y) +
         (a[2] - 1) * std::log(1 - x - y);
}

struct Cells {
  std::vector<Value> values;
  std::vector<double> log_weights;
};

Cells UnitCells(double a, double b, const GridConfig& g) {
  Cells c;
  c.values.reserve(g.unit_cells);
  for (int i = 0; i < g.unit_cells; ++i) {
    double x = g.UnitMid(i);
    c.values.push_back(Value::Real(x));
    c.log_weights.push_back(BetaLogDensity(a, b, x));
  }
  return c;
}

void ForEachSimplexCell(const GridConfig& g,
                        const std::function<void(int, int, double, double)>& f) {
  int m = g.simplex_cells;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j + i + 1 < m; ++j) {
      f(i, j, (i + 0.5) / m, (j + 0.5) / m);
    }
  }
}

Cells SimplexCells(const std::vector<double>& a, const GridConfig& g) {
  Cells c;
  ForEachSimplexCell(g, [&](int, int, double x, double y) {
    c.values.push_back(Value::Tuple({Value::Real(x), Value::Real(y)}));
    c.log_weights.push_back(DirichletLogDensity(a, x, y));
  });
  return c;
}

Cells RealCells(double m, double v, const GridConfig& g) {
  Cells c;
  int n = g.RealCellCount();
  for (int i = 0; i < n; ++i) {
    double x = g.RealCenter(i);
    c.values.push_back(Value::Real(x));
    c.log_weights.push_back(-(x - m) * (x - m) / (2 * v));
  }
  return c;
}

Dist Normalize(Cells cells) {
  double top = -INFINITY;
  for (double w : cells.log_weights) top = std::max(top, w);
  CompensatedSum total;
  std::vector<double> w(cells.log_weights.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(cells.log_weights[i] - top);
    total.Add(w[i]);
  }
  std::vector<Dist::Entry> entries;
  entries.reserve(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    entries.emplace_back(std::move(cells.values[i]), w[i] / total.Value());
  }
  return Dist::FromEntries(std::move(entries));
}

double CellMass(const Cells& cells, const Value& v) {
  double top = -INFINITY;
  for (double w : cells.log_weights) top = std::max(top, w);
  CompensatedSum total;
  double hit = 0;
  for (std::size_t i = 0; i < cells.values.size(); ++i) {
    double w = std::exp(cells.log_weights[i] - top);
    total.Add(w);
    if (Compare(cells.values[i], v) == 0) hit = w;
  }
  return hit / total.Value();
}

Value SnapToSimplex(const Value& v, const GridConfig& g) {
  const auto& e = v.Elems();
  int m = g.simplex_cells;
  auto cell = [m](double t) {
    return std::clamp(static_cast<int>(std::floor(t * m)), 0, m - 1);
  };
  return Value::Tuple({Value::Real((cell(e[0].AsReal()) + 0.5) / m),
                       Value::Real((cell(e[1].AsReal()) + 0.5) / m)});
}

}  // namespace

Dist Discretize(const SymDist& s, const GridConfig& g) {
  s.Validate();
  switch (s.family) {
    case SymDist::Family::kBernoulli:
      return Dist::Bernoulli(s.params[0]);
    case SymDist::Family::kMultinomial: {
      std::vector<Dist::Entry> entries;
      double rest = 1.0;
      for (std::size_t i = 0; i < s.params.size(); ++i) {
        entries.emplace_back(Value::Enum(static_cast<int>(i)), s.params[i]);
        rest -= s.params[i];
      }
      entries.emplace_back(Value::Enum(static_cast<int>(s.params.size())),
                           std::max(rest, 0.0));
      return Dist::FromEntries(std::move(entries));
    }
    case SymDist::Family::kUniform:
    case SymDist::Family::kBeta: {
      double a = s.family == SymDist::Family::kBeta ? s.params[0] : 1.0;
      double b = s.family == SymDist::Family::kBeta ? s.params[1] : 1.0;
      return Normalize(UnitCells(a, b, g))
          .WithProvenance(Provenance{SymDist::Beta(a, b), {0, 0}, 0});
    }
    case SymDist::Family::kDirichlet: {
      if (s.params.size() == 2) {
        return Normalize(UnitCells(s.params[0], s.params[1], g))
            .WithProvenance(Provenance{s, {0, 0}, 0});
      }
      if (s.params.size() != 3) {
        throw DomainError("dirichlet grids support two or three classes");
      }
      return Normalize(SimplexCells(s.params, g))
          .WithProvenance(Provenance{s, {0, 0, 0}, 0});
    }
    case SymDist::Family::kNormal:
      return Normalize(RealCells(s.params[0], s.params[1], g))
          .WithProvenance(Provenance{s, {0, 0}, 0});
  }
  throw DomainError("unknown family");
}

double MassAt(const SymDist& s, const Value& v, const GridConfig& g) {
  s.Validate();
  switch (s.family) {
    case SymDist::Family::kBernoulli:
      return v.AsBool() ? s.params[0] : 1.0 - s.params[0];
    case SymDist::Family::kMultinomial: {
      int k = v.AsEnum();
      int n = static_cast<int>(s.params.size());
      if (k < 0 || k > n) return 0.0;
      if (k < n) return s.params[k];
      double rest = 1.0;
      for (double p : s.params) rest -= p;
      return std::max(rest, 0.0);
    }
    case SymDist::Family::kUniform:
      return 1.0 / g.unit_cells;
    case SymDist::Family::kBeta: {
      double x = g.UnitMid(g.UnitCell(v.AsReal()));
      return CellMass(UnitCells(s.params[0], s.params[1], g), Value::Real(x));
    }
    case SymDist::Family::kDirichlet:
      if (s.params.size() == 2) {
        double x = g.UnitMid(g.UnitCell(v.AsReal()));
        return CellMass(UnitCells(s.params[0], s.params[1], g),
                        Value::Real(x));
      }
      return CellMass(SimplexCells(s.params, g), SnapToSimplex(v, g));
    case SymDist::Family::kNormal: {
      double x = g.Snap(v.AsReal());
      return CellMass(RealCells(s.params[0], s.params[1], g), Value::Real(x));
    }
  }
  return 0.0;
}

std::optional<std::string> CoverageWarning(const SymDist& s,
                                           const GridConfig& g) {
  if (s.family != SymDist::Family::kNormal) return std::nullopt;
  double sd = std::sqrt(s.params[1]);
  double lo = s.params[0] - 8 * sd, hi = s.params[0] + 8 * sd;
  if (lo >= g.RealLo() && hi <= g.RealHi()) return std::nullopt;
  return "real lattice [" + FormatDouble(g.RealLo()) + ", " +
         FormatDouble(g.RealHi()) + "] does not cover 8 standard deviations of " +
         s.ToString() + "; tail mass is cut off";
}

std::vector<Value> GridSupport(const SymDist& s, const GridConfig& g) {
  std::vector<Value> out;
  for (const auto& [v, p] : Discretize(s, g).entries()) out.push_back(v);
  return out;
}

bool GridEqual(const Value& a, const Value& b, const GridConfig& g) {
  if (a.kind() == Value::Kind::kReal && b.kind() == Value::Kind::kReal) {
    return a.AsReal() == b.AsReal() ||
           g.RealCell(a.AsReal()) == g.RealCell(b.AsReal());
  }
  if ((a.kind() == Value::Kind::kList && b.kind() == Value::Kind::kList) ||
      (a.kind() == Value::Kind::kTuple && b.kind() == Value::Kind::kTuple)) {
    const auto& x = a.Elems();
    const auto& y = b.Elems();
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (!GridEqual(x[i], y[i], g)) return false;
    }
    return true;
  }
  return Compare(a, b) == 0;
}

}  // namespace privinfer
