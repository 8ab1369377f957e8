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

#include "privinfer/inference.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <vector>

#include "privinfer/divergence.h"
#include "privinfer/numeric.h"

namespace privinfer {
namespace {

using Family = SymDist::Family;

// Sum of squared pointwise differences over the union of supports.
double SquaredDiff(const Dist& a, const Dist& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  CompensatedSum s;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    int c = i == x.size() ? 1 : j == y.size() ? -1 : Compare(x[i].first, y[j].first);
    double d;
    if (c < 0) {
      d = x[i++].second;
    } else if (c > 0) {
      d = y[j++].second;
    } else {
      d = x[i++].second - y[j++].second;
    }
    s.Add(d * d);
  }
  return s.Value();
}

// Plain Nelder-Mead on an unconstrained vector.
std::vector<double> NelderMead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, double scale, int max_iter) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += scale;
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> p2;
    std::vector<double> v2;
    for (std::size_t k : order) {
      p2.push_back(pts[k]);
      v2.push_back(vals[k]);
    }
    pts = std::move(p2);
    vals = std::move(v2);
    if (std::abs(vals[n] - vals[0]) <= 1e-18 + 1e-12 * std::abs(vals[0])) {
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / n;
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = centroid[d] + t * (pts[n][d] - centroid[d]);
      }
      return p;
    };
    std::vector<double> refl = along(-1.0);
    double fr = f(refl);
    if (fr < vals[0]) {
      std::vector<double> exp = along(-2.0);
      double fe = f(exp);
      if (fe < fr) {
        pts[n] = exp, vals[n] = fe;
      } else {
        pts[n] = refl, vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = refl, vals[n] = fr;
    } else {
      std::vector<double> con = fr < vals[n] ? along(-0.5) : along(0.5);
      double fc = f(con);
      if (fc < std::min(fr, vals[n])) {
        pts[n] = con, vals[n] = fc;
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t d = 0; d < n; ++d) {
            pts[i][d] = pts[0][d] + 0.5 * (pts[i][d] - pts[0][d]);
          }
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  std::size_t best = std::min_element(vals.begin(), vals.end()) - vals.begin();
  return pts[best];
}

double Mean(const Dist& mu, const std::function<double(const Value&)>& x) {
  CompensatedSum s;
  for (const auto& [v, p] : mu.entries()) s.Add(p * x(v));
  return s.Value() / mu.Total();
}

double Variance(const Dist& mu, const std::function<double(const Value&)>& x) {
  double m = Mean(mu, x);
  return Mean(mu, [&](const Value& v) {
    double d = x(v) - m;
    return d * d;
  });
}

bool AllOfKind(const Dist& mu, Value::Kind k) {
  return std::all_of(mu.entries().begin(), mu.entries().end(),
                     [k](const Dist::Entry& e) { return e.first.kind() == k; });
}

// Moment-matched starting point, then least squares on the log scale.
FamilyFit FitContinuous(const Dist& mu, Family family, const GridConfig& g) {
  auto first = [](const Value& v) { return v.Elems()[0].AsReal(); };
  auto second = [](const Value& v) { return v.Elems()[1].AsReal(); };
  auto real = [](const Value& v) { return v.AsReal(); };

  std::vector<double> start;
  std::function<SymDist(const std::vector<double>&)> make;
  switch (family) {
    case Family::kBeta: {
      double m = Mean(mu, real), v = Variance(mu, real);
      double c = v > 0 ? m * (1 - m) / v - 1 : 1e3;
      c = std::max(c, 1e-3);
      start = {std::log(std::max(m * c, 1e-3)),
               std::log(std::max((1 - m) * c, 1e-3))};
      make = [](const std::vector<double>& p) {
        return SymDist::Beta(std::exp(p[0]), std::exp(p[1]));
      };
      break;
    }
    case Family::kDirichlet: {
      double m1 = Mean(mu, first), m2 = Mean(mu, second);
      double m3 = std::max(1 - m1 - m2, 1e-6);
      double v1 = Variance(mu, first);
      double c = v1 > 0 ? m1 * (1 - m1) / v1 - 1 : 1e3;
      c = std::max(c, 1e-3);
      start = {std::log(std::max(m1 * c, 1e-3)),
               std::log(std::max(m2 * c, 1e-3)),
               std::log(std::max(m3 * c, 1e-3))};
      make = [](const std::vector<double>& p) {
        return SymDist::Dirichlet(
            {std::exp(p[0]), std::exp(p[1]), std::exp(p[2])});
      };
      break;
    }
    case Family::kNormal: {
      double m = Mean(mu, real), v = Variance(mu, real);
      double w2 = g.real_step * g.real_step / 12;
      start = {m, std::log(std::max(v - w2, w2))};
      make = [](const std::vector<double>& p) {
        return SymDist::Normal(p[0], std::exp(p[1]));
      };
      break;
    }
    default:
      throw NoFamilyMatch("no continuous fit for " +
                          std::string(FamilyName(family)));
  }
  auto loss = [&](const std::vector<double>& p) -> double {
    for (double x : p) {
      if (!std::isfinite(x) || std::abs(x) > 700) return INFINITY;
    }
    try {
      return SquaredDiff(Discretize(make(p), g), mu);
    } catch (const DomainError&) {
      return INFINITY;
    }
  };
  std::vector<double> best = NelderMead(loss, start, 0.1, 600);
  SymDist fitted = make(best);
  double tv = FDiv(FDivKind::SD(), Discretize(fitted, g), mu.Normalized());
  return {fitted, tv};
}

}  // namespace

SymDist ConjugatePosterior(const Provenance& p) {
  const SymDist& s = p.prior;
  switch (s.family) {
    case Family::kUniform:
      return SymDist::Beta(1 + p.stats.at(0), 1 + p.stats.at(1));
    case Family::kBeta:
      return SymDist::Beta(s.params[0] + p.stats.at(0),
                           s.params[1] + p.stats.at(1));
    case Family::kDirichlet: {
      std::vector<double> a = s.params;
      if (p.stats.size() != a.size()) {
        throw DomainError("dirichlet provenance has the wrong arity");
      }
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += p.stats[i];
      return SymDist::Dirichlet(std::move(a));
    }
    case Family::kNormal: {
      double n = p.stats.at(0), sum = p.stats.at(1);
      if (n == 0) return s;
      double hm = s.params[0], hv = s.params[1];
      double uk = 1.0 / (1.0 / hv + n / p.kv);
      return SymDist::Normal(uk * (hm / hv + sum / p.kv), uk);
    }
    default:
      throw DomainError("no conjugate update for " +
                        std::string(FamilyName(s.family)) + " priors");
  }
}

FamilyFit FitFamily(const Dist& mu, Family family, const GridConfig& grid) {
  if (mu.empty()) throw NoFamilyMatch("cannot fit an empty distribution");
  double total = mu.Total();
  switch (family) {
    case Family::kBernoulli:
      if (!AllOfKind(mu, Value::Kind::kBool)) break;
      return {SymDist::Bernoulli(mu.Mass(Value::Bool(true)) / total), 0.0};
    case Family::kMultinomial: {
      if (!AllOfKind(mu, Value::Kind::kEnum)) break;
      int classes = std::max(2, mu.entries().back().first.AsEnum() + 1);
      std::vector<double> p;
      for (int i = 0; i + 1 < classes; ++i) {
        p.push_back(mu.Mass(Value::Enum(i)) / total);
      }
      return {SymDist::Multinomial(std::move(p)), 0.0};
    }
    case Family::kUniform:
    case Family::kBeta:
      if (!AllOfKind(mu, Value::Kind::kReal)) break;
      return FitContinuous(mu, Family::kBeta, grid);
    case Family::kNormal:
      if (!AllOfKind(mu, Value::Kind::kReal)) break;
      return FitContinuous(mu, Family::kNormal, grid);
    case Family::kDirichlet:
      if (AllOfKind(mu, Value::Kind::kReal)) {
        FamilyFit f = FitContinuous(mu, Family::kBeta, grid);
        return {SymDist::Dirichlet(f.dist.params), f.residual};
      }
      if (!AllOfKind(mu, Value::Kind::kTuple)) break;
      return FitContinuous(mu, Family::kDirichlet, grid);
  }
  throw NoFamilyMatch(std::string(FamilyName(family)) +
                      " cannot describe a distribution over " +
                      mu.entries().front().first.ToString());
}

SymDist AlgInf(const Dist& mu, const std::optional<SimpleType>& hint,
               const GridConfig& grid) {
  if (mu.provenance()) return ConjugatePosterior(*mu.provenance());
  if (mu.empty()) throw NoFamilyMatch("cannot infer from an empty distribution");

  using Kind = SimpleType::Kind;
  std::optional<Family> family;
  int classes = 0;
  if (hint) {
    switch (hint->kind()) {
      case Kind::kBool: family = Family::kBernoulli; break;
      case Kind::kEnum:
        family = Family::kMultinomial;
        classes = hint->enum_size();
        break;
      case Kind::kUnitInterval: family = Family::kBeta; break;
      case Kind::kReal:
      case Kind::kRealPos:
      case Kind::kNat: family = Family::kNormal; break;
      case Kind::kTuple:
        if (hint->children().size() == 2) family = Family::kDirichlet;
        break;
      default: break;
    }
  }
  if (!family) {
    const Value& v = mu.entries().front().first;
    switch (v.kind()) {
      case Value::Kind::kBool: family = Family::kBernoulli; break;
      case Value::Kind::kEnum: family = Family::kMultinomial; break;
      case Value::Kind::kTuple: family = Family::kDirichlet; break;
      case Value::Kind::kReal: {
        bool unit = std::all_of(
            mu.entries().begin(), mu.entries().end(), [](const Dist::Entry& e) {
              double x = e.first.AsReal();
              return x > 0 && x < 1;
            });
        family = unit ? Family::kBeta : Family::kNormal;
        break;
      }
      default:
        throw NoFamilyMatch("no family over values like " + v.ToString());
    }
  }
  FamilyFit fit = FitFamily(mu, *family, grid);
  if (*family == Family::kMultinomial && classes > 0) {
    std::vector<double> p;
    for (int i = 0; i + 1 < classes; ++i) {
      p.push_back(mu.Mass(Value::Enum(i)) / mu.Total());
    }
    fit.dist = SymDist::Multinomial(std::move(p));
  }
  if (fit.residual > kFitTolerance) {
    throw NoFamilyMatch("best " + std::string(FamilyName(*family)) + " fit " +
                        fit.dist.ToString() + " is off by total variation " +
                        FormatDouble(fit.residual));
  }
  return fit.dist;
}

Value GetParams(const SymDist& s) {
  std::vector<double> p = s.params;
  if (s.family == Family::kUniform) p = {1.0, 1.0};
  if (p.size() == 1) return Value::Real(p[0]);
  std::vector<Value> out;
  for (double x : p) out.push_back(Value::Real(x));
  return Value::Tuple(std::move(out));
}

Value GetMean(const SymDist& s) {
  switch (s.family) {
    case Family::kBernoulli: return Value::Real(s.params[0]);
    case Family::kBeta:
      return Value::Real(s.params[0] / (s.params[0] + s.params[1]));
    case Family::kUniform: return Value::Real(0.5);
    case Family::kNormal: return Value::Real(s.params[0]);
    case Family::kDirichlet:
      if (s.params.size() == 2) {
        return Value::Real(s.params[0] / (s.params[0] + s.params[1]));
      }
      break;
    case Family::kMultinomial: break;
  }
  throw DomainError("getMean is not implemented for " + s.ToString());
}

}  // namespace privinfer
