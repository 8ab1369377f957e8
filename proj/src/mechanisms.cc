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

#include "privinfer/mechanisms.h"

#include <algorithm>
#include <cmath>

#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {
namespace {

// Probability that Laplace(1/eps) noise lies in [a, b] (a may be -inf, b may
// be +inf), computed without cancellation.
double LaplaceInterval(double eps, double a, double b) {
  auto lower_tail = [eps](double t) { return 0.5 * std::exp(eps * t); };
  auto upper_tail = [eps](double t) { return 0.5 * std::exp(-eps * t); };
  if (a >= 0) return upper_tail(a) - (std::isinf(b) ? 0.0 : upper_tail(b));
  if (b <= 0) return (std::isinf(b) ? 0.5 : lower_tail(b)) -
                     (std::isinf(a) ? 0.0 : lower_tail(a));
  double left = 0.5 - (std::isinf(a) ? 0.0 : lower_tail(a));
  double right = 0.5 - (std::isinf(b) ? 0.0 : upper_tail(b));
  return left + right;
}

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }
double NormalSf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double GaussInterval(double sigma, double a, double b) {
  double za = a / sigma, zb = b / sigma;
  if (za >= 0) return NormalSf(za) - NormalSf(zb);
  return NormalCdf(zb) - NormalCdf(za);
}

Dist Lattice(double x, const GridConfig& grid,
             const std::function<double(double, double)>& interval) {
  grid.Validate();
  double c = grid.Snap(x);
  int n = grid.RealCellCount();
  double w = grid.real_step;
  std::vector<Dist::Entry> entries;
  entries.reserve(n);
  for (int i = 0; i < n; ++i) {
    double center = grid.RealCenter(i);
    double a = i == 0 ? -INFINITY : center - w / 2 - c;
    double b = i == n - 1 ? INFINITY : center + w / 2 - c;
    entries.emplace_back(Value::Real(center), interval(a, b));
  }
  return Dist::FromEntries(std::move(entries));
}

}  // namespace

Dist LaplaceMech(double eps, double x, const GridConfig& grid) {
  if (!(eps > 0) || !std::isfinite(eps)) {
    throw DomainError("lapMech needs a positive finite epsilon");
  }
  if (!std::isfinite(x)) throw DomainError("lapMech on a non-finite input");
  return Lattice(x, grid, [eps](double a, double b) {
    return LaplaceInterval(eps, a, b);
  });
}

Dist GaussMech(double sigma, double x, const GridConfig& grid) {
  if (!(sigma > 0) || !std::isfinite(sigma)) {
    throw DomainError("gaussMech needs a positive finite sigma");
  }
  if (!std::isfinite(x)) throw DomainError("gaussMech on a non-finite input");
  return Lattice(x, grid, [sigma](double a, double b) {
    return GaussInterval(sigma, a, b);
  });
}

double GaussSigma(double eps, double delta) {
  if (!(eps > 0) || !(delta > 0)) {
    throw DomainError("gaussSigma needs positive epsilon and delta");
  }
  return std::sqrt(2 * std::log(1.25 / delta)) / eps;
}

Dist ExpMech(double eps, const std::function<double(const Value&)>& score,
             const std::vector<Value>& outputs) {
  if (outputs.empty()) throw DomainError("expMech with no outputs");
  std::vector<double> scores;
  scores.reserve(outputs.size());
  for (const Value& r : outputs) {
    double s = score(r);
    if (!std::isfinite(s)) {
      throw DomainError("expMech score is not finite at " + r.ToString());
    }
    scores.push_back(s * eps / 2);
  }
  double top = *std::max_element(scores.begin(), scores.end());
  CompensatedSum total;
  std::vector<double> w(scores.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(scores[i] - top);
    total.Add(w[i]);
  }
  std::vector<Dist::Entry> entries;
  for (std::size_t i = 0; i < w.size(); ++i) {
    entries.emplace_back(outputs[i], w[i] / total.Value());
  }
  return Dist::FromEntries(std::move(entries));
}

double LaplaceSlack(double eps, const GridConfig& grid) {
  return -std::expm1(-eps * grid.real_step);
}

double GaussianEpsDistance(double sigma, double eps, double shift) {
  if (shift <= 0) return 0.0;
  double u = shift / (2 * sigma);
  double v = eps * sigma / shift;
  double d = NormalCdf(u - v) - std::exp(eps) * NormalCdf(-u - v);
  return std::max(d, 0.0);
}

double GaussSlack(double sigma, double eps, double k, const GridConfig& grid) {
  return GaussianEpsDistance(sigma, eps, k + grid.real_step) -
         GaussianEpsDistance(sigma, eps, k);
}

}  // namespace privinfer
