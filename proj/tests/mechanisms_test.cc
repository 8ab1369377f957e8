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

#include <algorithm>
#include <cmath>

#include "generators.h"
#include "gtest/gtest.h"
#include "privinfer/divergence.h"
#include "privinfer/mechanisms.h"

namespace privinfer {
namespace {

GridConfig Grid(double step, double extent = 16) {
  GridConfig g;
  g.real_step = step;
  g.real_extent = extent;
  return g;
}

double Mass(const Dist& d, double x) {
  for (const auto& [v, m] : d.entries()) {
    if (std::abs(v.AsReal() - x) < 1e-12) return m;
  }
  return 0;
}

TEST(LaplaceTest, ModeCellAndSymmetry) {
  GridConfig g = Grid(0.25);
  Dist d = LaplaceMech(1.0, 2.0, g);
  EXPECT_NEAR(Mass(d, 2.0), 1 - std::exp(-0.125), 1e-15);
  for (double k = 0.25; k < 6; k += 0.25) {
    EXPECT_NEAR(Mass(d, 2 + k), Mass(d, 2 - k), 1e-15) << k;
  }
  EXPECT_NEAR(d.Total(), 1.0, 1e-12);
}

TEST(LaplaceTest, RejectsBadArguments) {
  EXPECT_THROW(LaplaceMech(0, 0, Grid(0.25)), DomainError);
  EXPECT_THROW(LaplaceMech(1, INFINITY, Grid(0.25)), DomainError);
  EXPECT_THROW(GaussMech(-1, 0, Grid(0.25)), DomainError);
}

TEST(LaplaceTest, TranslationOnTheLattice) {
  GridConfig g = Grid(0.5);
  Dist a = LaplaceMech(0.7, 0.0, g), b = LaplaceMech(0.7, 1.0, g);
  for (double x = -5; x <= 5; x += 0.5) {
    EXPECT_NEAR(Mass(a, x), Mass(b, x + 1), 1e-15) << x;
  }
}

TEST(LaplaceTest, NeighborsWithinEpsilon) {
  GridConfig g = Grid(0.25);
  testing::Gen gen(5);
  for (int i = 0; i < 50; ++i) {
    double eps = 0.1 + 2 * gen.Unit();
    double x = 4 * gen.Unit() - 2, d = gen.Unit();
    double m = FDiv(FDivKind::EpsD(eps), LaplaceMech(eps, x, g),
                    LaplaceMech(eps, x + d, g));
    EXPECT_LE(m, LaplaceSlack(eps, g) + 1e-12) << eps << " " << x << " " << d;
  }
}

TEST(GaussTest, SigmaAndSymmetry) {
  EXPECT_NEAR(GaussSigma(1, 0.05), 2.5373, 1e-4);
  EXPECT_THROW(GaussSigma(1, 0), DomainError);
  Dist d = GaussMech(1.3, 0, Grid(0.25));
  for (double k = 0.25; k < 6; k += 0.25) {
    EXPECT_NEAR(Mass(d, k), Mass(d, -k), 1e-15);
  }
  EXPECT_NEAR(d.Total(), 1.0, 1e-12);
}

TEST(GaussTest, NeighborsWithinDeltaPlusSlack) {
  GridConfig g = Grid(0.25, 24);
  for (double eps : {0.3, 0.5, 1.0}) {
    double sigma = GaussSigma(eps, 0.05);
    for (double d = 0.1; d <= 1.0; d += 0.15) {
      double m = FDiv(FDivKind::EpsD(eps), GaussMech(sigma, 0.1, g),
                      GaussMech(sigma, 0.1 + d, g));
      EXPECT_LE(m, GaussianEpsDistance(sigma, eps, 1) +
                       GaussSlack(sigma, eps, 1, g) + 1e-12);
    }
  }
}

TEST(GaussTest, ContinuousEpsDistanceBelowDelta) {
  for (double eps : {0.2, 0.5, 0.9}) {
    for (double delta : {0.01, 0.05, 0.1}) {
      EXPECT_LE(GaussianEpsDistance(GaussSigma(eps, delta), eps, 1), delta);
    }
  }
  EXPECT_EQ(GaussianEpsDistance(1, 1, 0), 0);
}

TEST(ExpMechTest, ConstantScoreIsUniform) {
  std::vector<Value> out{Value::Real(0), Value::Real(1), Value::Real(2)};
  Dist d = ExpMech(1.0, [](const Value&) { return 3.0; }, out);
  for (const auto& e : d.entries()) EXPECT_NEAR(e.second, 1.0 / 3, 1e-15);
}

TEST(ExpMechTest, RatioAndShiftInvariance) {
  std::vector<Value> out{Value::Real(0), Value::Real(1)};
  auto score = [](const Value& r) { return r.AsReal(); };
  Dist d = ExpMech(0.8, score, out);
  EXPECT_NEAR(Mass(d, 1) / Mass(d, 0), std::exp(0.4), 1e-12);
  for (double c : {-3.0, 0.5, 37.25}) {
    Dist shifted = ExpMech(0.8, [c](const Value& r) { return r.AsReal() + c; }, out);
    EXPECT_LE(MaxAbsDiff(d, shifted), 1e-12) << c;
  }
  EXPECT_THROW(ExpMech(1, score, {}), DomainError);
  EXPECT_THROW(ExpMech(1, [](const Value&) { return NAN; }, out), DomainError);
}

TEST(ExpMechTest, SensitivityOneScoresGiveEpsilon) {
  testing::Gen gen(9);
  for (int i = 0; i < 200; ++i) {
    int n = gen.Int(1, 6);
    std::vector<Value> out;
    std::vector<double> s1, s2;
    for (int k = 0; k < n; ++k) {
      out.push_back(Value::Real(k));
      s1.push_back(4 * gen.Unit() - 2);
      s2.push_back(s1.back() + 2 * gen.Unit() - 1);
    }
    double eps = 0.1 + gen.Unit();
    auto f = [](const std::vector<double>& s) {
      return [&s](const Value& r) { return s[static_cast<std::size_t>(r.AsReal())]; };
    };
    Dist a = ExpMech(eps, f(s1), out), b = ExpMech(eps, f(s2), out);
    EXPECT_LE(FDiv(FDivKind::EpsD(eps), a, b), 1e-12);
    EXPECT_LE(FDiv(FDivKind::EpsD(eps), b, a), 1e-12);
  }
}

TEST(MechPostProcessing, MapDoesNotIncreaseDivergence) {
  GridConfig g = Grid(0.25);
  Dist a = LaplaceMech(0.5, 0, g), b = LaplaceMech(0.5, 1.3, g);
  auto clamp = [](const Value& v) {
    return Value::Real(std::clamp(std::round(v.AsReal()), -2.0, 2.0));
  };
  for (auto kind : {FDivKind::EpsD(0.5), FDivKind::SD(), FDivKind::HD()}) {
    EXPECT_LE(FDiv(kind, DistMap(a, clamp), DistMap(b, clamp)),
              FDiv(kind, a, b) + 1e-12);
  }
}

TEST(SlackTest, ShrinksWithStep) {
  EXPECT_NEAR(LaplaceSlack(1, Grid(0.25)) / LaplaceSlack(1, Grid(0.125)), 2, 0.15);
  // Gauss slack is convex in the step near shift 1; the ratio only tends to 2.
  double s = GaussSigma(0.5, 0.05);
  double prev = INFINITY;
  for (double h : {0.5, 0.25, 0.125, 0.0625}) {
    double r = GaussSlack(s, 0.5, 1, Grid(h)) / GaussSlack(s, 0.5, 1, Grid(h / 2));
    EXPECT_GT(r, 2);
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_NEAR(prev, 2, 0.4);
}

}  // namespace
}  // namespace privinfer
