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

#include <cmath>
#include <limits>

#include "generators.h"
#include "oracles.h"
#include "gtest/gtest.h"
#include "privinfer/discretize.h"
#include "privinfer/dist.h"
#include "privinfer/divergence.h"

namespace privinfer {
namespace {

constexpr double kTight = 1e-12;
const double kInf = std::numeric_limits<double>::infinity();

Dist Bern(double p) { return Dist::Bernoulli(p); }

std::vector<FDivKind> AllKinds() {
  return {FDivKind::SD(), FDivKind::HD(), FDivKind::KL(), FDivKind::EpsD(0),
          FDivKind::EpsD(0.5), FDivKind::EpsD(2)};
}

TEST(FDivTest, SelfDivergenceIsZero) {
  testing::Gen gen(1);
  for (const FDivKind& k : AllKinds()) {
    Dist mu = gen.RandomDist(5);
    EXPECT_EQ(FDiv(k, mu, mu), 0.0) << k.ToString();
  }
}

TEST(FDivTest, StatisticalDistanceOfBernoullis) {
  EXPECT_NEAR(FDiv(FDivKind::SD(), Bern(0.5), Bern(0.75)), 0.25, kTight);
}

TEST(FDivTest, EpsZeroIsPositivePart) {
  testing::Gen gen(2);
  for (int i = 0; i < 100; ++i) {
    Dist a = gen.RandomDist(4, true), b = gen.RandomDist(4, true);
    double sum = 0;
    for (int v = 0; v < 4; ++v) {
      sum += std::max(a.Mass(Value::Enum(v)) - b.Mass(Value::Enum(v)), 0.0);
    }
    EXPECT_NEAR(FDiv(FDivKind::EpsD(0), a, b), sum, kTight);
    // With eps = 0 the positive part is exactly the statistical distance.
    EXPECT_NEAR(FDiv(FDivKind::EpsD(0), a, b), FDiv(FDivKind::SD(), a, b), kTight);
  }
}

TEST(FDivTest, KlPointMassAgainstUniform) {
  Dist point = Dist::Dirac(Value::Enum(0));
  Dist uniform = Dist::Uniform({Value::Enum(0), Value::Enum(1)});
  EXPECT_NEAR(FDiv(FDivKind::KL(), point, uniform), std::log(2.0), kTight);
}

TEST(FDivTest, KlInfiniteOffSupport) {
  Dist uniform = Dist::Uniform({Value::Enum(0), Value::Enum(1)});
  Dist point = Dist::Dirac(Value::Enum(0));
  EXPECT_EQ(FDiv(FDivKind::KL(), uniform, point), kInf);
}

TEST(FDivTest, HellingerDistanceIsSquareRoot) {
  Dist a = Bern(0.2), b = Bern(0.7);
  EXPECT_NEAR(HellingerDistance(a, b) * HellingerDistance(a, b),
              FDiv(FDivKind::HD(), a, b), kTight);
}

TEST(FDivTest, ParseKinds) {
  EXPECT_EQ(ParseFDivKind("sd"), FDivKind::SD());
  EXPECT_EQ(ParseFDivKind("hd"), FDivKind::HD());
  EXPECT_EQ(ParseFDivKind("kl"), FDivKind::KL());
  EXPECT_EQ(ParseFDivKind("eps:0.5"), FDivKind::EpsD(0.5));
  EXPECT_THROW(ParseFDivKind("tv"), Error);
  EXPECT_THROW(ParseFDivKind("eps:-1"), Error);
}

TEST(FDivTest, GeneratorsConvexWithRootAtOne) {
  for (const FDivKind& k : AllKinds()) {
    EXPECT_NEAR(k.Generator(1.0), 0.0, kTight) << k.ToString();
    for (double x = 0.01; x < 20; x *= 1.3) {
      for (double y = x * 1.1; y < 25; y *= 1.7) {
        double mid = k.Generator((x + y) / 2);
        EXPECT_LE(mid, (k.Generator(x) + k.Generator(y)) / 2 + 1e-12)
            << k.ToString() << " at " << x << ", " << y;
      }
    }
  }
}

TEST(FDivTest, EpsDistanceIsAsymmetric) {
  testing::Gen gen(3);
  bool found = false;
  for (int i = 0; i < 1000 && !found; ++i) {
    Dist a = gen.RandomDist(3), b = gen.RandomDist(3);
    FDivKind k = FDivKind::EpsD(0.3);
    found = std::fabs(FDiv(k, a, b) - FDiv(k, b, a)) > 1e-6;
  }
  EXPECT_TRUE(found);
}

TEST(ComposableTest, Table) {
  EXPECT_EQ(Composable(FDivKind::HD(), FDivKind::HD()), FDivKind::HD());
  EXPECT_EQ(Composable(FDivKind::SD(), FDivKind::SD()), FDivKind::SD());
  EXPECT_EQ(Composable(FDivKind::KL(), FDivKind::KL()), FDivKind::KL());
  auto e = Composable(FDivKind::EpsD(0.5), FDivKind::EpsD(0.7));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->tag, FDivKind::Tag::kEpsD);
  EXPECT_NEAR(e->eps, 1.2, kTight);
  EXPECT_FALSE(Composable(FDivKind::SD(), FDivKind::KL()));
  EXPECT_FALSE(Composable(FDivKind::HD(), FDivKind::SD()));
}

TEST(DistTest, UnitAndBind) {
  Dist u = DistUnit(Value::Enum(2));
  EXPECT_EQ(u.size(), 1u);
  EXPECT_EQ(u.Mass(Value::Enum(2)), 1.0);
  Dist coin = Bern(0.5);
  Dist flipped = DistBind(coin, [](const Value& v) {
    return DistUnit(Value::Bool(!v.AsBool()));
  });
  EXPECT_NEAR(flipped.Mass(Value::Bool(true)), 0.5, kTight);
}

TEST(DistTest, ZeroMassIsPruned) {
  Dist d = Dist::FromEntries({{Value::Enum(0), 0.0}, {Value::Enum(1), 1.0}});
  EXPECT_EQ(d.size(), 1u);
}

TEST(DiscretizeTest, BernoulliIsExact) {
  Dist d = Discretize(SymDist::Bernoulli(0.3), {});
  EXPECT_EQ(d.Mass(Value::Bool(true)), 0.3);
  EXPECT_EQ(d.Mass(Value::Bool(false)), 0.7);
}

TEST(DiscretizeTest, FlatBeta) {
  GridConfig g;
  g.unit_cells = 100;
  Dist d = Discretize(SymDist::Beta(1, 1), g);
  ASSERT_EQ(d.size(), 100u);
  for (const auto& [v, m] : d.entries()) EXPECT_NEAR(m, 0.01, kTight);
}

TEST(DiscretizeTest, BetaMean) {
  GridConfig g;
  g.unit_cells = 10000;
  Dist d = Discretize(SymDist::Beta(2, 1), g);
  double mean = 0;
  for (const auto& [v, m] : d.entries()) mean += m * v.AsReal();
  EXPECT_NEAR(mean, 2.0 / 3.0, 1e-4);
}

TEST(DiscretizeTest, MassIsConserved) {
  GridConfig g;
  for (const SymDist& s :
       {SymDist::Beta(0.5, 3), SymDist::Normal(1, 2), SymDist::Uniform(),
        SymDist::Dirichlet({1, 2, 3}), SymDist::Multinomial({0.2, 0.3})}) {
    EXPECT_NEAR(Discretize(s, g).Total(), 1.0, kTight) << s.ToString();
  }
}

TEST(DiscretizeTest, InvalidParameters) {
  EXPECT_THROW(Discretize(SymDist::Beta(0, 1), {}), Error);
  EXPECT_THROW(Discretize(SymDist::Bernoulli(1.5), {}), Error);
  EXPECT_THROW(Discretize(SymDist::Normal(0, -1), {}), Error);
}

TEST(DiscretizeTest, NarrowLatticeWarns) {
  GridConfig g;
  EXPECT_TRUE(CoverageWarning(SymDist::Normal(0, 9), g));  // 8 sd = 24 > 16
  EXPECT_FALSE(CoverageWarning(SymDist::Normal(0, 1), g));
}

// The grid error of a divergence shrinks at least linearly in the cell size.
TEST(DiscretizeTest, GridRefinementConverges) {
  auto hd_at = [](int n) {
    GridConfig g;
    g.unit_cells = n;
    return HellingerDistance(Discretize(SymDist::Beta(2, 3), g),
                             Discretize(SymDist::Beta(3, 2), g));
  };
  double prev = std::fabs(hd_at(250) - hd_at(500));
  double worst_c = prev * 250;
  for (int n = 500; n <= 2000; n *= 2) {
    double diff = std::fabs(hd_at(n) - hd_at(2 * n));
    EXPECT_LE(diff, prev * 0.75 + 1e-15) << "N = " << n;
    worst_c = std::max(worst_c, diff * n);
    prev = diff;
  }
  RecordProperty("beta_refinement_constant", std::to_string(worst_c));
  EXPECT_LE(worst_c, 1.0);

  auto normal_at = [](double step) {
    GridConfig g;
    g.real_step = step;
    return HellingerDistance(Discretize(SymDist::Normal(0, 1), g),
                             Discretize(SymDist::Normal(1, 1), g));
  };
  double d1 = std::fabs(normal_at(0.5) - normal_at(0.25));
  double d2 = std::fabs(normal_at(0.25) - normal_at(0.125));
  EXPECT_LE(d2, d1 * 0.75 + 1e-15);
}

TEST(LiftingTest, Examples) {
  Dist mu = Bern(0.4);
  EXPECT_TRUE(CheckDiagonalLifting(FDivKind::SD(), 0, mu, mu));
  EXPECT_FALSE(CheckDiagonalLifting(FDivKind::SD(), 0.2, Bern(0.5), Bern(0.75)));
  EXPECT_TRUE(CheckDiagonalLifting(FDivKind::SD(), 0.25, Bern(0.5), Bern(0.75)));
}

// --- property suites ---

constexpr int kTrials = 500;

TEST(DistProperty, MonadLaws) {
  testing::Gen gen(11);
  for (int i = 0; i < kTrials; ++i) {
    int n = gen.Int(1, 6), m = gen.Int(1, 6), l = gen.Int(1, 6);
    Dist mu = gen.RandomDist(n, true);
    Kernel k = gen.RandomKernel(n, m, true);
    Kernel h = gen.RandomKernel(m, l, true);
    Value v = Value::Enum(gen.Int(0, n - 1));
    EXPECT_LE(MaxAbsDiff(DistBind(DistUnit(v), k), k(v)), kTight);
    EXPECT_LE(MaxAbsDiff(DistBind(mu, DistUnit), mu), kTight);
    Dist left = DistBind(DistBind(mu, k), h);
    Dist right = DistBind(mu, [&](const Value& x) { return DistBind(k(x), h); });
    EXPECT_LE(MaxAbsDiff(left, right), kTight) << "instance " << i;
  }
}

TEST(DistProperty, DataProcessingInequality) {
  testing::Gen gen(12);
  for (const FDivKind& k : AllKinds()) {
    for (int i = 0; i < kTrials; ++i) {
      int n = gen.Int(1, 6);
      Dist a = gen.RandomDist(n, true), b = gen.RandomDist(n, true);
      Kernel m = gen.RandomKernel(n, gen.Int(1, 6), true);
      double before = FDiv(k, a, b);
      double after = FDiv(k, DistBind(a, m), DistBind(b, m));
      if (std::isinf(before)) continue;
      EXPECT_LE(after, before + kTight) << k.ToString() << " instance " << i;
    }
  }
}

TEST(DistProperty, Composability) {
  testing::Gen gen(13);
  const std::vector<std::pair<FDivKind, FDivKind>> pairs = {
      {FDivKind::SD(), FDivKind::SD()},
      {FDivKind::HD(), FDivKind::HD()},
      {FDivKind::KL(), FDivKind::KL()},
      {FDivKind::EpsD(0.3), FDivKind::EpsD(0.9)},
      {FDivKind::EpsD(0), FDivKind::EpsD(1.5)}};
  for (const auto& [f1, f2] : pairs) {
    FDivKind f3 = *Composable(f1, f2);
    for (int i = 0; i < kTrials; ++i) {
      int n = gen.Int(1, 6), out = gen.Int(1, 6);
      Dist a = gen.RandomDist(n, true), b = gen.RandomDist(n, true);
      Kernel k1 = gen.RandomKernel(n, out, true);
      Kernel k2 = gen.RandomKernel(n, out, true);
      double kernel = 0;
      for (int v = 0; v < n; ++v) {
        kernel = std::max(kernel, FDiv(f2, k1(Value::Enum(v)), k2(Value::Enum(v))));
      }
      double bound = FDiv(f1, a, b) + kernel;
      if (std::isinf(bound)) continue;
      EXPECT_LE(FDiv(f3, DistBind(a, k1), DistBind(b, k2)), bound + kTight)
          << f1.ToString() << " then " << f2.ToString() << ", instance " << i;
    }
  }
}

TEST(DistProperty, Nonnegative) {
  testing::Gen gen(14);
  for (const FDivKind& k : AllKinds()) {
    for (int i = 0; i < kTrials; ++i) {
      Dist a = gen.RandomDist(4, true), b = gen.RandomDist(4, true);
      EXPECT_GE(FDiv(k, a, b), 0.0);
    }
  }
}

TEST(LiftingProperty, AgreesWithWitnessSearch) {
  testing::Gen gen(15);
  const int den = 6;
  int agree_true = 0, agree_false = 0;
  for (int i = 0; i < 200; ++i) {
    int n = gen.Int(1, 3);
    Dist a = gen.GridDist(n, den), b = gen.GridDist(n, den);
    FDivKind k = gen.Pick(std::vector<FDivKind>{FDivKind::SD(), FDivKind::HD(),
                                                FDivKind::KL(), FDivKind::EpsD(0.4)});
    double d = FDiv(k, a, b);
    double delta = std::isinf(d) ? gen.Unit() : d * (gen.Coin() ? 0.8 : 1.25) +
                                                    (gen.Coin(0.2) ? 0.05 : 0.0);
    bool fast = CheckDiagonalLifting(k, delta, a, b);
    bool slow = testing::WitnessSearch(k, delta, a, b, n, den);
    EXPECT_EQ(fast, slow) << "instance " << i << " " << k.ToString() << " delta "
                          << delta << " " << a.ToString() << " vs " << b.ToString();
    (fast ? agree_true : agree_false)++;
  }
  EXPECT_GT(agree_true, 20);
  EXPECT_GT(agree_false, 20);
}

}  // namespace
}  // namespace privinfer
