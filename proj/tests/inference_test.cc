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

#include "generators.h"
#include "gtest/gtest.h"
#include "helpers.h"
#include "privinfer/discretize.h"
#include "privinfer/inference.h"

namespace privinfer {
namespace {

using testing::EvalText;

SymDist InferText(const std::string& text, const GridConfig& g = {}) {
  return EvalText(text, g).AsSym();
}

void ExpectParams(const SymDist& s, SymDist::Family f,
                  const std::vector<double>& params, double tol = 1e-12) {
  EXPECT_EQ(s.family, f) << s.ToString();
  ASSERT_EQ(s.params.size(), params.size()) << s.ToString();
  for (std::size_t i = 0; i < params.size(); ++i) {
    EXPECT_NEAR(s.params[i], params[i], tol) << s.ToString();
  }
}

TEST(InferTest, BetaBernoulli) {
  ExpectParams(InferText("infer (observe (fun r -> mlet z = ran bernoulli(r) in "
                         "return (z = true)) (ran beta(1, 1)))"),
               SymDist::Family::kBeta, {2, 1});
}

TEST(InferTest, DirichletMultinomial) {
  GridConfig g;
  g.simplex_cells = 60;
  auto p = testing::Compile(R"(
let rec learnP (dbn : list [3]) (prior : M[[0,1]^2]) : M[[0,1]^2] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r s -> mlet z = ran multinomial(r, s) in return (d = z))
        (learnP dbs prior)
let post (l : list [3]) : D[[0,1]^2] = infer (learnP l (ran dirichlet(1, 1, 1)))
)", g, false);
  // Counts (2, 0, 1).
  Value obs = Value::List({Value::Enum(0), Value::Enum(2), Value::Enum(0)});
  ExpectParams(p->Apply({obs}).value.AsSym(), SymDist::Family::kDirichlet,
               {3, 1, 2});
}

TEST(InferTest, NormalKnownVariance) {
  ExpectParams(InferText("infer (observe (fun (r : real) -> mlet z = ran normal(r, 1) "
                         "in return (1 = z)) (ran normal(0, 1)))"),
               SymDist::Family::kNormal, {0.5, 0.5});
}

TEST(InferTest, GetParamsAndMean) {
  Value p = GetParams(SymDist::Beta(3, 2));
  ASSERT_EQ(p.kind(), Value::Kind::kTuple);
  EXPECT_EQ(p.Elems()[0].AsReal(), 3);
  EXPECT_EQ(p.Elems()[1].AsReal(), 2);
  EXPECT_EQ(GetMean(SymDist::Normal(1.5, 0.7)).AsReal(), 1.5);
  EXPECT_NEAR(GetMean(SymDist::Beta(2, 1)).AsReal(), 2.0 / 3.0, 1e-15);
  EXPECT_THROW(GetMean(SymDist::Dirichlet({1, 1, 1})), Error);
}

TEST(InferTest, GridPathFitsUntaggedPmf) {
  GridConfig g;
  g.unit_cells = 400;
  Dist mu = Discretize(SymDist::Beta(3, 5), g).WithProvenance(std::nullopt);
  FamilyFit fit = FitFamily(mu, SymDist::Family::kBeta, g);
  ExpectParams(fit.dist, SymDist::Family::kBeta, {3, 5}, 1e-2);
  SymDist s = AlgInf(mu, SimpleType::UnitInterval(), g);
  EXPECT_EQ(s.family, SymDist::Family::kBeta);
}

TEST(InferTest, NoFamilyMatch) {
  GridConfig g;
  g.unit_cells = 100;
  // Two spikes at the ends: no beta is close in total variation.
  std::vector<Dist::Entry> e;
  e.emplace_back(Value::Real(g.UnitMid(0)), 0.5);
  e.emplace_back(Value::Real(g.UnitMid(50)), 0.0001);
  e.emplace_back(Value::Real(g.UnitMid(99)), 0.4999);
  EXPECT_THROW(AlgInf(Dist::FromEntries(e), SimpleType::UnitInterval(), g),
               NoFamilyMatch);
}

constexpr const char* kFold = R"(
let rec learnBias (dbn : list bool) (prior : M[[0,1]]) : M[[0,1]] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r -> mlet z = ran bernoulli(r) in return (d = z))
        (learnBias dbs prior)
let post (l : list bool) (a : real+) (b : real+) : M[[0,1]] =
  learnBias l (ran beta(a, b))
)";

TEST(InferProperty, RoundTripOrderAndPathAgreement) {
  GridConfig g;
  g.unit_cells = 1000;
  auto p = testing::Compile(kFold, g, false);
  testing::Gen gen(31);
  for (int i = 0; i < 20; ++i) {
    std::vector<bool> bits(static_cast<std::size_t>(gen.Int(0, 5)));
    int t = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) t += (bits[k] = gen.Coin());
    double a = gen.Int(1, 4), b = gen.Int(1, 4);
    Dist mu = p->Apply({testing::BoolList(bits), Value::Real(a), Value::Real(b)})
                  .value.AsDist();
    SymDist s = AlgInf(mu, SimpleType::UnitInterval(), g);
    ExpectParams(s, SymDist::Family::kBeta,
                 {a + t, b + static_cast<double>(bits.size()) - t});
    EXPECT_LE(MaxAbsDiff(Discretize(s, g), mu), 1e-6) << "instance " << i;
    std::vector<bool> rev(bits.rbegin(), bits.rend());
    Dist mu_rev = p->Apply({testing::BoolList(rev), Value::Real(a), Value::Real(b)})
                      .value.AsDist();
    EXPECT_EQ(AlgInf(mu_rev, SimpleType::UnitInterval(), g), s);
    FamilyFit fit = FitFamily(mu.WithProvenance(std::nullopt),
                              SymDist::Family::kBeta, g);
    EXPECT_LE(fit.residual, kFitTolerance);
    EXPECT_NEAR(fit.dist.params[0], s.params[0], 0.05 * s.params[0]);
    EXPECT_NEAR(fit.dist.params[1], s.params[1], 0.05 * s.params[1]);
  }
}

}  // namespace
}  // namespace privinfer
