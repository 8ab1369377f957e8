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
#include "helpers.h"
#include "privinfer/discretize.h"
#include "privinfer/error.h"
#include "privinfer/evaluator.h"

namespace privinfer {
namespace {

using testing::BoolList;
using testing::EvalText;

double MaxPointwise(const Dist& a, const Dist& b) { return MaxAbsDiff(a, b); }

TEST(EvalTest, ReturnIsDirac) {
  Value v = EvalText("return 3");
  ASSERT_EQ(v.kind(), Value::Kind::kDist);
  EXPECT_EQ(v.AsDist().size(), 1u);
  EXPECT_EQ(v.AsDist().Mass(Value::Real(3)), 1.0);
}

TEST(EvalTest, RanBernoulli) {
  Dist d = EvalText("ran bernoulli(0.3)").AsDist();
  EXPECT_NEAR(d.Mass(Value::Bool(true)), 0.3, 1e-15);
  EXPECT_NEAR(d.Mass(Value::Bool(false)), 0.7, 1e-15);
}

TEST(EvalTest, BindNegation) {
  Dist d = EvalText("mlet x = ran bernoulli(0.5) in return (not x)").AsDist();
  EXPECT_EQ(d.Mass(Value::Bool(true)), 0.5);
  EXPECT_EQ(d.Mass(Value::Bool(false)), 0.5);
}

TEST(EvalTest, ObserveFiltersToSingleton) {
  Dist d = EvalText(
      "observe (fun x -> return (x = true)) (ran bernoulli(0.5))").AsDist();
  EXPECT_EQ(d.size(), 1u);
  EXPECT_EQ(d.Mass(Value::Bool(true)), 1.0);
}

TEST(EvalTest, ObserveBetaMatchesConjugateUpdate) {
  GridConfig g;
  g.unit_cells = 10000;
  Dist d = EvalText(
      "observe (fun r -> mlet z = ran bernoulli(r) in return (z = true)) "
      "(ran beta(1, 1))",
      g).AsDist();
  EXPECT_LE(MaxPointwise(d, Discretize(SymDist::Beta(2, 1), g)), 1e-6);
}

TEST(EvalTest, ZeroMassObservation) {
  try {
    EvalText("observe (fun x -> return (x = true)) (return false)");
    FAIL() << "expected ZeroMassObservation";
  } catch (const ZeroMassObservation& e) {
    EXPECT_EQ(e.span().line, 1);
    EXPECT_EQ(e.span().column, 1);
  }
}

TEST(EvalTest, FuelExhaustion) {
  auto p = testing::Compile(
      "let rec loop (x : real) : real = loop x in loop 1");
  p->config.fuel = 1000;
  EXPECT_THROW(p->Run(), FuelExhausted);
}

TEST(EvalTest, RealEqualityUsesGridCells) {
  // The observed 1.0 and the likelihood's cell representative are the same
  // cell, so the normal update goes through.
  Value v = EvalText(
      "infer (observe (fun (r : real) -> mlet z = ran normal(r, 1) in "
      "return (1 = z)) (ran normal(0, 1)))");
  ASSERT_EQ(v.kind(), Value::Kind::kSymDist);
  EXPECT_EQ(v.AsSym().family, SymDist::Family::kNormal);
  EXPECT_NEAR(v.AsSym().params[0], 0.5, 1e-12);
}

TEST(EvalTest, FixtureOutputsConserveMass) {
  GridConfig g;
  g.unit_cells = 200;
  auto p = testing::CompileFixture("beta_input", g);
  for (const auto& bits : std::vector<std::vector<bool>>{{}, {true}, {true, false, true}}) {
    Value out = p->Apply({BoolList(bits), Value::Real(1), Value::Real(1),
                          Value::Real(1)}).value;
    EXPECT_NEAR(out.AsDist().Total(), 1.0, 1e-12);
  }
}

TEST(EvalTest, Deterministic) {
  auto run = [] {
    auto p = testing::CompileFixture("hellinger_exp");
    Value prior = EvalText("ran beta(1, 1)");
    return p->Apply({prior, BoolList({true, false}), Value::Real(1)})
        .value.ToString();
  };
  EXPECT_EQ(run(), run());
}

constexpr const char* kFold = R"(
let rec learnBias (dbn : list bool) (prior : M[[0,1]]) : M[[0,1]] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r -> mlet z = ran bernoulli(r) in return (d = z))
        (learnBias dbs prior)
let post (l : list bool) : M[[0,1]] = learnBias l (ran beta(2, 3))
)";

TEST(EvalProperty, ObservationOrderCommutes) {
  auto p = testing::Compile(kFold, {}, /*expression=*/false);
  testing::Gen gen(21);
  for (int i = 0; i < 25; ++i) {
    std::vector<bool> bits(static_cast<std::size_t>(gen.Int(1, 6)));
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = gen.Coin();
    std::vector<bool> reversed(bits.rbegin(), bits.rend());
    Dist a = p->Apply({BoolList(bits)}).value.AsDist();
    Dist b = p->Apply({BoolList(reversed)}).value.AsDist();
    EXPECT_LE(MaxPointwise(a, b), 1e-10) << "instance " << i;
  }
}

// Random monadic terms over bool, rendered as source text.
class MonadicGen {
 public:
  explicit MonadicGen(std::uint64_t seed) : gen_(seed) {}

  std::string Term(int depth, const std::string& var) {
    int choice = gen_.Int(0, depth <= 0 ? 1 : 3);
    switch (choice) {
      case 0: return "ran bernoulli(" + Prob() + ")";
      case 1: return "return (" + BoolExpr(var) + ")";
      case 2: {
        std::string x = Fresh();
        return "mlet " + x + " = " + Term(depth - 1, var) + " in " +
               Term(depth - 1, x);
      }
      default:
        return "if " + BoolExpr(var) + " then " + Term(depth - 1, var) +
               " else " + Term(depth - 1, var);
    }
  }

  // A kernel body over the variable `x`.
  std::string Kernel(int depth) { return Term(depth, "x"); }
  std::string Fresh() { return "v" + std::to_string(counter_++); }

 private:
  std::string Prob() { return std::to_string(gen_.Int(0, 20) * 5 / 100.0).substr(0, 4); }
  std::string BoolExpr(const std::string& var) {
    if (var.empty() || gen_.Coin(0.3)) return gen_.Coin() ? "true" : "false";
    return gen_.Coin() ? var : "not " + var;
  }

  testing::Gen gen_;
  int counter_ = 0;
};

TEST(EvalProperty, MonadLaws) {
  MonadicGen gen(22);
  testing::Gen pick(23);
  for (int i = 0; i < 500; ++i) {
    std::string m = gen.Term(2, "");
    std::string k = gen.Kernel(2);
    std::string h = gen.Term(2, "y");
    std::string v = pick.Coin() ? "true" : "false";
    auto same = [&](const std::string& a, const std::string& b) {
      Dist da = EvalText(a).AsDist();
      Dist db = EvalText(b).AsDist();
      EXPECT_LE(MaxPointwise(da, db), 1e-12) << a << "\n  vs\n" << b;
    };
    // left identity: k with x := v
    same("mlet x = return " + v + " in " + k, "let x = " + v + " in " + k);
    same("mlet x = " + m + " in return x", m);
    same("mlet y = (mlet x = " + m + " in " + k + ") in " + h,
         "mlet x = " + m + " in mlet y = " + k + " in " + h);
  }
}

}  // namespace
}  // namespace privinfer
