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

#include <random>

#include "gtest/gtest.h"
#include "helpers.h"
#include "privinfer/error.h"
#include "privinfer/parser.h"
#include "privinfer/simple_types.h"

namespace privinfer {
namespace {

std::string TypeOf(const std::string& text) {
  return Typecheck(*ParseExpression(text)).ToString();
}

TEST(PrimitiveSignatureTest, Mechanisms) {
  EXPECT_EQ(PrimitiveSignature("gaussMech").ToString(), "(real+ * real) -> M[real]");
  EXPECT_EQ(PrimitiveSignature("lapMech").ToString(), "(real+ * real) -> M[real]");
}

TEST(PrimitiveSignatureTest, Families) {
  EXPECT_EQ(PrimitiveSignature("beta").ToString(), "(real+ * real+) -> D[[0,1]]");
  EXPECT_EQ(PrimitiveSignature("bernoulli").ToString(), "[0,1] -> D[bool]");
  EXPECT_EQ(PrimitiveSignature("getMean").ToString(), "D[real] -> real");
}

TEST(PrimitiveSignatureTest, UnknownPrimitive) {
  EXPECT_THROW(PrimitiveSignature("poisson"), Error);
}

TEST(TypecheckTest, GetParamsOfBetaIsAPair) {
  EXPECT_EQ(TypeOf("getParams(beta(3, 2))"), "(real+ * real+)");
}

TEST(TypecheckTest, RanAndInfer) {
  EXPECT_EQ(TypeOf("ran beta(1, 1)"), "M[[0,1]]");
  EXPECT_EQ(TypeOf("infer (ran beta(1, 1))"), "D[[0,1]]");
  EXPECT_EQ(TypeOf("mlet x = ran bernoulli(0.5) in return (not x)"), "M[bool]");
}

TEST(TypecheckTest, NumericSubsumption) {
  EXPECT_EQ(TypeOf("lapMech(0.5, 1)"), "M[real]");
  EXPECT_EQ(TypeOf("bernoulli(0.25)"), "D[bool]");
}

TEST(TypecheckTest, Errors) {
  EXPECT_THROW(TypeOf("1 + true"), TypeError);
  EXPECT_THROW(TypeOf("fun x -> x"), TypeError);
  EXPECT_THROW(TypeOf("return undefinedName"), TypeError);
  EXPECT_THROW(TypeOf("mlet x = 3 in return x"), TypeError);
  EXPECT_THROW(TypeOf("bernoulli(true)"), TypeError);
}

TEST(TypecheckTest, ErrorsCarrySpans) {
  try {
    TypeOf("return (1 + true)");
    FAIL();
  } catch (const TypeError& e) {
    EXPECT_EQ(e.span().line, 1);
    EXPECT_EQ(e.rule(), "Op");
  }
}

TEST(TypecheckTest, FixtureMains) {
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"beta_input", "list bool -> real+ -> real+ -> real+ -> M[D[[0,1]]]"},
      {"beta_l1", "list bool -> real+ -> real+ -> real+ -> M[D[[0,1]]]"},
      {"normal_l1", "list real -> real -> real+ -> real+ -> real+ -> M[D[real]]"},
      {"hellinger_exp", "M[[0,1]] -> list bool -> real+ -> M[D[[0,1]]]"},
  };
  for (const auto& [name, type] : cases) {
    auto p = testing::CompileFixture(name);
    std::string main;
    for (const auto& [n, t] : TopLevelTypes(*p->expr)) {
      if (n == "main") main = t.ToString();
    }
    EXPECT_EQ(main, type) << name;
  }
}

TEST(TypecheckTest, Deterministic) {
  auto a = testing::CompileFixture("dirichlet_exp");
  auto b = testing::CompileFixture("dirichlet_exp");
  EXPECT_EQ(Typecheck(*a->expr).ToString(), Typecheck(*b->expr).ToString());
}

// Well-typed programs never hit a dynamic type error, whatever the inputs.
TEST(TypecheckProperty, NoDynamicTypeErrorsOnFuzzedValuations) {
  auto p = testing::CompileFixture("beta_input", GridConfig{100, 20, 0.25, 16});
  p->config.validate = true;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    std::vector<bool> bits(rng() % 4);
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = rng() % 2;
    double a = 0.5 + static_cast<double>(rng() % 8) / 2;
    double b = 0.5 + static_cast<double>(rng() % 8) / 2;
    double eps = 0.1 + static_cast<double>(rng() % 20) / 10;
    EXPECT_NO_THROW(p->Apply({testing::BoolList(bits), Value::Real(a),
                              Value::Real(b), Value::Real(eps)}));
  }
}

}  // namespace
}  // namespace privinfer
