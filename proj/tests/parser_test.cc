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

#include <fstream>
#include <sstream>
#include <string>

#include "generators.h"
#include "gtest/gtest.h"
#include "privinfer/ast.h"
#include "privinfer/corpus.h"
#include "privinfer/error.h"
#include "privinfer/parser.h"

namespace privinfer {
namespace {

const std::vector<std::string> kFixtures = {
    "beta_input", "beta_l1", "normal_input", "normal_l1",
    "hellinger_exp", "sd_exp", "dirichlet_exp"};

std::string FixturePath(const std::string& name) {
  return DefaultFixtureDir() + "/" + name + ".pinf";
}

TEST(ParseTest, ReturnTrue) {
  ExprPtr e = ParseExpression("return true");
  const auto* r = e->As<node::Return>();
  ASSERT_NE(r, nullptr);
  const auto* lit = r->value->As<node::Literal>();
  ASSERT_NE(lit, nullptr);
  EXPECT_EQ(lit->kind, node::Literal::Kind::kBool);
  EXPECT_TRUE(lit->boolean);
  EXPECT_EQ(Pretty(*e), "return true");
}

TEST(ParseTest, InferObserveBeta) {
  ExprPtr e = ParseExpression(
      "infer (observe (fun r -> bernoulli(r) = obs) beta(a, b))");
  const auto* inf = e->As<node::Infer>();
  ASSERT_NE(inf, nullptr);
  const auto* obs = inf->value->As<node::Observe>();
  ASSERT_NE(obs, nullptr);
  EXPECT_EQ(obs->binder.name(), "r");
  const auto* prior = obs->prior->As<node::Prim>();
  ASSERT_NE(prior, nullptr);
  EXPECT_EQ(prior->op, PrimOp::kBeta);
  EXPECT_EQ(prior->args.size(), 2u);
  EXPECT_TRUE(obs->predicate->Is<node::Binary>());
}

TEST(ParseTest, EmptyBindHeadIsSyntaxError) {
  try {
    ParseExpression("mlet x = in return x");
    FAIL() << "expected a syntax error";
  } catch (const SyntaxError& err) {
    EXPECT_EQ(err.span().line, 1);
    EXPECT_EQ(err.span().column, 10);
    EXPECT_NE(err.message().find("expected"), std::string::npos);
  }
}

TEST(ParseTest, DecimalLiteral) {
  EXPECT_EQ(Pretty(*ParseExpression("0.5")), "0.5");
  const auto* lit = ParseExpression("0.1")->As<node::Literal>();
  ASSERT_NE(lit, nullptr);
  EXPECT_EQ(lit->number, Rational(1) / 10);
}

TEST(ParseTest, FiniteIndexType) {
  SimpleType t = ParseSimpleType("list [3]");
  EXPECT_EQ(t.kind(), SimpleType::Kind::kList);
  EXPECT_EQ(t.elem().ToString(), "[3]");
}

TEST(ParseTest, UnboundNamesAreNotSyntaxErrors) {
  EXPECT_NO_THROW(ParseExpression("return nowhere"));
}

TEST(ParseTest, FixturesRoundTrip) {
  for (const std::string& name : kFixtures) {
    ExprPtr e = Parse(ReadFile(FixturePath(name)), name);
    std::string text = Pretty(*e);
    ExprPtr again = Parse(text, name + "-pretty");
    EXPECT_TRUE(StructurallyEqual(*e, *again)) << name << "\n" << text;
    EXPECT_EQ(Pretty(*again), text) << name;
  }
}

void ExpectNested(const Expr& e) {
  auto check = [&](const ExprPtr& child) {
    if (!child) return;
    EXPECT_TRUE(e.span().Contains(child->span()))
        << e.span().ToString() << " vs " << child->span().ToString();
    ExpectNested(*child);
  };
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, node::Lambda>) check(n.body);
        if constexpr (std::is_same_v<T, node::Apply>) { check(n.fn); check(n.arg); }
        if constexpr (std::is_same_v<T, node::Let>) { check(n.value); check(n.body); }
        if constexpr (std::is_same_v<T, node::If>) {
          check(n.cond); check(n.then_branch); check(n.else_branch);
        }
        if constexpr (std::is_same_v<T, node::Match>) {
          check(n.scrutinee); check(n.nil_branch); check(n.cons_branch);
        }
        if constexpr (std::is_same_v<T, node::Return>) check(n.value);
        if constexpr (std::is_same_v<T, node::Bind>) { check(n.value); check(n.body); }
        if constexpr (std::is_same_v<T, node::Observe>) {
          check(n.predicate); check(n.prior);
        }
        if constexpr (std::is_same_v<T, node::Binary>) { check(n.lhs); check(n.rhs); }
        if constexpr (std::is_same_v<T, node::Prim>) {
          for (const auto& a : n.args) check(a);
        }
      },
      e.node());
}

TEST(ParseTest, SpansNest) {
  ExpectNested(*ParseExpression(
      "mlet x = ran beta(1, 2) in if x < 0.5 then return (x + 1) else "
      "observe (fun r -> return (r = x)) (return x)"));
  for (const std::string& name : kFixtures) {
    ExpectNested(*Parse(ReadFile(FixturePath(name)), name));
  }
}

TEST(ParseProperty, RandomAstsRoundTrip) {
  testing::Gen gen(20240601);
  for (int i = 0; i < 500; ++i) {
    ExprPtr e = gen.RandomExpr(5);
    std::string text = Pretty(*e);
    ExprPtr again;
    try {
      again = ParseExpression(text);
    } catch (const Error& err) {
      FAIL() << "instance " << i << ": " << err.what() << "\n" << text;
    }
    ASSERT_TRUE(StructurallyEqual(*e, *again)) << "instance " << i << "\n" << text
                                               << "\n--- reprinted\n"
                                               << Pretty(*again);
  }
}

}  // namespace
}  // namespace privinfer
