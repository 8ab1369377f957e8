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
#include <fstream>

#include "gtest/gtest.h"
#include "helpers.h"
#include "privinfer/divergence.h"
#include "privinfer/lemmas.h"
#include "privinfer/parser.h"
#include "privinfer/relcheck.h"

namespace privinfer {
namespace {

using Env = std::vector<std::pair<std::string, RelType>>;

RelCheckReport Check(const Env& env, const std::string& e, const std::string& t) {
  return RelCheck(env, *ParseExpression(e), ParseRelType(t));
}

bool Holds(const std::vector<VC>& vcs) {
  for (const VC& v : vcs) {
    if (!v.discharged) return false;
  }
  return true;
}

std::string Dump(const RelCheckReport& r) {
  std::string s;
  for (const VC& v : r.vcs) {
    s += "#" + std::to_string(v.id) + " [" + v.rule + "] " + v.goal +
         (v.discharged ? " ok: " + v.justification : " UNPROVED") + "\n";
  }
  return s;
}

TEST(RelCheckTest, ReturnAtAnyIndex) {
  auto r = Check({{"x", ParseRelType("{x :: [0,1] | =}")}}, "return x",
                 "M[HD, 0.7]{y :: [0,1] | =}");
  EXPECT_TRUE(r.accepted()) << Dump(r);
}

TEST(RelCheckTest, EpsBindSumsEpsilons) {
  Env env{{"e1", ParseRelType("{e1 :: real+ | =}")},
          {"e2", ParseRelType("{e2 :: real+ | =}")},
          {"a", ParseRelType("M[epsD(e1), 0]{u :: real | =}")},
          {"b", ParseRelType("M[epsD(e2), 0]{v :: real | =}")}};
  auto ok = Check(env, "mlet x = a in b", "M[epsD(e1 + e2), 0]{w :: real | =}");
  EXPECT_TRUE(ok.accepted()) << Dump(ok);
  auto tight = Check(env, "mlet x = a in b", "M[epsD(e1), 0]{w :: real | =}");
  EXPECT_FALSE(tight.accepted()) << Dump(tight);
}

TEST(RelCheckTest, SdThenKlHasNoComposition) {
  // Nonzero deltas; at 0 both sides are identical and the bind is trivially fine.
  Env env{{"a", ParseRelType("M[SD, 0.1]{u :: real | =}")},
          {"b", ParseRelType("M[KL, 0.1]{v :: real | =}")}};
  auto r = Check(env, "mlet x = a in b", "M[SD, 1]{w :: real | =}");
  EXPECT_FALSE(r.accepted()) << Dump(r);
  auto kl = Check(env, "mlet x = a in b", "M[KL, 1]{w :: real | =}");
  EXPECT_FALSE(kl.accepted()) << Dump(kl);
}

TEST(RelCheckTest, SymbolicDeltaReflexive) {
  Env env{{"d", ParseRelType("{d :: real+ | =}")},
          {"a", ParseRelType("M[SD, d]{u :: real | =}")}};
  auto r = Check(env, "a", "M[SD, d]{w :: real | =}");
  EXPECT_TRUE(r.accepted()) << Dump(r);
}

TEST(SubtypeTest, MonadWidening) {
  EXPECT_TRUE(Holds(Subtype(ParseRelType("M[SD, 0]{x :: real | =}"),
                            ParseRelType("M[SD, 0.1]{x :: real | =}"))));
  EXPECT_FALSE(Holds(Subtype(ParseRelType("M[SD, 0.1]{x :: real | =}"),
                             ParseRelType("M[SD, 0]{x :: real | =}"))));
  EXPECT_TRUE(Holds(Subtype(ParseRelType("{x :: [0,1] | =}"),
                            ParseRelType("{x :: [0,1] | true}"))));
  EXPECT_FALSE(Holds(Subtype(ParseRelType("{x :: [0,1] | true}"),
                             ParseRelType("{x :: [0,1] | =}"))));
}

constexpr const char* kKlProgram = R"(
let rec learnBias (dbn : list bool) (prior : M[[0,1]]) : M[[0,1]] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r -> mlet z = ran bernoulli(r) in return (d = z))
        (learnBias dbs prior)
)";

TEST(RelCheckTest, KlObserveGoalIsUnproved) {
  auto e = Parse(kKlProgram, "<kl>");
  auto sigs = ParseRelSignatures(
      "learnBias : {l :: list bool | l< Phi l>} -> M[KL, 0]{x :: [0,1] | =}\n"
      "            -> M[KL, 0.1]{x :: [0,1] | =}\n",
      "<kl.rt>");
  RelCheckReport r = RelCheckProgram(*e, sigs);
  EXPECT_FALSE(r.accepted());
  ASSERT_FALSE(r.Unproved().empty());
  EXPECT_NE(Dump(r).find("KL"), std::string::npos) << Dump(r);
}

struct Loaded {
  ExprPtr program;
  std::vector<RelSignature> sigs;
};

Loaded Load(const std::string& name) {
  std::string base = DefaultFixtureDir() + "/" + name;
  return {Parse(ReadFile(base + ".pinf"), base + ".pinf"),
          ParseRelSignatures(ReadFile(base + ".rt"), base + ".rt")};
}

TEST(RelCheckCorpus, FixturesAccepted) {
  for (const char* name : {"beta_input", "normal_input", "beta_l1", "normal_l1",
                           "hellinger_exp", "sd_exp", "dirichlet_exp"}) {
    Loaded f = Load(name);
    RelCheckReport r = RelCheckProgram(*f.program, f.sigs);
    EXPECT_TRUE(r.accepted()) << name << "\n" << Dump(r);
  }
}

TEST(RelCheckCorpus, DroppedNoiseRejected) {
  Loaded f = Load("mutants/broken_addnoise");
  EXPECT_FALSE(RelCheckProgram(*f.program, f.sigs).accepted());
}

TEST(RelCheckCorpus, StatedResultTypes) {
  Loaded f = Load("beta_l1");
  bool seen = false;
  for (const DeclCheck& d : RelCheckProgram(*f.program, f.sigs).decls) {
    if (d.name != "main") continue;
    seen = true;
    EXPECT_NE(d.type.find("epsD(2 * eps)"), std::string::npos) << d.type;
  }
  EXPECT_TRUE(seen);
  Loaded h = Load("hellinger_exp");
  for (const DeclCheck& d : RelCheckProgram(*h.program, h.sigs).decls) {
    if (d.name == "main") EXPECT_NE(d.type.find("rho"), std::string::npos) << d.type;
  }
}

TEST(ReplayTest, RoundTripAndTamper) {
  Loaded f = Load("hellinger_exp");
  std::string json = RelCheckProgram(*f.program, f.sigs).ToJson();
  ReplayResult ok = ReplayDerivation(json, *f.program, f.sigs);
  EXPECT_TRUE(ok.ok) << (ok.problems.empty() ? "" : ok.problems[0]);
  std::string bad = json;
  auto pos = bad.find("\"Observe\"");
  ASSERT_NE(pos, std::string::npos);
  bad.replace(pos, 9, "\"Magic\"");
  ReplayResult r = ReplayDerivation(bad, *f.program, f.sigs);
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.problems.empty());
}

TEST(LemmaTest, Constants) {
  EXPECT_NEAR(Rho(), std::sqrt(1 - M_PI / 4), 1e-15);
  EXPECT_NEAR(Zeta(), std::sqrt(2) * Rho(), 1e-15);
  EXPECT_NEAR(NormalMeanSensitivity(1, 1), 0.5, 1e-15);
  EXPECT_NEAR(BetaHellingerClosedForm(2, 1, 1, 2), BetaHellingerClosedForm(1, 2, 2, 1),
              1e-15);
  EXPECT_EQ(BetaHellingerClosedForm(3, 4, 3, 4), 0);
  EXPECT_NEAR(BetaHellingerClosedForm(2, 1, 1, 2), Rho(), 1e-3);
}

TEST(LemmaTest, HellingerCorollaryOnTheGrid) {
  GridConfig g;
  g.unit_cells = 2000;
  auto p = testing::Compile(std::string(kKlProgram) +
                                "let post (l : list bool) : M[[0,1]] = "
                                "learnBias l (ran beta(1, 1))\n",
                            g, false);
  const std::vector<std::vector<bool>> cases{{true}, {true, false}, {true, true, false}};
  for (const auto& bits : cases) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      auto flipped = bits;
      flipped[i] = !flipped[i];
      Dist a = p->Apply({testing::BoolList(bits)}).value.AsDist();
      Dist b = p->Apply({testing::BoolList(flipped)}).value.AsDist();
      EXPECT_LE(FDiv(FDivKind::HD(), a, b), Rho() + 1e-3);
    }
  }
}

TEST(LemmaTest, LibraryEntriesNamed) {
  EXPECT_GE(LemmaLibrary().size(), 7u);
  for (const Lemma& l : LemmaLibrary()) EXPECT_EQ(&FindLemma(l.name), &l);
}

}  // namespace
}  // namespace privinfer
