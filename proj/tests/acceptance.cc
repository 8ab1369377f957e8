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

// Acceptance suite: one line per criterion, tolerances fixed below. Exits
// nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "generators.h"
#include "helpers.h"
#include "oracles.h"
#include "privinfer/corpus.h"
#include "privinfer/discretize.h"
#include "privinfer/divergence.h"
#include "privinfer/dp_verify.h"
#include "privinfer/lemmas.h"
#include "privinfer/mechanisms.h"
#include "privinfer/reltype.h"

namespace privinfer {
namespace {

constexpr double kConjugacyTol = 1e-6;
constexpr int kUnitCells = 10000;
constexpr int kSimplexCells = 200;
constexpr double kConjugacySeconds = 30;
constexpr double kLemmaBoundTol = 1e-3;
constexpr double kLemmaSeconds = 10;
constexpr double kExpTol = 1e-12;
constexpr double kPipelineTol = 1e-9;
constexpr double kPipelineSeconds = 120;
constexpr double kPropertyTol = 1e-9;
constexpr double kSlackRatioLo = 1.6, kSlackRatioHi = 2.4;

struct Outcome {
  bool pass = true;
  std::string detail;
  void Fail(const std::string& why) {
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
};

std::string Fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

constexpr const char* kBetaFold = R"(
let rec learnBias (dbn : list bool) (prior : M[[0,1]]) : M[[0,1]] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r -> mlet z = ran bernoulli(r) in return (d = z))
        (learnBias dbs prior)
let post (l : list bool) (a : real+) (b : real+) : M[[0,1]] =
  learnBias l (ran beta(a, b))
)";

constexpr const char* kDirichletFold = R"(
let rec learnP (dbn : list [3]) (prior : M[[0,1]^2]) : M[[0,1]^2] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r s -> mlet z = ran multinomial(r, s) in return (d = z))
        (learnP dbs prior)
let post (l : list [3]) : M[[0,1]^2] = learnP l (ran dirichlet(1, 1, 1))
)";

Outcome Conjugacy() {
  Outcome out;
  GridConfig g;
  g.unit_cells = kUnitCells;
  g.simplex_cells = kSimplexCells;
  auto beta = testing::Compile(kBetaFold, g, false);
  auto run_beta = [&](const std::vector<bool>& bits, double a, double b) {
    int t = 0;
    for (bool x : bits) t += x;
    Dist mu = beta->Apply({testing::BoolList(bits), Value::Real(a), Value::Real(b)})
                  .value.AsDist();
    double n = static_cast<double>(bits.size());
    return MaxAbsDiff(mu, Discretize(SymDist::Beta(a + t, b + n - t), g));
  };
  double worst = run_beta({true}, 1, 1);
  if (worst > kConjugacyTol) out.Fail("Beta(1,1)+[true] off by " + Fmt("%.3g", worst));
  testing::Gen gen(2024);
  for (int i = 0; i < 20; ++i) {
    double a = 0.5 + std::round(450 * gen.Unit()) / 100;
    double b = 0.5 + std::round(450 * gen.Unit()) / 100;
    std::vector<bool> bits(static_cast<std::size_t>(gen.Int(1, 8)));
    for (std::size_t k = 0; k < bits.size(); ++k) bits[k] = gen.Coin();
    double e = run_beta(bits, a, b);
    worst = std::max(worst, e);
    if (e > kConjugacyTol) {
      out.Fail("beta case " + std::to_string(i) + " (a=" + Fmt("%g", a) +
               ", b=" + Fmt("%g", b) + ") off by " + Fmt("%.3g", e));
    }
  }
  auto dir = testing::Compile(kDirichletFold, g, false);
  double worst_dir = 0;
  for (int i = 0; i < 10; ++i) {
    std::vector<Value> data;
    std::vector<double> alpha{1, 1, 1};
    int n = gen.Int(1, 6);
    for (int k = 0; k < n; ++k) {
      int c = gen.Int(0, 2);
      data.push_back(Value::Enum(c));
      alpha[static_cast<std::size_t>(c)] += 1;
    }
    Dist mu = dir->Apply({Value::List(data)}).value.AsDist();
    double e = MaxAbsDiff(mu, Discretize(SymDist::Dirichlet(alpha), g));
    worst_dir = std::max(worst_dir, e);
    if (e > kConjugacyTol) {
      out.Fail("dirichlet case " + std::to_string(i) + " off by " + Fmt("%.3g", e));
    }
  }
  out.detail = "beta max diff " + Fmt("%.3g", worst) + ", dirichlet max diff " +
               Fmt("%.3g", worst_dir) + (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

Outcome HellingerLemma() {
  Outcome out;
  GridConfig g;
  const double rho = Rho(), zeta = Zeta();
  double max_hd = 0, max_sd = 0, tight = 0;
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    for (double b : {0.5, 1.0, 2.0, 5.0}) {
      Dist p1 = Discretize(SymDist::Beta(a + 1, b), g);
      Dist p2 = Discretize(SymDist::Beta(a, b + 1), g);
      double hd = HellingerDistance(p1, p2), sd = FDiv(FDivKind::SD(), p1, p2);
      max_hd = std::max(max_hd, hd);
      max_sd = std::max(max_sd, sd);
      if (a == 1 && b == 1) tight = hd;
      std::string at = "(" + Fmt("%g", a) + "," + Fmt("%g", b) + ")";
      if (hd > rho + kLemmaBoundTol) out.Fail("HD " + Fmt("%.4f", hd) + " at " + at);
      if (sd > zeta + kLemmaBoundTol) out.Fail("SD " + Fmt("%.4f", sd) + " at " + at);
    }
  }
  if (std::fabs(tight - rho) > kLemmaBoundTol) {
    out.Fail("not tight at (1,1): " + Fmt("%.6f", tight));
  }
  out.detail = "max HD " + Fmt("%.4f", max_hd) + " vs " + Fmt("%.5f", rho) +
               ", max SD " + Fmt("%.4f", max_sd) + " vs " + Fmt("%.5f", zeta) +
               ", HD at (1,1) " + Fmt("%.6f", tight) +
               (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

Outcome ExpMechExactness() {
  Outcome out;
  auto p = testing::Compile(R"(
let score (b : bool) (obs : bool) : [0,1] = if b = obs then 1 else 0
let rand (y : bool) (eps : real+) : M[bool] = expMech eps score y
)",
                            {}, false);
  auto differ = AdjacencyRel::Custom(
      [](const Value& x, const Value& y) { return !(x == y); });
  double worst = 0, worst_ratio = 0;
  for (double eps : {0.1, 1.0, 2.0}) {
    auto mech = ProgramMechanism(*p->expr, {std::nullopt, Value::Real(eps)}, p->config);
    DPReport r = CheckProgram(mech, differ, {Value::Bool(true), Value::Bool(false)},
                              FDivKind::EpsD(eps), 0);
    worst = std::max(worst, r.max_divergence);
    if (r.max_divergence > kExpTol) out.Fail("eps " + Fmt("%g", eps) + " leaks");
    for (bool y : {true, false}) {
      Dist d = mech(Value::Bool(y));
      double ratio = d.Mass(Value::Bool(y)) / d.Mass(Value::Bool(!y));
      double err = std::fabs(ratio - std::exp(eps / 2));
      worst_ratio = std::max(worst_ratio, err);
      if (err > kExpTol) out.Fail("ratio off at eps " + Fmt("%g", eps));
    }
  }
  out.detail = "max eps-D " + Fmt("%.3g", worst) + ", max ratio error " +
               Fmt("%.3g", worst_ratio) + (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

Fixture FindFixture(const std::vector<Fixture>& all, const std::string& name) {
  for (const Fixture& f : all) {
    if (f.name == name) return f;
  }
  throw DomainError("no fixture " + name);
}

Outcome Pipeline() {
  Outcome out;
  GridConfig g;
  Fixture base = FindFixture(CorpusFixtures(g), "beta_input");
  std::string detail;
  for (double eps : {0.5, 1.0, 2.0}) {
    Fixture f = base;
    f.inputs = BoolLists(4);
    f.args.back() = FormatDouble(eps);
    f.kind = FDivKind::EpsD(eps);
    f.slack = kPipelineTol;
    FixtureResult r = RunFixture(f, g);
    if (!r.error.empty() || !r.dp) {
      out.Fail("eps " + Fmt("%g", eps) + ": " + r.error);
      continue;
    }
    detail += (detail.empty() ? "" : ", ") + std::string("eps ") + Fmt("%g", eps) +
              ": " + std::to_string(r.dp->pairs.size()) + " pairs, max " +
              Fmt("%.3g", r.dp->max_divergence);
    if (!r.dp->pass) out.Fail("eps " + Fmt("%g", eps) + " exceeds the claim");
    if (!r.relcheck_accepted) out.Fail("relcheck rejected");
  }
  out.detail = detail + (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

Outcome Corpus() {
  Outcome out;
  GridConfig g;
  // Result monad epsD(eps_index), delta of main as stated for each program.
  struct Stated {
    std::string name, eps, delta;
  };
  const std::vector<Stated> stated = {
      {"beta_input", "eps", "0"},
      {"normal_input", "eps", "delta"},
      {"beta_l1", "2 * eps", "0"},
      {"normal_l1", "s(hV, kV) * eps", "0"},
      {"hellinger_exp", "rho * eps", "0"},
      {"sd_exp", "zeta * eps", "0"},
      {"dirichlet_exp", "rho * eps", "0"}};
  auto same = [](const IndexExpr& a, const IndexExpr& b) {
    return IndexLe(a, b) && IndexLe(b, a);
  };
  int originals = 0, mutants = 0;
  for (const Fixture& f : CorpusFixtures(g)) {
    FixtureResult r = RunFixture(f, g);
    if (!r.ok()) {
      out.Fail(f.name + (f.mutant ? " not caught" : " failed") +
               (r.error.empty() ? "" : ": " + r.error));
    }
    if (f.mutant) {
      ++mutants;
      continue;
    }
    ++originals;
    if (!r.relcheck_accepted) continue;  // already reported through ok()
    for (const Stated& st : stated) {
      if (st.name != f.name) continue;
      const RelType claimed = ParseRelType(r.claimed);
      const RelType& res = claimed.Result();
      if (res.kind != RelType::Kind::kMonad || res.f.tag != FDivKind::Tag::kEpsD ||
          !same(res.f.eps, ParseIndex(st.eps)) || !same(res.delta, ParseIndex(st.delta))) {
        out.Fail(f.name + " type " + r.claimed);
      }
    }
  }
  out.detail = std::to_string(originals) + " programs, " + std::to_string(mutants) +
               " mutants" + (out.detail.empty() ? "" : "; " + out.detail);
  if (originals != 7) out.Fail("expected 7 programs");
  return out;
}

Outcome Properties() {
  Outcome out;
  CompositionReport comp = CheckCompositionAndDpi(500, 7);
  int prop_trials = 0;
  for (const auto& s : comp.stats) {
    prop_trials += s.trials;
    if (s.failures) out.Fail(s.name + " " + std::to_string(s.failures) + " failures");
  }
  testing::Gen gen(99);
  int monad_fail = 0;
  for (int i = 0; i < 500; ++i) {
    int n = gen.Int(1, 6), m = gen.Int(1, 6), l = gen.Int(1, 6);
    Dist mu = gen.RandomDist(n, true);
    Kernel k = gen.RandomKernel(n, m, true);
    Kernel h = gen.RandomKernel(m, l, true);
    Value v = Value::Enum(gen.Int(0, n - 1));
    Dist left = DistBind(DistBind(mu, k), h);
    Dist right = DistBind(mu, [&](const Value& x) { return DistBind(k(x), h); });
    if (MaxAbsDiff(DistBind(DistUnit(v), k), k(v)) > kPropertyTol ||
        MaxAbsDiff(DistBind(mu, DistUnit), mu) > kPropertyTol ||
        MaxAbsDiff(left, right) > kPropertyTol) {
      ++monad_fail;
    }
  }
  if (monad_fail) out.Fail("monad laws: " + std::to_string(monad_fail) + " failures");
  int lift_fail = 0;
  const int den = 6;
  for (int i = 0; i < 200; ++i) {
    int n = gen.Int(1, 3);
    Dist a = gen.GridDist(n, den), b = gen.GridDist(n, den);
    FDivKind k = gen.Pick(std::vector<FDivKind>{FDivKind::SD(), FDivKind::HD(),
                                                FDivKind::KL(), FDivKind::EpsD(0.4)});
    double d = FDiv(k, a, b);
    double delta = std::isinf(d) ? gen.Unit() : d * (gen.Coin() ? 0.8 : 1.25);
    if (CheckDiagonalLifting(k, delta, a, b) !=
        testing::WitnessSearch(k, delta, a, b, n, den)) {
      ++lift_fail;
    }
  }
  if (lift_fail) out.Fail("lifting: " + std::to_string(lift_fail) + " disagreements");
  out.detail = std::to_string(prop_trials) + " DPI/composition trials, 500 monad, " +
               "200 lifting" + (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

Outcome DiscretizationHonesty() {
  Outcome out;
  GridConfig g, fine;
  fine.real_step = g.real_step / 2;
  const double eps = 0.5, delta = 0.05;
  const double sigma = GaussSigma(eps, delta);
  double lap_margin = INFINITY, gauss_margin = INFINITY;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      double x = i / 10.0, y = x + j / 10.0;  // |x - y| <= 1
      double lap = FDiv(FDivKind::EpsD(eps), LaplaceMech(eps, x, g),
                        LaplaceMech(eps, y, g));
      double gauss = FDiv(FDivKind::EpsD(eps), GaussMech(sigma, x, g),
                          GaussMech(sigma, y, g));
      lap_margin = std::min(lap_margin, LaplaceSlack(eps, g) - lap);
      gauss_margin = std::min(gauss_margin, delta + GaussSlack(sigma, eps, 1, g) - gauss);
    }
  }
  if (lap_margin < 0) out.Fail("laplace exceeds its slack");
  if (gauss_margin < 0) out.Fail("gauss exceeds delta + slack");
  double lap_ratio = LaplaceSlack(eps, g) / LaplaceSlack(eps, fine);
  double gauss_ratio = GaussSlack(sigma, eps, 1, g) / GaussSlack(sigma, eps, 1, fine);
  for (auto [name, r] : {std::pair{"laplace", lap_ratio}, std::pair{"gauss", gauss_ratio}}) {
    if (r < kSlackRatioLo || r > kSlackRatioHi) {
      out.Fail(std::string(name) + " slack ratio " + Fmt("%.3f", r) + " outside [" +
               Fmt("%.1f", kSlackRatioLo) + ", " + Fmt("%.1f", kSlackRatioHi) + "]");
    }
  }
  out.detail = "slack ratio at step " + Fmt("%g", g.real_step) + " -> " +
               Fmt("%g", fine.real_step) + ": laplace " + Fmt("%.3f", lap_ratio) +
               ", gauss " + Fmt("%.3f", gauss_ratio) +
               (out.detail.empty() ? "" : "; " + out.detail);
  return out;
}

struct Criterion {
  int id;
  std::string name;
  std::function<Outcome()> run;
  double budget_seconds;  // 0: no limit
};

int Main() {
  const std::vector<Criterion> criteria = {
      {1, "conjugacy oracle", Conjugacy, kConjugacySeconds},
      {2, "hellinger and SD beta lemmas", HellingerLemma, kLemmaSeconds},
      {3, "exponential mechanism exactness", ExpMechExactness, 0},
      {4, "addNoise + learnBias brute force", Pipeline, kPipelineSeconds},
      {5, "corpus types and mutants", Corpus, 0},
      {6, "property suites", Properties, 0},
      {7, "laplace/gauss discretization slack", DiscretizationHonesty, 0},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.Fail("took " + Fmt("%.1f", secs) + " s, budget " + Fmt("%g", c.budget_seconds));
    }
    failed += !o.pass;
    std::printf("%s %d %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace privinfer

int main() { return privinfer::Main(); }
