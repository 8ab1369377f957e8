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

#include "privinfer/lemmas.h"

#include <cmath>
#include <numbers>

#include "privinfer/error.h"

namespace privinfer {

double Rho() { return std::sqrt(1.0 - std::numbers::pi / 4.0); }

double Zeta() { return std::sqrt(2.0 * (1.0 - std::numbers::pi / 4.0)); }

double NormalMeanSensitivity(double hv, double kv) { return hv / (kv + hv); }

const std::vector<Lemma>& LemmaLibrary() {
  static const std::vector<Lemma> kLemmas = {
      {"HD-beta",
       "observing b versus b' once from a beta prior gives posteriors at "
       "Hellinger distance at most rho = sqrt(1 - pi/4)",
       "prior is Beta(a, b) with a, b >= 1"},
      {"SD-beta",
       "observing b versus b' once from a beta prior gives posteriors at "
       "statistical distance at most zeta = sqrt(2 (1 - pi/4))",
       "prior is Beta(a, b) with a, b >= 1"},
      {"HD-Dirichlet",
       "observing class i versus class j once from a Dirichlet prior gives "
       "posteriors at Hellinger distance at most rho",
       "prior is Dirichlet(a1, ..., ak) with every ai >= 1"},
      {"Observe-DPI",
       "conjugate observations commute, so observing the same value on two "
       "related posteriors keeps the bound of the single-step lemma",
       "prior is a conjugate family with parameters >= 1"},
      {"beta-count-sensitivity",
       "flipping one boolean observation moves each beta posterior "
       "parameter by at most 1 (l1 sensitivity 2)",
       ""},
      {"dirichlet-count-sensitivity",
       "changing one categorical observation moves each Dirichlet "
       "posterior parameter by at most 1",
       ""},
      {"normal-mean-sensitivity",
       "moving one observation by at most 1 moves the normal posterior "
       "mean by at most s = hV / (kv + hV); the variance does not move",
       "known likelihood variance kv, prior variance hV"},
      {"score-range",
       "a score with values in [0, 1] has sensitivity 1 in any argument",
       ""},
      {"hellinger-triangle",
       "|H(a, c) - H(b, c)| <= H(a, b), and likewise for SD",
       ""},
  };
  return kLemmas;
}

const Lemma& FindLemma(const std::string& name) {
  for (const Lemma& l : LemmaLibrary()) {
    if (l.name == name) return l;
  }
  throw DomainError("unknown lemma " + name);
}

std::vector<ObserveBound> ObserveStepBounds(SymDist::Family likelihood) {
  using F = FDivKind::Tag;
  IndexExpr rho = IndexExpr::Var("rho");
  IndexExpr zeta = IndexExpr::Var("zeta");
  switch (likelihood) {
    case SymDist::Family::kBernoulli:
      return {{"HD-beta", F::kHD, rho}, {"SD-beta", F::kSD, zeta}};
    case SymDist::Family::kMultinomial:
      return {{"HD-Dirichlet", F::kHD, rho}};
    default:
      return {};
  }
}

std::optional<ParamSensitivity> ConjugateParamSensitivity(
    SymDist::Family prior, int prior_arity, SymDist::Family likelihood,
    AdjacencyKind adjacency, const std::string& hv, const std::string& kv) {
  using Fam = SymDist::Family;
  IndexExpr one = IndexExpr::Constant(Rational(1));
  if (likelihood == Fam::kBernoulli && adjacency == AdjacencyKind::kFlip &&
      (prior == Fam::kBeta || prior == Fam::kUniform)) {
    return ParamSensitivity{"beta-count-sensitivity", Fam::kBeta, {one, one}};
  }
  if (likelihood == Fam::kMultinomial && adjacency == AdjacencyKind::kFlip &&
      prior == Fam::kDirichlet && prior_arity > 0) {
    return ParamSensitivity{"dirichlet-count-sensitivity", Fam::kDirichlet,
                            std::vector<IndexExpr>(prior_arity, one)};
  }
  if (likelihood == Fam::kNormal && adjacency == AdjacencyKind::kL1 &&
      prior == Fam::kNormal) {
    return ParamSensitivity{"normal-mean-sensitivity",
                            Fam::kNormal,
                            {IndexExpr::Atom({"s", {hv, kv}}),
                             IndexExpr::Zero()}};
  }
  return std::nullopt;
}

std::optional<double> EvaluateLibraryAtom(
    const IndexAtom& atom,
    const std::function<std::optional<double>(const std::string&)>& var) {
  if (atom.args.empty()) {
    if (atom.name == "rho") return Rho();
    if (atom.name == "zeta") return Zeta();
    return var(atom.name);
  }
  if (atom.name == "s" && atom.args.size() == 2) {
    auto hv = var(atom.args[0]);
    auto kv = var(atom.args[1]);
    if (!hv || !kv) return std::nullopt;
    return NormalMeanSensitivity(*hv, *kv);
  }
  return std::nullopt;
}

namespace {

double LogBeta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

double BetaHellingerClosedForm(double a1, double b1, double a2, double b2) {
  double log_bc = LogBeta((a1 + a2) / 2, (b1 + b2) / 2) -
                  0.5 * (LogBeta(a1, b1) + LogBeta(a2, b2));
  double h2 = -std::expm1(log_bc);
  return std::sqrt(std::max(0.0, h2));
}

}  // namespace privinfer
