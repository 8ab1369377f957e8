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

#ifndef PRIVINFER_LEMMAS_H_
#define PRIVINFER_LEMMAS_H_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "privinfer/divergence.h"
#include "privinfer/index_expr.h"
#include "privinfer/value.h"

namespace privinfer {

// Named constants of the lemma library.
double Rho();   // sqrt(1 - pi/4)
double Zeta();  // sqrt(2 (1 - pi/4))
// Sensitivity of the conjugate normal posterior mean in one observation:
// hv / (kv + hv).
double NormalMeanSensitivity(double hv, double kv);

struct Lemma {
  std::string name;
  std::string statement;
  // Side conditions the checker cannot see; copied into justifications.
  std::string assumption;
};

const std::vector<Lemma>& LemmaLibrary();
const Lemma& FindLemma(const std::string& name);

// A one-observation bound for conjugate observe steps: the divergence `f`
// between the posteriors of one prior after observing two different values
// through `likelihood`.
struct ObserveBound {
  std::string lemma;
  FDivKind::Tag f;
  IndexExpr bound;
};
std::vector<ObserveBound> ObserveStepBounds(SymDist::Family likelihood);

// Sensitivity of the conjugate posterior parameters in one adjacent
// observation list. Parameter order follows GetParams.
enum class AdjacencyKind { kFlip, kL1 };
struct ParamSensitivity {
  std::string lemma;
  SymDist::Family posterior;
  // One entry per posterior parameter. The normal atom is s(hv, kv) over
  // the names passed in.
  std::vector<IndexExpr> bounds;
};
std::optional<ParamSensitivity> ConjugateParamSensitivity(
    SymDist::Family prior, int prior_arity, SymDist::Family likelihood,
    AdjacencyKind adjacency, const std::string& hv, const std::string& kv);

// Values of library atoms (rho, zeta, s(a, b)); plain variables are read
// through `var`. Returns nullopt for unknown atoms.
std::optional<double> EvaluateLibraryAtom(
    const IndexAtom& atom,
    const std::function<std::optional<double>(const std::string&)>& var);

// Closed form of the sqrt-form Hellinger distance between two beta
// densities, through the log beta function.
double BetaHellingerClosedForm(double a1, double b1, double a2, double b2);

}  // namespace privinfer

#endif  // PRIVINFER_LEMMAS_H_
