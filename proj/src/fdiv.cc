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

#include "privinfer/divergence.h"
#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {

double FDivKind::Generator(double x) const {
  switch (tag) {
    case Tag::kSD: return 0.5 * std::fabs(x - 1.0);
    case Tag::kHD: {
      double r = std::sqrt(x) - 1.0;
      return 0.5 * r * r;
    }
    case Tag::kKL: return x > 0 ? x * std::log(x) - x + 1.0 : 1.0;
    case Tag::kEpsD: return std::max(x - std::exp(eps), 0.0);
  }
  return 0.0;
}

double FDivKind::GeneratorSlope() const {
  switch (tag) {
    case Tag::kSD: return 0.5;
    case Tag::kHD: return 0.5;
    case Tag::kKL: return std::numeric_limits<double>::infinity();
    case Tag::kEpsD: return 1.0;
  }
  return 0.0;
}

std::string FDivKind::ToString() const {
  switch (tag) {
    case Tag::kSD: return "SD";
    case Tag::kHD: return "HD";
    case Tag::kKL: return "KL";
    case Tag::kEpsD: return "epsD(" + FormatDouble(eps) + ")";
  }
  return "?";
}

FDivKind ParseFDivKind(std::string_view text) {
  if (text == "sd" || text == "SD") return FDivKind::SD();
  if (text == "hd" || text == "HD") return FDivKind::HD();
  if (text == "kl" || text == "KL") return FDivKind::KL();
  if (text.substr(0, 4) == "eps:") {
    double e = ToDouble(ParseDecimal(text.substr(4)));
    if (e < 0) throw DomainError("epsilon must be nonnegative");
    return FDivKind::EpsD(e);
  }
  throw DomainError("unknown divergence '" + std::string(text) +
                    "' (expected sd, hd, kl or eps:<value>)");
}

double FDiv(const FDivKind& kind, const Dist& mu1, const Dist& mu2) {
  const auto& x = mu1.entries();
  const auto& y = mu2.entries();
  const double scale = kind.tag == FDivKind::Tag::kEpsD ? std::exp(kind.eps)
                                                        : 1.0;
  CompensatedSum sum;
  auto term = [&](double p, double q) {
    switch (kind.tag) {
      case FDivKind::Tag::kSD: sum.Add(0.5 * std::fabs(p - q)); break;
      case FDivKind::Tag::kHD: {
        double d = std::sqrt(p) - std::sqrt(q);
        sum.Add(0.5 * d * d);
        break;
      }
      case FDivKind::Tag::kKL:
        if (p > 0) {
          if (q <= 0) return false;
          sum.Add(p * std::log(p / q));
        }
        break;
      case FDivKind::Tag::kEpsD: sum.Add(std::max(p - scale * q, 0.0)); break;
    }
    return true;
  };
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    int c = i == x.size()   ? 1
            : j == y.size() ? -1
                            : Compare(x[i].first, y[j].first);
    bool finite;
    if (c < 0) {
      finite = term(x[i++].second, 0.0);
    } else if (c > 0) {
      finite = term(0.0, y[j++].second);
    } else {
      finite = term(x[i++].second, y[j++].second);
    }
    if (!finite) return std::numeric_limits<double>::infinity();
  }
  return std::max(sum.Value(), 0.0);
}

double HellingerDistance(const Dist& mu1, const Dist& mu2) {
  return std::sqrt(FDiv(FDivKind::HD(), mu1, mu2));
}

bool CheckDiagonalLifting(const FDivKind& kind, double delta, const Dist& mu1,
                          const Dist& mu2) {
  return FDiv(kind, mu1, mu2) <= delta;
}

std::optional<FDivKind> Composable(const FDivKind& f1, const FDivKind& f2) {
  if (f1.tag != f2.tag) return std::nullopt;
  if (f1.tag == FDivKind::Tag::kEpsD) return FDivKind::EpsD(f1.eps + f2.eps);
  return f1;
}

}  // namespace privinfer
