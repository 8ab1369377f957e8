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

#ifndef PRIVINFER_TESTS_ORACLES_H_
#define PRIVINFER_TESTS_ORACLES_H_

#include <cmath>
#include <utility>
#include <vector>

#include "privinfer/divergence.h"
#include "privinfer/dist.h"

namespace privinfer::testing {

// Exhaustive two-witness search: enumerate every joint distribution on A x A
// whose masses lie on the 1/den lattice, keep those supported on the
// diagonal with the required marginal, and test all witness pairs.
inline void Compositions(int total, int parts, std::vector<int>* cur,
                  std::vector<std::vector<int>>* out) {
  if (parts == 1) {
    cur->push_back(total);
    out->push_back(*cur);
    cur->pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur->push_back(k);
    Compositions(total - k, parts - 1, cur, out);
    cur->pop_back();
  }
}

inline bool WitnessSearch(const FDivKind& kind, double delta, const Dist& mu1,
                   const Dist& mu2, int n, int den) {
  std::vector<std::pair<int, int>> cells;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) cells.emplace_back(a, b);
  }
  std::vector<std::vector<int>> all;
  std::vector<int> cur;
  Compositions(den, static_cast<int>(cells.size()), &cur, &all);
  auto to_dist = [&](const std::vector<int>& w) {
    std::vector<Dist::Entry> e;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      e.emplace_back(Value::Tuple({Value::Enum(cells[i].first),
                                   Value::Enum(cells[i].second)}),
                     static_cast<double>(w[i]) / den);
    }
    return Dist::FromEntries(std::move(e));
  };
  auto marginal_ok = [&](const std::vector<int>& w, const Dist& mu, bool left) {
    for (int v = 0; v < n; ++v) {
      int sum = 0;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if ((left ? cells[i].first : cells[i].second) == v) sum += w[i];
      }
      if (std::fabs(static_cast<double>(sum) / den - mu.Mass(Value::Enum(v))) > 1e-12) {
        return false;
      }
    }
    return true;
  };
  auto on_diagonal = [&](const std::vector<int>& w) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (w[i] > 0 && cells[i].first != cells[i].second) return false;
    }
    return true;
  };
  std::vector<Dist> lefts, rights;
  for (const auto& w : all) {
    if (!on_diagonal(w)) continue;
    if (marginal_ok(w, mu1, true)) lefts.push_back(to_dist(w));
    if (marginal_ok(w, mu2, false)) rights.push_back(to_dist(w));
  }
  for (const Dist& l : lefts) {
    for (const Dist& r : rights) {
      if (FDiv(kind, l, r) <= delta) return true;
    }
  }
  return false;
}

}  // namespace privinfer::testing

#endif  // PRIVINFER_TESTS_ORACLES_H_
