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

#include "privinfer/dist.h"

#include <algorithm>
#include <cmath>

#include "privinfer/error.h"
#include "privinfer/numeric.h"

namespace privinfer {

Dist Dist::FromEntries(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) {
                     return Compare(x.first, y.first) < 0;
                   });
  Dist out;
  out.entries_.reserve(entries.size());
  std::size_t i = 0;
  while (i < entries.size()) {
    std::size_t j = i;
    CompensatedSum sum;
    while (j < entries.size() && Compare(entries[j].first, entries[i].first) == 0) {
      sum.Add(entries[j].second);
      ++j;
    }
    double m = sum.Value();
    if (m > 0) out.entries_.emplace_back(std::move(entries[i].first), m);
    i = j;
  }
  return out;
}

Dist Dist::Dirac(Value v) {
  Dist out;
  out.entries_.emplace_back(std::move(v), 1.0);
  return out;
}

Dist Dist::Uniform(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<Entry> entries;
  for (auto& v : values) {
    entries.emplace_back(std::move(v), 1.0 / static_cast<double>(values.size()));
  }
  return FromEntries(std::move(entries));
}

Dist Dist::Bernoulli(double p) {
  return FromEntries({{Value::Bool(false), 1.0 - p}, {Value::Bool(true), p}});
}

double Dist::Mass(const Value& v) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const Entry& e, const Value& x) { return Compare(e.first, x) < 0; });
  if (it != entries_.end() && Compare(it->first, v) == 0) return it->second;
  return 0.0;
}

double Dist::Total() const {
  CompensatedSum sum;
  for (const auto& e : entries_) sum.Add(e.second);
  return sum.Value();
}

Dist Dist::Normalized() const {
  double total = Total();
  if (!(total > 0)) throw DomainError("cannot normalize a zero-mass measure");
  Dist out = *this;
  for (auto& e : out.entries_) e.second /= total;
  return out;
}

Dist Dist::WithProvenance(std::optional<Provenance> p) const {
  Dist out = *this;
  out.provenance_ = std::move(p);
  return out;
}

std::string Dist::ToString() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ", ";
    out += entries_[i].first.ToString() + ": " +
           FormatDouble(entries_[i].second);
  }
  return out + "}";
}

int Compare(const Dist& a, const Dist& b) {
  const auto& x = a.entries();
  const auto& y = b.entries();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = Compare(x[i].first, y[i].first);
    if (c) return c;
    if (x[i].second != y[i].second) return x[i].second < y[i].second ? -1 : 1;
  }
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  return 0;
}

Dist DistUnit(Value v) { return Dist::Dirac(std::move(v)); }

Dist DistBind(const Dist& mu, const Kernel& k) {
  if (mu.size() == 1 && mu.entries()[0].second == 1.0) {
    return k(mu.entries()[0].first);
  }
  std::vector<Dist::Entry> out;
  for (const auto& [a, p] : mu.entries()) {
    Dist next = k(a);
    for (const auto& [b, q] : next.entries()) out.emplace_back(b, p * q);
  }
  return Dist::FromEntries(std::move(out));
}

Dist DistMap(const Dist& mu, const std::function<Value(const Value&)>& f) {
  std::vector<Dist::Entry> out;
  out.reserve(mu.size());
  for (const auto& [a, p] : mu.entries()) out.emplace_back(f(a), p);
  return Dist::FromEntries(std::move(out));
}

double MaxAbsDiff(const Dist& a, const Dist& b) {
  double worst = 0;
  std::size_t i = 0, j = 0;
  const auto& x = a.entries();
  const auto& y = b.entries();
  while (i < x.size() || j < y.size()) {
    int c = i == x.size() ? 1 : j == y.size() ? -1 : Compare(x[i].first, y[j].first);
    if (c < 0) {
      worst = std::max(worst, x[i++].second);
    } else if (c > 0) {
      worst = std::max(worst, y[j++].second);
    } else {
      worst = std::max(worst, std::fabs(x[i++].second - y[j++].second));
    }
  }
  return worst;
}

}  // namespace privinfer
