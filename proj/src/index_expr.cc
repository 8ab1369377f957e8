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

#include "privinfer/index_expr.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace privinfer {
namespace {

bool PolyLe(const Poly& a, const Poly& b) {
  for (const auto& [m, c] : a) {
    auto it = b.find(m);
    Rational other = it == b.end() ? Rational(0) : it->second;
    if (c > other) return false;
  }
  return true;
}

Poly PolyAdd(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [m, c] : b) out[m] += c;
  return out;
}

Poly PolyMul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::sort(m.begin(), m.end());
      out[m] += ca * cb;
    }
  }
  return out;
}

std::string MonomialString(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += " * ";
    s += m[i].ToString();
  }
  return s;
}

std::string PolyString(const Poly& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) s += " + ";
    first = false;
    if (m.empty()) {
      s += RationalToString(c);
    } else if (c == 1) {
      s += MonomialString(m);
    } else {
      s += RationalToString(c) + " * " + MonomialString(m);
    }
  }
  return s;
}

IndexAtom RenameAtom(IndexAtom a, const std::string& from,
                     const std::string& to) {
  if (a.args.empty() && a.name == from) a.name = to;
  for (std::string& s : a.args) {
    if (s == from) s = to;
  }
  return a;
}

}  // namespace

std::string IndexAtom::ToString() const {
  if (args.empty()) return name;
  std::string s = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) s += ", ";
    s += args[i];
  }
  return s + ")";
}

IndexExpr IndexExpr::Constant(const Rational& c) {
  if (c < 0) throw std::invalid_argument("negative index constant");
  IndexExpr e;
  if (c != 0) e.alts_.push_back(Poly{{Monomial{}, c}});
  return e;
}

IndexExpr IndexExpr::Atom(IndexAtom atom) {
  IndexExpr e;
  e.alts_.push_back(Poly{{Monomial{std::move(atom)}, Rational(1)}});
  return e;
}

IndexExpr IndexExpr::Infinity() {
  IndexExpr e;
  e.infinite_ = true;
  return e;
}

bool IndexExpr::IsZero() const {
  if (infinite_) return false;
  return std::all_of(alts_.begin(), alts_.end(),
                     [](const Poly& p) { return p.empty(); });
}

void IndexExpr::Simplify() {
  for (Poly& p : alts_) {
    for (auto it = p.begin(); it != p.end();) {
      it = it->second == 0 ? p.erase(it) : std::next(it);
    }
  }
  alts_.erase(std::remove_if(alts_.begin(), alts_.end(),
                             [](const Poly& p) { return p.empty(); }),
              alts_.end());
  // Drop alternatives dominated by another one.
  std::vector<Poly> kept;
  for (std::size_t i = 0; i < alts_.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < alts_.size() && !dominated; ++j) {
      if (i == j || !PolyLe(alts_[i], alts_[j])) continue;
      // Break ties between equal polynomials by position.
      dominated = !PolyLe(alts_[j], alts_[i]) || j < i;
    }
    if (!dominated) kept.push_back(alts_[i]);
  }
  std::sort(kept.begin(), kept.end());
  alts_ = std::move(kept);
}

IndexExpr operator+(const IndexExpr& a, const IndexExpr& b) {
  if (a.infinite_ || b.infinite_) return IndexExpr::Infinity();
  if (a.alts_.empty()) return b;
  if (b.alts_.empty()) return a;
  IndexExpr out;
  for (const Poly& p : a.alts_) {
    for (const Poly& q : b.alts_) out.alts_.push_back(PolyAdd(p, q));
  }
  out.Simplify();
  return out;
}

IndexExpr operator*(const IndexExpr& a, const IndexExpr& b) {
  if (a.IsZero() || b.IsZero()) return IndexExpr::Zero();
  if (a.infinite_ || b.infinite_) return IndexExpr::Infinity();
  IndexExpr out;
  for (const Poly& p : a.alts_) {
    for (const Poly& q : b.alts_) out.alts_.push_back(PolyMul(p, q));
  }
  out.Simplify();
  return out;
}

IndexExpr IndexExpr::Max(const IndexExpr& a, const IndexExpr& b) {
  if (a.infinite_ || b.infinite_) return Infinity();
  IndexExpr out = a;
  out.alts_.insert(out.alts_.end(), b.alts_.begin(), b.alts_.end());
  out.Simplify();
  return out;
}

IndexExpr IndexExpr::Rename(const std::string& from,
                            const std::string& to) const {
  IndexExpr out;
  out.infinite_ = infinite_;
  for (const Poly& p : alts_) {
    Poly q;
    for (const auto& [m, c] : p) {
      Monomial r;
      for (const IndexAtom& a : m) r.push_back(RenameAtom(a, from, to));
      std::sort(r.begin(), r.end());
      q[r] += c;
    }
    out.alts_.push_back(std::move(q));
  }
  out.Simplify();
  return out;
}

IndexExpr IndexExpr::Substitute(const std::string& name,
                                const IndexExpr& by) const {
  if (infinite_) return *this;
  IndexExpr out;
  for (const Poly& p : alts_) {
    IndexExpr sum;
    for (const auto& [m, c] : p) {
      IndexExpr term = Constant(c);
      for (const IndexAtom& a : m) {
        term = term * (a.args.empty() && a.name == name ? by : Atom(a));
      }
      sum = sum + term;
    }
    out = Max(out, sum);
  }
  return out;
}

std::set<std::string> IndexExpr::VariableNames() const {
  std::set<std::string> out;
  for (const Poly& p : alts_) {
    for (const auto& [m, c] : p) {
      for (const IndexAtom& a : m) {
        if (a.args.empty()) out.insert(a.name);
        out.insert(a.args.begin(), a.args.end());
      }
    }
  }
  return out;
}

double IndexExpr::Evaluate(
    const std::function<double(const IndexAtom&)>& atom) const {
  if (infinite_) return INFINITY;
  double best = 0.0;
  for (const Poly& p : alts_) {
    double s = 0.0;
    for (const auto& [m, c] : p) {
      double t = ToDouble(c);
      for (const IndexAtom& a : m) t *= atom(a);
      s += t;
    }
    best = std::max(best, s);
  }
  return best;
}

std::string IndexExpr::ToString() const {
  if (infinite_) return "inf";
  if (alts_.empty()) return "0";
  if (alts_.size() == 1) return PolyString(alts_[0]);
  std::string s = "max(";
  for (std::size_t i = 0; i < alts_.size(); ++i) {
    if (i) s += ", ";
    s += PolyString(alts_[i]);
  }
  return s + ")";
}

bool IndexLe(const IndexExpr& a, const IndexExpr& b) {
  if (b.is_infinite()) return true;
  if (a.is_infinite()) return false;
  for (const Poly& p : a.alternatives()) {
    bool covered = std::any_of(b.alternatives().begin(),
                               b.alternatives().end(),
                               [&](const Poly& q) { return PolyLe(p, q); });
    if (!covered) return false;
  }
  return true;
}

}  // namespace privinfer
