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

// Hand-rolled random generators shared by the property tests.

#ifndef PRIVINFER_TESTS_GENERATORS_H_
#define PRIVINFER_TESTS_GENERATORS_H_

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "privinfer/ast.h"
#include "privinfer/dist.h"
#include "privinfer/parser.h"
#include "privinfer/value.h"

namespace privinfer::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double Unit() { return std::uniform_real_distribution<double>(0, 1)(rng_); }
  bool Coin(double p = 0.5) { return Unit() < p; }
  template <typename T>
  const T& Pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(Int(0, static_cast<int>(xs.size()) - 1))];
  }

  // Distribution over tags 0..n-1; with `holes`, some tags get no mass.
  Dist RandomDist(int n, bool holes = false) {
    std::vector<Dist::Entry> e;
    for (int i = 0; i < n; ++i) {
      double w = Unit();
      if (holes && Coin(0.2)) w = 0;
      e.emplace_back(Value::Enum(i), w);
    }
    Dist d = Dist::FromEntries(std::move(e));
    if (d.empty() || d.Total() <= 0) return Dist::Dirac(Value::Enum(0));
    return d.Normalized();
  }

  // Masses on a 1/den lattice, so exhaustive searches can hit them exactly.
  Dist GridDist(int n, int den) {
    std::vector<int> cuts = {0, den};
    for (int i = 0; i + 1 < n; ++i) cuts.push_back(Int(0, den));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Dist::Entry> e;
    for (int i = 0; i < n; ++i) {
      e.emplace_back(Value::Enum(i),
                     static_cast<double>(cuts[i + 1] - cuts[i]) / den);
    }
    return Dist::FromEntries(std::move(e));
  }

  Kernel RandomKernel(int in, int out, bool holes = false) {
    auto table = std::make_shared<std::vector<Dist>>();
    for (int i = 0; i < in; ++i) table->push_back(RandomDist(out, holes));
    return [table](const Value& v) { return table->at(v.AsEnum()); };
  }

  // A random well-formed (not necessarily well-typed) expression.
  ExprPtr RandomExpr(int depth) {
    if (depth <= 0 || Coin(0.2)) return Leaf();
    switch (Int(0, 17)) {
      case 0:
        return MakeExpr(node::Lambda{RandomPattern(), MaybeType(),
                                     RandomExpr(depth - 1)});
      case 1:
        return MakeExpr(node::Apply{RandomExpr(depth - 1), RandomExpr(depth - 1)});
      case 2:
        return MakeExpr(node::Let{RandomPattern(), MaybeType(),
                                  RandomExpr(depth - 1), RandomExpr(depth - 1)});
      case 3: {
        std::vector<Param> params;
        int n = Int(1, 2);
        for (int i = 0; i < n; ++i) {
          params.push_back({Pattern::Var(Name()), ParseSimpleType(Type())});
        }
        return MakeExpr(node::LetRec{"f" + Name(), params, MaybeType(),
                                     RandomExpr(depth - 1), RandomExpr(depth - 1)});
      }
      case 4:
        return MakeExpr(node::If{RandomExpr(depth - 1), RandomExpr(depth - 1),
                                 RandomExpr(depth - 1)});
      case 5:
        return MakeExpr(node::Match{RandomExpr(depth - 1), RandomExpr(depth - 1),
                                    Name(), Name() + "s", RandomExpr(depth - 1)});
      case 6: return MakeExpr(node::Return{RandomExpr(depth - 1)});
      case 7:
        return MakeExpr(node::Bind{RandomPattern(), RandomExpr(depth - 1),
                                   RandomExpr(depth - 1)});
      case 8:
        return MakeExpr(node::Observe{RandomPattern(), MaybeType(),
                                      RandomExpr(depth - 1), RandomExpr(depth - 1)});
      case 9: return MakeExpr(node::Infer{RandomExpr(depth - 1)});
      case 10: return MakeExpr(node::Ran{RandomExpr(depth - 1)});
      case 11: {
        auto op = static_cast<PrimOp>(Int(0, static_cast<int>(PrimOp::kAbs)));
        auto [lo, hi] = PrimArity(op);
        std::vector<ExprPtr> args;
        int n = Int(lo, hi < 0 ? lo + 2 : std::min(hi, lo + 2));
        for (int i = 0; i < n; ++i) args.push_back(RandomExpr(depth - 1));
        return MakeExpr(node::Prim{op, std::move(args)});
      }
      case 12:
      case 13: {
        auto op = static_cast<BinOp>(Int(0, static_cast<int>(BinOp::kCons)));
        return MakeExpr(node::Binary{op, RandomExpr(depth - 1), RandomExpr(depth - 1)});
      }
      case 14:
        return MakeExpr(node::Unary{Coin() ? UnOp::kNeg : UnOp::kNot,
                                    RandomExpr(depth - 1)});
      case 15: {
        std::vector<ExprPtr> elems;
        int n = Int(2, 3);
        for (int i = 0; i < n; ++i) elems.push_back(RandomExpr(depth - 1));
        return MakeExpr(node::Tuple{std::move(elems)});
      }
      case 16:
        return MakeExpr(node::Ascribe{RandomExpr(depth - 1), ParseSimpleType(Type())});
      default:
        return Leaf();
    }
  }

 private:
  std::string Name() { return Pick<std::string>({"x", "y", "z", "db", "r", "eps"}); }

  const std::string& Type() {
    static const std::vector<std::string> types = {
        "bool", "real", "real+", "[0,1]", "list bool", "M[real]",
        "D[[0,1]]", "bool -> real", "[3]", "(bool * real)", "list [3]"};
    return Pick(types);
  }

  std::optional<SimpleType> MaybeType() {
    if (Coin()) return std::nullopt;
    return ParseSimpleType(Type());
  }

  Pattern RandomPattern() {
    if (Coin(0.8)) return Pattern::Var(Name());
    return Pattern::Tuple({"a" + Name(), "b" + Name()});
  }

  ExprPtr Leaf() {
    switch (Int(0, 5)) {
      case 0: return MakeExpr(node::Var{Name()});
      case 1: return MakeExpr(node::Literal{node::Literal::Kind::kBool, Coin()});
      case 2: {
        node::Literal l{node::Literal::Kind::kNumber};
        l.number = Rational(Int(0, 400)) / 100;
        return MakeExpr(l);
      }
      case 3: return MakeExpr(node::Literal{node::Literal::Kind::kNil});
      case 4: return MakeExpr(node::Literal{node::Literal::Kind::kUnit});
      default: return MakeExpr(node::Var{Name()});
    }
  }

  std::mt19937_64 rng_;
};

}  // namespace privinfer::testing

#endif  // PRIVINFER_TESTS_GENERATORS_H_
