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

#include "privinfer/dp_verify.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <random>
#include <thread>

#include "json.hpp"
#include "privinfer/error.h"
#include "privinfer/inference.h"
#include "privinfer/lemmas.h"
#include "privinfer/mechanisms.h"
#include "privinfer/numeric.h"
#include "privinfer/parser.h"
#include "privinfer/simple_types.h"

namespace privinfer {
namespace {

using nlohmann::json;

constexpr double kAdjTol = 1e-12;

bool IsList(const Value& v) { return v.kind() == Value::Kind::kList; }

// Runs body(i) for i in [0, n) on a few threads; the first exception wins.
void ParallelFor(std::size_t n, int threads,
                 const std::function<void(std::size_t)>& body) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t t = threads > 0 ? static_cast<std::size_t>(threads) : hw;
  t = std::min(t, std::max<std::size_t>(n, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next = n;
        return;
      }
    }
  };
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < t; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

json PairJson(const PairResult& p) {
  return {{"d1", p.d1.ToString()},
          {"d2", p.d2.ToString()},
          {"forward", p.forward},
          {"backward", p.backward},
          {"divergence", p.divergence}};
}

json Num(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

}  // namespace

bool AdjacencyRel::Adjacent(const Value& a, const Value& b) const {
  if (tag == Tag::kCustom) return custom && custom(a, b);
  if (!IsList(a) || !IsList(b)) return false;
  const auto& x = a.Elems();
  const auto& y = b.Elems();
  if (x.size() != y.size()) return false;
  int differing = 0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == y[i]) continue;
    ++differing;
    if (tag == Tag::kRealListL1) l1 += std::fabs(x[i].AsReal() - y[i].AsReal());
  }
  if (differing == 0) return false;
  if (tag == Tag::kBoolListFlip) return differing == 1;
  if (!multi_element && differing != 1) return false;
  return l1 <= 1.0 + kAdjTol;
}

std::string AdjacencyRel::ToString() const {
  switch (tag) {
    case Tag::kBoolListFlip: return "flip";
    case Tag::kRealListL1: return multi_element ? "l1-multi" : "l1";
    case Tag::kCustom: return "custom";
  }
  return "?";
}

namespace {

std::vector<Value> ListsOver(int max_len, const std::vector<Value>& alphabet) {
  std::vector<Value> out{Value::List({})};
  std::vector<std::vector<Value>> layer{{}};
  for (int len = 1; len <= max_len && !alphabet.empty(); ++len) {
    std::vector<std::vector<Value>> next;
    for (const auto& prefix : layer) {
      for (const Value& v : alphabet) {
        auto l = prefix;
        l.push_back(v);
        out.push_back(Value::List(l));
        next.push_back(std::move(l));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Value> BoolLists(int max_len) {
  return ListsOver(max_len, {Value::Bool(false), Value::Bool(true)});
}

std::vector<Value> EnumLists(int max_len, int classes) {
  std::vector<Value> alphabet;
  for (int k = 0; k < classes; ++k) alphabet.push_back(Value::Enum(k));
  return ListsOver(max_len, alphabet);
}

std::vector<Value> RealLists(int max_len, const std::vector<double>& values) {
  std::vector<Value> alphabet;
  for (double v : values) alphabet.push_back(Value::Real(v));
  return ListsOver(max_len, alphabet);
}

DPReport CheckProgram(const Mechanism& mechanism, const AdjacencyRel& rel,
                      const std::vector<Value>& inputs, const FDivKind& kind,
                      double delta, const CheckOptions& options) {
  if (inputs.size() > options.max_inputs && !options.override_cap) {
    throw DomainError("input space has " + std::to_string(inputs.size()) +
                      " points, above the cap of " +
                      std::to_string(options.max_inputs) +
                      " (raise the cap or override it explicitly)");
  }
  DPReport report;
  report.kind = kind;
  report.claimed_delta = delta;
  report.adjacency = rel.ToString();
  report.inputs = inputs.size();
  report.slack = options.slack;

  std::vector<Dist> outputs(inputs.size());
  ParallelFor(inputs.size(), options.threads,
              [&](std::size_t i) { outputs[i] = mechanism(inputs[i]); });

  std::vector<std::pair<std::size_t, std::size_t>> related;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = i + 1; j < inputs.size(); ++j) {
      if (rel.Adjacent(inputs[i], inputs[j])) related.emplace_back(i, j);
    }
  }
  report.pairs.resize(related.size());
  ParallelFor(related.size(), options.threads, [&](std::size_t p) {
    auto [i, j] = related[p];
    PairResult& r = report.pairs[p];
    r.d1 = inputs[i];
    r.d2 = inputs[j];
    r.forward = FDiv(kind, outputs[i], outputs[j]);
    r.backward = FDiv(kind, outputs[j], outputs[i]);
    r.divergence = std::max(r.forward, r.backward);
  });
  // Reduction by max; ties keep the first pair in enumeration order.
  for (const PairResult& r : report.pairs) {
    if (!report.worst || r.divergence > report.max_divergence) {
      report.worst = r;
      report.max_divergence = r.divergence;
    }
  }
  if (report.pairs.empty()) {
    report.warnings.push_back("no adjacent pairs in the input space");
  }
  report.pass = report.max_divergence <= delta + options.slack;
  return report;
}

std::string DPReport::ToJson(bool with_pairs) const {
  json out = {{"kind", kind.ToString()},
              {"claimed_delta", claimed_delta},
              {"adjacency", adjacency},
              {"inputs", inputs},
              {"pairs", pairs.size()},
              {"max_divergence", Num(max_divergence)},
              {"slack", slack},
              {"pass", pass},
              {"warnings", warnings}};
  if (worst) out["worst"] = PairJson(*worst);
  if (with_pairs) {
    json all = json::array();
    for (const PairResult& p : pairs) all.push_back(PairJson(p));
    out["all_pairs"] = std::move(all);
  }
  return out.dump(2);
}

Mechanism ProgramMechanism(const Expr& program,
                           std::vector<std::optional<Value>> args,
                           const EvalConfig& config,
                           std::vector<std::string>* warnings) {
  EvalOutcome fn = Evaluate({}, program, config);
  auto mu = std::make_shared<std::mutex>();
  auto note = [warnings, mu](const std::vector<std::string>& ws) {
    if (!warnings) return;
    std::lock_guard<std::mutex> lock(*mu);
    for (const std::string& w : ws) {
      if (std::find(warnings->begin(), warnings->end(), w) == warnings->end()) {
        warnings->push_back(w);
      }
    }
  };
  note(fn.warnings);
  int slots = static_cast<int>(
      std::count_if(args.begin(), args.end(),
                     [](const std::optional<Value>& a) { return !a; }));
  if (slots != 1) {
    throw DomainError("exactly one argument slot must be left for the input");
  }
  Value f = fn.value;
  return [f, args, config, note](const Value& input) {
    std::vector<Value> full;
    for (const auto& a : args) full.push_back(a ? *a : input);
    EvalOutcome out = ApplyFunction(f, full, config);
    note(out.warnings);
    if (out.value.kind() != Value::Kind::kDist) {
      throw DomainError("mechanism result is not a distribution: " +
                        out.value.ToString());
    }
    return out.value.AsDist();
  };
}

// --- lemma certificates ----------------------------------------------------

namespace {

CertificateCheck Upper(std::string lemma, std::string instance,
                       double measured, double bound, bool within = true) {
  CertificateCheck c;
  c.lemma = std::move(lemma);
  c.instance = std::move(instance);
  c.measured = measured;
  c.bound = bound;
  c.within_assumption = within;
  c.pass = measured <= bound + kLemmaTolerance;
  return c;
}

std::string Params(const std::vector<double>& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += FormatDouble(p[i]);
  }
  return out + ")";
}

constexpr const char* kFolds = R"(
let rec learnBias (dbn : list bool) (prior : M[[0,1]]) : M[[0,1]] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun r -> mlet z = ran bernoulli(r) in return (d = z))
        (learnBias dbs prior)

let rec learnMean (dbn : list real) (prior : M[real]) (v : real+) : M[real] =
  match dbn with
  | [] -> prior
  | d :: dbs ->
      observe (fun (r : real) -> mlet z = ran normal(r, v) in return (d = z))
        (learnMean dbs prior v)

let betaPost (l : list bool) (a : real+) (b : real+) : D[[0,1]] =
  infer (learnBias l (ran beta(a, b)))

let normalPost (l : list real) (m : real) (hv : real+) (kv : real+) : D[real] =
  infer (learnMean l (ran normal(m, hv)) kv)

let main : unit = ()
)";

}  // namespace

CertificateReport CheckLemmaCertificates(const GridConfig& grid) {
  CertificateReport report;
  auto& checks = report.checks;
  const double rho = Rho();
  const double zeta = Zeta();
  const std::vector<double> ab = {0.5, 1, 2, 5};

  // Single-flip beta posteriors on the grid.
  for (double a : ab) {
    for (double b : ab) {
      Dist p1 = Discretize(SymDist::Beta(a + 1, b), grid);
      Dist p2 = Discretize(SymDist::Beta(a, b + 1), grid);
      bool within = a >= 1 && b >= 1;
      std::string inst = "Beta" + Params({a, b}) + ", true vs false";
      double hd = HellingerDistance(p1, p2);
      checks.push_back(Upper("HD-beta", inst, hd, rho, within));
      checks.push_back(Upper("SD-beta", inst, FDiv(FDivKind::SD(), p1, p2),
                             zeta, within));
      double closed = BetaHellingerClosedForm(a + 1, b, a, b + 1);
      checks.push_back(Upper("HD-beta", inst + ", grid vs closed form",
                             std::fabs(hd - closed), 0.0, within));
      if (a == 1 && b == 1) {
        CertificateCheck t;
        t.lemma = "HD-beta";
        t.instance = inst + ", tightness";
        t.measured = hd;
        t.bound = rho;
        t.lower = true;
        t.pass = hd >= rho - kLemmaTolerance;
        checks.push_back(t);
      }
    }
  }

  // Dirichlet over three classes on the simplex grid.
  const std::vector<std::vector<double>> priors = {
      {1, 1, 1}, {2, 1, 1}, {1, 2, 3}, {2, 2, 2}, {5, 1, 1}};
  for (const auto& prior : priors) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        auto pi = prior, pj = prior;
        pi[i] += 1;
        pj[j] += 1;
        double hd = HellingerDistance(Discretize(SymDist::Dirichlet(pi), grid),
                                      Discretize(SymDist::Dirichlet(pj), grid));
        checks.push_back(Upper("HD-Dirichlet",
                               "Dirichlet" + Params(prior) + ", class " +
                                   std::to_string(i) + " vs " +
                                   std::to_string(j),
                               hd, rho));
      }
    }
  }

  // Count and mean sensitivities, through the evaluator's fold.
  ExprPtr folds = Parse(kFolds, "<lemma-folds>");
  TypeTable table;
  Typecheck(*folds, &table);
  EvalConfig config;
  config.grid = grid;
  config.types = &table;
  const auto* let_bias = folds->As<node::LetRec>();
  const auto* let_mean = let_bias->body->As<node::LetRec>();
  const auto* let_bpost = let_mean->body->As<node::Let>();
  const auto* let_npost = let_bpost->body->As<node::Let>();
  auto bpost_prog = MakeExpr(
      node::LetRec{let_bias->name, let_bias->params, let_bias->ret,
                   let_bias->fn_body,
                   MakeExpr(node::Let{let_bpost->pattern, let_bpost->annot,
                                      let_bpost->value,
                                      MakeExpr(node::Var{"betaPost"})})});
  auto npost_prog = MakeExpr(
      node::LetRec{let_mean->name, let_mean->params, let_mean->ret,
                   let_mean->fn_body,
                   MakeExpr(node::Let{let_npost->pattern, let_npost->annot,
                                      let_npost->value,
                                      MakeExpr(node::Var{"normalPost"})})});
  TypeTable bt, nt;
  Typecheck(*bpost_prog, &bt);
  Typecheck(*npost_prog, &nt);
  EvalConfig bconf = config, nconf = config;
  bconf.types = &bt;
  nconf.types = &nt;
  Value bpost = Eval({}, *bpost_prog, bconf);
  Value npost = Eval({}, *npost_prog, nconf);

  AdjacencyRel flip = AdjacencyRel::Flip();
  std::vector<Value> bools = BoolLists(4);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {2, 3}}) {
    double worst = 0.0, worst_hd = 0.0, worst_sd = 0.0;
    std::vector<SymDist> posts;
    for (const Value& l : bools) {
      Value d = ApplyFunction(bpost, {l, Value::Real(a), Value::Real(b)}, bconf)
                    .value;
      posts.push_back(d.AsSym());
    }
    for (std::size_t i = 0; i < bools.size(); ++i) {
      for (std::size_t j = i + 1; j < bools.size(); ++j) {
        if (!flip.Adjacent(bools[i], bools[j])) continue;
        const SymDist& s1 = posts[i];
        const SymDist& s2 = posts[j];
        for (std::size_t k = 0; k < 2; ++k) {
          worst = std::max(worst, std::fabs(s1.params[k] - s2.params[k]));
        }
        worst_hd = std::max(worst_hd,
                            BetaHellingerClosedForm(s1.params[0], s1.params[1],
                                                    s2.params[0], s2.params[1]));
        worst_sd = std::max(worst_sd, FDiv(FDivKind::SD(), Discretize(s1, grid),
                                           Discretize(s2, grid)));
      }
    }
    std::string inst = "Beta" + Params({a, b}) + ", bool lists up to length 4";
    checks.push_back(Upper("beta-count-sensitivity", inst, worst, 1.0));
    checks.push_back(Upper("Observe-DPI", inst + ", HD", worst_hd, rho));
    checks.push_back(Upper("Observe-DPI", inst + ", SD", worst_sd, zeta));
  }

  std::vector<Value> reals = RealLists(2, {0.0, 0.5, 1.0});
  AdjacencyRel l1 = AdjacencyRel::L1();
  for (auto [hv, kv] : std::vector<std::pair<double, double>>{{1, 1}, {2, 0.5}}) {
    double worst = 0.0;
    std::vector<double> means;
    for (const Value& l : reals) {
      Value d = ApplyFunction(npost, {l, Value::Real(0), Value::Real(hv),
                                      Value::Real(kv)},
                              nconf)
                    .value;
      means.push_back(GetMean(d.AsSym()).AsReal());
    }
    for (std::size_t i = 0; i < reals.size(); ++i) {
      for (std::size_t j = i + 1; j < reals.size(); ++j) {
        if (!l1.Adjacent(reals[i], reals[j])) continue;
        worst = std::max(worst, std::fabs(means[i] - means[j]));
      }
    }
    checks.push_back(Upper("normal-mean-sensitivity",
                           "hV = " + FormatDouble(hv) + ", kv = " +
                               FormatDouble(kv),
                           worst, NormalMeanSensitivity(hv, kv)));
  }

  // A [0,1] score: the exponential mechanism is eps-DP on either input.
  for (double eps : {0.1, 1.0, 2.0}) {
    auto mech = [&](bool db) {
      return ExpMech(eps,
                     [db](const Value& out) {
                       return out.AsBool() == db ? 1.0 : 0.0;
                     },
                     {Value::Bool(false), Value::Bool(true)});
    };
    Dist m1 = mech(false), m2 = mech(true);
    double d = std::max(FDiv(FDivKind::EpsD(eps), m1, m2),
                        FDiv(FDivKind::EpsD(eps), m2, m1));
    checks.push_back(Upper("score-range", "eps = " + FormatDouble(eps), d, 0.0));
  }

  // Triangle inequality of H and SD on random small distributions.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_h = -1.0, worst_s = -1.0;
  for (int t = 0; t < 200; ++t) {
    std::vector<Dist> ds;
    for (int k = 0; k < 3; ++k) {
      std::vector<Dist::Entry> e;
      for (int i = 0; i < 4; ++i) e.emplace_back(Value::Enum(i), unit(rng));
      ds.push_back(Dist::FromEntries(std::move(e)).Normalized());
    }
    worst_h = std::max(worst_h, std::fabs(HellingerDistance(ds[0], ds[2]) -
                                          HellingerDistance(ds[1], ds[2])) -
                                    HellingerDistance(ds[0], ds[1]));
    worst_s = std::max(worst_s,
                       std::fabs(FDiv(FDivKind::SD(), ds[0], ds[2]) -
                                 FDiv(FDivKind::SD(), ds[1], ds[2])) -
                           FDiv(FDivKind::SD(), ds[0], ds[1]));
  }
  checks.push_back(Upper("hellinger-triangle", "H, 200 random triples",
                         std::max(worst_h, 0.0), 0.0));
  checks.push_back(Upper("hellinger-triangle", "SD, 200 random triples",
                         std::max(worst_s, 0.0), 0.0));

  report.pass = std::all_of(checks.begin(), checks.end(),
                            [](const CertificateCheck& c) {
                              return c.pass || !c.within_assumption;
                            });
  return report;
}

std::string CertificateReport::ToJson() const {
  json all = json::array();
  for (const CertificateCheck& c : checks) {
    all.push_back({{"lemma", c.lemma},
                   {"instance", c.instance},
                   {"measured", c.measured},
                   {"bound", c.bound},
                   {"direction", c.lower ? ">=" : "<="},
                   {"within_assumption", c.within_assumption},
                   {"pass", c.pass}});
  }
  return json{{"pass", pass}, {"tolerance", kLemmaTolerance}, {"checks", all}}
      .dump(2);
}

// --- composition and DPI ---------------------------------------------------

namespace {

class RandomDists {
 public:
  explicit RandomDists(std::uint64_t seed) : rng_(seed) {}

  // Sometimes leaves points out of the support, so KL and eps-D see their
  // infinite and one-sided cases.
  Dist Make(int points) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Dist::Entry> e;
    for (int i = 0; i < points; ++i) {
      double w = unit(rng_);
      if (unit(rng_) < 0.15) w = 0.0;
      e.emplace_back(Value::Enum(i), w);
    }
    Dist d = Dist::FromEntries(std::move(e));
    if (d.empty()) return Dist::Dirac(Value::Enum(0));
    return d.Normalized();
  }

  int Size(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  double Eps() { return std::uniform_real_distribution<double>(0.0, 2.0)(rng_); }

  Kernel MakeKernel(int in, int out) {
    auto table = std::make_shared<std::vector<Dist>>();
    for (int i = 0; i < in; ++i) table->push_back(Make(out));
    return [table](const Value& v) { return table->at(v.AsEnum()); };
  }

 private:
  std::mt19937_64 rng_;
};

void Record(PropertyStat* s, double lhs, double rhs) {
  ++s->trials;
  double violation;
  if (std::isinf(rhs) && rhs > 0) {
    violation = -std::numeric_limits<double>::infinity();
  } else if (std::isinf(lhs)) {
    violation = std::numeric_limits<double>::infinity();
  } else {
    violation = lhs - rhs;
  }
  if (s->trials == 1 || violation > s->max_violation) s->max_violation = violation;
  if (violation > kPropertySlack) ++s->failures;
}

}  // namespace

CompositionReport CheckCompositionAndDpi(int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("trials must be at least 1");
  CompositionReport report;
  RandomDists gen(seed);
  const std::vector<std::string> kinds = {"SD", "HD", "KL", "epsD"};
  auto kind_for = [&](const std::string& k) {
    if (k == "SD") return FDivKind::SD();
    if (k == "HD") return FDivKind::HD();
    if (k == "KL") return FDivKind::KL();
    return FDivKind::EpsD(gen.Eps());
  };

  for (const std::string& k : kinds) {
    PropertyStat dpi{"dpi " + k};
    for (int t = 0; t < trials; ++t) {
      FDivKind f = kind_for(k);
      int n = gen.Size(1, 6);
      Dist m1 = gen.Make(n), m2 = gen.Make(n);
      Kernel m = gen.MakeKernel(n, gen.Size(1, 6));
      Record(&dpi, FDiv(f, DistBind(m1, m), DistBind(m2, m)), FDiv(f, m1, m2));
    }
    report.stats.push_back(dpi);
  }

  for (const std::string& k : kinds) {
    PropertyStat comp{"composition " + k};
    for (int t = 0; t < trials; ++t) {
      FDivKind f1 = kind_for(k);
      FDivKind f2 = kind_for(k);
      auto f3 = Composable(f1, f2);
      if (!f3) throw DomainError("no composition for " + f1.ToString());
      int n = gen.Size(1, 6), out = gen.Size(1, 6);
      Dist m1 = gen.Make(n), m2 = gen.Make(n);
      Kernel k1 = gen.MakeKernel(n, out), k2 = gen.MakeKernel(n, out);
      double worst_kernel = 0.0;
      for (int v = 0; v < n; ++v) {
        worst_kernel = std::max(
            worst_kernel, FDiv(f2, k1(Value::Enum(v)), k2(Value::Enum(v))));
      }
      Record(&comp, FDiv(*f3, DistBind(m1, k1), DistBind(m2, k2)),
             FDiv(f1, m1, m2) + worst_kernel);
    }
    report.stats.push_back(comp);
  }

  // Pairing two private mechanisms: the product is (e1 + e2)-DP.
  PropertyStat pairing{"pairing epsD"};
  for (int t = 0; t < trials; ++t) {
    double e1 = gen.Eps(), e2 = gen.Eps();
    int n = gen.Size(2, 4);
    Dist a1 = gen.Make(n), a2 = gen.Make(n), b1 = gen.Make(n), b2 = gen.Make(n);
    double d1 = std::max(FDiv(FDivKind::EpsD(e1), a1, a2),
                         FDiv(FDivKind::EpsD(e1), a2, a1));
    double d2 = std::max(FDiv(FDivKind::EpsD(e2), b1, b2),
                         FDiv(FDivKind::EpsD(e2), b2, b1));
    auto pair = [](const Dist& x, const Dist& y) {
      return DistBind(x, [&y](const Value& u) {
        return DistMap(y, [&u](const Value& w) { return Value::Tuple({u, w}); });
      });
    };
    Dist p1 = pair(a1, b1), p2 = pair(a2, b2);
    double measured = std::max(FDiv(FDivKind::EpsD(e1 + e2), p1, p2),
                               FDiv(FDivKind::EpsD(e1 + e2), p2, p1));
    Record(&pairing, measured, d1 + d2);
  }
  report.stats.push_back(pairing);

  // Post-processing never increases eps-D; a constant kernel gives 0.
  PropertyStat post{"post-processing epsD"};
  PropertyStat constant{"constant kernel"};
  for (int t = 0; t < trials; ++t) {
    FDivKind f = FDivKind::EpsD(gen.Eps());
    int n = gen.Size(1, 6);
    Dist m1 = gen.Make(n), m2 = gen.Make(n);
    Kernel m = gen.MakeKernel(n, gen.Size(1, 6));
    Record(&post, FDiv(f, DistBind(m1, m), DistBind(m2, m)), FDiv(f, m1, m2));
    Kernel c = [](const Value&) { return DistUnit(Value::Unit()); };
    Record(&constant, FDiv(f, DistBind(m1, c), DistBind(m2, c)), 0.0);
  }
  report.stats.push_back(post);
  report.stats.push_back(constant);

  report.pass = std::all_of(report.stats.begin(), report.stats.end(),
                            [](const PropertyStat& s) { return s.failures == 0; });
  return report;
}

std::string CompositionReport::ToJson() const {
  json all = json::array();
  for (const PropertyStat& s : stats) {
    all.push_back({{"name", s.name},
                   {"trials", s.trials},
                   {"failures", s.failures},
                   {"max_violation", Num(s.max_violation)}});
  }
  return json{{"pass", pass}, {"slack", kPropertySlack}, {"properties", all}}
      .dump(2);
}

}  // namespace privinfer
