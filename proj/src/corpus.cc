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

#include "privinfer/corpus.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "privinfer/error.h"
#include "privinfer/evaluator.h"
#include "privinfer/lemmas.h"
#include "privinfer/mechanisms.h"
#include "privinfer/parser.h"
#include "privinfer/reltype.h"
#include "privinfer/simple_types.h"

#ifndef PRIVINFER_FIXTURE_DIR
#define PRIVINFER_FIXTURE_DIR "fixtures"
#endif

namespace privinfer {
namespace {

// Floor for fixtures whose pipeline is exact up to float rounding.
constexpr double kExactSlack = 1e-9;

Fixture Make(const std::string& dir, const std::string& name,
             std::vector<std::optional<std::string>> args,
             std::vector<Value> inputs, AdjacencyRel rel, FDivKind kind,
             double delta, double slack, bool mutant = false) {
  Fixture f;
  f.name = name;
  f.program_path = dir + "/" + name + ".pinf";
  f.types_path = dir + "/" + name + ".rt";
  f.args = std::move(args);
  f.inputs = std::move(inputs);
  f.rel = std::move(rel);
  f.kind = kind;
  f.delta = delta;
  f.slack = slack;
  f.mutant = mutant;
  return f;
}

std::string Short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

Value EvalText(const std::string& text, const EvalConfig& base) {
  ExprPtr e = ParseExpression(text, "<argument>");
  TypeTable table;
  Typecheck(*e, &table);
  EvalConfig c = base;
  c.types = &table;
  return Eval({}, *e, c);
}

}  // namespace

std::string DefaultFixtureDir() { return PRIVINFER_FIXTURE_DIR; }

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Fixture> CorpusFixtures(const GridConfig& grid,
                                    const std::string& dir, bool quick) {
  const double eps = 1.0;
  const int bool_len = quick ? 2 : 4;
  const int exp_len = quick ? 2 : 3;
  const int real_len = quick ? 1 : 2;
  const std::vector<double> reals = {0.0, 0.5, 1.0};
  const std::string e = "1";
  std::vector<Fixture> out;

  // Exponential-mechanism noise on every record, then exact inference.
  out.push_back(Make(dir, "beta_input", {std::nullopt, "1", "1", e},
                     BoolLists(bool_len), AdjacencyRel::Flip(),
                     FDivKind::EpsD(eps), 0.0, kExactSlack));

  // Gaussian noise on every record; eps = 0.5 keeps sensitivity 1 below 1/eps.
  const double g_eps = 0.5, g_delta = 0.05;
  const double sigma = GaussSigma(g_eps, g_delta);
  // A coarser, wider lattice: each noisy list costs one grid observe per
  // record, and there are (cells)^len of them.
  GridConfig wide = grid;
  wide.real_step = std::max(grid.real_step, 0.5);
  wide.real_extent =
      std::max(grid.real_extent,
               std::ceil((8 * sigma + 2) / wide.real_step) * wide.real_step);
  out.push_back(Make(dir, "normal_input",
                     {std::nullopt, "0", "1", "0.5", "0.05"},
                     RealLists(real_len, {0.0, 1.0}), AdjacencyRel::L1(),
                     FDivKind::EpsD(g_eps), g_delta,
                     GaussSlack(sigma, g_eps, 1.0, wide)));
  out.back().grid = wide;

  // Laplace noise on both posterior counts: sensitivity 2 in total.
  // Counts reach a + len; the lattice must reach 12/eps beyond that.
  GridConfig counts = grid;
  counts.real_extent = std::max(grid.real_extent, bool_len + 1 + 12 / eps);
  out.push_back(Make(dir, "beta_l1", {std::nullopt, "1", "1", e},
                     BoolLists(bool_len), AdjacencyRel::Flip(),
                     FDivKind::EpsD(2 * eps), 0.0,
                     2 * LaplaceSlack(eps, counts)));
  out.back().grid = counts;

  // Laplace noise on the posterior mean: sensitivity hV / (kV + hV).
  const double hv = 1.0, kv = 1.0;
  out.push_back(Make(dir, "normal_l1", {std::nullopt, "0", "1", "1", e},
                     RealLists(real_len, reals), AdjacencyRel::L1(),
                     FDivKind::EpsD(NormalMeanSensitivity(hv, kv) * eps), 0.0,
                     LaplaceSlack(eps, grid)));

  // Exponential mechanism scored by a distance between posteriors. The
  // slack covers the grid error of the distance.
  out.push_back(Make(dir, "hellinger_exp",
                     {"ran beta(1, 1)", std::nullopt, e}, BoolLists(exp_len),
                     AdjacencyRel::Flip(), FDivKind::EpsD(Rho() * eps), 0.0,
                     eps * kLemmaTolerance));
  out.push_back(Make(dir, "sd_exp", {"ran beta(1, 1)", std::nullopt, e},
                     BoolLists(exp_len), AdjacencyRel::Flip(),
                     FDivKind::EpsD(Zeta() * eps), 0.0,
                     eps * kLemmaTolerance));
  out.push_back(Make(dir, "dirichlet_exp",
                     {"ran dirichlet(1, 1, 1)", std::nullopt, e},
                     EnumLists(quick ? 1 : 2, 3), AdjacencyRel::Flip(),
                     FDivKind::EpsD(Rho() * eps), 0.0,
                     eps * kLemmaTolerance));

  const std::string mdir = dir + "/mutants";
  out.push_back(Make(mdir, "broken_addnoise", {std::nullopt, "1", "1", e},
                     BoolLists(bool_len), AdjacencyRel::Flip(),
                     FDivKind::EpsD(eps), 0.0, kExactSlack, true));
  out.push_back(Make(mdir, "beta_l1_halved", {std::nullopt, "1", "1", e},
                     BoolLists(bool_len), AdjacencyRel::Flip(),
                     FDivKind::EpsD(eps), 0.0, LaplaceSlack(eps, counts), true));
  out.back().grid = counts;
  return out;
}

bool FixtureResult::ok() const {
  if (!error.empty()) return false;
  if (mutant) return !relcheck_accepted || (dp && !dp->pass);
  return relcheck_accepted && brute_force_pass();
}

FixtureResult RunFixture(const Fixture& f, const GridConfig& run_grid,
                         const CheckOptions& options) {
  const GridConfig& grid = f.grid ? *f.grid : run_grid;
  FixtureResult r;
  r.name = f.name;
  r.mutant = f.mutant;
  try {
    ExprPtr program = Parse(ReadFile(f.program_path), f.program_path);
    std::vector<RelSignature> sigs =
        ParseRelSignatures(ReadFile(f.types_path), f.types_path);
    for (const RelSignature& s : sigs) {
      if (s.name == "main") r.claimed = s.type.ToString();
    }
    RelCheckReport rc = RelCheckProgram(*program, sigs);
    r.relcheck_accepted = rc.accepted();
    for (const VC* vc : rc.Unproved()) r.unproved.push_back(vc->goal);

    TypeTable table;
    Typecheck(*program, &table);
    EvalConfig config;
    config.grid = grid;
    config.types = &table;
    std::vector<std::optional<Value>> args;
    for (const auto& a : f.args) {
      args.push_back(a ? std::optional<Value>(EvalText(*a, config))
                       : std::nullopt);
    }
    Mechanism mech = ProgramMechanism(*program, args, config, &r.warnings);
    CheckOptions opts = options;
    opts.slack = f.slack;
    r.dp = CheckProgram(mech, f.rel, f.inputs, f.kind, f.delta, opts);
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

std::string CorpusTable(const std::vector<FixtureResult>& results) {
  std::ostringstream out;
  out << std::left << std::setw(18) << "fixture" << std::setw(10) << "relcheck"
      << std::setw(12) << "brute-force" << std::setw(14) << "measured"
      << std::setw(14) << "bound" << std::setw(8) << "status"
      << "claimed type of main\n";
  for (const FixtureResult& r : results) {
    std::string name = r.mutant ? r.name + "*" : r.name;
    out << std::setw(18) << name
        << std::setw(10) << (r.relcheck_accepted ? "accept" : "reject");
    if (r.dp) {
      out << std::setw(12) << (r.dp->pass ? "pass" : "fail")
          << std::setw(14) << Short(r.dp->max_divergence)
          << std::setw(14)
          << Short(r.dp->claimed_delta + r.dp->slack);
    } else {
      out << std::setw(12) << "error" << std::setw(14) << "-" << std::setw(14)
          << "-";
    }
    out << std::setw(8) << (r.ok() ? "ok" : "FAIL") << r.claimed << "\n";
    if (!r.error.empty()) out << "    error: " << r.error << "\n";
  }
  out << "(* mutant: expected to be rejected or refuted)\n";
  return out.str();
}

std::string CorpusJson(const std::vector<FixtureResult>& results) {
  nlohmann::json all = nlohmann::json::array();
  bool pass = true;
  for (const FixtureResult& r : results) {
    nlohmann::json j = {{"name", r.name},
                        {"claimed", r.claimed},
                        {"mutant", r.mutant},
                        {"relcheck", r.relcheck_accepted ? "accept" : "reject"},
                        {"unproved", r.unproved},
                        {"ok", r.ok()},
                        {"warnings", r.warnings}};
    if (r.dp) j["dp"] = nlohmann::json::parse(r.dp->ToJson());
    if (!r.error.empty()) j["error"] = r.error;
    pass = pass && r.ok();
    all.push_back(std::move(j));
  }
  return nlohmann::json{{"pass", pass}, {"fixtures", all}}.dump(2);
}

}  // namespace privinfer
