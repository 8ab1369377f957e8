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

// privinfer: command-line driver.
//
// Exit codes: 0 success, 1 a check ran and failed, 2 usage error, 3 the
// input program or data is invalid (syntax, type or evaluation error).

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "privinfer/corpus.h"
#include "privinfer/divergence.h"
#include "privinfer/dp_verify.h"
#include "privinfer/error.h"
#include "privinfer/evaluator.h"
#include "privinfer/inference.h"
#include "privinfer/json_io.h"
#include "privinfer/mechanisms.h"
#include "privinfer/numeric.h"
#include "privinfer/parser.h"
#include "privinfer/relcheck.h"
#include "privinfer/reltype.h"
#include "privinfer/simple_types.h"

namespace pi = privinfer;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kBadInput = 3;

struct Globals {
  int grid = 1000;
  int simplex_grid = 200;
  double real_step = 0.25;
  double real_extent = 16.0;
  std::int64_t fuel = 1000000;
  std::size_t max_inputs = 4096;
  int threads = 0;
  std::uint64_t seed = 1;

  pi::GridConfig Grid() const {
    pi::GridConfig g;
    g.unit_cells = grid;
    g.simplex_cells = simplex_grid;
    g.real_step = real_step;
    g.real_extent = real_extent;
    g.Validate();
    return g;
  }
};

// A parsed, typechecked program kept alive with its type table.
struct Loaded {
  pi::ExprPtr program;
  pi::TypeTable table;
  pi::EvalConfig config;
};

std::unique_ptr<Loaded> Load(const std::string& path, const Globals& g) {
  auto l = std::make_unique<Loaded>();
  l->program = pi::Parse(pi::ReadFile(path), path);
  pi::Typecheck(*l->program, &l->table);
  l->config.grid = g.Grid();
  l->config.fuel = g.fuel;
  l->config.types = &l->table;
  return l;
}

pi::Value EvalArg(const std::string& text, const pi::EvalConfig& base) {
  pi::ExprPtr e = pi::ParseExpression(text, "<--arg>");
  pi::TypeTable table;
  pi::Typecheck(*e, &table);
  pi::EvalConfig c = base;
  c.types = &table;
  return pi::Eval({}, *e, c);
}

void PrintWarnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

void PrintValue(const pi::Value& v, bool json) {
  if (json && v.kind() != pi::Value::Kind::kClosure) {
    std::cout << pi::ValueToJson(v).dump(2) << "\n";
  } else {
    std::cout << v.ToString() << "\n";
  }
}

pi::EvalOutcome RunProgram(const Loaded& l, const std::vector<std::string>& args) {
  pi::EvalOutcome out = pi::Evaluate({}, *l.program, l.config);
  if (args.empty()) return out;
  std::vector<pi::Value> values;
  for (const std::string& a : args) values.push_back(EvalArg(a, l.config));
  pi::EvalOutcome applied = pi::ApplyFunction(out.value, values, l.config);
  applied.warnings.insert(applied.warnings.begin(), out.warnings.begin(),
                          out.warnings.end());
  return applied;
}

std::vector<double> ParseReals(const std::string& csv) {
  std::vector<double> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stod(item));
  return out;
}

pi::Value Sample(const pi::Dist& d, std::uint64_t seed) {
  std::vector<double> w;
  for (const auto& [v, m] : d.entries()) w.push_back(m);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
  return d.entries().at(pick(rng)).first;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-semantics probabilistic programs with privacy checking"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file");
  Globals g;
  app.add_option("--grid", g.grid, "cells on [0,1]")
      ->envname("PRIVINFER_GRID_N")
      ->check(CLI::PositiveNumber);
  app.add_option("--simplex-grid", g.simplex_grid, "cells per side of the simplex grid")
      ->check(CLI::PositiveNumber);
  app.add_option("--real-step", g.real_step, "spacing of the real lattice")
      ->check(CLI::PositiveNumber);
  app.add_option("--real-extent", g.real_extent, "half-width of the real lattice")
      ->check(CLI::PositiveNumber);
  app.add_option("--fuel", g.fuel, "recursive-call budget per evaluation");
  app.add_option("--max-inputs", g.max_inputs, "cap on brute-force input spaces");
  app.add_option("--threads", g.threads, "worker threads (0: hardware)");
  app.add_option("--seed", g.seed, "seed for randomized suites and sampling");

  std::string file;
  bool json = false;
  std::vector<std::string> args;

  auto* parse = app.add_subcommand("parse", "parse and pretty-print a program");
  parse->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* check = app.add_subcommand("check", "simple-type a program");
  check->add_option("file", file)->required()->check(CLI::ExistingFile);

  auto* run = app.add_subcommand("run", "evaluate a program");
  run->add_option("file", file)->required()->check(CLI::ExistingFile);
  run->add_option("--arg", args, "argument expression for the final function")
      ->allow_extra_args(false);
  run->add_flag("--json", json, "print distributions as JSON");

  auto* infer = app.add_subcommand("infer", "evaluate and infer a symbolic distribution");
  infer->add_option("file", file)->required()->check(CLI::ExistingFile);
  infer->add_option("--arg", args, "argument expression for the final function")
      ->allow_extra_args(false);

  std::string type_file;
  auto* relcheck = app.add_subcommand("relcheck", "check relational type signatures");
  relcheck->add_option("file", file)->required()->check(CLI::ExistingFile);
  relcheck->add_option("--type", type_file, "signature file")
      ->required()
      ->check(CLI::ExistingFile);
  relcheck->add_flag("--json", json, "print the derivation and VCs as JSON");

  std::string rel = "flip", values = "0,0.5,1";
  double eps = 1.0, delta = 0.0, slack = 0.0;
  int max_len = 3;
  bool l1_multi = false, override_cap = false, all_pairs = false;
  auto* verify = app.add_subcommand("verify-dp", "brute-force privacy check");
  verify->add_option("file", file)->required()->check(CLI::ExistingFile);
  verify->add_option("--rel", rel, "adjacency")
      ->check(CLI::IsMember({"flip", "l1"}));
  verify->add_option("--eps", eps, "claimed epsilon")->check(CLI::NonNegativeNumber);
  verify->add_option("--delta", delta, "claimed delta")->check(CLI::NonNegativeNumber);
  verify->add_option("--max-len", max_len, "longest database")->check(CLI::NonNegativeNumber);
  verify->add_option("--values", values, "record values for l1 databases");
  verify->add_option("--slack", slack, "discretization slack added to delta");
  verify->add_option("--arg", args, "arguments of main; '_' marks the database")
      ->allow_extra_args(false);
  verify->add_flag("--l1-multi", l1_multi, "allow the l1 change to spread over records");
  verify->add_flag("--override-cap", override_cap, "ignore --max-inputs");
  verify->add_flag("--all-pairs", all_pairs, "list every pair in the JSON");
  verify->add_flag("--json", json, "print the report as JSON");

  std::string kind_text;
  std::vector<std::string> dist_files;
  auto* divergence = app.add_subcommand("divergence", "f-divergence between two JSON distributions");
  divergence->add_option("--kind", kind_text, "sd, hd, kl or eps:<e>")->required();
  divergence->add_option("files", dist_files)
      ->required()
      ->expected(2)
      ->check(CLI::ExistingFile);
  divergence->add_flag("--json", json, "print a JSON object");

  std::string mech_kind;
  double x = 0.0;
  std::string scores;
  std::optional<std::uint64_t> sample_seed;
  auto* mech = app.add_subcommand("mech", "output distribution of a mechanism");
  mech->add_option("kind", mech_kind)
      ->required()
      ->check(CLI::IsMember({"laplace", "gauss", "exp"}));
  mech->add_option("--eps", eps, "epsilon")->check(CLI::PositiveNumber);
  mech->add_option("--delta", delta, "delta (gauss)");
  mech->add_option("--x", x, "query answer (laplace, gauss)");
  mech->add_option("--scores", scores, "comma-separated scores of outputs 0..n-1 (exp)");
  mech->add_option("--sample", sample_seed, "draw one output with this seed");

  bool quick = false;
  std::string fixture_dir = pi::DefaultFixtureDir();
  auto* corpus = app.add_subcommand("corpus", "check every example program");
  corpus->add_flag("--quick", quick, "smaller input spaces");
  corpus->add_option("--fixtures", fixture_dir, "fixture directory")
      ->check(CLI::ExistingDirectory);
  corpus->add_flag("--json", json, "print the results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*parse) {
      pi::ExprPtr e = pi::Parse(pi::ReadFile(file), file);
      std::cout << pi::Pretty(*e) << "\n";
      return kOk;
    }
    if (*check) {
      pi::ExprPtr e = pi::Parse(pi::ReadFile(file), file);
      for (const auto& [name, type] : pi::TopLevelTypes(*e)) {
        std::cout << name << " : " << type.ToString() << "\n";
      }
      return kOk;
    }
    if (*run) {
      auto l = Load(file, g);
      pi::EvalOutcome out = RunProgram(*l, args);
      PrintWarnings(out.warnings);
      PrintValue(out.value, json);
      return kOk;
    }
    if (*infer) {
      auto l = Load(file, g);
      pi::EvalOutcome out = RunProgram(*l, args);
      PrintWarnings(out.warnings);
      pi::Value v = out.value;
      if (v.kind() == pi::Value::Kind::kDist) {
        v = pi::Value::Symbolic(pi::AlgInf(v.AsDist(), std::nullopt, l->config.grid));
      }
      if (v.kind() != pi::Value::Kind::kSymDist) {
        std::cerr << "error: result is not a distribution: " << v.ToString() << "\n";
        return kBadInput;
      }
      std::cout << v.AsSym().ToString() << "\n";
      return kOk;
    }
    if (*relcheck) {
      pi::ExprPtr e = pi::Parse(pi::ReadFile(file), file);
      auto sigs = pi::ParseRelSignatures(pi::ReadFile(type_file), type_file);
      pi::RelCheckReport report = pi::RelCheckProgram(*e, sigs);
      if (json) {
        std::cout << report.ToJson() << "\n";
      } else {
        for (const pi::DeclCheck& d : report.decls) {
          std::cout << (d.accepted ? "ok       " : "REJECTED ") << d.name
                    << " : " << d.type << "\n";
        }
        for (const pi::VC* vc : report.Unproved()) {
          std::cout << "Unproved VC #" << vc->id << " [" << vc->rule << "] at "
                    << vc->span.ToString() << ": " << vc->goal << "\n";
          if (!vc->justification.empty()) {
            std::cout << "  " << vc->justification << "\n";
          }
        }
      }
      return report.accepted() ? kOk : kCheckFailed;
    }
    if (*verify) {
      auto l = Load(file, g);
      std::vector<std::optional<pi::Value>> slots;
      bool have_slot = false;
      for (const std::string& a : args) {
        if (a == "_") {
          slots.push_back(std::nullopt);
          have_slot = true;
        } else {
          slots.push_back(EvalArg(a, l->config));
        }
      }
      if (!have_slot) slots.insert(slots.begin(), std::nullopt);
      std::vector<std::string> warnings;
      pi::Mechanism m = pi::ProgramMechanism(*l->program, slots, l->config, &warnings);
      pi::AdjacencyRel adjacency =
          rel == "flip" ? pi::AdjacencyRel::Flip() : pi::AdjacencyRel::L1(l1_multi);
      std::vector<pi::Value> inputs = rel == "flip"
                                          ? pi::BoolLists(max_len)
                                          : pi::RealLists(max_len, ParseReals(values));
      pi::CheckOptions opts;
      opts.max_inputs = g.max_inputs;
      opts.override_cap = override_cap;
      opts.threads = g.threads;
      opts.slack = slack;
      pi::DPReport report =
          pi::CheckProgram(m, adjacency, inputs, pi::FDivKind::EpsD(eps), delta, opts);
      report.warnings.insert(report.warnings.end(), warnings.begin(), warnings.end());
      if (json) {
        std::cout << report.ToJson(all_pairs) << "\n";
      } else {
        PrintWarnings(report.warnings);
        std::cout << (report.pass ? "PASS" : "FAIL") << ": max "
                  << report.kind.ToString() << " = "
                  << pi::FormatDouble(report.max_divergence) << " over "
                  << report.pairs.size() << " adjacent pairs of " << report.inputs
                  << " inputs; claimed delta " << pi::FormatDouble(delta)
                  << " + slack " << pi::FormatDouble(slack) << "\n";
        if (report.worst) {
          std::cout << "worst pair: " << report.worst->d1.ToString() << " vs "
                    << report.worst->d2.ToString() << "\n";
        }
      }
      return report.pass ? kOk : kCheckFailed;
    }
    if (*divergence) {
      pi::FDivKind kind = pi::ParseFDivKind(kind_text);
      pi::Dist a = pi::ReadDistFile(dist_files[0]);
      pi::Dist b = pi::ReadDistFile(dist_files[1]);
      double d = pi::FDiv(kind, a, b);
      if (json) {
        nlohmann::json out = {{"kind", kind.ToString()}};
        if (std::isinf(d)) {
          out["value"] = "inf";
        } else {
          out["value"] = d;
        }
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << pi::FormatDouble(d) << "\n";
      }
      return kOk;
    }
    if (*mech) {
      pi::GridConfig grid = g.Grid();
      pi::Dist d;
      if (mech_kind == "laplace") {
        d = pi::LaplaceMech(eps, x, grid);
      } else if (mech_kind == "gauss") {
        if (!(delta > 0)) {
          std::cerr << "error: gauss needs --delta > 0\n";
          return kUsage;
        }
        d = pi::GaussMech(pi::GaussSigma(eps, delta), x, grid);
      } else {
        std::vector<double> s = ParseReals(scores);
        std::vector<pi::Value> outputs;
        for (std::size_t i = 0; i < s.size(); ++i) {
          outputs.push_back(pi::Value::Enum(static_cast<int>(i)));
        }
        d = pi::ExpMech(eps, [&](const pi::Value& r) { return s.at(r.AsEnum()); },
                        outputs);
      }
      if (sample_seed) {
        std::cout << pi::ValueToJson(Sample(d, *sample_seed)).dump() << "\n";
      } else {
        std::cout << pi::DistToJsonString(d) << "\n";
      }
      return kOk;
    }
    if (*corpus) {
      pi::GridConfig grid = g.Grid();
      pi::CheckOptions opts;
      opts.max_inputs = g.max_inputs;
      opts.threads = g.threads;
      std::vector<pi::FixtureResult> results;
      bool pass = true;
      for (const pi::Fixture& f : pi::CorpusFixtures(grid, fixture_dir, quick)) {
        results.push_back(pi::RunFixture(f, grid, opts));
        pass = pass && results.back().ok();
      }
      std::cout << (json ? pi::CorpusJson(results) : pi::CorpusTable(results));
      if (json) std::cout << "\n";
      return pass ? kOk : kCheckFailed;
    }
  } catch (const pi::Error& e) {
    std::cerr << e.what() << "\n";
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
