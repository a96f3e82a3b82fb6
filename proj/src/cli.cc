// Copyright 2026 The qcdmmw Authors
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

#include "qcdmmw/cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qcdmmw/errors.h"
#include "qcdmmw/estimator.h"
#include "qcdmmw/mmw_solver.h"
#include "qcdmmw/oracles.h"
#include "qcdmmw/reduction.h"
#include "qcdmmw/serialization.h"

namespace qcdmmw {

namespace {

using json = nlohmann::json;

const char* CommandName(Command c) {
  switch (c) {
    case Command::kEquilibrium:
      return "equilibrium";
    case Command::kQcd:
      return "qcd";
    case Command::kBounds:
      return "bounds";
    case Command::kOracle:
      return "oracle";
  }
  return "unknown";
}

MMWConfig SolverConfig(const RunConfig& config) {
  MMWConfig cfg;
  cfg.delta = config.delta;
  cfg.iterations = config.iterations;
  cfg.delta1 = config.delta1;
  cfg.eta_exp = config.eta_exp;
  cfg.eta_proj = config.eta_proj;
  cfg.max_iterations = config.max_iterations;
  return cfg;
}

void EnvOverride(const char* name, double& target) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || *end != '\0' || !(v > 0.0)) {
    throw InputError(
        fmt::format("environment variable {}='{}' is not a positive number",
                    name, raw));
  }
  target = v;
}

void Emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError(fmt::format("cannot write report '{}'", path));
  file << text;
}

void EmitTrace(const SolverTrace& trace, const std::string& path) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw InputError(fmt::format("cannot write trace '{}'", path));
  WriteTrace(file, trace);
}

json OracleReport(const RunConfig& config, const ChannelPair& specs) {
  const StinespringChannel ch0 = Normalize(specs.first, config.iso_tol);
  const StinespringChannel ch1 = Normalize(specs.second, config.iso_tol);
  json doc{{"command", "oracle"}};

  doc["unitary_diamond"] = nullptr;
  if (specs.first.kind == ChannelKind::kUnitary &&
      specs.second.kind == ChannelKind::kUnitary) {
    doc["unitary_diamond"] =
        UnitaryDiamond(specs.first.matrices[0], specs.second.matrices[0]);
  }
  doc["constant_diamond"] = nullptr;
  if (specs.first.kind == ChannelKind::kConstant &&
      specs.second.kind == ChannelKind::kConstant) {
    doc["constant_diamond"] =
        ConstantDiamond(HermMatrix(specs.first.matrices[0], config.iso_tol),
                        HermMatrix(specs.second.matrices[0], config.iso_tol));
  }
  doc["diamond_lower_search"] =
      DiamondLowerSearch(ch0, ch1, config.oracle_trials, config.seed);

  doc["naive_equilibrium"] = nullptr;
  doc["fmax_lower_bound"] = nullptr;
  const ReducedInstance inst = ReducedInstance::Build(ch0, ch1);
  if (inst.input_dim() <= 3) {
    const Sandwich s =
        NaiveEquilibrium(inst, config.oracle_restarts, config.seed);
    doc["naive_equilibrium"] = {{"lb", s.lb}, {"ub", s.ub}};
    doc["fmax_lower_bound"] =
        FmaxEstimate(inst, config.oracle_restarts, config.seed);
  }
  return doc;
}

int Execute(const RunConfig& config, std::ostream& out) {
  const ChannelPair specs = ParseChannelFile(config.channel_file, config.iso_tol);
  if (config.command == Command::kOracle) {
    Emit(OracleReport(config, specs), config.report_path, out);
    return kExitOk;
  }

  const MMWConfig cfg = SolverConfig(config);
  if (config.command == Command::kQcd) {
    CheckPdnCondition(*config.a, *config.b, cfg);
  }
  const ReducedInstance inst =
      ReducedInstance::Build(Normalize(specs.first, config.iso_tol),
                             Normalize(specs.second, config.iso_tol));
  const EquilibriumResult eq = SolveEquilibrium(inst, cfg);
  DiamondReport report = ReportFromResult(eq, inst.game_dim());
  if (config.command == Command::kQcd) {
    ApplyDecision(report, *config.a, *config.b);
  }
  json doc = ReportToJson(report);
  doc["command"] = CommandName(config.command);
  EmitTrace(eq.trace, config.trace_path);
  Emit(doc, config.report_path, out);
  return kExitOk;
}

}  // namespace

void ApplyEnvironmentOverrides(RunConfig& config) {
  EnvOverride("QCDMMW_ETA_EXP", config.eta_exp);
  EnvOverride("QCDMMW_ETA_PROJ", config.eta_proj);
  EnvOverride("QCDMMW_ISO_TOL", config.iso_tol);
  double d1 = 0.0;
  EnvOverride("QCDMMW_DELTA1", d1);
  if (d1 > 0.0) config.delta1 = d1;
}

void ValidateRunConfig(const RunConfig& config) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw InputError(
        fmt::format("--delta must lie in (0, 1), got {}", config.delta));
  }
  const bool is_qcd = config.command == Command::kQcd;
  const bool has_promise = config.a.has_value() && config.b.has_value();
  if (is_qcd && !has_promise) {
    throw InputError("qcd requires both --a and --b");
  }
  if (!is_qcd && (config.a || config.b)) {
    throw InputError("--a and --b are only accepted by qcd");
  }
  if (config.channel_file.empty()) {
    throw InputError("no channel file given");
  }
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    ValidateRunConfig(config);
    return Execute(config, out);
  } catch (const OutOfScopeError& e) {
    err << "qcdmmw: " << e.what() << '\n';
    return kExitOutOfScope;
  } catch (const std::exception& e) {
    err << "qcdmmw: error: " << e.what() << '\n';
    return kExitError;
  }
}

int RunMain(int argc, char** argv) {
  CLI::App app{
      "Diamond-norm promise decisions and intervals for pairs of quantum "
      "channels via matrix multiplicative weights"};
  app.require_subcommand(1);

  RunConfig config;
  const std::map<std::string, Command> commands = {
      {"equilibrium", Command::kEquilibrium},
      {"qcd", Command::kQcd},
      {"bounds", Command::kBounds},
      {"oracle", Command::kOracle}};
  const std::map<std::string, std::string> help = {
      {"equilibrium", "Approximate the equilibrium value of the reduced game"},
      {"qcd", "Decide a distinguishability promise (--a, --b)"},
      {"bounds", "Rigorous interval for the diamond distance"},
      {"oracle", "Independent reference values for manual cross-checks"}};

  double a = 0.0;
  double b = 0.0;
  long iterations = 0;
  double delta1 = 0.0;
  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("channels", config.channel_file, "Channel-pair JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--delta", config.delta, "Target precision (default 0.2)");
    sub->add_option("--seed", config.seed, "Seed for randomized oracles");
    sub->add_option("--max-iterations", config.max_iterations,
                    "Hard cap on MMW iterations");
    sub->add_option("--iterations", iterations,
                    "Override the iteration count");
    sub->add_option("--delta1", delta1, "Approximation slack (default delta/10)");
    sub->add_option("--eta-exp", config.eta_exp, "Exponential error budget");
    sub->add_option("--eta-proj", config.eta_proj, "Projection error budget");
    sub->add_option("--iso-tol", config.iso_tol,
                    "Tolerance for channel validity checks");
    sub->add_option("--trace", config.trace_path,
                    "Write the per-iteration trace (JSON lines)");
    sub->add_option("--report", config.report_path,
                    "Write the report here instead of stdout");
    if (command == Command::kQcd) {
      sub->add_option("--a", a, "Far promise: diamond distance >= a")
          ->required();
      sub->add_option("--b", b, "Close promise: diamond distance <= b")
          ->required();
    }
    if (command == Command::kOracle) {
      sub->add_option("--trials", config.oracle_trials,
                      "Random inputs for the lower-bound search");
      sub->add_option("--restarts", config.oracle_restarts,
                      "Restarts for the sandwich and fidelity oracles");
    }
    sub->callback([&config, command] { config.command = command; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    ApplyEnvironmentOverrides(config);
  } catch (const Error& e) {
    std::cerr << "qcdmmw: error: " << e.what() << '\n';
    return kExitError;
  }
  if (config.command == Command::kQcd) {
    config.a = a;
    config.b = b;
  }
  for (CLI::App* sub : app.get_subcommands()) {
    if (sub->count("--iterations") > 0) config.iterations = iterations;
    if (sub->count("--delta1") > 0) config.delta1 = delta1;
  }
  return Run(config, std::cout, std::cerr);
}

}  // namespace qcdmmw
