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

#ifndef QCDMMW_CLI_H_
#define QCDMMW_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "qcdmmw/channels.h"
#include "qcdmmw/linalg.h"

namespace qcdmmw {

enum class Command { kEquilibrium, kQcd, kBounds, kOracle };

// Exit codes of Run.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitOutOfScope = 2;

struct RunConfig {
  Command command = Command::kBounds;
  std::string channel_file;
  double delta = 0.2;
  std::optional<double> a;
  std::optional<double> b;
  std::uint64_t seed = 7;
  long max_iterations = 1'000'000;
  std::optional<long> iterations;
  std::optional<double> delta1;
  double eta_exp = kDefaultEta;
  double eta_proj = kDefaultEta;
  double iso_tol = kIsoTol;
  int oracle_trials = 2000;
  int oracle_restarts = 10;
  // Empty: no trace / report to stdout.
  std::string trace_path;
  std::string report_path;
};

// Reads QCDMMW_ETA_EXP, QCDMMW_ETA_PROJ, QCDMMW_ISO_TOL and QCDMMW_DELTA1
// from the environment. InputError on an unparsable value.
void ApplyEnvironmentOverrides(RunConfig& config);

// InputError unless delta lies in (0, 1) and a, b are given exactly when
// the command is qcd.
void ValidateRunConfig(const RunConfig& config);

// Executes one command. Writes the JSON report to report_path (or `out`)
// and the JSON-lines trace to trace_path when set. Returns kExitOk on a
// decision or bounds, kExitOutOfScope when a promise gap is refused, and
// kExitError on any other error (message on `err`).
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and dispatches to Run.
int RunMain(int argc, char** argv);

}  // namespace qcdmmw

#endif  // QCDMMW_CLI_H_
