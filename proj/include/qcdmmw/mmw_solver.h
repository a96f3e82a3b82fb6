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

// Matrix multiplicative weights and the equilibrium-value solver built on
// it.
//
// The update keeps the accumulated loss S_t = M_1 + ... + M_t and sets
//
//   rho_1 = I / N,   rho_{t+1} = exp(-eps S_t) / tr exp(-eps S_t).
//
// The weight matrix itself is never stored: every rho is exponentiated from
// S afresh. For losses 0 <= M_t <= I this guarantees, for every density
// rho*,
//
//   (1 - eps) sum_t <rho_t, M_t> <= <rho*, S_T> + ln(N) / eps
//
// (plus T * delta1 / 2 when each rho_t is only delta1/N-accurate).

#ifndef QCDMMW_MMW_SOLVER_H_
#define QCDMMW_MMW_SOLVER_H_

#include <functional>
#include <optional>
#include <vector>

#include "qcdmmw/errors.h"
#include "qcdmmw/linalg.h"
#include "qcdmmw/reduction.h"

namespace qcdmmw {

struct MMWConfig {
  // Target precision of the returned value.
  double delta = 0.2;
  // Learning rate; defaults to delta / 4.
  std::optional<double> epsilon;
  // Iteration count; defaults to ceil(16 ln N / delta^2).
  std::optional<long> iterations;
  // Per-operation budgets for exp and the positive-part projection.
  double eta_exp = kDefaultEta;
  double eta_proj = kDefaultEta;
  // Aggregate slack for approximate arithmetic; defaults to delta / 10.
  std::optional<double> delta1;
  // Hard cap on the number of iterations actually run.
  long max_iterations = 1'000'000;

  double ResolvedEpsilon() const;
  long ResolvedIterations(Index dim) const;
  double ResolvedDelta1() const;

  // Throws InputError unless 0 < eps <= 1/2, T >= 1, 0 < delta1 < delta and
  // eta_exp, eta_proj < delta1 / N.
  void Validate(Index dim) const;
};

// Scalar record of one iteration; this is what gets serialized.
struct IterationRecord {
  long t = 0;
  // <rho_t, M_t>, in [0, 1].
  double loss = 0.0;
  // Game value <Pi_t, Xi(rho_t)> for equilibrium runs.
  std::optional<double> payoff;
  // Extremal eigenvalues of the exponent -eps * S_{t-1} that produced rho_t.
  double exponent_min_eig = 0.0;
  double exponent_max_eig = 0.0;
  // |tr rho_t - 1| and the smallest eigenvalue of rho_t.
  double density_trace_residual = 0.0;
  double density_min_eig = 0.0;

  bool operator==(const IterationRecord&) const = default;
};

struct SolverTrace {
  Index dim = 0;
  double epsilon = 0.0;
  double delta1 = 0.0;
  // Operator-norm bound eps * T on the exponent (never exceeded).
  double exponent_norm_bound = 0.0;
  std::vector<IterationRecord> records;
  // rho_t and M_t (after clipping), kept for regret certification.
  std::vector<HermMatrix> densities;
  std::vector<HermMatrix> losses;
  // S_T = sum_t M_t.
  HermMatrix accumulated_loss;

  long iterations() const { return static_cast<long>(records.size()); }
};

// Raised when the configured iteration count exceeds max_iterations. The
// partial trace covers the iterations that did run.
class IterationCapError : public Error {
 public:
  IterationCapError(const std::string& message, SolverTrace partial)
      : Error(message), partial_(std::move(partial)) {}
  const SolverTrace& partial() const { return partial_; }

 private:
  SolverTrace partial_;
};

using LossOracle = std::function<HermMatrix(const HermMatrix& rho)>;

// Runs the meta-algorithm for ResolvedIterations(dim) rounds against
// `oracle`. Oracle outputs with eigenvalues in [-1e-9, 0) or
// (1, 1 + 1e-9] are clipped into [0, 1]; larger violations are an
// InputError.
SolverTrace MmwRun(const LossOracle& oracle, Index dim,
                   const MMWConfig& cfg);

// Clipping policy for loss operators, exposed for tests.
HermMatrix ClipLossOperator(const HermMatrix& m);

enum class RegretMode {
  kExact,        // (1-eps) sum <rho,M> <= <rho*, S> + ln N / eps
  kApproximate,  // ... + T * delta1 / 2
};

// RHS - LHS of the regret inequality for a completed trace; non-negative
// whenever the bound holds.
double RegretCheck(const SolverTrace& trace, const HermMatrix& rho_star,
                   RegretMode mode = RegretMode::kExact);

struct EquilibriumResult {
  // (1/T) sum_t <Pi_t, Xi(rho_t)>, in value units.
  double lambda = 0.0;
  // lambda_min(Xi*(Pi)) maximized over the visited effects and their
  // average; a lower bound on the equilibrium value.
  double lower_cert = 0.0;
  // max_Pi <Pi, Xi(rho)> minimized over the visited densities and their
  // average; an upper bound on the equilibrium value.
  double upper_cert = 0.0;
  long iterations = 0;
  // Precision guarantee delta and slack delta1, both in value units.
  double delta = 0.0;
  double delta1 = 0.0;
  SolverTrace trace;
};

// A bilinear game min_rho max_{w in Gamma} <w, apply(rho)> over densities
// rho on `input_dim` and a convex set Gamma of Hermitian witnesses.
struct BilinearGame {
  Index input_dim = 0;
  // rho -> value operator.
  std::function<HermMatrix(const HermMatrix&)> apply;
  // witness -> operator on the input space, adjoint to `apply`.
  std::function<HermMatrix(const HermMatrix&)> adjoint;
  // value operator V -> argmax_{w in Gamma} <w, V>.
  std::function<HermMatrix(const HermMatrix&)> best_response;
  // |<w, apply(rho)>| <= bound for all densities and witnesses.
  double bound = 1.0;
};

// MMW on the losses M_t = (adjoint(w_t) / bound + I) / 2 with w_t the best
// response to apply(rho_t). The returned value is within bound * delta of
// the equilibrium value (plus bound * delta1 slack). Throws InputError if a
// payoff or loss escapes the declared bound.
EquilibriumResult SolveGeneric(const BilinearGame& game,
                               const MMWConfig& cfg);

// The reduced instance as a BilinearGame: apply = Xi, adjoint = Xi*,
// best response = positive-part projector, bound = 1.
BilinearGame MakeGame(const ReducedInstance& inst, double eta_proj);

// Equilibrium value of a reduced instance.
EquilibriumResult SolveEquilibrium(const ReducedInstance& inst,
                                   const MMWConfig& cfg);

}  // namespace qcdmmw

#endif  // QCDMMW_MMW_SOLVER_H_
