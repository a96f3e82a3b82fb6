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

#include "qcdmmw/mmw_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace qcdmmw {

namespace {

constexpr double kClipTol = 1e-9;
constexpr double kDensityTol = 1e-9;

using Step = std::function<HermMatrix(const HermMatrix& rho,
                                      IterationRecord& record)>;

// Shared loop of MmwRun and SolveGeneric. `step` returns the raw loss
// operator for rho_t and may fill in the payoff of `record`.
SolverTrace RunLoop(Index dim, const MMWConfig& cfg, const Step& step) {
  cfg.Validate(dim);
  const double eps = cfg.ResolvedEpsilon();
  const long total = cfg.ResolvedIterations(dim);

  SolverTrace trace;
  trace.dim = dim;
  trace.epsilon = eps;
  trace.delta1 = cfg.ResolvedDelta1();
  trace.exponent_norm_bound = eps * static_cast<double>(total);
  trace.accumulated_loss = HermMatrix::Zero(dim);
  trace.records.reserve(total);
  trace.densities.reserve(total);
  trace.losses.reserve(total);

  for (long t = 1; t <= total; ++t) {
    if (t > cfg.max_iterations) {
      throw IterationCapError(
          fmt::format("configured {} iterations exceed the cap of {}", total,
                      cfg.max_iterations),
          std::move(trace));
    }
    IterationRecord record;
    record.t = t;

    // exp(-eps S) / tr exp(-eps S), shifted by the largest exponent
    // eigenvalue so that every weight lies in (0, 1].
    const EigDecomp eig = HermEig(trace.accumulated_loss * (-eps));
    record.exponent_min_eig = eig.min();
    record.exponent_max_eig = eig.max();
    EigDecomp shifted = eig;
    shifted.eigenvalues.array() -= eig.max();
    const double rounding = ExpRoundingBound(shifted);
    if (rounding > cfg.eta_exp) {
      throw NumericalError(fmt::format(
          "iteration {}: exponential rounding bound {:.3e} exceeds eta_exp "
          "{:.3e}",
          t, rounding, cfg.eta_exp));
    }
    RVector weights = shifted.eigenvalues.array().exp();
    const double total_weight = weights.sum();
    weights /= total_weight;
    const CMatrix& u = eig.eigenvectors;
    HermMatrix rho(CMatrix(u * weights.asDiagonal() * u.adjoint()));

    record.density_trace_residual =
        std::abs(rho.matrix().trace().real() - 1.0);
    record.density_min_eig = weights.minCoeff();
    if (record.density_trace_residual > kDensityTol ||
        record.density_min_eig < -kDensityTol) {
      throw NumericalError(fmt::format(
          "iteration {}: weight density left the density set (trace "
          "residual {:.3e}, smallest eigenvalue {:.3e})",
          t, record.density_trace_residual, record.density_min_eig));
    }

    HermMatrix loss = ClipLossOperator(step(rho, record));
    if (loss.dim() != dim) {
      throw InputError(fmt::format(
          "iteration {}: loss operator is {}-dimensional, expected {}", t,
          loss.dim(), dim));
    }
    record.loss = HsInner(rho.matrix(), loss.matrix()).real();
    trace.accumulated_loss += loss;
    trace.records.push_back(record);
    trace.densities.push_back(std::move(rho));
    trace.losses.push_back(std::move(loss));
  }
  return trace;
}

}  // namespace

double MMWConfig::ResolvedEpsilon() const {
  return epsilon.value_or(delta / 4.0);
}

long MMWConfig::ResolvedIterations(Index dim) const {
  if (iterations) return *iterations;
  const double n = static_cast<double>(dim);
  const double raw = 16.0 * std::log(n) / (delta * delta);
  return std::max(1L, static_cast<long>(std::ceil(raw)));
}

double MMWConfig::ResolvedDelta1() const {
  return delta1.value_or(delta / 10.0);
}

void MMWConfig::Validate(Index dim) const {
  if (dim <= 0) {
    throw InputError(fmt::format("MMW: dimension must be positive, got {}",
                                 dim));
  }
  if (!(delta > 0.0)) {
    throw InputError(fmt::format("MMW: delta must be positive, got {}",
                                 delta));
  }
  const double eps = ResolvedEpsilon();
  if (!(eps > 0.0 && eps <= 0.5)) {
    throw InputError(fmt::format(
        "MMW: learning rate must lie in (0, 1/2], got {}", eps));
  }
  if (ResolvedIterations(dim) < 1) {
    throw InputError("MMW: iteration count must be at least 1");
  }
  const double d1 = ResolvedDelta1();
  if (!(d1 > 0.0 && d1 < delta)) {
    throw InputError(fmt::format(
        "MMW: delta1 must lie in (0, delta) = (0, {}), got {}", delta, d1));
  }
  const double per_op = d1 / static_cast<double>(dim);
  if (!(eta_exp > 0.0 && eta_exp < per_op) ||
      !(eta_proj > 0.0 && eta_proj < per_op)) {
    throw InputError(fmt::format(
        "MMW: eta_exp ({}) and eta_proj ({}) must lie in (0, delta1 / N) = "
        "(0, {})",
        eta_exp, eta_proj, per_op));
  }
  if (max_iterations < 1) {
    throw InputError("MMW: max_iterations must be at least 1");
  }
}

HermMatrix ClipLossOperator(const HermMatrix& m) {
  const EigDecomp eig = HermEig(m);
  if (eig.min() < -kClipTol || eig.max() > 1.0 + kClipTol) {
    throw InputError(fmt::format(
        "loss operator must satisfy 0 <= M <= I; eigenvalues span [{:.6g}, "
        "{:.6g}]",
        eig.min(), eig.max()));
  }
  if (eig.min() >= 0.0 && eig.max() <= 1.0) return m;
  return SpectralFunction(eig,
                          [](double x) { return std::clamp(x, 0.0, 1.0); });
}

SolverTrace MmwRun(const LossOracle& oracle, Index dim,
                   const MMWConfig& cfg) {
  return RunLoop(dim, cfg, [&](const HermMatrix& rho, IterationRecord&) {
    return oracle(rho);
  });
}

double RegretCheck(const SolverTrace& trace, const HermMatrix& rho_star,
                   RegretMode mode) {
  if (rho_star.dim() != trace.dim) {
    throw InputError(fmt::format(
        "RegretCheck: comparator is {}-dimensional, trace is {}",
        rho_star.dim(), trace.dim));
  }
  double mixed = 0.0;
  for (std::size_t t = 0; t < trace.losses.size(); ++t) {
    mixed += HsInner(trace.densities[t].matrix(), trace.losses[t].matrix())
                 .real();
  }
  const double eps = trace.epsilon;
  const double lhs = (1.0 - eps) * mixed;
  double rhs =
      HsInner(rho_star.matrix(), trace.accumulated_loss.matrix()).real() +
      std::log(static_cast<double>(trace.dim)) / eps;
  if (mode == RegretMode::kApproximate) {
    rhs += 0.5 * static_cast<double>(trace.iterations()) * trace.delta1;
  }
  return rhs - lhs;
}

EquilibriumResult SolveGeneric(const BilinearGame& game,
                               const MMWConfig& cfg) {
  if (!(game.bound > 0.0) || !std::isfinite(game.bound)) {
    throw InputError(fmt::format("game bound must be positive, got {}",
                                 game.bound));
  }
  if (!game.apply || !game.adjoint || !game.best_response) {
    throw InputError("game is missing apply, adjoint or best_response");
  }
  const Index dim = game.input_dim;
  const double bound = game.bound;
  const double bound_tol = bound * (1.0 + kClipTol);

  double payoff_sum = 0.0;
  double best_upper = std::numeric_limits<double>::infinity();
  double best_lower = -std::numeric_limits<double>::infinity();
  std::optional<HermMatrix> witness_sum;
  HermMatrix density_sum = HermMatrix::Zero(dim);

  auto step = [&](const HermMatrix& rho, IterationRecord& record) {
    const HermMatrix value = game.apply(rho);
    const HermMatrix witness = game.best_response(value);
    const double payoff = HsInner(witness.matrix(), value.matrix()).real();
    if (std::abs(payoff) > bound_tol) {
      throw InputError(fmt::format(
          "iteration {}: payoff {:.6g} exceeds the declared bound {:.6g}",
          record.t, payoff, bound));
    }
    record.payoff = payoff;
    payoff_sum += payoff;
    best_upper = std::min(best_upper, payoff);

    const HermMatrix dual = game.adjoint(witness);
    best_lower = std::max(best_lower, HermEig(dual).min());
    if (witness_sum) {
      *witness_sum += witness;
    } else {
      witness_sum = witness;
    }
    density_sum += rho;

    const HermMatrix id = HermMatrix::Identity(dim);
    return (dual * (1.0 / bound) + id) * 0.5;
  };

  EquilibriumResult result;
  result.trace = RunLoop(dim, cfg, step);
  const long total = result.trace.iterations();
  const double inv_t = 1.0 / static_cast<double>(total);
  result.iterations = total;
  result.lambda = payoff_sum * inv_t;
  result.delta = cfg.delta * bound;
  result.delta1 = cfg.ResolvedDelta1() * bound;

  // Averages of feasible strategies stay feasible, and often certify more
  // than any single iterate.
  const HermMatrix avg_witness = *witness_sum * inv_t;
  result.lower_cert =
      std::max(best_lower, HermEig(game.adjoint(avg_witness)).min());
  const HermMatrix avg_density = density_sum * inv_t;
  const HermMatrix avg_value = game.apply(avg_density);
  const double avg_payoff =
      HsInner(game.best_response(avg_value).matrix(), avg_value.matrix())
          .real();
  result.upper_cert = std::min(best_upper, avg_payoff);
  return result;
}

BilinearGame MakeGame(const ReducedInstance& inst, double eta_proj) {
  BilinearGame game;
  game.input_dim = inst.game_dim();
  game.apply = [inst](const HermMatrix& rho) { return inst.XiApply(rho); };
  game.adjoint = [inst](const HermMatrix& pi) { return inst.XiAdjoint(pi); };
  game.best_response = [eta_proj](const HermMatrix& value) {
    return PosProj(value, eta_proj);
  };
  game.bound = 1.0;
  return game;
}

EquilibriumResult SolveEquilibrium(const ReducedInstance& inst,
                                   const MMWConfig& cfg) {
  return SolveGeneric(MakeGame(inst, cfg.eta_proj), cfg);
}

}  // namespace qcdmmw
