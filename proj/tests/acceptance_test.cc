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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "qcdmmw/cli.h"
#include "qcdmmw/errors.h"
#include "qcdmmw/estimator.h"
#include "qcdmmw/linalg.h"
#include "qcdmmw/mmw_solver.h"
#include "qcdmmw/oracles.h"
#include "qcdmmw/random.h"
#include "qcdmmw/reduction.h"

namespace qcdmmw {
namespace {

using C = Complex;

constexpr double kDelta = 0.2;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Every instance built and every solver run made here; criteria 4, 8 and 9
// sweep over them.
std::deque<ReducedInstance> g_instances;
std::deque<EquilibriumResult> g_runs;

const MMWConfig& Cfg() {
  static const MMWConfig cfg = [] {
    MMWConfig c;
    c.delta = kDelta;
    return c;
  }();
  return cfg;
}

double DeltaTotal() { return Cfg().delta + Cfg().ResolvedDelta1(); }

ChannelSpec UnitarySpec(const CMatrix& u) {
  return ChannelSpec{ChannelKind::kUnitary, u.rows(), u.rows(), 0, {u}};
}

ChannelSpec ConstantSpec(const CMatrix& sigma) {
  return ChannelSpec{ChannelKind::kConstant, sigma.rows(), sigma.rows(), 0,
                     {sigma}};
}

CMatrix Proj(Index i) {
  CMatrix m = CMatrix::Zero(2, 2);
  m(i, i) = 1.0;
  return m;
}

const ReducedInstance& Track(const StinespringChannel& a,
                             const StinespringChannel& b) {
  g_instances.push_back(ReducedInstance::Build(a, b));
  return g_instances.back();
}

const EquilibriumResult& Solve(const ReducedInstance& inst) {
  g_runs.push_back(SolveEquilibrium(inst, Cfg()));
  return g_runs.back();
}

Outcome PromiseThresholdsCriterion() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const CMatrix id = CMatrix::Identity(2, 2);
  const ReducedInstance& same =
      Track(Normalize(UnitarySpec(id)), Normalize(UnitarySpec(id)));
  const ReducedInstance& orth = Track(Normalize(ConstantSpec(Proj(0))),
                                      Normalize(ConstantSpec(Proj(1))));
  const EquilibriumResult& r_same = Solve(same);
  const EquilibriumResult& r_orth = Solve(orth);
  DiamondReport d_same = ReportFromResult(r_same, same.game_dim());
  DiamondReport d_orth = ReportFromResult(r_orth, orth.game_dim());
  CheckDecisionGap(1.9, 0.1, Cfg());
  ApplyDecision(d_same, 1.9, 0.1);
  ApplyDecision(d_orth, 1.9, 0.1);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  const PromiseThresholds th = Thresholds(1.9, 0.1);
  o.pass = r_same.lambda >= th.lower_when_close - DeltaTotal() &&
           r_orth.lambda <= th.upper_when_far + DeltaTotal() &&
           d_same.decision == Decision::kClose &&
           d_orth.decision == Decision::kFar && r_same.iterations == 555 &&
           r_orth.iterations == 555 && secs < 10.0;
  o.detail = fmt::format(
      "identical lambda={:.4f} ({}), orthogonal lambda={:.4f} ({}), T={}, "
      "{:.2f}s",
      r_same.lambda, DecisionName(*d_same.decision), r_orth.lambda,
      DecisionName(*d_orth.decision), r_same.iterations, secs);
  return o;
}

Outcome AccuracyCriterion() {
  Outcome o;
  Rng rng(2024);
  int narrow = 0;
  double worst = 0.0;
  const int pairs = 12;
  for (int i = 0; i < pairs; ++i) {
    const Index z0 = 1 + i % 3, z1 = 1 + (i + 1) % 3;
    const ReducedInstance& inst =
        Track(StinespringChannel(RandomIsometry(2 * z0, 2, rng), 2, 2, z0),
              StinespringChannel(RandomIsometry(2 * z1, 2, rng), 2, 2, z1));
    const double lambda = Solve(inst).lambda;
    const Sandwich s = NaiveEquilibrium(inst, 10, 500 + i);
    const double dev = std::abs(lambda - s.midpoint());
    worst = std::max(worst, dev - 0.5 * s.width());
    if (dev > DeltaTotal() + 0.5 * s.width()) o.pass = false;
    if (s.width() <= 2e-2) {
      ++narrow;
      if (dev > DeltaTotal()) o.pass = false;
    }
  }
  o.detail = fmt::format(
      "{} pairs, {} with sandwich width <= 2e-2, worst excess over "
      "half-width {:.4f} (limit {:.2f})",
      pairs, narrow, worst, DeltaTotal());
  return o;
}

Outcome UnitaryContainmentCriterion() {
  Outcome o;
  Rng rng(77);
  int contained = 0;
  for (int i = 0; i < 50; ++i) {
    const CMatrix u = RandomUnitary(2, rng), v = RandomUnitary(2, rng);
    const ReducedInstance& inst =
        Track(Normalize(UnitarySpec(u)), Normalize(UnitarySpec(v)));
    const DiamondInterval iv =
        IntervalFromLambda(Solve(inst).lambda, DeltaTotal());
    if (iv.Contains(UnitaryDiamond(u, v))) ++contained;
  }
  CMatrix s = CMatrix::Identity(2, 2);
  s(1, 1) = C(0, 1);
  const ReducedInstance& is = Track(Normalize(UnitarySpec(CMatrix::Identity(2, 2))),
                                    Normalize(UnitarySpec(s)));
  const DiamondInterval iv = IntervalFromLambda(Solve(is).lambda, DeltaTotal());
  const bool sqrt2 = iv.Contains(std::sqrt(2.0));
  o.pass = contained == 50 && sqrt2;
  o.detail = fmt::format("{}/50 random pairs contained; (I, S) interval "
                         "[{:.5f}, {:.5f}] {} sqrt(2)",
                         contained, iv.lo, iv.hi, sqrt2 ? "contains" : "misses");
  return o;
}

Outcome RegretCriterion() {
  Outcome o;
  double worst = std::numeric_limits<double>::infinity();
  for (const EquilibriumResult& r : g_runs) {
    const HermMatrix star = MinEigenProjector(r.trace.accumulated_loss);
    worst = std::min(worst, RegretCheck(r.trace, star, RegretMode::kApproximate));
  }
  o.pass = !g_runs.empty() && worst >= -1e-6;
  o.detail = fmt::format("{} solver runs, smallest slack {:.4f}", g_runs.size(),
                         worst);
  return o;
}

Outcome ExponentialBoundCriterion() {
  Outcome o;
  Rng rng(55);
  std::uniform_real_distribution<double> eps_dist(0.0, 0.5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_eig = std::numeric_limits<double>::infinity();
  bool eps_ok = true;
  for (int i = 0; i < 100; ++i) {
    double eps = 0.5 - eps_dist(rng);  // (0, 1/2]
    const double eps_prime = 1.0 - std::exp(-eps);
    const Index dim = 2 + i % 4;
    RVector d(dim);
    for (Index k = 0; k < dim; ++k) d(k) = unif(rng);
    const CMatrix u = RandomUnitary(dim, rng);
    const HermMatrix m(u * d.cast<C>().asDiagonal() * u.adjoint());
    const HermMatrix gap = HermMatrix::Identity(dim) - m * eps_prime -
                           MatExpHermitian(m * -eps);
    worst_eig = std::min(worst_eig, HermEig(gap).min());
    if (!(eps_prime >= eps * (1.0 - eps))) eps_ok = false;
  }
  o.pass = worst_eig >= -1e-10 && eps_ok;
  o.detail = fmt::format("smallest eigenvalue {:.3e}, eps' >= eps(1-eps) {}",
                         worst_eig, eps_ok ? "always" : "violated");
  return o;
}

Outcome FuchsVanDeGraafCriterion() {
  Outcome o;
  Rng rng(66);
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const Index dim = i % 2 == 0 ? 2 : 3;
    const HermMatrix rho = RandomDensity(dim, rng, 1 + i % dim);
    const HermMatrix sigma = RandomDensity(dim, rng, 1 + (i / 2) % dim);
    const double d = 0.5 * TraceNorm(rho.matrix() - sigma.matrix());
    const double f = Fidelity(rho, sigma);
    worst = std::min({worst, f - (1.0 - d),
                      std::sqrt(std::max(0.0, 1.0 - d * d)) - f});
  }
  o.pass = worst >= -1e-9;
  o.detail = fmt::format("200 pairs, smallest margin {:.3e}", worst);
  return o;
}

Outcome MaxFidelityCriterion() {
  Outcome o;
  Rng rng(88);
  double worst_gap = 0.0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10; ++i) {
    const CMatrix u = RandomUnitary(2, rng), v = RandomUnitary(2, rng);
    const ReducedInstance& inst =
        Track(Normalize(UnitarySpec(u)), Normalize(UnitarySpec(v)));
    const double exact = UnitaryDiamond(u, v);
    const double fmax = FmaxEstimate(inst, 10, 900 + i);
    worst_gap = std::max(worst_gap, exact - fmax);
    worst_excess = std::max(worst_excess, fmax - exact);
  }
  o.pass = worst_gap <= 5e-2 && worst_excess <= 1e-7;
  o.detail = fmt::format(
      "10 pairs, largest shortfall {:.2e}, largest overshoot {:.2e}",
      worst_gap, worst_excess);
  return o;
}

Outcome ReductionIdentityCriterion() {
  Outcome o;
  double dec = 0.0, iso = 0.0;
  for (const ReducedInstance& inst : g_instances) {
    dec = std::max(dec, inst.DecompositionResidual());
    iso = std::max(iso, inst.IsometryResidual());
  }
  o.pass = !g_instances.empty() && dec <= 1e-9 && iso <= 1e-10;
  o.detail = fmt::format(
      "{} instances, decomposition residual {:.2e}, isometry residual {:.2e}",
      g_instances.size(), dec, iso);
  return o;
}

Outcome DualityCriterion() {
  Outcome o;
  Rng rng(99);
  double worst = 0.0;
  for (const ReducedInstance& inst : g_instances) {
    for (int i = 0; i < 100; ++i) {
      const HermMatrix rho = RandomDensity(inst.game_dim(), rng);
      const HermMatrix pi = RandomEffect(inst.value_dim(), rng);
      const double lhs = HsInner(pi.matrix(), inst.XiApply(rho).matrix()).real();
      const double rhs =
          HsInner(inst.XiAdjoint(pi).matrix(), rho.matrix()).real();
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  o.pass = worst <= 1e-10;
  o.detail = fmt::format("{} instances x 100 pairs, largest residual {:.2e}",
                         g_instances.size(), worst);
  return o;
}

Outcome RefusalCriterion() {
  Outcome o;
  const ChannelSpec id = UnitarySpec(CMatrix::Identity(2, 2));
  const std::string prefix = "gap too small for direct decision";
  bool library_refused = false;
  try {
    PdnDecide(id, id, 1.0, 0.3, Cfg());
  } catch (const OutOfScopeError& e) {
    library_refused = std::string(e.what()).rfind(prefix, 0) == 0;
  }
  RunConfig config;
  config.command = Command::kQcd;
  config.channel_file = std::string(QCDMMW_DATA_DIR) + "/identical_unitary.json";
  config.a = 1.0;
  config.b = 0.3;
  std::ostringstream out, err;
  const int code = Run(config, out, err);
  const bool cli_refused = code == kExitOutOfScope && out.str().empty() &&
                           err.str().find(prefix) != std::string::npos;
  o.pass = library_refused && cli_refused;
  o.detail = fmt::format("library {}, cli exit code {}",
                         library_refused ? "refused" : "did not refuse", code);
  return o;
}

}  // namespace
}  // namespace qcdmmw

int main() {
  using qcdmmw::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {
          {"promise thresholds at delta = 0.2",
           qcdmmw::PromiseThresholdsCriterion},
          {"accuracy against the naive sandwich", qcdmmw::AccuracyCriterion},
          {"unitary interval containment",
           qcdmmw::UnitaryContainmentCriterion},
          {"regret bound on every solver run", qcdmmw::RegretCriterion},
          {"linear bound on exp(-eps M)", qcdmmw::ExponentialBoundCriterion},
          {"Fuchs-van de Graaf inequalities",
           qcdmmw::FuchsVanDeGraafCriterion},
          {"max output fidelity vs unitary diamond norm",
           qcdmmw::MaxFidelityCriterion},
          {"reduction identity and isometries",
           qcdmmw::ReductionIdentityCriterion},
          {"duality residual", qcdmmw::DualityCriterion},
          {"refusal below the direct-decision condition",
           qcdmmw::RefusalCriterion},
      };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
