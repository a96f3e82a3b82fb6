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

#include "qcdmmw/oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "qcdmmw/errors.h"
#include "qcdmmw/random.h"

namespace qcdmmw {

namespace {

constexpr Index kMaxOracleInputDim = 3;
constexpr double kGeomTol = 1e-12;

double Cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double DistanceToSegment(const Point2& a, const Point2& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(-(a.x * dx + a.y * dy) / len2, 0.0, 1.0);
  return std::hypot(a.x + t * dx, a.y + t * dy);
}

// Andrew's monotone chain; counter-clockwise, collinear points dropped.
std::vector<Point2> ConvexHull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& p, const Point2& q) {
    return p.x < q.x || (p.x == q.x && p.y < q.y);
  });
  if (pts.size() < 3) return pts;
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= kGeomTol) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], *it) <= kGeomTol) {
      --k;
    }
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

void RequireSmallInput(const ReducedInstance& inst, const char* what) {
  if (inst.input_dim() > kMaxOracleInputDim) {
    throw InputError(fmt::format(
        "{}: input dimension {} exceeds the oracle limit of {}", what,
        inst.input_dim(), kMaxOracleInputDim));
  }
}

HermMatrix NormalizedGram(const CMatrix& g) {
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermMatrix(rho);
}

}  // namespace

double HullDistanceFromOrigin(std::span<const Point2> points) {
  if (points.empty()) {
    throw InputError("HullDistanceFromOrigin: empty point set");
  }
  const std::vector<Point2> hull =
      ConvexHull(std::vector<Point2>(points.begin(), points.end()));
  if (hull.size() == 1) return std::hypot(hull[0].x, hull[0].y);
  if (hull.size() == 2) return DistanceToSegment(hull[0], hull[1]);

  const Point2 origin;
  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % hull.size()];
    if (Cross(a, b, origin) < -kGeomTol) inside = false;
    best = std::min(best, DistanceToSegment(a, b));
  }
  return inside ? 0.0 : best;
}

double UnitaryDiamond(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
    throw InputError(fmt::format(
        "UnitaryDiamond: expected two square matrices of equal size, got "
        "{}x{} and {}x{}",
        u.rows(), u.cols(), v.rows(), v.cols()));
  }
  for (const CMatrix* m : {&u, &v}) {
    const double residual = CheckIsometry(*m);
    if (residual > kIsoTol) {
      throw InputError(fmt::format(
          "UnitaryDiamond: matrix is not unitary (residual {:.3e})",
          residual));
    }
  }
  const CMatrix w = u.adjoint() * v;
  Eigen::ComplexEigenSolver<CMatrix> solver(w, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError(fmt::format(
        "UnitaryDiamond: eigensolver failed on a {}x{} unitary", w.rows(),
        w.rows()));
  }
  std::vector<Point2> pts;
  for (Index i = 0; i < w.rows(); ++i) {
    const Complex e = solver.eigenvalues()(i);
    pts.push_back({e.real(), e.imag()});
  }
  const double d = std::min(1.0, HullDistanceFromOrigin(pts));
  return 2.0 * std::sqrt(1.0 - d * d);
}

double ConstantDiamond(const HermMatrix& sigma0, const HermMatrix& sigma1) {
  if (sigma0.dim() != sigma1.dim()) {
    throw InputError("ConstantDiamond: dimension mismatch");
  }
  return TraceNorm(sigma0.matrix() - sigma1.matrix());
}

double DiamondLowerSearch(const StinespringChannel& ch0,
                          const StinespringChannel& ch1, int trials,
                          std::uint64_t seed) {
  if (ch0.input_dim() != ch1.input_dim() ||
      ch0.output_dim() != ch1.output_dim()) {
    throw InputError("DiamondLowerSearch: channel dimensions differ");
  }
  const Index n = ch0.input_dim();
  const Index m = ch0.output_dim();
  const CMatrix id = CMatrix::Identity(n, n);

  // ((Q (x) id)(psi psi*)) on Y (x) X'.
  auto extended_output = [&](const StinespringChannel& ch, const CVector& psi) {
    const CVector out = Kron(ch.isometry(), id) * psi;
    const CMatrix full = out * out.adjoint();
    const Index dims[] = {m, ch.env_dim(), n};
    const Index keep[] = {0, 2};
    return PartialTrace(full, dims, keep);
  };

  Rng rng(seed);
  double best = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const CVector psi = RandomPureState(n * n, rng);
    const double value =
        TraceNorm(extended_output(ch0, psi) - extended_output(ch1, psi));
    best = std::max(best, value);
  }
  return best;
}

Sandwich NaiveEquilibrium(const ReducedInstance& inst, int restarts,
                          std::uint64_t seed, int steps_per_restart) {
  RequireSmallInput(inst, "NaiveEquilibrium");
  const Index dim = inst.game_dim();
  Rng rng(seed);
  Sandwich best{-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};

  for (int r = 0; r < restarts; ++r) {
    HermMatrix rho_avg = RandomDensity(dim, rng);
    HermMatrix pi_sum = HermMatrix::Zero(inst.value_dim());
    for (int k = 1; k <= steps_per_restart; ++k) {
      const HermMatrix value = inst.XiApply(rho_avg);
      const HermMatrix pi = PosProj(value);
      best.ub = std::min(best.ub, HsInner(pi.matrix(), value.matrix()).real());

      pi_sum += pi;
      const HermMatrix dual = inst.XiAdjoint(pi_sum * (1.0 / k));
      best.lb = std::max(best.lb, HermEig(dual).min());

      const HermMatrix response = MinEigenProjector(dual);
      rho_avg = (rho_avg * static_cast<double>(k) + response) * (1.0 / (k + 1));
    }
  }
  return best;
}

double FmaxEstimate(const ReducedInstance& inst, int restarts,
                    std::uint64_t seed) {
  RequireSmallInput(inst, "FmaxEstimate");
  const Index n = inst.input_dim();
  Rng rng(seed);

  auto objective = [&](const CMatrix& gs, const CMatrix& gz) {
    return 2.0 * Fidelity(inst.ArmA(NormalizedGram(gs)),
                          inst.ArmB(NormalizedGram(gz)));
  };

  constexpr int kRounds = 30;
  constexpr int kProposals = 8;
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    CMatrix gs = RandomGaussian(n, n, rng);
    CMatrix gz = RandomGaussian(n, n, rng);
    double current = objective(gs, gz);
    double step = 0.5;
    for (int round = 0; round < kRounds; ++round) {
      // Alternate: even rounds move sigma, odd rounds move zeta.
      CMatrix& g = (round % 2 == 0) ? gs : gz;
      for (int p = 0; p < kProposals; ++p) {
        const double scale = step * g.norm();
        const CMatrix candidate = g + scale * RandomGaussian(n, n, rng);
        const double value = (round % 2 == 0) ? objective(candidate, gz)
                                              : objective(gs, candidate);
        if (value > current) {
          current = value;
          g = candidate;
          step = std::min(1.0, step * 1.5);
        } else {
          step = std::max(1e-4, step * 0.8);
        }
      }
    }
    best = std::max(best, current);
  }
  return best;
}

}  // namespace qcdmmw
