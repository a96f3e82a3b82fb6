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

#include "qcdmmw/reduction.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qcdmmw/errors.h"

namespace qcdmmw {

namespace {

constexpr double kInstanceTol = 1e-9;

}  // namespace

ReducedInstance::ReducedInstance(StinespringChannel ch0,
                                 StinespringChannel ch1)
    : ch0_(std::move(ch0)),
      ch1_(std::move(ch1)),
      n_(ch0_.input_dim()),
      m_(ch0_.output_dim()),
      z_(ch0_.env_dim()) {
  const CMatrix& a0 = ch0_.isometry();
  const CMatrix& a1 = ch1_.isometry();
  const Index rows = m_ * z_;
  const double s = 1.0 / std::sqrt(2.0);
  c0_.resize(2 * rows, n_);
  c1_.resize(2 * rows, n_);
  c0_.topRows(rows) = s * a0;
  c0_.bottomRows(rows) = s * a1;
  c1_.topRows(rows) = s * a0;
  c1_.bottomRows(rows) = -s * a1;
}

ReducedInstance ReducedInstance::Build(const StinespringChannel& ch0,
                                       const StinespringChannel& ch1) {
  if (ch0.input_dim() != ch1.input_dim() ||
      ch0.output_dim() != ch1.output_dim()) {
    throw InputError(fmt::format(
        "channel dimensions differ: ({} -> {}) vs ({} -> {})",
        ch0.input_dim(), ch0.output_dim(), ch1.input_dim(),
        ch1.output_dim()));
  }
  const Index z = std::max(ch0.env_dim(), ch1.env_dim());
  ReducedInstance inst(ch0.PadEnvironment(z), ch1.PadEnvironment(z));

  const double iso = inst.IsometryResidual();
  if (iso > kInstanceTol) {
    throw ValidationError(
        "isometry", iso,
        fmt::format("reduced instance: isometry residual {:.3e} exceeds "
                    "{:.1e}",
                    iso, kInstanceTol));
  }
  const double dec = inst.DecompositionResidual();
  if (dec > kInstanceTol) {
    throw ValidationError(
        "decomposition", dec,
        fmt::format("reduced instance: decomposition residual {:.3e} exceeds "
                    "{:.1e}",
                    dec, kInstanceTol));
  }
  return inst;
}

HermMatrix ReducedInstance::Arm(const CMatrix& c, const HermMatrix& x) const {
  if (x.dim() != n_) {
    throw InputError(fmt::format(
        "arm input must be {}-dimensional, got {}", n_, x.dim()));
  }
  const CMatrix full = c * x.matrix() * c.adjoint();
  const Index dims[] = {2, m_, z_};
  const Index keep[] = {0, 2};
  return HermMatrix(PartialTrace(full, dims, keep));
}

HermMatrix ReducedInstance::ArmAdjoint(const CMatrix& c,
                                       const HermMatrix& pi) const {
  if (pi.dim() != value_dim()) {
    throw InputError(fmt::format(
        "effect operator must be {}-dimensional, got {}", value_dim(),
        pi.dim()));
  }
  // Rows of C are indexed (q, y, k); I_Y (x) Pi couples (q, y, k) with
  // (q', y, k').
  const Index rows = 2 * m_ * z_;
  CMatrix lifted = CMatrix::Zero(rows, rows);
  for (Index q = 0; q < 2; ++q) {
    for (Index qp = 0; qp < 2; ++qp) {
      for (Index y = 0; y < m_; ++y) {
        lifted.block((q * m_ + y) * z_, (qp * m_ + y) * z_, z_, z_) =
            pi.matrix().block(q * z_, qp * z_, z_, z_);
      }
    }
  }
  return HermMatrix(CMatrix(c.adjoint() * lifted * c));
}

HermMatrix ReducedInstance::ArmA(const HermMatrix& x) const {
  return Arm(c0_, x);
}

HermMatrix ReducedInstance::ArmB(const HermMatrix& x) const {
  return Arm(c1_, x);
}

HermMatrix ReducedInstance::ArmAAdjoint(const HermMatrix& pi) const {
  return ArmAdjoint(c0_, pi);
}

HermMatrix ReducedInstance::ArmBAdjoint(const HermMatrix& pi) const {
  return ArmAdjoint(c1_, pi);
}

HermMatrix ReducedInstance::XiApply(const HermMatrix& rho) const {
  if (rho.dim() != game_dim()) {
    throw InputError(fmt::format(
        "Xi: input must be {}-dimensional (X0 (x) X1), got {}", game_dim(),
        rho.dim()));
  }
  const Index dims[] = {n_, n_};
  const Index keep_first[] = {0};
  const Index keep_second[] = {1};
  const HermMatrix first(PartialTrace(rho.matrix(), dims, keep_first));
  const HermMatrix second(PartialTrace(rho.matrix(), dims, keep_second));
  return ArmA(first) - ArmB(second);
}

HermMatrix ReducedInstance::XiAdjoint(const HermMatrix& pi) const {
  if (pi.dim() != value_dim()) {
    throw InputError(fmt::format(
        "Xi*: effect operator must be {}-dimensional, got {}", value_dim(),
        pi.dim()));
  }
  const EigDecomp eig = HermEig(pi);
  if (eig.min() < -kPsdTol || eig.max() > 1.0 + kPsdTol) {
    throw InputError(fmt::format(
        "Xi*: effect operator must satisfy 0 <= Pi <= I; eigenvalues span "
        "[{:.3e}, {:.6g}]",
        eig.min(), eig.max()));
  }
  const CMatrix id = CMatrix::Identity(n_, n_);
  const CMatrix out = Kron(ArmAAdjoint(pi).matrix(), id) -
                      Kron(id, ArmBAdjoint(pi).matrix());
  return HermMatrix(out);
}

double ReducedInstance::DecompositionResidual() const {
  const Index dims[] = {2, m_, z_};
  const Index keep_y[] = {1};
  double worst = 0.0;
  for (Index i = 0; i < n_; ++i) {
    for (Index j = 0; j < n_; ++j) {
      CMatrix e = CMatrix::Zero(n_, n_);
      e(i, j) = 1.0;
      const CMatrix lhs =
          PartialTrace(CMatrix(2.0 * c0_ * e * c1_.adjoint()), dims, keep_y);
      const CMatrix rhs = ch0_.ApplyOperator(e) - ch1_.ApplyOperator(e);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  return worst;
}

double ReducedInstance::IsometryResidual() const {
  return std::max(CheckIsometry(c0_), CheckIsometry(c1_));
}

PromiseThresholds Thresholds(double a, double b) {
  if (!(b >= 0.0 && b < a && a <= 2.0)) {
    throw InputError(fmt::format(
        "promise parameters must satisfy 0 <= b < a <= 2, got a = {}, b = {}",
        a, b));
  }
  return PromiseThresholds{std::sqrt(4.0 - a * a) / 2.0, (2.0 - b) / 2.0};
}

}  // namespace qcdmmw
