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

#include "qcdmmw/estimator.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "qcdmmw/errors.h"

namespace qcdmmw {

namespace {

constexpr char kAmplificationNote[] =
    "promise gaps this narrow need gap amplification through an "
    "interactive-proof conversion, which is out of scope for this tool";

DiamondInterval Clip(double lo, double hi) {
  lo = std::clamp(lo, 0.0, 2.0);
  hi = std::clamp(hi, 0.0, 2.0);
  return DiamondInterval{std::min(lo, hi), hi};
}

}  // namespace

const char* DecisionName(Decision d) {
  switch (d) {
    case Decision::kFar:
      return "far";
    case Decision::kClose:
      return "close";
    case Decision::kUndecidable:
      return "undecidable";
  }
  return "unknown";
}

Decision ParseDecision(const std::string& name) {
  if (name == "far") return Decision::kFar;
  if (name == "close") return Decision::kClose;
  if (name == "undecidable") return Decision::kUndecidable;
  throw InputError(fmt::format("unknown decision '{}'", name));
}

bool operator==(const DiamondReport& x, const DiamondReport& y) {
  auto same_thresholds = [](const std::optional<PromiseThresholds>& p,
                            const std::optional<PromiseThresholds>& q) {
    if (p.has_value() != q.has_value()) return false;
    return !p || (p->upper_when_far == q->upper_when_far &&
                  p->lower_when_close == q->lower_when_close);
  };
  return x.lambda == y.lambda && x.delta == y.delta && x.delta1 == y.delta1 &&
         x.interval == y.interval &&
         x.certified_interval == y.certified_interval &&
         x.decision == y.decision && x.a == y.a && x.b == y.b &&
         same_thresholds(x.thresholds, y.thresholds) &&
         x.lower_cert == y.lower_cert && x.upper_cert == y.upper_cert &&
         x.iterations == y.iterations && x.game_dim == y.game_dim;
}

DiamondInterval IntervalFromLambda(double lambda, double delta_total) {
  const double clipped = std::clamp(lambda, 0.0, 1.0);
  const double slack = std::max(0.0, delta_total);
  const double lam_hi = std::min(1.0, clipped + slack);
  const double lam_lo = std::max(0.0, clipped - slack);
  return Clip(2.0 * (1.0 - lam_hi), 2.0 * std::sqrt(1.0 - lam_lo * lam_lo));
}

DiamondInterval IntervalFromCertificates(double lower_cert,
                                         double upper_cert) {
  const double lam_hi = std::clamp(upper_cert, 0.0, 1.0);
  const double lam_lo = std::clamp(lower_cert, 0.0, 1.0);
  return Clip(2.0 * (1.0 - lam_hi), 2.0 * std::sqrt(1.0 - lam_lo * lam_lo));
}

DiamondReport ReportFromResult(const EquilibriumResult& eq, Index game_dim) {
  DiamondReport report;
  report.lambda = eq.lambda;
  report.delta = eq.delta;
  report.delta1 = eq.delta1;
  report.interval = IntervalFromLambda(eq.lambda, eq.delta + eq.delta1);
  report.certified_interval =
      IntervalFromCertificates(eq.lower_cert, eq.upper_cert);
  report.lower_cert = eq.lower_cert;
  report.upper_cert = eq.upper_cert;
  report.iterations = eq.iterations;
  report.game_dim = static_cast<long>(game_dim);
  return report;
}

DiamondReport EstimateBounds(const ReducedInstance& inst,
                             const MMWConfig& cfg) {
  return ReportFromResult(SolveEquilibrium(inst, cfg), inst.game_dim());
}

void CheckDecisionGap(double a, double b, const MMWConfig& cfg) {
  const PromiseThresholds th = Thresholds(a, b);
  const double gap = th.lower_when_close - th.upper_when_far;
  const double needed = 2.0 * (cfg.delta + cfg.ResolvedDelta1());
  if (!(gap > needed)) {
    throw OutOfScopeError(fmt::format(
        "gap too small for direct decision: thresholds ({:.4f}, {:.4f}) are "
        "separated by {:.4f}, but precision delta + delta1 = {:.4f} needs "
        "more than {:.4f}; {}",
        th.upper_when_far, th.lower_when_close, gap,
        cfg.delta + cfg.ResolvedDelta1(), needed, kAmplificationNote));
  }
}

void CheckPdnCondition(double a, double b, const MMWConfig& cfg) {
  if (!(b >= 0.0 && b < a && a <= 2.0)) {
    throw InputError(fmt::format(
        "promise parameters must satisfy 0 <= b < a <= 2, got a = {}, b = {}",
        a, b));
  }
  const double condition = a * a - (4.0 * b - b * b);
  if (!(condition > 0.0)) {
    throw OutOfScopeError(fmt::format(
        "gap too small for direct decision: a^2 - (4b - b^2) = {:.4f} is not "
        "positive for a = {}, b = {}; {}",
        condition, a, b, kAmplificationNote));
  }
  CheckDecisionGap(a, b, cfg);
}

void ApplyDecision(DiamondReport& report, double a, double b) {
  const PromiseThresholds th = Thresholds(a, b);
  report.a = a;
  report.b = b;
  report.thresholds = th;
  const double to_far = std::abs(report.lambda - th.upper_when_far);
  const double to_close = std::abs(report.lambda - th.lower_when_close);
  if (to_far < to_close) {
    report.decision = Decision::kFar;
  } else if (to_close < to_far) {
    report.decision = Decision::kClose;
  } else {
    report.decision = Decision::kUndecidable;
  }
}

DiamondReport DecideQcd(const ReducedInstance& inst, double a, double b,
                        const MMWConfig& cfg) {
  CheckDecisionGap(a, b, cfg);
  DiamondReport report = EstimateBounds(inst, cfg);
  ApplyDecision(report, a, b);
  return report;
}

DiamondReport PdnDecide(const ChannelSpec& spec0, const ChannelSpec& spec1,
                        double a, double b, const MMWConfig& cfg) {
  CheckPdnCondition(a, b, cfg);
  const ReducedInstance inst =
      ReducedInstance::Build(Normalize(spec0), Normalize(spec1));
  return DecideQcd(inst, a, b, cfg);
}

}  // namespace qcdmmw
