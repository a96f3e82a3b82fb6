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

// From equilibrium values to diamond-norm answers.
//
// With D(rho) = (1/2) ||Xi(rho)||_1 and lambda = min_rho D(rho), the
// Fuchs-van de Graaf inequalities give
//
//   2 (1 - lambda) <= ||Q0 - Q1||_diamond <= 2 sqrt(1 - lambda^2).

#ifndef QCDMMW_ESTIMATOR_H_
#define QCDMMW_ESTIMATOR_H_

#include <optional>
#include <string>

#include "qcdmmw/channels.h"
#include "qcdmmw/mmw_solver.h"
#include "qcdmmw/reduction.h"

namespace qcdmmw {

enum class Decision { kFar, kClose, kUndecidable };

const char* DecisionName(Decision d);
Decision ParseDecision(const std::string& name);

struct DiamondInterval {
  double lo = 0.0;
  double hi = 2.0;

  bool Contains(double x, double tol = 0.0) const {
    return x >= lo - tol && x <= hi + tol;
  }
  bool operator==(const DiamondInterval&) const = default;
};

struct DiamondReport {
  double lambda = 0.0;
  double delta = 0.0;
  double delta1 = 0.0;
  // Interval from lambda +/- (delta + delta1).
  DiamondInterval interval;
  // Interval from the solver's certificates alone.
  DiamondInterval certified_interval;
  std::optional<Decision> decision;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<PromiseThresholds> thresholds;
  double lower_cert = 0.0;
  double upper_cert = 0.0;
  long iterations = 0;
  long game_dim = 0;

  double delta_total() const { return delta + delta1; }
};

bool operator==(const DiamondReport& x, const DiamondReport& y);

// lo = 2 (1 - min(1, lambda + delta_total)),
// hi = 2 sqrt(1 - max(0, lambda - delta_total)^2), with lambda clipped to
// [0, 1] first.
DiamondInterval IntervalFromLambda(double lambda, double delta_total);

// Interval implied by lower_cert <= lambda* <= upper_cert.
DiamondInterval IntervalFromCertificates(double lower_cert,
                                         double upper_cert);

// Report skeleton (lambda, certificates, both intervals) for a finished
// solver run.
DiamondReport ReportFromResult(const EquilibriumResult& eq, Index game_dim);

// Solves the instance and fills lambda, certificates and both intervals.
DiamondReport EstimateBounds(const ReducedInstance& inst,
                             const MMWConfig& cfg);

// Throws OutOfScopeError unless (2 - b)/2 - sqrt(4 - a^2)/2 exceeds
// 2 (delta + delta1); InputError unless 0 <= b < a <= 2.
void CheckDecisionGap(double a, double b, const MMWConfig& cfg);

// Checks both refusal conditions of PdnDecide without solving anything.
void CheckPdnCondition(double a, double b, const MMWConfig& cfg);

// Sets a, b, thresholds and the decision on `report`: far iff lambda is
// strictly closer to sqrt(4 - a^2)/2 than to (2 - b)/2, undecidable on an
// exact tie.
void ApplyDecision(DiamondReport& report, double a, double b);

// Decides ||Q0 - Q1||_diamond >= a (far) versus <= b (close) after
// CheckDecisionGap.
DiamondReport DecideQcd(const ReducedInstance& inst, double a, double b,
                        const MMWConfig& cfg);

// Direct promise solver on raw channel descriptions. Refuses with
// OutOfScopeError when a^2 - (4b - b^2) <= 0 or when the threshold gap is
// too small for the configured precision.
DiamondReport PdnDecide(const ChannelSpec& spec0, const ChannelSpec& spec1,
                        double a, double b, const MMWConfig& cfg);

}  // namespace qcdmmw

#endif  // QCDMMW_ESTIMATOR_H_
