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

// Reference computations that do not go through the MMW solver.
//
// Two are exact (unitary and constant channel pairs); the rest are one-sided
// bounds whose direction is part of their contract.

#ifndef QCDMMW_ORACLES_H_
#define QCDMMW_ORACLES_H_

#include <cstdint>
#include <span>

#include "qcdmmw/channels.h"
#include "qcdmmw/linalg.h"
#include "qcdmmw/reduction.h"

namespace qcdmmw {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Euclidean distance from the origin to the convex hull of `points`
// (0 if the hull contains the origin). InputError on an empty set.
double HullDistanceFromOrigin(std::span<const Point2> points);

// ||U . U* - V . V*||_diamond = 2 sqrt(1 - d^2), d the distance from 0 to
// the convex hull of the eigenvalues of U* V. InputError unless U and V are
// unitary of equal size.
double UnitaryDiamond(const CMatrix& u, const CMatrix& v);

// Diamond distance of two constant channels: ||sigma0 - sigma1||_1.
double ConstantDiamond(const HermMatrix& sigma0, const HermMatrix& sigma1);

// max over `trials` random pure states psi on X (x) X' of
// ||((Q0 - Q1) (x) id)(psi psi*)||_1. Always a lower bound.
double DiamondLowerSearch(const StinespringChannel& ch0,
                          const StinespringChannel& ch1, int trials,
                          std::uint64_t seed);

struct Sandwich {
  double lb = 0.0;
  double ub = 1.0;

  double width() const { return ub - lb; }
  double midpoint() const { return 0.5 * (lb + ub); }
};

// Brackets the equilibrium value with fictitious play: each restart starts
// from a random density and alternates best responses against the running
// averages of the opponent. Every ub candidate is max_Pi <Pi, Xi(rho)> for
// a density rho and every lb candidate is lambda_min(Xi*(Pi)) for an
// effect Pi, so lb <= lambda <= ub always. InputError when dim X > 3.
Sandwich NaiveEquilibrium(const ReducedInstance& inst, int restarts,
                          std::uint64_t seed, int steps_per_restart = 400);

// Local ascent of 2 F(Phi_A(sigma), Phi_B(zeta)) over pairs of densities,
// alternating between the two arguments, with random restarts. A lower
// bound on the diamond norm. InputError when dim X > 3.
double FmaxEstimate(const ReducedInstance& inst, int restarts,
                    std::uint64_t seed);

}  // namespace qcdmmw

#endif  // QCDMMW_ORACLES_H_
