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

// Reduction of a channel-distinguishability instance to an equilibrium
// value.
//
// Given channels Q0, Q1 with Stinespring isometries A0, A1 : X -> Y (x) Z,
// the two isometries
//
//   C0 = (A0; A1) / sqrt(2),   C1 = (A0; -A1) / sqrt(2)
//
// map X into Q (x) Y (x) Z with a qubit Q as the most significant factor,
// and satisfy tr_{Q,Z}(2 C0 X C1*) = Q0(X) - Q1(X). Their complementary
// channels Phi_A(X) = tr_Y(C0 X C0*), Phi_B(X) = tr_Y(C1 X C1*) take values
// on Q (x) Z. The game operator
//
//   Xi(rho) = Phi_A(tr_{X1} rho) - Phi_B(tr_{X0} rho),  rho on X0 (x) X1,
//
// has equilibrium value
//
//   lambda = min_rho max_{0 <= Pi <= I} <Pi, Xi(rho)>
//          = min_rho (1/2) ||Xi(rho)||_1,
//
// which is <= sqrt(4 - a^2)/2 when ||Q0 - Q1||_diamond >= a and
// >= (2 - b)/2 when ||Q0 - Q1||_diamond <= b.

#ifndef QCDMMW_REDUCTION_H_
#define QCDMMW_REDUCTION_H_

#include <utility>

#include "qcdmmw/channels.h"
#include "qcdmmw/linalg.h"

namespace qcdmmw {

class ReducedInstance {
 public:
  // Pads the environments to a common size and builds C0, C1. Throws
  // InputError if the channels disagree on input or output dimension, and
  // ValidationError if a constructor invariant fails.
  static ReducedInstance Build(const StinespringChannel& ch0,
                               const StinespringChannel& ch1);

  const CMatrix& c0() const { return c0_; }
  const CMatrix& c1() const { return c1_; }
  Index input_dim() const { return n_; }    // dim X
  Index output_dim() const { return m_; }   // dim Y
  Index env_dim() const { return z_; }      // dim Z (after padding)
  Index game_dim() const { return n_ * n_; }  // dim X0 (x) X1
  Index value_dim() const { return 2 * z_; }  // dim Q (x) Z

  const StinespringChannel& channel0() const { return ch0_; }
  const StinespringChannel& channel1() const { return ch1_; }

  // Phi_A(x) = tr_Y(C0 x C0*) and Phi_B(x) = tr_Y(C1 x C1*) for x on X.
  HermMatrix ArmA(const HermMatrix& x) const;
  HermMatrix ArmB(const HermMatrix& x) const;

  // Phi_A*(Pi) = C0* (I_Y (x) Pi) C0, likewise for B. Pi on Q (x) Z.
  HermMatrix ArmAAdjoint(const HermMatrix& pi) const;
  HermMatrix ArmBAdjoint(const HermMatrix& pi) const;

  // Xi(rho) for rho on X0 (x) X1. InputError on a dimension mismatch.
  HermMatrix XiApply(const HermMatrix& rho) const;

  // Xi*(Pi) = Phi_A*(Pi) (x) I - I (x) Phi_B*(Pi). InputError unless
  // 0 <= Pi <= I within kPsdTol.
  HermMatrix XiAdjoint(const HermMatrix& pi) const;

  // max_E ||tr_{Q,Z}(2 C0 E C1*) - (Q0(E) - Q1(E))||_F over the matrix
  // units E = |i><j| of L(X).
  double DecompositionResidual() const;

  // max(||C0* C0 - I||_F, ||C1* C1 - I||_F).
  double IsometryResidual() const;

 private:
  ReducedInstance(StinespringChannel ch0, StinespringChannel ch1);

  HermMatrix Arm(const CMatrix& c, const HermMatrix& x) const;
  HermMatrix ArmAdjoint(const CMatrix& c, const HermMatrix& pi) const;

  StinespringChannel ch0_;
  StinespringChannel ch1_;
  Index n_;
  Index m_;
  Index z_;
  CMatrix c0_;
  CMatrix c1_;
};

struct PromiseThresholds {
  // lambda <= upper_when_far whenever the diamond distance is >= a.
  double upper_when_far;
  // lambda >= lower_when_close whenever the diamond distance is <= b.
  double lower_when_close;
};

// (sqrt(4 - a^2) / 2, (2 - b) / 2). InputError unless 0 <= b < a <= 2.
PromiseThresholds Thresholds(double a, double b);

}  // namespace qcdmmw

#endif  // QCDMMW_REDUCTION_H_
