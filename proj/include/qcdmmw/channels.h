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

// Quantum channel data model.
//
// Every channel is normalized to a Stinespring isometry A : X -> Y (x) Z so
// that the channel acts as rho -> tr_Z(A rho A*). Y is the most significant
// tensor factor of A's row index: row = y * env_dim + k.

#ifndef QCDMMW_CHANNELS_H_
#define QCDMMW_CHANNELS_H_

#include <span>
#include <string>
#include <vector>

#include "qcdmmw/linalg.h"

namespace qcdmmw {

// Default tolerance for isometry / completeness / unitarity / density
// checks on channel descriptions.
inline constexpr double kIsoTol = 1e-8;

enum class ChannelKind { kStinespring, kKraus, kUnitary, kConstant };

const char* ChannelKindName(ChannelKind kind);
// Throws InputError on an unknown name.
ChannelKind ParseChannelKind(const std::string& name);

// A channel as described by the user. `matrices` holds, per kind:
//   stinespring: one (output_dim * env_dim) x input_dim isometry
//   kraus:       output_dim x input_dim Kraus operators
//   unitary:     one n x n unitary (input_dim == output_dim == n)
//   constant:    one output_dim x output_dim density (the fixed output)
struct ChannelSpec {
  ChannelKind kind = ChannelKind::kUnitary;
  Index input_dim = 0;
  Index output_dim = 0;
  Index env_dim = 0;  // stinespring only; 0 means "infer from the shape"
  std::vector<CMatrix> matrices;
};

// Checks the per-kind invariants. Throws ValidationError naming the failed
// check and its residual.
void ValidateChannelSpec(const ChannelSpec& spec, double iso_tol = kIsoTol);

// ||A* A - I||_F.
double CheckIsometry(const CMatrix& a);

class StinespringChannel {
 public:
  // Throws ValidationError if `isometry` is not (output_dim * env_dim) x
  // input_dim or fails the isometry check.
  StinespringChannel(CMatrix isometry, Index input_dim, Index output_dim,
                     Index env_dim, double iso_tol = kIsoTol);

  const CMatrix& isometry() const { return isometry_; }
  Index input_dim() const { return input_dim_; }
  Index output_dim() const { return output_dim_; }
  Index env_dim() const { return env_dim_; }

  // tr_Z(A X A*) for any operator X on the input space (not only densities).
  CMatrix ApplyOperator(const CMatrix& x) const;

  // The same channel with the environment enlarged to `env_dim` by zero
  // rows. Requires env_dim >= this->env_dim().
  StinespringChannel PadEnvironment(Index env_dim) const;

 private:
  CMatrix isometry_;
  Index input_dim_;
  Index output_dim_;
  Index env_dim_;
};

// Validates `spec` and builds its Stinespring form:
//   unitary U   -> A = U, env_dim 1
//   kraus {K_i} -> A = sum_i K_i (x) |i>_Z, env_dim = number of operators
//   constant s  -> A|x> = sum_j sqrt(l_j) |v_j>_Y |j>_Z1 |x>_Z2 with
//                  s = sum_j l_j |v_j><v_j|, Z = Z1 (x) Z2
StinespringChannel Normalize(const ChannelSpec& spec,
                             double iso_tol = kIsoTol);

// Applies the channel to a density operator. Throws InputError on a
// dimension mismatch or if rho is not a density within kPsdTol.
HermMatrix Apply(const StinespringChannel& ch, const HermMatrix& rho);

// Direct Kraus-sum action sum_i K_i X K_i*, used to cross-check Normalize.
CMatrix ApplyKraus(std::span<const CMatrix> kraus, const CMatrix& x);

// A unitary gate acting on the listed qubit wires. The first listed wire is
// the most significant qubit of the gate matrix.
struct Gate {
  CMatrix unitary;
  std::vector<int> wires;
};

// Compiles a qubit circuit into a Stinespring isometry. Wires
// [0, input_wires) carry the input, wires [input_wires, input_wires +
// ancilla_count) start in |0>. Gates are applied in list order. Wires in
// `traced_wires` form the environment Z; the remaining wires form Y. Within
// Y and Z wires keep their relative order.
StinespringChannel CircuitToStinespring(std::span<const Gate> gates,
                                        int input_wires, int ancilla_count,
                                        std::span<const int> traced_wires,
                                        double iso_tol = kIsoTol);

// Embeds a gate acting on `wires` into the full unitary on `num_wires`
// qubits.
CMatrix EmbedGate(const Gate& gate, int num_wires);

}  // namespace qcdmmw

#endif  // QCDMMW_CHANNELS_H_
