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

// Seeded samplers for states, effects and isometries. Used by the oracles
// and by the test suites; all draws go through one std::mt19937_64.

#ifndef QCDMMW_RANDOM_H_
#define QCDMMW_RANDOM_H_

#include <cstdint>
#include <random>

#include "qcdmmw/linalg.h"

namespace qcdmmw {

using Rng = std::mt19937_64;

// Entries i.i.d. standard complex Gaussian.
CMatrix RandomGaussian(Index rows, Index cols, Rng& rng);

// Unit vector drawn from the unitarily invariant measure.
CVector RandomPureState(Index dim, Rng& rng);

// G G* / tr(G G*) with G a dim x rank Gaussian matrix (rank = dim gives the
// Hilbert-Schmidt measure).
HermMatrix RandomDensity(Index dim, Rng& rng, Index rank = 0);

// Haar-random unitary (QR of a Gaussian matrix with phase correction).
CMatrix RandomUnitary(Index dim, Rng& rng);

// rows x cols isometry, rows >= cols: the first cols columns of a Haar
// unitary.
CMatrix RandomIsometry(Index rows, Index cols, Rng& rng);

// Random operator 0 <= Pi <= I: Haar-rotated diagonal of uniform [0,1]
// eigenvalues.
HermMatrix RandomEffect(Index dim, Rng& rng);

}  // namespace qcdmmw

#endif  // QCDMMW_RANDOM_H_
