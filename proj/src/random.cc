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

#include "qcdmmw/random.h"

#include <cmath>

#include "qcdmmw/errors.h"

namespace qcdmmw {

CMatrix RandomGaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

CVector RandomPureState(Index dim, Rng& rng) {
  CVector v = RandomGaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

HermMatrix RandomDensity(Index dim, Rng& rng, Index rank) {
  if (rank <= 0) rank = dim;
  const CMatrix g = RandomGaussian(dim, rank, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermMatrix(rho);
}

CMatrix RandomUnitary(Index dim, Rng& rng) {
  const CMatrix g = RandomGaussian(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CMatrix RandomIsometry(Index rows, Index cols, Rng& rng) {
  if (rows < cols) {
    throw InputError("RandomIsometry: need rows >= cols");
  }
  return RandomUnitary(rows, rng).leftCols(cols);
}

HermMatrix RandomEffect(Index dim, Rng& rng) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  RVector diag(dim);
  for (Index i = 0; i < dim; ++i) diag(i) = uniform(rng);
  const CMatrix u = RandomUnitary(dim, rng);
  return HermMatrix(CMatrix(u * diag.asDiagonal() * u.adjoint()));
}

}  // namespace qcdmmw
