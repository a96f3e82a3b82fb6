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

// Dense complex-matrix kernels.
//
// Tensor index convention (used everywhere in this library): for a space
// A (x) B (x) C with dimensions (a, b, c), the basis vector |i>|j>|k> has
// flattened index (i * b + j) * c + k, i.e. the leftmost factor is the most
// significant digit. Kron(A, B) follows the same convention.

#ifndef QCDMMW_LINALG_H_
#define QCDMMW_LINALG_H_

#include <complex>
#include <functional>
#include <span>

#include <Eigen/Dense>

namespace qcdmmw {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Default tolerances. All are absolute and sized for desk-scale dimensions.
inline constexpr double kHermTol = 1e-9;     // ||H - H*||_F at construction
inline constexpr double kPsdTol = 1e-9;      // admissible negative eigenvalue
inline constexpr double kEigGapTol = 1e-8;   // "numerically zero" eigenvalue
inline constexpr double kEigTol = 1e-12;     // per-dimension reconstruction
inline constexpr double kDefaultEta = 1e-10; // exp / projection budget

// A complex matrix that is Hermitian within kHermTol. The stored matrix is
// exactly Hermitian: the constructor replaces H by (H + H*) / 2.
class HermMatrix {
 public:
  HermMatrix() = default;

  // Throws InputError if `m` is not square, has non-finite entries, or
  // deviates from Hermitian by more than `tol` in Frobenius norm.
  explicit HermMatrix(const CMatrix& m, double tol = kHermTol);

  static HermMatrix Zero(Index dim);
  static HermMatrix Identity(Index dim);
  static HermMatrix Diagonal(const RVector& diag);

  Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }

  HermMatrix operator+(const HermMatrix& other) const;
  HermMatrix operator-(const HermMatrix& other) const;
  HermMatrix operator*(double s) const;
  HermMatrix& operator+=(const HermMatrix& other);

 private:
  struct Trusted {};
  HermMatrix(CMatrix m, Trusted) : matrix_(std::move(m)) {}

  CMatrix matrix_;
};

// Spectral decomposition H = U diag(eigenvalues) U*, eigenvalues sorted
// non-increasingly.
struct EigDecomp {
  RVector eigenvalues;
  CMatrix eigenvectors;

  double max() const { return eigenvalues(0); }
  double min() const { return eigenvalues(eigenvalues.size() - 1); }
};

// Throws NumericalError (naming the dimension) if the eigensolver does not
// converge or the reconstruction / unitarity residuals exceed
// kEigTol * dim * max(1, ||H||_F).
EigDecomp HermEig(const HermMatrix& h);

// U f(diag) U* for a real function f.
HermMatrix SpectralFunction(const EigDecomp& eig,
                            const std::function<double(double)>& f);

// A-priori bound on ||U exp(diag) U* - exp(H)|| for the eigenvalue route.
double ExpRoundingBound(const EigDecomp& eig);

// exp(H). The a-priori rounding bound of the eigenvalue route is compared
// against `eta`; NumericalError if it cannot be met.
HermMatrix MatExpHermitian(const HermMatrix& h, double eta = kDefaultEta);

// Orthogonal projector onto the span of eigenvectors of H with strictly
// positive eigenvalue. NumericalError if the realized idempotence residual
// exceeds `eta`.
HermMatrix PosProj(const HermMatrix& h, double eta = kDefaultEta);

// Sum of singular values.
double TraceNorm(const CMatrix& a);

// Largest singular value.
double OperatorNorm(const CMatrix& a);

// ||sqrt(P) sqrt(Q)||_1 for positive semidefinite P, Q. Eigenvalues in
// [-psd_tol, 0) are clipped to zero; anything more negative is an
// InputError.
double Fidelity(const HermMatrix& p, const HermMatrix& q,
                double psd_tol = kPsdTol);

// Principal square root of a PSD matrix (same clipping rule as Fidelity).
HermMatrix PsdSqrt(const HermMatrix& p, double psd_tol = kPsdTol);

// Traces out every factor not listed in `keep`. `dims` lists the factor
// dimensions (leftmost most significant); `keep` lists factor positions in
// increasing order. The result lives on the kept factors in their original
// order.
CMatrix PartialTrace(const CMatrix& m, std::span<const Index> dims,
                     std::span<const Index> keep);

// tr(A* B).
Complex HsInner(const CMatrix& a, const CMatrix& b);

// Tensor product A (x) B.
CMatrix Kron(const CMatrix& a, const CMatrix& b);

// Orthogonal projector onto an eigenvector of the smallest eigenvalue.
HermMatrix MinEigenProjector(const HermMatrix& h);

// Frobenius norm of H - H*.
double HermiticityResidual(const CMatrix& m);

bool AllFinite(const CMatrix& m);

}  // namespace qcdmmw

#endif  // QCDMMW_LINALG_H_
