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

#include "qcdmmw/linalg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "qcdmmw/errors.h"

namespace qcdmmw {

namespace {

constexpr double kMachineEps = std::numeric_limits<double>::epsilon();

void RequireSquare(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw InputError(fmt::format("{}: expected a square matrix, got {}x{}",
                                 what, m.rows(), m.cols()));
  }
}

}  // namespace

// Backward error of order dim * eps * ||H|| in the decomposition, amplified
// by at most exp(lambda_max).
double ExpRoundingBound(const EigDecomp& eig) {
  const auto dim = static_cast<double>(eig.eigenvalues.size());
  const double scale =
      std::max(1.0, std::max(std::abs(eig.max()), std::abs(eig.min())));
  return 8.0 * dim * kMachineEps * scale * std::exp(eig.max());
}

bool AllFinite(const CMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

double HermiticityResidual(const CMatrix& m) {
  return (m - m.adjoint()).norm();
}

HermMatrix::HermMatrix(const CMatrix& m, double tol) {
  RequireSquare(m, "HermMatrix");
  if (!AllFinite(m)) {
    throw InputError("HermMatrix: matrix has non-finite entries");
  }
  const double residual = HermiticityResidual(m);
  if (residual > tol) {
    throw InputError(fmt::format(
        "HermMatrix: ||H - H*||_F = {:.3e} exceeds tolerance {:.3e}",
        residual, tol));
  }
  matrix_ = (m + m.adjoint()) * 0.5;
}

HermMatrix HermMatrix::Zero(Index dim) {
  return HermMatrix(CMatrix::Zero(dim, dim), Trusted{});
}

HermMatrix HermMatrix::Identity(Index dim) {
  return HermMatrix(CMatrix::Identity(dim, dim), Trusted{});
}

HermMatrix HermMatrix::Diagonal(const RVector& diag) {
  CMatrix m = CMatrix::Zero(diag.size(), diag.size());
  for (Index i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
  return HermMatrix(std::move(m), Trusted{});
}

HermMatrix HermMatrix::operator+(const HermMatrix& other) const {
  return HermMatrix(CMatrix(matrix_ + other.matrix_), Trusted{});
}

HermMatrix HermMatrix::operator-(const HermMatrix& other) const {
  return HermMatrix(CMatrix(matrix_ - other.matrix_), Trusted{});
}

HermMatrix HermMatrix::operator*(double s) const {
  return HermMatrix(CMatrix(matrix_ * s), Trusted{});
}

HermMatrix& HermMatrix::operator+=(const HermMatrix& other) {
  matrix_ += other.matrix_;
  return *this;
}

EigDecomp HermEig(const HermMatrix& h) {
  const Index dim = h.dim();
  if (dim == 0) return EigDecomp{RVector(0), CMatrix(0, 0)};

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError(fmt::format(
        "Hermitian eigensolver did not converge on a {}x{} matrix", dim,
        dim));
  }

  // Eigen sorts ascending; reverse to non-increasing order.
  EigDecomp out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();

  const double tol =
      kEigTol * static_cast<double>(dim) * std::max(1.0, h.matrix().norm());
  const CMatrix& u = out.eigenvectors;
  const double recon =
      (h.matrix() - u * out.eigenvalues.asDiagonal() * u.adjoint()).norm();
  const double unit =
      (u.adjoint() * u - CMatrix::Identity(dim, dim)).norm();
  if (!(recon <= tol) || !(unit <= tol)) {
    throw NumericalError(fmt::format(
        "Hermitian eigendecomposition of a {}x{} matrix failed its residual "
        "check (reconstruction {:.3e}, unitarity {:.3e}, tolerance {:.3e})",
        dim, dim, recon, unit, tol));
  }
  return out;
}

HermMatrix SpectralFunction(const EigDecomp& eig,
                            const std::function<double(double)>& f) {
  RVector values(eig.eigenvalues.size());
  for (Index i = 0; i < values.size(); ++i) values(i) = f(eig.eigenvalues(i));
  const CMatrix& u = eig.eigenvectors;
  CMatrix m = u * values.asDiagonal() * u.adjoint();
  return HermMatrix(m, std::numeric_limits<double>::infinity());
}

HermMatrix MatExpHermitian(const HermMatrix& h, double eta) {
  if (h.dim() == 0) return h;
  const EigDecomp eig = HermEig(h);
  const double bound = ExpRoundingBound(eig);
  if (bound > eta) {
    throw NumericalError(fmt::format(
        "matrix exponential of a {}x{} matrix: rounding bound {:.3e} exceeds "
        "budget {:.3e} (largest eigenvalue {:.6g})",
        h.dim(), h.dim(), bound, eta, eig.max()));
  }
  return SpectralFunction(eig, [](double x) { return std::exp(x); });
}

HermMatrix PosProj(const HermMatrix& h, double eta) {
  if (h.dim() == 0) return h;
  const EigDecomp eig = HermEig(h);
  HermMatrix proj =
      SpectralFunction(eig, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
  const CMatrix& d = proj.matrix();
  const double idem = (d * d - d).norm();
  if (idem > eta) {
    throw NumericalError(fmt::format(
        "positive-eigenspace projection of a {}x{} matrix: idempotence "
        "residual {:.3e} exceeds budget {:.3e}",
        h.dim(), h.dim(), idem, eta));
  }
  return proj;
}

double TraceNorm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues().sum();
}

double OperatorNorm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

HermMatrix PsdSqrt(const HermMatrix& p, double psd_tol) {
  if (p.dim() == 0) return p;
  const EigDecomp eig = HermEig(p);
  if (eig.min() < -psd_tol) {
    throw InputError(fmt::format(
        "expected a positive semidefinite matrix; smallest eigenvalue "
        "{:.3e} is below -{:.1e}",
        eig.min(), psd_tol));
  }
  return SpectralFunction(
      eig, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

double Fidelity(const HermMatrix& p, const HermMatrix& q, double psd_tol) {
  if (p.dim() != q.dim()) {
    throw InputError(fmt::format("Fidelity: dimension mismatch {} vs {}",
                                 p.dim(), q.dim()));
  }
  const HermMatrix sp = PsdSqrt(p, psd_tol);
  const HermMatrix sq = PsdSqrt(q, psd_tol);
  return TraceNorm(sp.matrix() * sq.matrix());
}

CMatrix PartialTrace(const CMatrix& m, std::span<const Index> dims,
                     std::span<const Index> keep) {
  RequireSquare(m, "PartialTrace");
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw InputError("PartialTrace: factor dimensions must be > 0");
    total *= d;
  }
  if (total != m.rows()) {
    throw InputError(fmt::format(
        "PartialTrace: product of factor dimensions {} does not match side "
        "length {}",
        total, m.rows()));
  }
  const auto nf = static_cast<Index>(dims.size());
  std::vector<bool> kept(nf, false);
  Index prev = -1;
  for (Index k : keep) {
    if (k <= prev || k >= nf) {
      throw InputError(
          "PartialTrace: keep must list distinct factor positions in "
          "increasing order");
    }
    kept[k] = true;
    prev = k;
  }

  // stride[f] = product of dims to the right of f.
  std::vector<Index> stride(nf, 1);
  for (Index f = nf - 2; f >= 0; --f) stride[f] = stride[f + 1] * dims[f + 1];

  // Offsets of every kept / traced multi-index into the flat index.
  auto offsets = [&](bool want_kept) {
    std::vector<Index> out{0};
    for (Index f = 0; f < nf; ++f) {
      if (kept[f] != want_kept) continue;
      std::vector<Index> next;
      next.reserve(out.size() * dims[f]);
      for (Index base : out) {
        for (Index digit = 0; digit < dims[f]; ++digit) {
          next.push_back(base + digit * stride[f]);
        }
      }
      out = std::move(next);
    }
    return out;
  };
  const std::vector<Index> keep_off = offsets(true);
  const std::vector<Index> trace_off = offsets(false);

  const auto out_dim = static_cast<Index>(keep_off.size());
  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (Index i = 0; i < out_dim; ++i) {
    for (Index j = 0; j < out_dim; ++j) {
      Complex acc = 0.0;
      for (Index t : trace_off) acc += m(keep_off[i] + t, keep_off[j] + t);
      out(i, j) = acc;
    }
  }
  return out;
}

Complex HsInner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InputError(fmt::format(
        "HsInner: shape mismatch {}x{} vs {}x{}", a.rows(), a.cols(),
        b.rows(), b.cols()));
  }
  return a.conjugate().cwiseProduct(b).sum();
}

CMatrix Kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermMatrix MinEigenProjector(const HermMatrix& h) {
  const EigDecomp eig = HermEig(h);
  const CVector v = eig.eigenvectors.col(h.dim() - 1);
  return HermMatrix(CMatrix(v * v.adjoint()));
}

}  // namespace qcdmmw
