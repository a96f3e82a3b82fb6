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

#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "qcdmmw/errors.h"
#include "qcdmmw/random.h"

namespace qcdmmw {
namespace {

using C = Complex;

CMatrix Diag(std::initializer_list<double> values) {
  RVector d(static_cast<Index>(values.size()));
  Index i = 0;
  for (double v : values) d(i++) = v;
  return d.cast<C>().asDiagonal();
}

CMatrix PauliX() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix PauliZ() { return Diag({1, -1}); }

HermMatrix Ket0() { return HermMatrix(Diag({1, 0})); }
HermMatrix Ket1() { return HermMatrix(Diag({0, 1})); }
HermMatrix Mixed2() { return HermMatrix::Identity(2) * 0.5; }

// 0 <= H <= I with random eigenbasis.
HermMatrix RandomContraction(Index dim, Rng& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  RVector d(dim);
  for (Index i = 0; i < dim; ++i) d(i) = unif(rng);
  const CMatrix u = RandomUnitary(dim, rng);
  return HermMatrix(u * d.cast<C>().asDiagonal() * u.adjoint());
}

HermMatrix RandomHermitian(Index dim, Rng& rng) {
  const CMatrix g = RandomGaussian(dim, dim, rng);
  return HermMatrix(g + g.adjoint());
}

TEST(HermMatrixTest, RejectsNonHermitian) {
  CMatrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_THROW(HermMatrix{m}, InputError);
  EXPECT_THROW(HermMatrix{CMatrix::Zero(2, 3)}, InputError);
}

TEST(HermMatrixTest, SymmetrizesWithinTolerance) {
  CMatrix m = PauliX();
  m(0, 1) += C(1e-12, 0);
  const HermMatrix h(m);
  EXPECT_EQ(h.matrix()(0, 1), h.matrix()(1, 0));
}

TEST(HermEigTest, EigenvaluesDescendAndReconstruct) {
  Rng rng(3);
  const HermMatrix h = RandomHermitian(5, rng);
  const EigDecomp eig = HermEig(h);
  for (Index i = 1; i < 5; ++i) {
    EXPECT_GE(eig.eigenvalues(i - 1), eig.eigenvalues(i));
  }
  const CMatrix back = eig.eigenvectors *
                       eig.eigenvalues.cast<C>().asDiagonal() *
                       eig.eigenvectors.adjoint();
  EXPECT_LT((back - h.matrix()).norm(), 1e-10);
}

TEST(MatExpTest, DiagonalCase) {
  const HermMatrix e = MatExpHermitian(HermMatrix(Diag({0.0, std::log(2.0)})));
  EXPECT_NEAR(e.matrix()(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(e.matrix()(1, 1).real(), 2.0, 1e-14);
}

TEST(MatExpTest, MatchesTaylorSeries) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const HermMatrix h = RandomContraction(4, rng) * 0.7;
    CMatrix series = CMatrix::Identity(4, 4);
    CMatrix term = CMatrix::Identity(4, 4);
    for (int k = 1; k < 40; ++k) {
      term = term * h.matrix() / static_cast<double>(k);
      series += term;
    }
    EXPECT_LT((MatExpHermitian(h).matrix() - series).norm(), 1e-12);
  }
}

TEST(MatExpTest, RefusesUnreachableBudget) {
  const HermMatrix h(Diag({600.0, 0.0}));
  EXPECT_THROW(MatExpHermitian(h, 1e-10), NumericalError);
}

TEST(PosProjTest, Examples) {
  EXPECT_LT((PosProj(HermMatrix(Diag({2, -1}))).matrix() - Diag({1, 0})).norm(),
            1e-14);
  EXPECT_LT(PosProj(HermMatrix::Zero(3)).matrix().norm(), 1e-14);
  CMatrix half(2, 2);
  half << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LT((PosProj(HermMatrix(PauliX())).matrix() - half).norm(), 1e-12);
}

TEST(PosProjTest, IdempotentAndAttainsTraceNorm) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const HermMatrix h = RandomHermitian(4, rng);
    const HermMatrix p = PosProj(h);
    EXPECT_LT((p.matrix() * p.matrix() - p.matrix()).norm(), 1e-8);
    const CMatrix sign = 2.0 * p.matrix() - CMatrix::Identity(4, 4);
    EXPECT_NEAR(HsInner(sign, h.matrix()).real(), TraceNorm(h.matrix()),
                1e-10);
  }
}

TEST(TraceNormTest, Examples) {
  EXPECT_NEAR(TraceNorm(Diag({1, -1})), 2.0, 1e-14);
  Rng rng(1);
  EXPECT_NEAR(TraceNorm(RandomUnitary(5, rng)), 5.0, 1e-12);
  EXPECT_NEAR(TraceNorm(Ket0().matrix() - Mixed2().matrix()), 1.0, 1e-14);
}

TEST(FidelityTest, Examples) {
  Rng rng(2);
  const HermMatrix rho = RandomDensity(3, rng);
  EXPECT_NEAR(Fidelity(rho, rho), 1.0, 1e-10);
  EXPECT_NEAR(Fidelity(Ket0(), Ket1()), 0.0, 1e-14);
  EXPECT_NEAR(Fidelity(Ket0(), Mixed2()), 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(FidelityTest, Homogeneous) {
  Rng rng(4);
  const HermMatrix p = RandomDensity(3, rng);
  const HermMatrix q = RandomDensity(3, rng);
  EXPECT_NEAR(Fidelity(p * 2.5, q * 2.5), 2.5 * Fidelity(p, q), 1e-10);
}

TEST(FidelityTest, RejectsNegativeInput) {
  EXPECT_THROW(Fidelity(HermMatrix(Diag({1, -0.1})), Ket0()), InputError);
  EXPECT_NO_THROW(Fidelity(HermMatrix(Diag({1, -1e-12})), Ket0()));
}

// Fuchs-van de Graaf: 1 - D <= F <= sqrt(1 - D^2), D half the trace
// distance.
TEST(FidelityTest, FuchsVanDeGraafOnRandomPairs) {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const Index dim = trial % 2 == 0 ? 2 : 3;
    const HermMatrix rho = RandomDensity(dim, rng, 1 + trial % dim);
    const HermMatrix sigma = RandomDensity(dim, rng);
    const double d = 0.5 * TraceNorm(rho.matrix() - sigma.matrix());
    const double f = Fidelity(rho, sigma);
    EXPECT_GE(f, 1.0 - d - 1e-9);
    EXPECT_LE(f, std::sqrt(std::max(0.0, 1.0 - d * d)) + 1e-9);
  }
}

// (I - eps' H) - exp(-eps H) >= 0 with eps' = 1 - e^{-eps}.
TEST(ExponentialBoundTest, LinearUpperBoundOnContractions) {
  Rng rng(23);
  std::uniform_real_distribution<double> eps_dist(1e-6, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    const double eps = trial == 0 ? 0.5 : eps_dist(rng);
    const double eps_prime = 1.0 - std::exp(-eps);
    const Index dim = 2 + trial % 4;
    const HermMatrix h = RandomContraction(dim, rng);
    const HermMatrix gap = HermMatrix::Identity(dim) - h * eps_prime -
                           MatExpHermitian(h * -eps);
    EXPECT_GE(HermEig(gap).min(), -1e-10);
    EXPECT_GE(eps_prime, eps * (1.0 - eps));
  }
}

TEST(PartialTraceTest, ProductState) {
  Rng rng(8);
  const HermMatrix a = RandomDensity(2, rng);
  const HermMatrix b = RandomDensity(3, rng);
  const std::vector<Index> dims = {2, 3};
  const std::vector<Index> keep_a = {0};
  const std::vector<Index> keep_b = {1};
  const CMatrix ab = Kron(a.matrix(), b.matrix());
  EXPECT_LT((PartialTrace(ab, dims, keep_a) - a.matrix()).norm(), 1e-14);
  EXPECT_LT((PartialTrace(ab, dims, keep_b) - b.matrix()).norm(), 1e-14);
}

TEST(PartialTraceTest, IdentityAndBellState) {
  const std::vector<Index> dims = {2, 2};
  const std::vector<Index> keep0 = {0};
  const std::vector<Index> keep1 = {1};
  EXPECT_LT((PartialTrace(CMatrix::Identity(4, 4), dims, keep1) -
             2.0 * CMatrix::Identity(2, 2)).norm(),
            1e-14);
  CVector phi = CVector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  const CMatrix bell = phi * phi.adjoint();
  EXPECT_LT((PartialTrace(bell, dims, keep0) - Mixed2().matrix()).norm(), 1e-14);
  EXPECT_LT((PartialTrace(bell, dims, keep1) - Mixed2().matrix()).norm(), 1e-14);
}

TEST(PartialTraceTest, TraceAllAndPreservesTrace) {
  Rng rng(9);
  const CMatrix m = RandomGaussian(12, 12, rng);
  const std::vector<Index> dims = {2, 3, 2};
  const std::vector<Index> none;
  const std::vector<Index> middle = {1};
  const CMatrix scalar = PartialTrace(m, dims, none);
  ASSERT_EQ(scalar.rows(), 1);
  EXPECT_LT(std::abs(scalar(0, 0) - m.trace()), 1e-12);
  EXPECT_LT(std::abs(PartialTrace(m, dims, middle).trace() - m.trace()), 1e-12);
}

TEST(PartialTraceTest, RejectsBadDims) {
  const std::vector<Index> dims = {2, 2};
  const std::vector<Index> keep = {0};
  EXPECT_THROW(PartialTrace(CMatrix::Identity(6, 6), dims, keep), InputError);
}

TEST(HsInnerTest, Examples) {
  EXPECT_NEAR(HsInner(CMatrix::Identity(3, 3), CMatrix::Identity(3, 3)).real(),
              3.0, 1e-15);
  EXPECT_NEAR(std::abs(HsInner(PauliX(), PauliZ())), 0.0, 1e-15);
  EXPECT_NEAR(HsInner(Mixed2().matrix(), Mixed2().matrix()).real(), 0.5, 1e-15);
}

TEST(HsInnerTest, ConjugateSymmetric) {
  Rng rng(12);
  const CMatrix a = RandomGaussian(3, 3, rng);
  const CMatrix b = RandomGaussian(3, 3, rng);
  EXPECT_LT(std::abs(HsInner(a, b) - std::conj(HsInner(b, a))), 1e-12);
}

TEST(KronTest, Examples) {
  EXPECT_EQ(Kron(CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)),
            CMatrix::Identity(4, 4));
  EXPECT_EQ(Kron(Diag({1, 2}), Diag({3, 4})), Diag({3, 4, 6, 8}));
  Rng rng(13);
  const CMatrix a = RandomGaussian(2, 2, rng), b = RandomGaussian(2, 2, rng);
  const CMatrix c = RandomGaussian(2, 2, rng), d = RandomGaussian(2, 2, rng);
  EXPECT_LT((Kron(a, b) * Kron(c, d) - Kron(a * c, b * d)).norm(), 1e-12);
}

TEST(MinEigenProjectorTest, PicksSmallestEigenvector) {
  const HermMatrix p = MinEigenProjector(HermMatrix(Diag({0.3, -0.2, 0.9})));
  EXPECT_LT((p.matrix() - Diag({0, 1, 0})).norm(), 1e-14);
}

}  // namespace
}  // namespace qcdmmw
