// Copyright 2026 The stabwit developers
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

#include <gtest/gtest.h>

#include "stabwit/oracle.hpp"
#include "test_util.hpp"

using namespace stabwit;
using oracle::Bipartition;
using stabwit::testing::ghz_state;
using stabwit::testing::max_abs_diff;

TEST(Oracle, BipartitionEnumeration) {
  EXPECT_EQ(oracle::all_bipartitions(3).size(), 3u);  // 2^{N-1} - 1
  EXPECT_EQ(oracle::all_bipartitions(4).size(), 7u);
  for (const auto& bp : oracle::all_bipartitions(4)) {
    EXPECT_TRUE(bp.mask & 1u);  // site 1 stays in Q
    EXPECT_GE(bp.qbar_size(), 1);
  }
  EXPECT_THROW(Bipartition(0, 3), std::invalid_argument);
  EXPECT_THROW(Bipartition(7, 3), std::invalid_argument);
}

TEST(Oracle, DenseWitnessForms) {
  const Witness proj = projector_witness(ghz_generators(3, 2));
  const StateVector ghz = ghz_state(2, 3);
  const DenseMatrix expected =
      0.5 * DenseMatrix::Identity(8, 8) - ghz * ghz.adjoint();
  EXPECT_LT(max_abs_diff(oracle::dense_witness(proj), expected), 1e-12);

  Witness bare;
  bare.kind = WitnessKind::Custom;
  bare.constant = 2.5;
  bare.d = 2;
  bare.n_sites = 2;
  EXPECT_LT(max_abs_diff(oracle::dense_witness(bare), 2.5 * DenseMatrix::Identity(4, 4)),
            1e-12);
}

TEST(Oracle, ColoredWitnessTraceIdentity) {
  // Tr(W) = c d^N - d sum_i d^{N - |C_i|}, checked densely.
  for (int d : {2, 3}) {
    for (int n : {3, 4}) {
      const Witness w = colored_witness(ghz_generators(n, d));
      const double dim = std::pow(static_cast<double>(d), n);
      double expected = w.constant * dim;
      for (const auto& cls : w.color_classes) {
        expected -= d * std::pow(static_cast<double>(d),
                                 n - static_cast<double>(cls.size()));
      }
      EXPECT_NEAR(oracle::dense_witness(w).trace().real(), expected, 1e-9);
      EXPECT_NEAR(symbolic_normalized_trace(w) * dim, expected, 1e-9);
    }
  }
}

TEST(Oracle, HermitianSpectrumExamples) {
  // (Z + Z^dagger)/2 at d=3 has eigenvalues {1, -1/2, -1/2}.
  const auto z = PauliWord::z_op(3, 1, 1);
  const DenseMatrix m = 0.5 * (to_dense(z) + to_dense(z).adjoint());
  const Eigen::VectorXd eigs = oracle::hermitian_spectrum(m);
  EXPECT_NEAR(eigs(0), -0.5, 1e-12);
  EXPECT_NEAR(eigs(1), -0.5, 1e-12);
  EXPECT_NEAR(eigs(2), 1.0, 1e-12);

  const Eigen::VectorXd ones = oracle::hermitian_spectrum(DenseMatrix::Identity(5, 5));
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(ones(i), 1.0, 1e-14);

  EXPECT_THROW(oracle::hermitian_spectrum(to_dense(z)), std::invalid_argument);
}

TEST(Oracle, SpectrumResidualContract) {
  std::mt19937_64 rng(67);
  std::normal_distribution<double> gauss;
  DenseMatrix a(24, 24);
  for (int j = 0; j < 24; ++j)
    for (int i = 0; i < 24; ++i) a(i, j) = Complex(gauss(rng), gauss(rng));
  const DenseMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  for (int i = 0; i < 24; ++i) {
    const double residual =
        (h * es.eigenvectors().col(i) - es.eigenvalues()(i) * es.eigenvectors().col(i))
            .norm();
    EXPECT_LT(residual, 1e-8);
  }
  // The spectrum-only path agrees with the eigenpair path.
  const Eigen::VectorXd spectrum = oracle::hermitian_spectrum(h);
  for (int i = 0; i < 24; ++i) EXPECT_NEAR(spectrum(i), es.eigenvalues()(i), 1e-10);
}

TEST(Oracle, ColoredSpectrumMatchesDense) {
  std::vector<Witness> fixtures = {colored_witness(ghz_generators(4, 2)),
                                   colored_witness(cluster_generators(5, 2)),
                                   colored_witness(ghz_generators(3, 5)),
                                   colored_witness(five_qubit_code_generators()),
                                   colored_witness(nd_subspace_generators(3))};
  for (const auto& w : fixtures) {
    const Eigen::VectorXd dense = oracle::hermitian_spectrum(oracle::dense_witness(w));
    Eigen::Index idx = 0;
    for (const auto& [eig, mult] : witness_spectrum(w)) {
      for (long long c = 0; c < mult; ++c) {
        ASSERT_LT(idx, dense.size());
        EXPECT_NEAR(dense(idx++), eig, 1e-9);
      }
    }
    EXPECT_EQ(idx, dense.size());
  }
}

TEST(Oracle, MinEigenvalueLanczosAgreesWithFullSolver) {
  // Structured case: the shifted colored witness has minimum exactly 0.
  const Witness w = colored_witness(ghz_generators(8, 2));  // dim 256
  const DenseMatrix diff = oracle::dense_witness(w) -
                           2.0 * oracle::dense_witness(projector_witness(ghz_generators(8, 2)));
  const double full = oracle::hermitian_spectrum(diff)(0);
  const double lanczos = oracle::detail::lanczos_min_eigenvalue(diff, 240, 3, 99);
  EXPECT_NEAR(full, lanczos, 1e-9);

  std::mt19937_64 rng(71);
  std::normal_distribution<double> gauss;
  DenseMatrix a(60, 60);
  for (int j = 0; j < 60; ++j)
    for (int i = 0; i < 60; ++i) a(i, j) = Complex(gauss(rng), gauss(rng));
  const DenseMatrix h = 0.5 * (a + a.adjoint());
  EXPECT_NEAR(oracle::detail::lanczos_min_eigenvalue(h, 240, 3, 101),
              oracle::hermitian_spectrum(h)(0), 1e-8);
}

TEST(Oracle, SchmidtCoefficients) {
  const StateVector ghz = ghz_state(2, 3);
  for (const auto& bp : oracle::all_bipartitions(3)) {
    const Eigen::VectorXd sv = oracle::schmidt_coefficients(ghz, 2, bp);
    EXPECT_NEAR(sv(0), 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(sv(1), 1.0 / std::sqrt(2.0), 1e-12);
  }

  StateVector product = StateVector::Zero(8);
  product(5) = 1.0;  // |101>
  const Eigen::VectorXd sv = oracle::schmidt_coefficients(product, 2, Bipartition(1, 3));
  EXPECT_NEAR(sv(0), 1.0, 1e-12);
  EXPECT_NEAR(sv.tail(sv.size() - 1).cwiseAbs().maxCoeff(), 0.0, 1e-12);

  const Eigen::VectorXd w_sv =
      oracle::schmidt_coefficients(w_state_vector(3), 2, Bipartition(1, 3));
  EXPECT_NEAR(w_sv(0), std::sqrt(2.0 / 3.0), 1e-12);
  EXPECT_NEAR(w_sv(1), std::sqrt(1.0 / 3.0), 1e-12);
}

TEST(Oracle, SchmidtInvariants) {
  std::mt19937_64 rng(73);
  std::normal_distribution<double> gauss;
  for (int d : {2, 3}) {
    const int n = 3;
    const long long dim = pow_ll(d, n);
    StateVector psi(dim);
    for (long long i = 0; i < dim; ++i) psi(i) = Complex(gauss(rng), gauss(rng));
    psi.normalize();
    for (const auto& bp : oracle::all_bipartitions(n)) {
      const Eigen::VectorXd sv = oracle::schmidt_coefficients(psi, d, bp);
      EXPECT_NEAR(sv.squaredNorm(), 1.0, 1e-10);
      // Swapping Q and Q-bar leaves the coefficients unchanged.
      const uint32_t all = (1u << n) - 1;
      const Eigen::VectorXd swapped =
          oracle::schmidt_coefficients(psi, d, Bipartition(all ^ bp.mask, n));
      for (int i = 0; i < std::min(sv.size(), swapped.size()); ++i) {
        EXPECT_NEAR(sv(i), swapped(i), 1e-10);
      }
    }
  }
}

TEST(Oracle, MinProductExpectationExamples) {
  // Projector witness of GHZ-3: product states cannot push it below zero,
  // and the optimum approaches 0.
  const DenseMatrix wproj = oracle::dense_witness(projector_witness(ghz_generators(3, 2)));
  for (const auto& bp : oracle::all_bipartitions(3)) {
    const double value = oracle::min_product_expectation(wproj, 2, bp, 20, 1);
    EXPECT_GE(value, -1e-8);
    EXPECT_NEAR(value, 0.0, 1e-6);
  }

  EXPECT_NEAR(oracle::min_product_expectation(DenseMatrix::Identity(8, 8), 2,
                                              Bipartition(1, 3), 5, 2),
              1.0, 1e-10);

  const StateVector ghz = ghz_state(2, 3);
  const DenseMatrix neg = -(ghz * ghz.adjoint());
  EXPECT_NEAR(oracle::min_product_expectation(neg, 2, Bipartition(1, 3), 20, 3), -0.5, 1e-6);
}

TEST(Oracle, MinProductExpectationMonotoneInRestarts) {
  const DenseMatrix m = oracle::dense_witness(colored_witness(cluster_generators(3, 2)));
  const Bipartition bp(1, 3);
  double previous = std::numeric_limits<double>::infinity();
  for (int restarts : {1, 5, 20}) {
    const double value = oracle::min_product_expectation(m, 2, bp, restarts, 7);
    EXPECT_LE(value, previous + 1e-12);
    previous = value;
  }
}

TEST(Oracle, GgmSpotChecks) {
  EXPECT_NEAR(oracle::ggm_spot_check(StabilizerGroup(ghz_generators(3, 2)), 20, 5), 0.5,
              1e-6);
  EXPECT_NEAR(oracle::ggm_spot_check(StabilizerGroup(ghz_generators(3, 3)), 20, 5),
              2.0 / 3.0, 1e-4);
  // Bell pair: N = d = 2.
  EXPECT_NEAR(oracle::ggm_spot_check(StabilizerGroup(nd_subspace_generators(2)), 20, 5), 0.5,
              1e-6);
}
