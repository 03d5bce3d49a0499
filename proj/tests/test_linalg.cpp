// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The snrsep authors

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "snrsep/linalg.hpp"

using namespace snrsep;

namespace {

constexpr double kHalfSqrt2 = std::numbers::sqrt2 / 2.0;

SymMatrix sym2(double a, double b, double c) {
  SymMatrix m(2);
  m.set(0, 0, a);
  m.set(0, 1, b);
  m.set(1, 1, c);
  return m;
}

double residual_bound(const SymMatrix& c, const Matrix& vectors, std::size_t i) {
  double acc = 0.0;
  for (std::size_t r = 0; r < c.order(); ++r) {
    double entry = 0.0;
    for (std::size_t j = 0; j < c.order(); ++j) entry += c(r, j) * vectors(i, j);
    acc += entry * entry;
  }
  return std::sqrt(acc);
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("cholesky of the identity is the identity") {
  CHECK(cholesky(SymMatrix::from_full(Matrix::identity(3))) == Matrix::identity(3));
}

TEST_CASE("cholesky matches the hand-expanded 2x2 factor") {
  const Matrix l = cholesky(sym2(4, 2, 5));
  CHECK(l(0, 0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(l(0, 1) == 0.0);
  CHECK(l(1, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l(1, 1) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("cholesky reconstructs random SPD matrices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix m = oracles::random_spd(5, rng, 1.0);
    const Matrix l = cholesky(m);
    CHECK(frobenius_norm(l * transpose(l) - m.full()) <= 1e-12 * frobenius_norm(m.full()));
    // Strictly lower-triangular above the diagonal.
    for (std::size_t r = 0; r < 5; ++r)
      for (std::size_t c = r + 1; c < 5; ++c) CHECK(l(r, c) == 0.0);
  }
}

TEST_CASE("cholesky reports the failing pivot of an indefinite matrix") {
  try {
    cholesky(sym2(1, 2, 1));  // eigenvalues 3 and -1
    FAIL("expected NotPositiveDefiniteError");
  } catch (const NotPositiveDefiniteError& error) {
    CHECK(error.pivot_index() == 1);
    CHECK(std::string(error.what()).find("matrix not positive definite") != std::string::npos);
  }
}

TEST_CASE("sym_eigen of a diagonal matrix returns the diagonal") {
  SymMatrix m(2);
  m.set(0, 0, 3.0);
  m.set(1, 1, 1.0);
  const EigenResult result = sym_eigen(m);
  CHECK(result.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(result.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(result.eigenvectors(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(result.eigenvectors(0, 1) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(result.eigenvectors(1, 0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(result.eigenvectors(1, 1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sym_eigen of the 2x2 exchange matrix") {
  const EigenResult result = sym_eigen(sym2(0, 1, 0));
  CHECK(result.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(result.eigenvalues[1] == doctest::Approx(-1.0).epsilon(1e-14));
  // Sign convention: largest-magnitude component positive, ties to index 0.
  CHECK(result.eigenvectors(0, 0) == doctest::Approx(kHalfSqrt2).epsilon(1e-14));
  CHECK(result.eigenvectors(0, 1) == doctest::Approx(kHalfSqrt2).epsilon(1e-14));
  CHECK(result.eigenvectors(1, 0) == doctest::Approx(kHalfSqrt2).epsilon(1e-14));
  CHECK(result.eigenvectors(1, 1) == doctest::Approx(-kHalfSqrt2).epsilon(1e-14));
}

TEST_CASE("sym_eigen matches the bisection oracle on random 6x6 matrices") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix m = SymMatrix::from_full(oracles::random_matrix(6, 6, rng));
    const EigenResult result = sym_eigen(m);
    const std::vector<double> reference = oracles::eigs_by_bisection(m, 1e-10);
    const double scale = std::max(1.0, frobenius_norm(m.full()));
    REQUIRE(result.eigenvalues.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(std::abs(result.eigenvalues[i] - reference[i]) <= 1e-8 * scale);
  }
}

TEST_CASE("sym_eigen residuals, trace and orthonormality on random input") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const SymMatrix m = SymMatrix::from_full(oracles::random_matrix(5, 5, rng));
    const EigenResult result = sym_eigen(m);
    const double scale = frobenius_norm(m.full());

    double trace_sum = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      trace_sum += result.eigenvalues[i];
      // ||M u_i - mu_i u_i|| <= 1e-10 ||M||.
      double acc = 0.0;
      for (std::size_t r = 0; r < 5; ++r) {
        double entry = 0.0;
        for (std::size_t j = 0; j < 5; ++j) entry += m(r, j) * result.eigenvectors(i, j);
        entry -= result.eigenvalues[i] * result.eigenvectors(i, r);
        acc += entry * entry;
      }
      CHECK(std::sqrt(acc) <= 1e-10 * scale);
      for (std::size_t j = 0; j < 5; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < 5; ++k)
          dot += result.eigenvectors(i, k) * result.eigenvectors(j, k);
        CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-12);
      }
    }
    CHECK(std::abs(trace_sum - m.trace()) <= 1e-10 * std::max(1.0, std::abs(m.trace())));
  }
}

TEST_CASE("generalized_eigen with identity weight reduces to sym_eigen") {
  SymMatrix c(2);
  c.set(0, 0, 6.0);
  c.set(1, 1, 2.0);
  const GenEigenResult result = generalized_eigen(c, SymMatrix::from_full(Matrix::identity(2)));
  CHECK(result.eigenvalues[0] == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(result.eigenvalues[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(result.eigenvectors(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.eigenvectors(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(result.eigenvectors(1, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identical pair has all unit eigenvalues") {
  std::mt19937_64 rng(31);
  const SymMatrix c = oracles::random_spd(4, rng);
  const GenEigenResult result = generalized_eigen(c, c);
  for (const double lambda : result.eigenvalues)
    CHECK(lambda == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("random 3x3 pairs: residuals and the grid oracle for lambda_1") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const auto [c, cbar] = oracles::random_spd_pair(3, rng);
    const GenEigenResult result = generalized_eigen(c, cbar);

    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(result.residual_norms[i] <=
            1e-8 * std::max(1e-300, residual_bound(c, result.eigenvectors, i)));
    }
    const double grid_best = oracles::sphere_grid_max_ratio(c, cbar);
    CHECK(std::abs(grid_best - result.eigenvalues[0]) <=
          1e-8 * std::max(1.0, result.eigenvalues[0]));
  }
}

TEST_CASE("eigenvectors are cbar-orthonormal") {
  std::mt19937_64 rng(41);
  const auto [c, cbar] = oracles::random_spd_pair(5, rng);
  const GenEigenResult result = generalized_eigen(c, cbar);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      double form = 0.0;
      for (std::size_t r = 0; r < 5; ++r)
        for (std::size_t s = 0; s < 5; ++s)
          form += result.eigenvectors(i, r) * cbar(r, s) * result.eigenvectors(j, s);
      CHECK(std::abs(form - (i == j ? 1.0 : 0.0)) <= 1e-8);
    }
}

TEST_CASE("scaling both matrices keeps eigenvalues and directions") {
  std::mt19937_64 rng(43);
  const auto [c, cbar] = oracles::random_spd_pair(4, rng);
  const double alpha = 3.7;
  const GenEigenResult base = generalized_eigen(c, cbar);
  const GenEigenResult scaled = generalized_eigen(SymMatrix::from_full(alpha * c.full()),
                                                  SymMatrix::from_full(alpha * cbar.full()));
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(scaled.eigenvalues[i] ==
          doctest::Approx(base.eigenvalues[i]).epsilon(1e-11));
    // The cbar-orthonormal scaling absorbs a 1/sqrt(alpha); compare unit
    // directions up to sign.
    double norm_b = 0.0;
    double norm_s = 0.0;
    double dot = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
      norm_b += base.eigenvectors(i, j) * base.eigenvectors(i, j);
      norm_s += scaled.eigenvectors(i, j) * scaled.eigenvectors(i, j);
      dot += base.eigenvectors(i, j) * scaled.eigenvectors(i, j);
    }
    CHECK(std::abs(dot) / std::sqrt(norm_b * norm_s) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("adding beta*cbar shifts every eigenvalue by beta") {
  std::mt19937_64 rng(47);
  const auto [c, cbar] = oracles::random_spd_pair(4, rng);
  const double beta = 2.5;
  const GenEigenResult base = generalized_eigen(c, cbar);
  const GenEigenResult shifted =
      generalized_eigen(SymMatrix::from_full(c.full() + beta * cbar.full()), cbar);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(shifted.eigenvalues[i] ==
          doctest::Approx(base.eigenvalues[i] + beta).epsilon(1e-11));
    for (std::size_t j = 0; j < 4; ++j)
      CHECK(std::abs(shifted.eigenvectors(i, j)) ==
            doctest::Approx(std::abs(base.eigenvectors(i, j))).epsilon(1e-9));
  }
}

TEST_CASE("generalized_eigen rejects an indefinite weight matrix") {
  SymMatrix c(2);
  c.set(0, 0, 1.0);
  c.set(1, 1, 1.0);
  CHECK_THROWS_AS(generalized_eigen(c, sym2(1, 2, 1)), NotPositiveDefiniteError);
}

TEST_CASE("order-eight problems stay within tolerance") {
  std::mt19937_64 rng(53);
  const auto [c, cbar] = oracles::random_spd_pair(8, rng);
  const GenEigenResult result = generalized_eigen(c, cbar);
  for (std::size_t i = 0; i + 1 < 8; ++i)
    CHECK(result.eigenvalues[i] >= result.eigenvalues[i + 1]);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(result.residual_norms[i] <=
          1e-8 * std::max(1e-300, residual_bound(c, result.eigenvectors, i)));
}

}  // TEST_SUITE
