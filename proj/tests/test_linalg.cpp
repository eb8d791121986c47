// Copyright 2026 the sibf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sibf/linalg.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "sibf/errors.hpp"
#include "sibf/sim.hpp"

using namespace sibf;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return (a + a.adjoint()) / 2.0;
}

Eigen::MatrixXcd random_spd(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXcd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  return a * a.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(n, n);
}

Eigen::VectorXcd random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v / v.norm();
}

double rayleigh(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& v) {
  return std::real((v.adjoint() * m * v)(0, 0));
}

// |cos| of the angle between two complex vectors.
double collinearity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("trivial spectra") {
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  const auto pairs = eig_hermitian(eye);
  for (const auto& p : pairs) CHECK(p.value == doctest::Approx(1.0));
  // Deterministic degenerate tie-break lands on e1.
  CHECK(std::abs(eig_min_vector(eye).vector[0]) == doctest::Approx(1.0));

  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  const auto dp = eig_hermitian(d);
  CHECK(dp[0].value == doctest::Approx(1.0));
  CHECK(dp[1].value == doctest::Approx(4.0));
  CHECK(std::abs(dp[0].vector[1]) == doctest::Approx(1.0));
  CHECK(std::abs(dp[1].vector[0]) == doctest::Approx(1.0));

  d(0, 0) = 3.0;
  const auto mn = eig_min_vector(d);
  CHECK(mn.value == doctest::Approx(1.0));
  CHECK(std::abs(mn.vector[1]) == doctest::Approx(1.0));
}

TEST_CASE("2x2 values match the characteristic-polynomial oracle") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(2, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
  // Oracle: lambda^2 - tr lambda + det = 0 solved by the quadratic formula.
  const double tr = std::real(m.trace());
  const double det = std::real(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  const double lo = (tr - disc) / 2.0;
  const double hi = (tr + disc) / 2.0;
  CHECK(lo == doctest::Approx(1.0));
  CHECK(hi == doctest::Approx(3.0));

  const auto pairs = eig_hermitian(m);
  CHECK(pairs[0].value == doctest::Approx(lo).epsilon(1e-12));
  CHECK(pairs[1].value == doctest::Approx(hi).epsilon(1e-12));
}

TEST_CASE("non-Hermitian input rejected") {
  Eigen::MatrixXcd m(2, 2);
  m << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  CHECK_THROWS_AS(eig_hermitian(m), ArgumentError);
}

TEST_CASE("decomposition invariants on random matrices") {
  auto rng = substream(21, "eig");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(trial % 5);
    const Eigen::MatrixXcd m = random_hermitian(n, rng);
    const auto pairs = eig_hermitian(m);

    Eigen::MatrixXcd q(n, n);
    Eigen::VectorXd lam(n);
    for (int i = 0; i < n; ++i) {
      q.col(i) = pairs[i].vector;
      lam[i] = pairs[i].value;
      CHECK(std::abs(pairs[i].vector.norm() - 1.0) < 1e-12);
      if (i) CHECK(pairs[i].value >= pairs[i - 1].value);
      const double resid =
          (m * pairs[i].vector - pairs[i].value * pairs[i].vector).norm();
      CHECK(resid <= 1e-9 * m.norm());
    }
    CHECK((q.adjoint() * q - Eigen::MatrixXcd::Identity(n, n))
              .cwiseAbs()
              .maxCoeff() < 1e-9);
    const Eigen::MatrixXcd rebuilt =
        q * lam.cast<Complex>().asDiagonal() * q.adjoint();
    CHECK((rebuilt - m).norm() <= 1e-9 * m.norm());

    // Phase convention: first significant component real nonnegative.
    for (const auto& p : pairs) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(p.vector[i]) > 1e-9) {
          CHECK(std::abs(std::imag(p.vector[i])) < 1e-12);
          CHECK(std::real(p.vector[i]) >= 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("min eigenvector beats a Monte-Carlo Rayleigh search") {
  auto rng = substream(22, "rayleigh");
  const Eigen::MatrixXcd m = random_hermitian(4, rng);
  const EigenPair mn = eig_min_vector(m);
  const double ours = rayleigh(m, mn.vector);
  for (int i = 0; i < 100000; ++i)
    CHECK(ours <= rayleigh(m, random_unit(4, rng)) + 1e-12);
}

TEST_CASE("generalized problem, diagonal oracle") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2, 2);
  a(0, 0) = 2.0;
  a(1, 1) = 8.0;
  b(0, 0) = 1.0;
  b(1, 1) = 2.0;
  // Elementwise: generalized values a_ii / b_ii = {2, 4}.

  const EigenPair lo = gev_min_vector(a, b);
  CHECK(lo.value == doctest::Approx(2.0));
  CHECK(std::abs(lo.vector[0]) == doctest::Approx(1.0));
  CHECK(std::abs(lo.vector[1]) < 1e-12);

  const EigenPair hi = gev_max_vector(a, b);
  CHECK(hi.value == doctest::Approx(4.0));
  CHECK(std::abs(hi.vector[1]) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(hi.vector[0]) < 1e-12);
}

TEST_CASE("generalized problem reduces to the standard one for b = I") {
  auto rng = substream(23, "gev_eye");
  const Eigen::MatrixXcd a = random_hermitian(3, rng);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(3, 3);
  const EigenPair g = gev_min_vector(a, eye);
  const EigenPair s = eig_min_vector(a);
  CHECK(g.value == doctest::Approx(s.value).epsilon(1e-12));
  CHECK(collinearity(g.vector, s.vector) > 1.0 - 1e-12);
}

TEST_CASE("generalized minimum matches a projected-gradient oracle") {
  auto rng = substream(24, "pgd");
  const Eigen::MatrixXcd a = random_hermitian(3, rng);
  const Eigen::MatrixXcd b = random_spd(3, rng);
  const EigenPair got = gev_min_vector(a, b);

  // Oracle: minimize v^H a v subject to v^H b v = 1 by projected gradient
  // descent (gradient a v - value b v, renormalized onto the constraint
  // surface), best of several random starts.
  double best_value = 1e300;
  Eigen::VectorXcd best_v;
  for (int start = 0; start < 8; ++start) {
    Eigen::VectorXcd v = random_unit(3, rng);
    v /= std::sqrt(std::real((v.adjoint() * b * v)(0, 0)));
    double value = std::real((v.adjoint() * a * v)(0, 0));
    double step = 0.5;
    for (int it = 0; it < 50000 && step > 1e-14; ++it) {
      Eigen::VectorXcd cand = v - step * (a * v - value * (b * v));
      cand /= std::sqrt(std::real((cand.adjoint() * b * cand)(0, 0)));
      const double cand_value = std::real((cand.adjoint() * a * cand)(0, 0));
      if (cand_value < value - 1e-16) {
        v = cand;
        value = cand_value;
        step *= 1.1;
      } else {
        step *= 0.5;
      }
    }
    if (value < best_value) {
      best_value = value;
      best_v = v;
    }
  }
  CHECK(got.value == doctest::Approx(best_value).epsilon(1e-6));
  CHECK(collinearity(got.vector, best_v) > 1.0 - 1e-6);
}

TEST_CASE("generalized residuals and constraint normalization") {
  auto rng = substream(25, "gev_resid");
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    const Eigen::MatrixXcd a = random_hermitian(n, rng);
    const Eigen::MatrixXcd b = random_spd(n, rng);
    for (const bool minimum : {true, false}) {
      const EigenPair p =
          minimum ? gev_min_vector(a, b) : gev_max_vector(a, b);
      const double resid = (a * p.vector - p.value * b * p.vector).norm();
      CHECK(resid <= 1e-9 * (a.norm() + std::abs(p.value) * b.norm()));
      CHECK(std::real((p.vector.adjoint() * b * p.vector)(0, 0)) ==
            doctest::Approx(1.0).epsilon(1e-10));
    }
    // Negation symmetry: max of (a, b) is min of (-a, b).
    CHECK(collinearity(gev_max_vector(a, b).vector,
                       gev_min_vector(-a, b).vector) > 1.0 - 1e-9);
  }
}

TEST_CASE("generalized solution equals whitened standard solution") {
  auto rng = substream(26, "gev_whiten");
  const Eigen::MatrixXcd a = random_hermitian(4, rng);
  const Eigen::MatrixXcd b = random_spd(4, rng);

  // Whiten b explicitly, solve the standard problem, map back.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs(b);
  const Eigen::MatrixXcd p = bs.eigenvalues()
                                 .cwiseSqrt()
                                 .cwiseInverse()
                                 .cast<Complex>()
                                 .asDiagonal() *
                             bs.eigenvectors().adjoint();
  const EigenPair inner = eig_min_vector(p * a * p.adjoint());
  const Eigen::VectorXcd mapped = p.adjoint() * inner.vector;

  const EigenPair direct = gev_min_vector(a, b);
  CHECK(collinearity(direct.vector, mapped) > 1.0 - 1e-9);
}

TEST_CASE("b must be positive definite") {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Identity(2, 2);
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(2, 2);
  b(0, 0) = 1.0;  // rank deficient
  CHECK_THROWS_AS(gev_min_vector(a, b), SingularityError);
}

}  // TEST_SUITE
