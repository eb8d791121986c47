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

#include <algorithm>
#include <cmath>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

constexpr double kSignificant = 1e-9;
constexpr double kDegenerateGap = 1e-9;

int first_significant_index(const Eigen::VectorXcd& v) {
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > kSignificant) return i;
  return static_cast<int>(v.size());
}

// Among near-degenerate candidates, prefer the vector whose first
// significant component has the lowest index; then the lowest list index.
EigenPair select_degenerate(const std::vector<EigenPair>& pairs,
                            const std::vector<int>& candidates) {
  int best = candidates.front();
  int best_sig = first_significant_index(pairs[best].vector);
  for (int idx : candidates) {
    const int sig = first_significant_index(pairs[idx].vector);
    if (sig < best_sig) {
      best = idx;
      best_sig = sig;
    }
  }
  return pairs[best];
}

EigenPair pick_extreme(const std::vector<EigenPair>& pairs, bool minimum) {
  const double lo = pairs.front().value;
  const double hi = pairs.back().value;
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  const double target = minimum ? lo : hi;
  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
    if (std::abs(pairs[i].value - target) <= kDegenerateGap * scale)
      candidates.push_back(i);
  if (candidates.size() == 1) return pairs[candidates.front()];
  return select_degenerate(pairs, candidates);
}

}  // namespace

Eigen::VectorXcd apply_phase_convention(Eigen::VectorXcd v) {
  const int i = first_significant_index(v);
  if (i < v.size()) {
    const Complex z = v[i];
    v *= std::conj(z) / std::abs(z);
    v[i] = Complex(std::abs(v[i]), 0.0);  // scrub rounding in the pivot
  }
  return v;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1e-300);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= rel_tol * scale;
}

std::vector<EigenPair> eig_hermitian(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw ArgumentError("matrix must be square");
  if (m.size() == 0) throw ArgumentError("matrix must be nonempty");
  if (!is_hermitian(m, 1e-10))
    throw ArgumentError("matrix is not Hermitian within tolerance");

  const Eigen::MatrixXcd sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success)
    throw SingularityError("eigendecomposition failed to converge");

  std::vector<EigenPair> pairs(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    pairs[i].value = solver.eigenvalues()[i];  // already ascending
    Eigen::VectorXcd v = solver.eigenvectors().col(i);
    pairs[i].vector = apply_phase_convention(v / v.norm());
  }
  return pairs;
}

EigenPair eig_min_vector(const Eigen::MatrixXcd& m) {
  return pick_extreme(eig_hermitian(m), /*minimum=*/true);
}

namespace {

// Reduce a v = lambda b v to a standard Hermitian problem through b's
// whitener: S = Lb^{-1/2} Qb^H a Qb Lb^{-1/2}, v = Qb Lb^{-1/2} u. The map
// gives v^H b v = u^H u, so unit u yields the constraint normalization.
EigenPair gev_extreme(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      bool minimum) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw ArgumentError("matrices must be square and matching");
  if (!is_hermitian(a, 1e-10) || !is_hermitian(b, 1e-10))
    throw ArgumentError("matrices must be Hermitian");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> bs((b + b.adjoint()) / 2.0);
  if (bs.info() != Eigen::Success)
    throw SingularityError("eigendecomposition of b failed");
  const Eigen::VectorXd lam = bs.eigenvalues();
  const double lam_max = lam.maxCoeff();
  if (!(lam_max > 0.0) || lam.minCoeff() <= 1e-12 * lam_max)
    throw SingularityError("b is not positive definite");

  const Eigen::VectorXd inv_sqrt = lam.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXcd back = bs.eigenvectors() * inv_sqrt.asDiagonal();
  const Eigen::MatrixXcd s = back.adjoint() * a * back;

  std::vector<EigenPair> pairs = eig_hermitian(s);
  // Map every candidate back before tie-breaking so the deterministic
  // selection happens in the original coordinates.
  for (auto& p : pairs) {
    Eigen::VectorXcd v = back * p.vector;
    p.vector = apply_phase_convention(std::move(v));
  }
  return pick_extreme(pairs, minimum);
}

}  // namespace

EigenPair gev_min_vector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return gev_extreme(a, b, /*minimum=*/true);
}

EigenPair gev_max_vector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return gev_extreme(a, b, /*minimum=*/false);
}

}  // namespace sibf
