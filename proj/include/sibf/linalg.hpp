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

#ifndef SIBF_LINALG_HPP_
#define SIBF_LINALG_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sibf/types.hpp"

namespace sibf {

struct EigenPair {
  double value = 0.0;
  Eigen::VectorXcd vector;
};

// Rotates v so its first component with magnitude > 1e-9 is real and
// nonnegative. Makes eigenvector phases reproducible across runs.
Eigen::VectorXcd apply_phase_convention(Eigen::VectorXcd v);

bool is_hermitian(const Eigen::MatrixXcd& m, double rel_tol = 1e-12);

// Full eigendecomposition of a Hermitian matrix, values ascending, vectors
// unit norm and phase-fixed. Throws ArgumentError when m is not Hermitian.
std::vector<EigenPair> eig_hermitian(const Eigen::MatrixXcd& m);

// Eigenvector of the minimum eigenvalue. Near-degenerate minima (relative
// gap < 1e-9) are resolved by the phase convention and then by the lowest
// index of the first significant component.
EigenPair eig_min_vector(const Eigen::MatrixXcd& m);

// Generalized problem a v = lambda b v for Hermitian a and positive definite
// b; returns the minimum-eigenvalue pair with v normalized so v^H b v = 1.
// Throws SingularityError when b is not positive definite.
EigenPair gev_min_vector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Mirror of gev_min_vector for the maximum eigenvalue.
EigenPair gev_max_vector(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

}  // namespace sibf

#endif  // SIBF_LINALG_HPP_
