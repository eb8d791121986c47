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

#include "sibf/whiten.hpp"

#include <cmath>

#include "sibf/errors.hpp"
#include "sibf/linalg.hpp"

namespace sibf {

Eigen::MatrixXcd MultichannelScene::bin_matrix(int f) const {
  Eigen::MatrixXcd x(num_channels(), frames());
  for (int k = 0; k < num_channels(); ++k) x.row(k) = channels[k].row(f);
  return x;
}

void MultichannelScene::validate() const {
  if (channels.empty()) throw DimensionError("scene has no channels");
  for (const auto& c : channels)
    if (c.rows() != channels[0].rows() || c.cols() != channels[0].cols())
      throw DimensionError("channel spectrograms have mismatched shapes");
}

std::vector<Eigen::MatrixXcd> compute_covariance(const MultichannelScene& scene) {
  scene.validate();
  const int n = scene.num_channels();
  const int frames = scene.frames();
  if (frames < n)
    throw ArgumentError("need at least as many frames as channels");

  std::vector<Eigen::MatrixXcd> cov(scene.bins());
  for (int f = 0; f < scene.bins(); ++f) {
    const Eigen::MatrixXcd x = scene.bin_matrix(f);
    Eigen::MatrixXcd c = x * x.adjoint() / static_cast<double>(frames);
    cov[f] = (c + c.adjoint()) / 2.0;
  }
  return cov;
}

WhitenedScene whiten_scene(const MultichannelScene& scene, double floor) {
  const auto cov = compute_covariance(scene);
  const int n = scene.num_channels();
  const int bins = scene.bins();

  WhitenedScene out;
  out.phi_x = cov;
  out.P.resize(bins);
  out.zero_bin.assign(bins, 0);
  out.floored_bin.assign(bins, 0);
  out.rank.assign(bins, n);
  out.u.cfg = scene.cfg;
  out.u.channels.assign(n, Spectrogram::Zero(bins, scene.frames()));

  for (int f = 0; f < bins; ++f) {
    const auto pairs = eig_hermitian(cov[f]);
    const double lam_max = pairs.back().value;
    if (!(lam_max > 0.0)) {
      out.P[f] = Eigen::MatrixXcd::Zero(n, n);
      out.zero_bin[f] = 1;
      out.rank[f] = 0;
      continue;
    }

    Eigen::MatrixXcd q(n, n);
    Eigen::VectorXd lam(n);
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      q.col(i) = pairs[i].vector;
      lam[i] = pairs[i].value;
      const double lo = floor * lam_max;
      if (lam[i] < lo) {
        lam[i] = lo;
        out.floored_bin[f] = 1;
      } else {
        ++rank;  // ascending order: retained directions are the last ones
      }
    }
    out.rank[f] = rank;

    out.P[f] = lam.cwiseSqrt().cwiseInverse().asDiagonal() * q.adjoint();
    const Eigen::MatrixXcd u = out.P[f] * scene.bin_matrix(f);
    for (int k = 0; k < n; ++k) out.u.channels[k].row(f) = u.row(k);
  }
  return out;
}

}  // namespace sibf
