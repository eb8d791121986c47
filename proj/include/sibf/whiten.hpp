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

#ifndef SIBF_WHITEN_HPP_
#define SIBF_WHITEN_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sibf/tfr.hpp"
#include "sibf/types.hpp"

namespace sibf {

// N channel spectrograms sharing one (bins, frames) grid.
struct MultichannelScene {
  std::vector<Spectrogram> channels;
  StftConfig cfg;

  int num_channels() const { return static_cast<int>(channels.size()); }
  int bins() const { return channels.empty() ? 0 : (int)channels[0].rows(); }
  int frames() const { return channels.empty() ? 0 : (int)channels[0].cols(); }

  // Channel samples of one bin stacked as an N x frames matrix.
  Eigen::MatrixXcd bin_matrix(int f) const;

  void validate() const;  // throws DimensionError on mismatched grids
};

// Decorrelated observations plus the per-bin transforms that produced them.
// Channels of u follow the ascending eigenvalue order, so when flooring
// engages the dead directions occupy the leading rows and the retained
// subspace is the trailing rank[f] rows.
struct WhitenedScene {
  MultichannelScene u;
  std::vector<Eigen::MatrixXcd> P;      // per-bin decorrelation matrix
  std::vector<Eigen::MatrixXcd> phi_x;  // per-bin observation covariance
  std::vector<uint8_t> zero_bin;        // all-zero input bin, output zeroed
  std::vector<uint8_t> floored_bin;     // eigenvalue floor engaged
  std::vector<int> rank;                // retained directions per bin
};

// Per-bin covariance <x x^H>_t. Requires frames >= channels.
std::vector<Eigen::MatrixXcd> compute_covariance(const MultichannelScene& scene);

// Decorrelates each bin so <u u^H>_t = I. Eigenvalues below floor times the
// bin's largest eigenvalue are clamped before the -1/2 power; such bins are
// marked floored. All-zero bins get a zero P and are marked.
WhitenedScene whiten_scene(const MultichannelScene& scene, double floor = 1e-10);

}  // namespace sibf

#endif  // SIBF_WHITEN_HPP_
