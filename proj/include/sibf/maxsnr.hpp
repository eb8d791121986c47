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

#ifndef SIBF_MAXSNR_HPP_
#define SIBF_MAXSNR_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sibf/extract.hpp"
#include "sibf/models.hpp"
#include "sibf/types.hpp"
#include "sibf/whiten.hpp"

namespace sibf {

// Time-frequency masks in [0, 1] for the target and the interferences.
struct MaskPair {
  RealGrid target;
  RealGrid interference;

  void validate() const;
};

enum class BinStatus : uint8_t {
  kOk = 0,
  kEmptyMask,      // a mask sums to zero over frames
  kSingular,       // covariance not positive definite
  kUninformative,  // degenerate generalized spectrum, tie-break returned
};

// Filter applied directly to the observations, v1^H Phi_x v1 = 1 per bin.
struct DirectFilter {
  std::vector<Eigen::VectorXcd> v1;
  std::vector<BinStatus> status;

  int flagged_count() const;
};

// Per-bin C(f) = <c(f,t) x(f,t) x(f,t)^H>_t.
std::vector<Eigen::MatrixXcd> weighted_covariance(const MultichannelScene& scene,
                                                  const RealGrid& c);

// Observation-domain weights c = min(1, eps / denominator), the direct-path
// counterpart of the whitened-domain model weights. y1 is ignored for the
// TV Gaussian model.
RealGrid sibf_weights_direct(const ModelConfig& cfg, const RealGrid& r,
                             const Spectrogram& y1);

// v1(f) = GEV_min(C(f), Phi_x(f)). Bins with a non-positive-definite Phi_x
// are flagged and zeroed instead of aborting.
DirectFilter solve_direct_min(const MultichannelScene& scene, const RealGrid& c);

// Mask-based Max SNR beamformer: v1 = GEV_max(Phi_T, Phi_I) from the
// mask-averaged covariances, renormalized to v1^H Phi_x v1 = 1.
DirectFilter max_snr_bf(const MultichannelScene& scene, const MaskPair& masks);

// y1(f,t) = v1(f)^H x(f,t); flagged bins give zero rows.
Spectrogram apply_direct_filter(const MultichannelScene& scene,
                                const DirectFilter& filter);

struct DirectExtraction {
  DirectFilter filter;
  Spectrogram y1;
};

// The SIBF iteration run entirely in the observation domain through
// sibf_weights_direct and GEV_min; mirrors extract::estimate_filter step for
// step so the two routes can be compared.
DirectExtraction run_sibf_direct(const MultichannelScene& scene,
                                 const RealGrid& ref, const ModelConfig& cfg,
                                 StartMode start, int iters);

}  // namespace sibf

#endif  // SIBF_MAXSNR_HPP_
