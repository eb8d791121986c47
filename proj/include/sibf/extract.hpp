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

#ifndef SIBF_EXTRACT_HPP_
#define SIBF_EXTRACT_HPP_

#include <vector>

#include <Eigen/Dense>

#include "sibf/models.hpp"
#include "sibf/types.hpp"
#include "sibf/whiten.hpp"

namespace sibf {

// How iteration 1 of the iterative models is seeded: boost uses the
// TV Gaussian closed form with beta_best, model_specific uses the exponent
// the model itself implies (1 for BS Laplacian, 2 for TV t).
enum class StartMode { kBoost, kModelSpecific };

StartMode start_mode_from_string(const std::string& name);

struct ExtractionResult {
  std::vector<Eigen::VectorXcd> w1;  // unit-norm filter per bin
  Eigen::VectorXcd gamma1;           // scaling factor per bin (after scaling)
  Spectrogram y1;                    // unit-power output, pre-scaling
  Spectrogram output;                // gamma1 * y1 (after scaling)
  std::vector<double> objective_trace;  // summed per-bin objective, per iteration
  std::vector<uint8_t> flagged;      // degenerate bins, output zeroed
};

// Deflationary filter estimation in whitened coordinates. Iteration 1 solves
// the TV Gaussian closed form with the start-mode exponent; later iterations
// recompute y1, the model weights, and the minimum eigenvector of the
// weighted covariance. The TV Gaussian model is a single closed-form solve
// regardless of iters.
ExtractionResult estimate_filter(const WhitenedScene& ws, const RealGrid& ref,
                                 const ModelConfig& cfg, StartMode start,
                                 int iters);

// Minimal-distortion scaling against microphone mic_index:
// gamma1(f) = <x_m(f,t) conj(y1(f,t))>_t, output = gamma1 * y1.
ExtractionResult scale_output(ExtractionResult res,
                              const MultichannelScene& scene, int mic_index);

// whiten -> estimate_filter -> scale_output. ref must be normalized.
ExtractionResult run_sibf(const MultichannelScene& scene, const RealGrid& ref,
                          const ModelConfig& cfg, StartMode start, int iters,
                          int mic_index);

}  // namespace sibf

#endif  // SIBF_EXTRACT_HPP_
