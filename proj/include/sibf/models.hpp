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

#ifndef SIBF_MODELS_HPP_
#define SIBF_MODELS_HPP_

#include <string>

#include <Eigen/Dense>

#include "sibf/types.hpp"

namespace sibf {

enum class SourceModel { kTvGaussian, kBsLaplacian, kTvT };

SourceModel source_model_from_string(const std::string& name);
std::string to_string(SourceModel kind);

struct ModelConfig {
  SourceModel kind = SourceModel::kBsLaplacian;
  double beta = 8.0;       // reference exponent, TV Gaussian
  double alpha = 100.0;    // reference weight, BS Laplacian
  double nu = 1.0;         // degrees of freedom, TV t
  double eps = 1e-7;       // clipping threshold for the weight denominators
  double beta_best = 8.0;  // exponent used by the boost start

  void validate() const;  // throws ArgumentError on out-of-range values
};

// Scales every bin row so <r(f,t)^2>_t = 1; zero-energy rows stay zero.
// Throws ArgumentError on negative or non-finite entries.
RealGrid normalize_reference(const RealGrid& raw);

// Per-cell weights 1 / max(denominator, eps); the denominator is the model
// quantity the extraction filter divides the covariance by.
RealGrid model_weights_gaussian(const RealGrid& r, double beta, double eps);
RealGrid model_weights_bs_laplacian(const RealGrid& r, const Spectrogram& y1,
                                    double alpha, double eps);
RealGrid model_weights_tv_t(const RealGrid& r, const Spectrogram& y1,
                            double nu, double eps);

// Dispatch on cfg.kind. y1 is ignored for the TV Gaussian model.
RealGrid model_weights(const ModelConfig& cfg, const RealGrid& r,
                       const Spectrogram& y1);

// Per-bin surrogate objective averaged over frames, with the same clipped
// denominators the update rules use, so iteration traces are monotone.
Eigen::VectorXd objective_value(const ModelConfig& cfg, const RealGrid& r,
                                const Spectrogram& y1);

}  // namespace sibf

#endif  // SIBF_MODELS_HPP_
