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

#ifndef SIBF_EVAL_HPP_
#define SIBF_EVAL_HPP_

#include <Eigen/Dense>

#include "sibf/types.hpp"

namespace sibf {

struct MetricReport {
  double si_sdr_db = 0.0;
  double sdr_db = 0.0;
  double snr_db = 0.0;
  double correlation = 0.0;  // |<e,s>| / (||e|| ||s||), in [0, 1]
  bool si_sdr_infinite = false;
  bool sdr_infinite = false;
};

// Scale-invariant SDR: 10 log10(||a s||^2 / ||e - a s||^2) with the
// projection gain a = <e,s>/||s||^2. Returns +inf when the residual
// vanishes. Throws ArgumentError on a zero reference or length mismatch.
double si_sdr(const Eigen::VectorXd& estimate, const Eigen::VectorXd& reference);

// 10 log10(||signal||^2 / ||noise||^2); +inf on zero noise.
double snr_db(const Eigen::VectorXd& signal_part,
              const Eigen::VectorXd& noise_part);

// Projects the estimate onto the reference image and treats the residual as
// distortion; assembles the full report.
MetricReport sdr_decomposition(const Eigen::VectorXd& estimate,
                               const Eigen::VectorXd& reference_image);

}  // namespace sibf

#endif  // SIBF_EVAL_HPP_
