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

#include "sibf/eval.hpp"

#include <cmath>
#include <limits>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

// Residuals this far below the target energy are dot-product rounding, not
// signal; report the ratio as infinite.
constexpr double kTinyRatio = 1e-24;

double ratio_db(double num, double den) {
  if (den <= kTinyRatio * num)
    return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(num / den);
}

}  // namespace

double si_sdr(const Eigen::VectorXd& estimate,
              const Eigen::VectorXd& reference) {
  if (estimate.size() != reference.size())
    throw ArgumentError("signal lengths differ");
  const double ref_energy = reference.squaredNorm();
  if (!(ref_energy > 0.0)) throw ArgumentError("reference is zero");

  const double a = estimate.dot(reference) / ref_energy;
  const double target_energy = a * a * ref_energy;
  const double residual_energy = (estimate - a * reference).squaredNorm();
  return ratio_db(target_energy, residual_energy);
}

double snr_db(const Eigen::VectorXd& signal_part,
              const Eigen::VectorXd& noise_part) {
  if (signal_part.size() != noise_part.size())
    throw ArgumentError("signal lengths differ");
  return ratio_db(signal_part.squaredNorm(), noise_part.squaredNorm());
}

MetricReport sdr_decomposition(const Eigen::VectorXd& estimate,
                               const Eigen::VectorXd& reference_image) {
  if (estimate.size() != reference_image.size())
    throw ArgumentError("signal lengths differ");
  const double ref_energy = reference_image.squaredNorm();
  if (!(ref_energy > 0.0)) throw ArgumentError("reference image is zero");

  MetricReport rep;
  const double a = estimate.dot(reference_image) / ref_energy;
  const Eigen::VectorXd target = a * reference_image;
  const Eigen::VectorXd distortion = estimate - target;
  rep.sdr_db = ratio_db(target.squaredNorm(), distortion.squaredNorm());
  rep.sdr_infinite = std::isinf(rep.sdr_db);
  rep.si_sdr_db = rep.sdr_db;  // single-image span: the same projection
  rep.si_sdr_infinite = rep.sdr_infinite;
  rep.snr_db = rep.sdr_db;
  const double denom = estimate.norm() * reference_image.norm();
  rep.correlation =
      denom > 0.0 ? std::abs(estimate.dot(reference_image)) / denom : 0.0;
  return rep;
}

}  // namespace sibf
