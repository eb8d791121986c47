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

#include "sibf/maxsnr.hpp"

#include <cmath>

#include "sibf/errors.hpp"
#include "sibf/linalg.hpp"

namespace sibf {

namespace {

constexpr double kDegenerateGap = 1e-9;

Eigen::MatrixXcd masked_covariance(const Eigen::MatrixXcd& x,
                                   const Eigen::VectorXd& m, double denom) {
  const Eigen::MatrixXcd xw = x * m.cast<Complex>().asDiagonal();
  Eigen::MatrixXcd c = xw * x.adjoint() / denom;
  return (c + c.adjoint()) / 2.0;
}

double direct_denominator(const ModelConfig& cfg, double r, double abs2_y) {
  switch (cfg.kind) {
    case SourceModel::kTvGaussian:
      return std::pow(r, cfg.beta);
    case SourceModel::kBsLaplacian:
      return std::sqrt(cfg.alpha * r * r + abs2_y);
    case SourceModel::kTvT:
      return (cfg.nu * r * r + 2.0 * abs2_y) / (cfg.nu + 2.0);
  }
  throw ArgumentError("unknown source model");
}

}  // namespace

void MaskPair::validate() const {
  if (target.rows() != interference.rows() ||
      target.cols() != interference.cols())
    throw DimensionError("mask shapes differ");
  const auto in_range = [](const RealGrid& m) {
    return (m.array() >= 0.0).all() && (m.array() <= 1.0).all() &&
           m.array().isFinite().all();
  };
  if (!in_range(target) || !in_range(interference))
    throw ArgumentError("mask entries must lie in [0, 1]");
}

int DirectFilter::flagged_count() const {
  int n = 0;
  for (const auto s : status)
    if (s != BinStatus::kOk) ++n;
  return n;
}

std::vector<Eigen::MatrixXcd> weighted_covariance(const MultichannelScene& scene,
                                                  const RealGrid& c) {
  scene.validate();
  if (c.rows() != scene.bins() || c.cols() != scene.frames())
    throw DimensionError("weight grid does not match scene");
  if (!(c.array().isFinite().all() && (c.array() >= 0.0).all()))
    throw ArgumentError("weights must be finite and nonnegative");

  std::vector<Eigen::MatrixXcd> out(scene.bins());
  for (int f = 0; f < scene.bins(); ++f)
    out[f] = masked_covariance(scene.bin_matrix(f), c.row(f),
                               static_cast<double>(scene.frames()));
  return out;
}

RealGrid sibf_weights_direct(const ModelConfig& cfg, const RealGrid& r,
                             const Spectrogram& y1) {
  cfg.validate();
  if (cfg.kind != SourceModel::kTvGaussian &&
      (r.rows() != y1.rows() || r.cols() != y1.cols()))
    throw DimensionError("reference and y1 shapes differ");

  RealGrid c(r.rows(), r.cols());
  for (int f = 0; f < r.rows(); ++f) {
    for (int t = 0; t < r.cols(); ++t) {
      const double abs2_y =
          cfg.kind == SourceModel::kTvGaussian ? 0.0 : std::norm(y1(f, t));
      const double d = direct_denominator(cfg, r(f, t), abs2_y);
      c(f, t) = d <= cfg.eps ? 1.0 : cfg.eps / d;
    }
  }
  return c;
}

namespace {

// GEV with degenerate-spectrum detection; returns the min or max pair and
// sets uninformative when the whole generalized spectrum collapses.
EigenPair gev_checked(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                      bool minimum, bool* uninformative) {
  const EigenPair lo = gev_min_vector(a, b);
  const EigenPair hi = gev_max_vector(a, b);
  const double scale =
      std::max({std::abs(lo.value), std::abs(hi.value), 1e-300});
  *uninformative = (hi.value - lo.value) <= kDegenerateGap * scale;
  return minimum ? lo : hi;
}

}  // namespace

DirectFilter solve_direct_min(const MultichannelScene& scene,
                              const RealGrid& c) {
  const auto cov = weighted_covariance(scene, c);
  const auto phi_x = compute_covariance(scene);
  const int n = scene.num_channels();

  DirectFilter out;
  out.v1.assign(scene.bins(), Eigen::VectorXcd::Zero(n));
  out.status.assign(scene.bins(), BinStatus::kOk);
  for (int f = 0; f < scene.bins(); ++f) {
    try {
      bool uninformative = false;
      const EigenPair p = gev_checked(cov[f], phi_x[f], true, &uninformative);
      out.v1[f] = p.vector;
      if (uninformative) out.status[f] = BinStatus::kUninformative;
    } catch (const SingularityError&) {
      out.status[f] = BinStatus::kSingular;
    }
  }
  return out;
}

DirectFilter max_snr_bf(const MultichannelScene& scene, const MaskPair& masks) {
  scene.validate();
  masks.validate();
  if (masks.target.rows() != scene.bins() ||
      masks.target.cols() != scene.frames())
    throw DimensionError("mask grid does not match scene");
  const auto phi_x = compute_covariance(scene);
  const int n = scene.num_channels();

  DirectFilter out;
  out.v1.assign(scene.bins(), Eigen::VectorXcd::Zero(n));
  out.status.assign(scene.bins(), BinStatus::kOk);
  for (int f = 0; f < scene.bins(); ++f) {
    const double sum_t = masks.target.row(f).sum();
    const double sum_i = masks.interference.row(f).sum();
    if (!(sum_t > 0.0) || !(sum_i > 0.0)) {
      out.status[f] = BinStatus::kEmptyMask;
      continue;
    }
    const Eigen::MatrixXcd x = scene.bin_matrix(f);
    const Eigen::MatrixXcd phi_t =
        masked_covariance(x, masks.target.row(f), sum_t);
    const Eigen::MatrixXcd phi_i =
        masked_covariance(x, masks.interference.row(f), sum_i);
    try {
      bool uninformative = false;
      EigenPair p = gev_checked(phi_t, phi_i, false, &uninformative);
      const double s = std::real(
          (p.vector.adjoint() * phi_x[f] * p.vector)(0, 0));
      if (!(s > 0.0)) {
        out.status[f] = BinStatus::kSingular;
        continue;
      }
      out.v1[f] = p.vector / std::sqrt(s);
      if (uninformative) out.status[f] = BinStatus::kUninformative;
    } catch (const SingularityError&) {
      out.status[f] = BinStatus::kSingular;
    }
  }
  return out;
}

Spectrogram apply_direct_filter(const MultichannelScene& scene,
                                const DirectFilter& filter) {
  scene.validate();
  if (static_cast<int>(filter.v1.size()) != scene.bins())
    throw DimensionError("filter bin count does not match scene");
  Spectrogram y = Spectrogram::Zero(scene.bins(), scene.frames());
  for (int f = 0; f < scene.bins(); ++f) {
    if (filter.status[f] == BinStatus::kSingular ||
        filter.status[f] == BinStatus::kEmptyMask)
      continue;
    y.row(f) = filter.v1[f].adjoint() * scene.bin_matrix(f);
  }
  return y;
}

DirectExtraction run_sibf_direct(const MultichannelScene& scene,
                                 const RealGrid& ref, const ModelConfig& cfg,
                                 StartMode start, int iters) {
  cfg.validate();
  scene.validate();
  if (iters < 1) throw ArgumentError("iters must be >= 1");
  if (ref.rows() != scene.bins() || ref.cols() != scene.frames())
    throw DimensionError("reference shape does not match scene");

  ModelConfig start_cfg = cfg;
  start_cfg.kind = SourceModel::kTvGaussian;
  switch (cfg.kind) {
    case SourceModel::kTvGaussian: break;
    case SourceModel::kBsLaplacian:
      start_cfg.beta = start == StartMode::kBoost ? cfg.beta_best : 1.0;
      break;
    case SourceModel::kTvT:
      start_cfg.beta = start == StartMode::kBoost ? cfg.beta_best : 2.0;
      break;
  }

  DirectExtraction res;
  res.filter = solve_direct_min(
      scene, sibf_weights_direct(start_cfg, ref, Spectrogram()));
  res.y1 = apply_direct_filter(scene, res.filter);
  if (cfg.kind == SourceModel::kTvGaussian) return res;

  for (int l = 2; l <= iters; ++l) {
    res.y1 = apply_direct_filter(scene, res.filter);
    const RealGrid c = sibf_weights_direct(cfg, ref, res.y1);
    res.filter = solve_direct_min(scene, c);
  }
  return res;
}

}  // namespace sibf
