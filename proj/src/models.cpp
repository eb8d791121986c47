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

#include "sibf/models.hpp"

#include <cmath>

#include "sibf/errors.hpp"

namespace sibf {

SourceModel source_model_from_string(const std::string& name) {
  if (name == "gauss" || name == "tv_gaussian") return SourceModel::kTvGaussian;
  if (name == "laplace" || name == "bs_laplacian")
    return SourceModel::kBsLaplacian;
  if (name == "student-t" || name == "tv_t") return SourceModel::kTvT;
  throw ArgumentError("unknown source model: " + name);
}

std::string to_string(SourceModel kind) {
  switch (kind) {
    case SourceModel::kTvGaussian: return "gauss";
    case SourceModel::kBsLaplacian: return "laplace";
    case SourceModel::kTvT: return "student-t";
  }
  return "?";
}

void ModelConfig::validate() const {
  if (!(eps > 0)) throw ArgumentError("eps must be positive");
  if (!(beta > 0)) throw ArgumentError("beta must be positive");
  if (!(beta_best > 0)) throw ArgumentError("beta_best must be positive");
  if (!(nu > 0)) throw ArgumentError("nu must be positive");
  if (!(alpha >= 0)) throw ArgumentError("alpha must be nonnegative");
}

namespace {

void check_reference(const RealGrid& r) {
  if (!((r.array() >= 0.0).all() && r.array().isFinite().all()))
    throw ArgumentError("reference must be nonnegative and finite");
}

void check_same_shape(const RealGrid& r, const Spectrogram& y1) {
  if (r.rows() != y1.rows() || r.cols() != y1.cols())
    throw DimensionError("reference and y1 shapes differ");
}

}  // namespace

RealGrid normalize_reference(const RealGrid& raw) {
  check_reference(raw);
  RealGrid out = raw;
  for (int f = 0; f < out.rows(); ++f) {
    const double rms = std::sqrt(out.row(f).squaredNorm() / out.cols());
    if (rms > 0.0) out.row(f) /= rms;
  }
  return out;
}

RealGrid model_weights_gaussian(const RealGrid& r, double beta, double eps) {
  check_reference(r);
  return r.array().pow(beta).max(eps).inverse().matrix();
}

RealGrid model_weights_bs_laplacian(const RealGrid& r, const Spectrogram& y1,
                                    double alpha, double eps) {
  check_reference(r);
  check_same_shape(r, y1);
  const Eigen::ArrayXXd b =
      (alpha * r.array().square() + y1.array().abs2()).sqrt();
  return b.max(eps).inverse().matrix();
}

RealGrid model_weights_tv_t(const RealGrid& r, const Spectrogram& y1,
                            double nu, double eps) {
  check_reference(r);
  check_same_shape(r, y1);
  const Eigen::ArrayXXd xi = nu / (nu + 2.0) * r.array().square() +
                             2.0 / (nu + 2.0) * y1.array().abs2();
  return xi.max(eps).inverse().matrix();
}

RealGrid model_weights(const ModelConfig& cfg, const RealGrid& r,
                       const Spectrogram& y1) {
  cfg.validate();
  switch (cfg.kind) {
    case SourceModel::kTvGaussian:
      return model_weights_gaussian(r, cfg.beta, cfg.eps);
    case SourceModel::kBsLaplacian:
      return model_weights_bs_laplacian(r, y1, cfg.alpha, cfg.eps);
    case SourceModel::kTvT:
      return model_weights_tv_t(r, y1, cfg.nu, cfg.eps);
  }
  throw ArgumentError("unknown source model");
}

Eigen::VectorXd objective_value(const ModelConfig& cfg, const RealGrid& r,
                                const Spectrogram& y1) {
  cfg.validate();
  check_reference(r);
  check_same_shape(r, y1);
  const int bins = static_cast<int>(r.rows());
  const int frames = static_cast<int>(r.cols());
  const double eps = cfg.eps;
  Eigen::VectorXd obj = Eigen::VectorXd::Zero(bins);

  for (int f = 0; f < bins; ++f) {
    double acc = 0.0;
    for (int t = 0; t < frames; ++t) {
      const double p = std::norm(y1(f, t));
      const double rr = r(f, t);
      switch (cfg.kind) {
        case SourceModel::kTvGaussian:
          acc += p / std::max(std::pow(rr, cfg.beta), eps);
          break;
        case SourceModel::kBsLaplacian: {
          // sqrt(z) with its quadratic majorizer below the clip point, so
          // the clipped update rule stays monotone on this value.
          const double z = cfg.alpha * rr * rr + p;
          const double b = std::sqrt(z);
          acc += b >= eps ? b : z / (2.0 * eps) + eps / 2.0;
          break;
        }
        case SourceModel::kTvT: {
          // log(xi) with its linear majorizer below the clip point, plus the
          // reference-only offset that makes the unclipped value equal the
          // likelihood form log(1 + 2|y|^2 / (nu r^2)).
          const double xi = cfg.nu / (cfg.nu + 2.0) * rr * rr +
                            2.0 / (cfg.nu + 2.0) * p;
          const double h = xi >= eps ? std::log(xi)
                                     : xi / eps - 1.0 + std::log(eps);
          acc += h + std::log(cfg.nu + 2.0) -
                 std::log(std::max(cfg.nu * rr * rr, eps));
          break;
        }
      }
    }
    obj[f] = acc / frames;
  }
  return obj;
}

}  // namespace sibf
