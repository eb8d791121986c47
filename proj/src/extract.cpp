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

#include "sibf/extract.hpp"

#include <cmath>

#include "sibf/errors.hpp"
#include "sibf/linalg.hpp"

namespace sibf {

namespace {

Eigen::MatrixXcd weighted_bin_covariance(const Eigen::MatrixXcd& x,
                                         const Eigen::VectorXd& w) {
  const Eigen::MatrixXcd xw = x * w.cast<Complex>().asDiagonal();
  Eigen::MatrixXcd c = xw * x.adjoint() / static_cast<double>(x.cols());
  return (c + c.adjoint()) / 2.0;
}

double start_exponent(const ModelConfig& cfg, StartMode start) {
  switch (cfg.kind) {
    case SourceModel::kTvGaussian:
      return cfg.beta;  // the closed form is its own start
    case SourceModel::kBsLaplacian:
      return start == StartMode::kBoost ? cfg.beta_best : 1.0;
    case SourceModel::kTvT:
      return start == StartMode::kBoost ? cfg.beta_best : 2.0;
  }
  throw ArgumentError("unknown source model");
}

// Sum of per-bin objective values over bins not flagged.
double summed_objective(const ModelConfig& cfg, const RealGrid& ref,
                        const Spectrogram& y1,
                        const std::vector<uint8_t>& flagged) {
  const Eigen::VectorXd per_bin = objective_value(cfg, ref, y1);
  double sum = 0.0;
  for (int f = 0; f < per_bin.size(); ++f)
    if (!flagged[f]) sum += per_bin[f];
  return sum;
}

}  // namespace

StartMode start_mode_from_string(const std::string& name) {
  if (name == "boost") return StartMode::kBoost;
  if (name == "model-specific" || name == "model_specific")
    return StartMode::kModelSpecific;
  throw ArgumentError("unknown start mode: " + name);
}

ExtractionResult estimate_filter(const WhitenedScene& ws, const RealGrid& ref,
                                 const ModelConfig& cfg, StartMode start,
                                 int iters) {
  cfg.validate();
  ws.u.validate();
  if (iters < 1) throw ArgumentError("iters must be >= 1");
  const int bins = ws.u.bins();
  const int frames = ws.u.frames();
  const int n = ws.u.num_channels();
  if (ref.rows() != bins || ref.cols() != frames)
    throw DimensionError("reference shape does not match scene");

  ExtractionResult res;
  res.w1.assign(bins, Eigen::VectorXcd::Unit(n, 0));
  res.y1 = Spectrogram::Zero(bins, frames);
  res.flagged.assign(bins, 0);
  for (int f = 0; f < bins; ++f)
    if (ws.zero_bin[f] || !(ref.row(f).maxCoeff() > 0.0)) res.flagged[f] = 1;

  std::vector<Eigen::MatrixXcd> u(bins);
  for (int f = 0; f < bins; ++f)
    if (!res.flagged[f]) u[f] = ws.u.bin_matrix(f);

  auto project = [&](Spectrogram& y) {
    for (int f = 0; f < bins; ++f)
      if (!res.flagged[f]) y.row(f) = res.w1[f].adjoint() * u[f];
  };

  // Floored whitened directions carry no signal; the eigenproblem is solved
  // on the retained subspace (the trailing rank rows) and embedded back.
  auto solve_bin = [&](int f, const Eigen::VectorXd& weights) {
    const int rank = ws.rank[f];
    const Eigen::MatrixXcd sub = u[f].bottomRows(rank);
    const Eigen::VectorXcd w =
        eig_min_vector(weighted_bin_covariance(sub, weights)).vector;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(n);
    full.tail(rank) = w;
    return full;
  };

  // Iteration 1: TV Gaussian closed form with the start exponent.
  const RealGrid start_w =
      model_weights_gaussian(ref, start_exponent(cfg, start), cfg.eps);
  for (int f = 0; f < bins; ++f) {
    if (res.flagged[f]) continue;
    res.w1[f] = solve_bin(f, start_w.row(f));
  }
  {
    Spectrogram y = Spectrogram::Zero(bins, frames);
    project(y);
    res.objective_trace.push_back(summed_objective(cfg, ref, y, res.flagged));
    res.y1 = std::move(y);
  }

  if (cfg.kind == SourceModel::kTvGaussian) return res;  // closed form

  // Iterations 2..L: recompute y1, rebuild the weighted covariance from the
  // model weights, take its minimum eigenvector. res.y1 keeps the value used
  // to build the last weights; the tail of the loop only refreshes it for
  // the objective trace.
  for (int l = 2; l <= iters; ++l) {
    project(res.y1);
    const RealGrid w = model_weights(cfg, ref, res.y1);
    for (int f = 0; f < bins; ++f) {
      if (res.flagged[f]) continue;
      res.w1[f] = solve_bin(f, w.row(f));
    }
    Spectrogram y_now = Spectrogram::Zero(bins, frames);
    project(y_now);
    res.objective_trace.push_back(
        summed_objective(cfg, ref, y_now, res.flagged));
  }
  return res;
}

ExtractionResult scale_output(ExtractionResult res,
                              const MultichannelScene& scene, int mic_index) {
  scene.validate();
  if (mic_index < 0 || mic_index >= scene.num_channels())
    throw ArgumentError("mic_index out of range");
  const int bins = scene.bins();
  const int frames = scene.frames();
  if (res.y1.rows() != bins || res.y1.cols() != frames)
    throw DimensionError("extraction result does not match scene");

  const Spectrogram& xm = scene.channels[mic_index];
  res.gamma1 = Eigen::VectorXcd::Zero(bins);
  res.output = Spectrogram::Zero(bins, frames);
  for (int f = 0; f < bins; ++f) {
    if (res.flagged[f]) continue;
    res.gamma1[f] =
        (xm.row(f).array() * res.y1.row(f).array().conjugate()).mean();
    res.output.row(f) = res.gamma1[f] * res.y1.row(f);
  }
  return res;
}

ExtractionResult run_sibf(const MultichannelScene& scene, const RealGrid& ref,
                          const ModelConfig& cfg, StartMode start, int iters,
                          int mic_index) {
  const WhitenedScene ws = whiten_scene(scene);
  ExtractionResult res = estimate_filter(ws, ref, cfg, start, iters);
  return scale_output(std::move(res), scene, mic_index);
}

}  // namespace sibf
