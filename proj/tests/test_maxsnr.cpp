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
#include <random>

#include "doctest.h"
#include "sibf/errors.hpp"
#include "sibf/linalg.hpp"
#include "sibf/sim.hpp"

using namespace sibf;

namespace {

MultichannelScene random_scene(int channels, int bins, int frames,
                               std::uint64_t seed) {
  auto rng = substream(seed, "maxsnr_scene");
  std::normal_distribution<double> gauss;
  MultichannelScene scene;
  scene.channels.assign(channels, Spectrogram(bins, frames));
  for (auto& c : scene.channels)
    for (int f = 0; f < bins; ++f)
      for (int t = 0; t < frames; ++t) c(f, t) = Complex(gauss(rng), gauss(rng));
  return scene;
}

// Target active on the first half of the frames, interference only on the
// second half; masks are the exact segment indicators.
struct SegmentScene {
  MultichannelScene scene;
  MaskPair masks;
  int split;
};

SegmentScene make_segment_scene(std::uint64_t seed, int channels = 3,
                                int bins = 5, int frames = 256) {
  auto rng = substream(seed, "segments");
  std::normal_distribution<double> gauss;
  SegmentScene out;
  out.split = frames / 2;
  out.scene.channels.assign(channels, Spectrogram::Zero(bins, frames));
  out.masks.target = RealGrid::Zero(bins, frames);
  out.masks.interference = RealGrid::Zero(bins, frames);

  for (int f = 0; f < bins; ++f) {
    Eigen::VectorXcd a(channels), b(channels);
    for (int i = 0; i < channels; ++i) {
      a[i] = Complex(gauss(rng), gauss(rng));
      b[i] = Complex(gauss(rng), gauss(rng));
    }
    for (int t = 0; t < frames; ++t) {
      const bool target_frame = t < out.split;
      out.masks.target(f, t) = target_frame ? 1.0 : 0.0;
      out.masks.interference(f, t) = target_frame ? 0.0 : 1.0;
      // A directional noise source is always on with a small diffuse floor;
      // the target source only plays in its segment.
      const Complex noise(gauss(rng), gauss(rng));
      const Complex target(gauss(rng), gauss(rng));
      for (int i = 0; i < channels; ++i) {
        out.scene.channels[i](f, t) =
            0.3 * b[i] * noise + 0.2 * Complex(gauss(rng), gauss(rng));
        if (target_frame) out.scene.channels[i](f, t) += a[i] * target;
      }
    }
  }
  return out;
}

double collinearity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::abs(a.dot(b)) / (a.norm() * b.norm());
}

}  // namespace

TEST_SUITE("maxsnr") {

TEST_CASE("weighted covariance") {
  const MultichannelScene scene = random_scene(3, 4, 64, 71);

  SUBCASE("unit weights reproduce the plain covariance") {
    const RealGrid ones = RealGrid::Ones(4, 64);
    const auto weighted = weighted_covariance(scene, ones);
    const auto plain = compute_covariance(scene);
    for (int f = 0; f < 4; ++f)
      CHECK((weighted[f] - plain[f]).cwiseAbs().maxCoeff() < 1e-12);
  }

  SUBCASE("zero weights give the zero matrix") {
    const auto weighted = weighted_covariance(scene, RealGrid::Zero(4, 64));
    for (const auto& c : weighted) CHECK(c.cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("random weights match the naive triple loop") {
    auto rng = substream(72, "weights");
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    RealGrid c(4, 64);
    for (int f = 0; f < 4; ++f)
      for (int t = 0; t < 64; ++t) c(f, t) = uni(rng);
    const auto weighted = weighted_covariance(scene, c);
    for (int f = 0; f < 4; ++f) {
      Eigen::MatrixXcd naive = Eigen::MatrixXcd::Zero(3, 3);
      for (int t = 0; t < 64; ++t)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            naive(i, j) += c(f, t) * scene.channels[i](f, t) *
                           std::conj(scene.channels[j](f, t));
      naive /= 64.0;
      CHECK((naive - weighted[f]).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("direct weights follow the clipped reciprocal") {
  ModelConfig cfg;
  cfg.kind = SourceModel::kTvGaussian;

  // Clip active whenever r^beta <= eps.
  CHECK(sibf_weights_direct(cfg, RealGrid::Zero(1, 1), Spectrogram())(0, 0) ==
        doctest::Approx(1.0));
  // r = 1, beta = 8: c = eps.
  CHECK(sibf_weights_direct(cfg, RealGrid::Ones(1, 1), Spectrogram())(0, 0) ==
        doctest::Approx(1e-7));

  SUBCASE("large beta approaches a binary mask") {
    cfg.beta = 64.0;
    RealGrid r(1, 2);
    r << 0.5, 1.5;
    const RealGrid c = sibf_weights_direct(cfg, r, Spectrogram());
    CHECK(c(0, 0) == doctest::Approx(1.0));  // 0.5^64 is far below eps
    CHECK(c(0, 1) < 1e-11);                  // and 1.5^64 is huge
  }

  SUBCASE("raising eps raises the clipped fraction monotonically") {
    auto rng = substream(73, "eps");
    std::uniform_real_distribution<double> uni(0.0, 2.0);
    RealGrid r(8, 64);
    for (int f = 0; f < 8; ++f)
      for (int t = 0; t < 64; ++t) r(f, t) = uni(rng);
    cfg.beta = 8.0;
    int last = -1;
    for (const double eps : {1e-7, 1e-4, 1e-2, 1.0, 1e4}) {
      cfg.eps = eps;
      const RealGrid c = sibf_weights_direct(cfg, r, Spectrogram());
      const int clipped = static_cast<int>((c.array() == 1.0).count());
      CHECK(clipped >= last);
      last = clipped;
    }
    CHECK(last == 8 * 64);  // eps = 1e4 tops r^8 < 2^8 everywhere
  }
}

TEST_CASE("uniform weights are the documented degenerate case") {
  const MultichannelScene scene = random_scene(2, 3, 128, 74);
  const DirectFilter f = solve_direct_min(scene, RealGrid::Ones(3, 128));
  for (int b = 0; b < 3; ++b) {
    CHECK(f.status[b] == BinStatus::kUninformative);
    // The constraint normalization still holds on the tie-break vector.
    const auto phi = compute_covariance(scene);
    const double s = std::real((f.v1[b].adjoint() * phi[b] * f.v1[b])(0, 0));
    CHECK(s == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("interference confined to channel 2 is nulled") {
  // Diagonal construction: channel 1 holds the target, channel 2 the
  // interference. With c = m_I the minimizer must null channel 2; the 2x2
  // generalized problem solves elementwise.
  auto rng = substream(75, "null2");
  std::normal_distribution<double> gauss;
  const int frames = 128;
  MultichannelScene scene;
  scene.channels.assign(2, Spectrogram::Zero(1, frames));
  RealGrid m_i = RealGrid::Zero(1, frames);
  for (int t = 0; t < frames; ++t) {
    const bool noise_frame = t % 2 == 0;
    m_i(0, t) = noise_frame ? 1.0 : 0.0;
    scene.channels[1](0, t) = Complex(gauss(rng), gauss(rng));  // always on
    if (!noise_frame)
      scene.channels[0](0, t) = Complex(gauss(rng), gauss(rng));
  }
  const DirectFilter f = solve_direct_min(scene, m_i);
  REQUIRE(f.status[0] == BinStatus::kOk);
  CHECK(std::abs(f.v1[0][1]) < 1e-8);
  CHECK(std::abs(f.v1[0][0]) > 0.1);
}

TEST_CASE("max snr beamformer") {
  const SegmentScene seg = make_segment_scene(76);

  SUBCASE("raises the segment SNR above the best channel") {
    const DirectFilter f = max_snr_bf(seg.scene, seg.masks);
    const Spectrogram y = apply_direct_filter(seg.scene, f);

    const auto segment_snr = [&](auto&& value_at) {
      double target = 0.0, noise = 0.0;
      for (int b = 0; b < seg.scene.bins(); ++b)
        for (int t = 0; t < seg.scene.frames(); ++t) {
          const double p = std::norm(value_at(b, t));
          (t < seg.split ? target : noise) += p;
        }
      // Both segments hold noise; the first also holds the target. The
      // ratio still orders beamformers by interference suppression.
      return target / noise;
    };

    double best_channel = 0.0;
    for (int i = 0; i < seg.scene.num_channels(); ++i) {
      const auto& ch = seg.scene.channels[i];
      best_channel = std::max(
          best_channel,
          segment_snr([&](int b, int t) { return ch(b, t); }));
    }
    const double ours = segment_snr([&](int b, int t) { return y(b, t); });
    CHECK(ours > best_channel);
  }

  SUBCASE("identical masks collapse the spectrum and are flagged") {
    MaskPair same;
    same.target = RealGrid::Ones(seg.scene.bins(), seg.scene.frames());
    same.interference = same.target;
    const DirectFilter f = max_snr_bf(seg.scene, same);
    for (const auto s : f.status) CHECK(s == BinStatus::kUninformative);
  }

  SUBCASE("empty mask rows are flagged") {
    MaskPair masks = seg.masks;
    masks.target.row(1).setZero();
    const DirectFilter f = max_snr_bf(seg.scene, masks);
    CHECK(f.status[1] == BinStatus::kEmptyMask);
    CHECK(f.v1[1].cwiseAbs().maxCoeff() == 0.0);
    CHECK(f.status[0] == BinStatus::kOk);
  }

  SUBCASE("out-of-range masks rejected") {
    MaskPair masks = seg.masks;
    masks.target(0, 0) = 1.5;
    CHECK_THROWS_AS(max_snr_bf(seg.scene, masks), ArgumentError);
  }
}

TEST_CASE("max form and min form give collinear filters") {
  for (const std::uint64_t seed : {81, 82, 83}) {
    const SegmentScene seg = make_segment_scene(seed);
    const DirectFilter max_form = max_snr_bf(seg.scene, seg.masks);
    // Min form: minimize interference-weighted power under the observation
    // power constraint, with c = m_I.
    const DirectFilter min_form =
        solve_direct_min(seg.scene, seg.masks.interference);
    for (int b = 0; b < seg.scene.bins(); ++b) {
      REQUIRE(max_form.status[b] == BinStatus::kOk);
      REQUIRE(min_form.status[b] == BinStatus::kOk);
      CHECK(collinearity(max_form.v1[b], min_form.v1[b]) > 1.0 - 1e-8);
    }
  }
}

TEST_CASE("whitened and direct SIBF routes agree") {
  const MultichannelScene scene = random_scene(3, 6, 256, 84);
  auto rng = substream(85, "ref");
  std::uniform_real_distribution<double> uni(0.2, 2.0);
  RealGrid ref(6, 256);
  for (int f = 0; f < 6; ++f)
    for (int t = 0; t < 256; ++t) ref(f, t) = uni(rng);
  ref = normalize_reference(ref);

  for (const SourceModel kind :
       {SourceModel::kTvGaussian, SourceModel::kBsLaplacian, SourceModel::kTvT}) {
    ModelConfig cfg;
    cfg.kind = kind;
    const ExtractionResult whitened =
        estimate_filter(whiten_scene(scene), ref, cfg, StartMode::kBoost, 6);
    const DirectExtraction direct =
        run_sibf_direct(scene, ref, cfg, StartMode::kBoost, 6);

    for (int f = 0; f < scene.bins(); ++f) {
      const double err =
          (whitened.y1.row(f).cwiseAbs() - direct.y1.row(f).cwiseAbs())
              .norm() /
          whitened.y1.row(f).norm();
      CHECK(err < 1e-6);
    }
  }
}

}  // TEST_SUITE
