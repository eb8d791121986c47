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

#include "sibf/sim.hpp"

#include <cmath>

#include "doctest.h"
#include "sibf/errors.hpp"
#include "sibf/eval.hpp"

using namespace sibf;

namespace {

SceneSpec fast_spec(std::uint64_t seed) {
  SceneSpec spec;
  spec.seed = seed;
  spec.duration = 1.5;
  spec.stft.fft_size = 256;
  spec.stft.hop = 64;
  return spec;
}

}  // namespace

TEST_SUITE("sim") {

TEST_CASE("same seed gives bit-identical scenes") {
  const auto a = generate_scene(fast_spec(101));
  const auto b = generate_scene(fast_spec(101));
  for (int i = 0; i < a.first.num_channels(); ++i)
    CHECK(a.first.channels[i] == b.first.channels[i]);
  CHECK(a.second.image_signals == b.second.image_signals);

  const auto c = generate_scene(fast_spec(102));
  CHECK((a.first.channels[0] - c.first.channels[0]).cwiseAbs().maxCoeff() >
        0.0);
}

TEST_CASE("zero multiplier reduces the observation to the target image") {
  SceneSpec spec = fast_spec(103);
  spec.noise_multiplier = 0.0;
  spec.sensor_noise = 0.0;
  const auto [scene, truth] = generate_scene(spec);
  for (int i = 0; i < scene.num_channels(); ++i)
    CHECK((scene.channels[i] - truth.target_image.channels[i])
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("mixing matrices are well conditioned") {
  for (const MixingKind mixing : {MixingKind::kInstantaneousReal,
                                  MixingKind::kInstantaneousComplexPerBin}) {
    SceneSpec spec = fast_spec(104);
    spec.mixing = mixing;
    spec.n_sources = 3;
    const auto [scene, truth] = generate_scene(spec);
    for (const auto& a : truth.mixing) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
      CHECK(svd.singularValues().maxCoeff() /
                svd.singularValues().minCoeff() < 1e6);
    }
  }
}

TEST_CASE("sources from disjoint substreams are near-uncorrelated") {
  SceneSpec spec = fast_spec(105);
  spec.duration = 4.0;  // enough frames for the estimate to settle
  spec.n_sources = 3;
  spec.kinds = {SourceKind::kSpeechLike, SourceKind::kBabbleLike,
                SourceKind::kStationaryNoise};
  const auto [scene, truth] = generate_scene(spec);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const auto& x = truth.source_signals[a];
      const auto& y = truth.source_signals[b];
      const double corr = std::abs(x.dot(y)) / (x.norm() * y.norm());
      CHECK(corr < 0.05);
    }
}

TEST_CASE("scenario suite is a 6 dB ladder over a shared target") {
  SceneSpec base = fast_spec(0);
  const auto suite = scenario_suite(106, base);
  REQUIRE(suite.size() == 4);

  // Target image identical across scenes.
  for (size_t i = 1; i < suite.size(); ++i)
    for (int c = 0; c < suite[0].first.num_channels(); ++c)
      CHECK(suite[i].second.target_image.channels[c] ==
            suite[0].second.target_image.channels[c]);

  // Measured input SNR drops by 6.02 dB per step.
  std::vector<double> snrs;
  for (const auto& [scene, truth] : suite) {
    double sig = 0.0, noise = 0.0;
    for (int c = 0; c < scene.num_channels(); ++c) {
      sig += truth.target_image.channels[c].squaredNorm();
      noise += (scene.channels[c] - truth.target_image.channels[c])
                   .squaredNorm();
    }
    snrs.push_back(10.0 * std::log10(sig / noise));
  }
  for (size_t i = 1; i < snrs.size(); ++i)
    CHECK(snrs[i - 1] - snrs[i] == doctest::Approx(6.02).epsilon(0.05));
}

TEST_CASE("invalid specs rejected") {
  SceneSpec spec = fast_spec(107);
  spec.n_sources = 5;  // more sources than mics
  CHECK_THROWS_AS(generate_scene(spec), ArgumentError);

  spec = fast_spec(108);
  spec.duration = 0.001;  // shorter than one STFT frame
  CHECK_THROWS_AS(generate_scene(spec), ArgumentError);
}

}  // TEST_SUITE
