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

#ifndef SIBF_SIM_HPP_
#define SIBF_SIM_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sibf/tfr.hpp"
#include "sibf/types.hpp"
#include "sibf/whiten.hpp"

namespace sibf {

enum class SourceKind { kSpeechLike, kToneComplex, kStationaryNoise, kBabbleLike };
enum class MixingKind { kInstantaneousReal, kInstantaneousComplexPerBin };

SourceKind source_kind_from_string(const std::string& name);
std::string to_string(SourceKind kind);

struct SceneSpec {
  int n_mics = 3;
  int n_sources = 2;
  double duration = 3.0;  // seconds
  double sample_rate = 16000.0;
  std::vector<SourceKind> kinds;  // padded: speech_like, then stationary_noise
  MixingKind mixing = MixingKind::kInstantaneousComplexPerBin;
  double noise_multiplier = 1.0;  // scales sources 2..M
  std::uint64_t seed = 0;
  StftConfig stft;
  // Independent per-mic noise floor (relative amplitude) keeping the per-bin
  // covariance full rank when n_sources < n_mics.
  double sensor_noise = 1e-4;

  void validate() const;
};

struct GroundTruth {
  std::vector<Spectrogram> sources;          // clean S_k per source
  MultichannelScene target_image;            // source 1 as seen at each mic
  std::vector<Eigen::MatrixXcd> mixing;      // per-bin mics x sources
  std::vector<Eigen::VectorXd> source_signals;  // time domain, unit RMS
  Eigen::MatrixXd image_signals;             // samples x mics, time domain
};

// Deterministic given spec.seed. Observation per bin is the mixed sources
// plus the sensor floor; the unscaled target image is retained.
std::pair<MultichannelScene, GroundTruth> generate_scene(const SceneSpec& spec);

// The four-scenario noise ladder (multipliers 0.25, 0.5, 1.0, 2.0) over one
// shared seed: identical target image, only the noise scale changes.
std::vector<std::pair<MultichannelScene, GroundTruth>> scenario_suite(
    std::uint64_t base_seed, SceneSpec base = {});

// Deterministic RNG substream derived from a seed and a stream name.
std::mt19937_64 substream(std::uint64_t seed, const std::string& name);

}  // namespace sibf

#endif  // SIBF_SIM_HPP_
