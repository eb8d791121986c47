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
#include <random>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

constexpr double kMaxCondition = 1e6;
constexpr int kMaxMixingRetries = 64;
constexpr int kAnchorHop = 32;  // mixing anchor spacing in bins

double fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return static_cast<double>(h);
}

Eigen::VectorXd unit_rms(Eigen::VectorXd x) {
  const double rms = std::sqrt(x.squaredNorm() / x.size());
  if (rms > 0.0) x /= rms;
  return x;
}

Eigen::VectorXd white_noise(std::mt19937_64& rng, long n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (long i = 0; i < n; ++i) x[i] = gauss(rng);
  return x;
}

// White noise through a slowly sweeping two-pole resonator, with a
// syllabic-rate squared-sine envelope that leaves pause-like gaps.
Eigen::VectorXd speech_like(std::mt19937_64& rng, long n, double sr) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double f_center = 500.0 + 700.0 * uni(rng);
  const double f_span = 200.0 + 400.0 * uni(rng);
  const double sweep_hz = 0.2 + 0.4 * uni(rng);
  const double syllable_hz = 2.0 + 2.0 * uni(rng);
  const double phi1 = 2.0 * M_PI * uni(rng);
  const double phi2 = 2.0 * M_PI * uni(rng);
  const double radius = 0.96;

  Eigen::VectorXd x = white_noise(rng, n);
  Eigen::VectorXd y(n);
  double y1 = 0.0, y2 = 0.0;
  for (long i = 0; i < n; ++i) {
    const double fc =
        f_center + f_span * std::sin(2.0 * M_PI * sweep_hz * i / sr + phi1);
    const double theta = 2.0 * M_PI * fc / sr;
    const double a1 = 2.0 * radius * std::cos(theta);
    const double a2 = -radius * radius;
    const double v = x[i] + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = v;
    const double env =
        std::pow(0.5 + 0.5 * std::sin(2.0 * M_PI * syllable_hz * i / sr + phi2), 2.0);
    y[i] = v * (0.05 + 0.95 * env) + 0.01 * x[i];
  }
  return unit_rms(std::move(y));
}

Eigen::VectorXd tone_complex(std::mt19937_64& rng, long n, double sr) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double f0 = 150.0 + 250.0 * uni(rng);
  const int harmonics = 5;
  Eigen::VectorXd phase(harmonics);
  for (int h = 0; h < harmonics; ++h) phase[h] = 2.0 * M_PI * uni(rng);

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (long i = 0; i < n; ++i) {
    const double vibrato = 1.0 + 0.01 * std::sin(2.0 * M_PI * 5.0 * i / sr);
    for (int h = 0; h < harmonics; ++h)
      y[i] += std::sin(2.0 * M_PI * (h + 1) * f0 * vibrato * i / sr + phase[h]) /
              (h + 1);
  }
  return unit_rms(std::move(y));
}

// Broadband stationary noise: lowpassed white plus a flat floor.
Eigen::VectorXd stationary_noise(std::mt19937_64& rng, long n) {
  Eigen::VectorXd x = white_noise(rng, n);
  Eigen::VectorXd y(n);
  double state = 0.0;
  for (long i = 0; i < n; ++i) {
    state = 0.8 * state + x[i];
    y[i] = state + 0.3 * x[i];
  }
  return unit_rms(std::move(y));
}

Eigen::VectorXd babble_like(std::mt19937_64& rng, long n, double sr) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < 4; ++k) y += speech_like(rng, n, sr);
  return unit_rms(std::move(y));
}

Eigen::VectorXd render_source(SourceKind kind, std::mt19937_64& rng, long n,
                              double sr) {
  switch (kind) {
    case SourceKind::kSpeechLike: return speech_like(rng, n, sr);
    case SourceKind::kToneComplex: return tone_complex(rng, n, sr);
    case SourceKind::kStationaryNoise: return stationary_noise(rng, n);
    case SourceKind::kBabbleLike: return babble_like(rng, n, sr);
  }
  throw ArgumentError("unknown source kind");
}

double condition_number(const Eigen::MatrixXcd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const double smin = svd.singularValues().minCoeff();
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return svd.singularValues().maxCoeff() / smin;
}

// Per-bin mixing matrices, frequency-smooth via linear interpolation of
// random anchors. Regenerated until every bin is well conditioned.
std::vector<Eigen::MatrixXcd> draw_mixing(const SceneSpec& spec, int bins,
                                          std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int n = spec.n_mics;
  const int m = spec.n_sources;

  for (int attempt = 0; attempt < kMaxMixingRetries; ++attempt) {
    std::vector<Eigen::MatrixXcd> mix(bins);
    if (spec.mixing == MixingKind::kInstantaneousReal) {
      Eigen::MatrixXcd a(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = Complex(gauss(rng), 0.0);
      if (condition_number(a) >= kMaxCondition) continue;
      for (int f = 0; f < bins; ++f) mix[f] = a;
      return mix;
    }

    const int n_anchors = (bins - 1) / kAnchorHop + 2;
    std::vector<Eigen::MatrixXcd> anchors(n_anchors);
    for (auto& a : anchors) {
      a.resize(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
    }
    bool ok = true;
    for (int f = 0; f < bins; ++f) {
      const int seg = f / kAnchorHop;
      const double frac = static_cast<double>(f % kAnchorHop) / kAnchorHop;
      mix[f] = (1.0 - frac) * anchors[seg] + frac * anchors[seg + 1];
      if (condition_number(mix[f]) >= kMaxCondition) {
        ok = false;
        break;
      }
    }
    if (ok) return mix;
  }
  throw SingularityError("could not draw a full-rank mixing system");
}

}  // namespace

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "speech_like" || name == "speech") return SourceKind::kSpeechLike;
  if (name == "tone_complex" || name == "tone") return SourceKind::kToneComplex;
  if (name == "stationary_noise" || name == "noise")
    return SourceKind::kStationaryNoise;
  if (name == "babble_like" || name == "babble") return SourceKind::kBabbleLike;
  throw ArgumentError("unknown source kind: " + name);
}

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::kSpeechLike: return "speech_like";
    case SourceKind::kToneComplex: return "tone_complex";
    case SourceKind::kStationaryNoise: return "stationary_noise";
    case SourceKind::kBabbleLike: return "babble_like";
  }
  return "?";
}

void SceneSpec::validate() const {
  if (n_mics < 1) throw ArgumentError("need at least one microphone");
  if (n_sources < 1) throw ArgumentError("need at least one source");
  if (n_sources > n_mics)
    throw ArgumentError("n_sources must not exceed n_mics");
  if (!(duration > 0)) throw ArgumentError("duration must be positive");
  if (!(sample_rate > 0)) throw ArgumentError("sample_rate must be positive");
  if (!(noise_multiplier >= 0))
    throw ArgumentError("noise_multiplier must be nonnegative");
  if (!(sensor_noise >= 0))
    throw ArgumentError("sensor_noise must be nonnegative");
  stft.validate();
}

std::mt19937_64 substream(std::uint64_t seed, const std::string& name) {
  const auto h = static_cast<std::uint64_t>(fnv1a(name));
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  return std::mt19937_64(seq);
}

std::pair<MultichannelScene, GroundTruth> generate_scene(const SceneSpec& spec) {
  spec.validate();
  std::vector<SourceKind> kinds = spec.kinds;
  while (static_cast<int>(kinds.size()) < spec.n_sources)
    kinds.push_back(kinds.empty() ? SourceKind::kSpeechLike
                                  : SourceKind::kStationaryNoise);

  const long samples =
      static_cast<long>(std::llround(spec.duration * spec.sample_rate));
  if (samples < spec.stft.fft_size)
    throw ArgumentError("duration too short for the configured STFT");

  GroundTruth truth;
  truth.source_signals.resize(spec.n_sources);
  truth.sources.resize(spec.n_sources);
  for (int k = 0; k < spec.n_sources; ++k) {
    auto rng = substream(spec.seed, "source_" + std::to_string(k));
    truth.source_signals[k] =
        render_source(kinds[k], rng, samples, spec.sample_rate);
    truth.sources[k] = stft_forward(truth.source_signals[k], spec.stft);
  }

  const int bins = spec.stft.bins();
  const int frames = static_cast<int>(truth.sources[0].cols());
  auto mix_rng = substream(spec.seed, "mixing");
  truth.mixing = draw_mixing(spec, bins, mix_rng);

  truth.target_image.cfg = spec.stft;
  truth.target_image.channels.assign(spec.n_mics,
                                     Spectrogram::Zero(bins, frames));
  MultichannelScene scene;
  scene.cfg = spec.stft;
  scene.channels.assign(spec.n_mics, Spectrogram::Zero(bins, frames));

  double image_energy = 0.0;
  for (int f = 0; f < bins; ++f) {
    for (int i = 0; i < spec.n_mics; ++i) {
      truth.target_image.channels[i].row(f) =
          truth.mixing[f](i, 0) * truth.sources[0].row(f);
      scene.channels[i].row(f) = truth.target_image.channels[i].row(f);
      for (int k = 1; k < spec.n_sources; ++k)
        scene.channels[i].row(f) += spec.noise_multiplier *
                                    truth.mixing[f](i, k) *
                                    truth.sources[k].row(f);
    }
    for (int i = 0; i < spec.n_mics; ++i)
      image_energy += truth.target_image.channels[i].row(f).squaredNorm();
  }

  if (spec.sensor_noise > 0.0) {
    auto rng = substream(spec.seed, "sensor");
    std::normal_distribution<double> gauss(0.0, M_SQRT1_2);
    const double level = spec.sensor_noise *
        std::sqrt(image_energy / (spec.n_mics * bins * frames));
    for (int i = 0; i < spec.n_mics; ++i)
      for (int f = 0; f < bins; ++f)
        for (int t = 0; t < frames; ++t)
          scene.channels[i](f, t) += level * Complex(gauss(rng), gauss(rng));
  }

  truth.image_signals.resize(
      stft_inverse(truth.target_image.channels[0], spec.stft).size(),
      spec.n_mics);
  for (int i = 0; i < spec.n_mics; ++i)
    truth.image_signals.col(i) =
        stft_inverse(truth.target_image.channels[i], spec.stft);

  return {std::move(scene), std::move(truth)};
}

std::vector<std::pair<MultichannelScene, GroundTruth>> scenario_suite(
    std::uint64_t base_seed, SceneSpec base) {
  base.seed = base_seed;
  std::vector<std::pair<MultichannelScene, GroundTruth>> out;
  for (const double mult : {0.25, 0.5, 1.0, 2.0}) {
    SceneSpec spec = base;
    spec.noise_multiplier = mult;
    out.push_back(generate_scene(spec));
  }
  return out;
}

}  // namespace sibf
