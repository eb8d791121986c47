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

#ifndef SIBF_TFR_HPP_
#define SIBF_TFR_HPP_

#include <Eigen/Dense>

#include "sibf/types.hpp"

namespace sibf {

enum class Window { kHann, kSqrtHann };

struct StftConfig {
  int fft_size = 1024;
  int hop = 256;
  Window window = Window::kSqrtHann;
  double sample_rate = 16000.0;

  int bins() const { return fft_size / 2 + 1; }
  double bin_hz(int f) const { return f * sample_rate / fft_size; }
  void validate() const;  // throws ArgumentError on bad sizes
};

// Analysis window samples (periodic form, length cfg.fft_size).
Eigen::VectorXd window_samples(const StftConfig& cfg);

// Max deviation of the overlap-added squared window from its interior mean.
// Near zero means the analysis/synthesis pair reconstructs with a flat gain.
double cola_deviation(const StftConfig& cfg);

// Windowed one-sided STFT. The signal is zero-padded by fft_size - hop on
// both sides so the frame count is deterministic; frame t covers padded
// samples [t*hop, t*hop + fft_size). Returns bins() x frames.
Spectrogram stft_forward(const Eigen::VectorXd& signal, const StftConfig& cfg);

// Weighted overlap-add synthesis, inverse of stft_forward. Returns
// (frames + 1) * hop - fft_size samples; the round trip reproduces the input
// up to a trailing partial-hop truncation.
Eigen::VectorXd stft_inverse(const Spectrogram& spec, const StftConfig& cfg);

// Zeroes bins whose center frequency lies outside [low_hz, high_hz].
Spectrogram zero_band_edges(const Spectrogram& spec, double low_hz,
                            double high_hz, const StftConfig& cfg);

}  // namespace sibf

#endif  // SIBF_TFR_HPP_
