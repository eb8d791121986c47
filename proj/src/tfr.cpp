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

#include "sibf/tfr.hpp"

#include <cmath>
#include <mutex>
#include <vector>

#include <fftw3.h>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

// FFTW planning is not thread safe; execution on private buffers is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct ForwardPlan {
  fftw_plan plan;
  double* in;
  fftw_complex* out;

  explicit ForwardPlan(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    in = fftw_alloc_real(n);
    out = fftw_alloc_complex(n / 2 + 1);
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~ForwardPlan() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
};

struct InversePlan {
  fftw_plan plan;
  fftw_complex* in;
  double* out;

  explicit InversePlan(int n) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    in = fftw_alloc_complex(n / 2 + 1);
    out = fftw_alloc_real(n);
    plan = fftw_plan_dft_c2r_1d(n, in, out, FFTW_ESTIMATE);
  }
  ~InversePlan() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
};

}  // namespace

void StftConfig::validate() const {
  if (fft_size <= 0) throw ArgumentError("fft_size must be positive");
  if (hop <= 0 || hop > fft_size)
    throw ArgumentError("hop must satisfy 0 < hop <= fft_size");
  if (sample_rate <= 0) throw ArgumentError("sample_rate must be positive");
}

Eigen::VectorXd window_samples(const StftConfig& cfg) {
  cfg.validate();
  const int n = cfg.fft_size;
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / n);
    w[i] = cfg.window == Window::kHann ? hann : std::sqrt(hann);
  }
  return w;
}

double cola_deviation(const StftConfig& cfg) {
  const Eigen::VectorXd w = window_samples(cfg);
  const int n = cfg.fft_size;
  // Overlap-add w^2 over enough frames to cover one interior period.
  const int span = 4 * n;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(span);
  for (int start = 0; start + n <= span; start += cfg.hop)
    acc.segment(start, n) += w.cwiseProduct(w);
  // Interior region, away from ramp-up/down.
  const auto interior = acc.segment(n, 2 * n);
  const double mean = interior.mean();
  return (interior.array() - mean).abs().maxCoeff() / mean;
}

Spectrogram stft_forward(const Eigen::VectorXd& signal, const StftConfig& cfg) {
  cfg.validate();
  const int n = cfg.fft_size;
  if (signal.size() < n)
    throw DimensionError("signal shorter than fft_size");

  const int pad = n - cfg.hop;
  const long padded = signal.size() + 2L * pad;
  const int frames = static_cast<int>((padded - n) / cfg.hop) + 1;
  const Eigen::VectorXd w = window_samples(cfg);

  Spectrogram spec(cfg.bins(), frames);
  ForwardPlan fft(n);
  for (int t = 0; t < frames; ++t) {
    const long start = static_cast<long>(t) * cfg.hop - pad;
    for (int i = 0; i < n; ++i) {
      const long s = start + i;
      const double x = (s >= 0 && s < signal.size()) ? signal[s] : 0.0;
      fft.in[i] = x * w[i];
    }
    fftw_execute(fft.plan);
    for (int f = 0; f < cfg.bins(); ++f)
      spec(f, t) = Complex(fft.out[f][0], fft.out[f][1]);
  }
  return spec;
}

Eigen::VectorXd stft_inverse(const Spectrogram& spec, const StftConfig& cfg) {
  cfg.validate();
  const int n = cfg.fft_size;
  if (spec.rows() != cfg.bins())
    throw DimensionError("spectrogram bin count does not match config");
  const int frames = static_cast<int>(spec.cols());
  if (frames < 1) throw DimensionError("spectrogram has no frames");

  const int pad = n - cfg.hop;
  const long padded = static_cast<long>(frames - 1) * cfg.hop + n;
  const Eigen::VectorXd w = window_samples(cfg);

  Eigen::VectorXd acc = Eigen::VectorXd::Zero(padded);
  Eigen::VectorXd norm = Eigen::VectorXd::Zero(padded);
  const Eigen::VectorXd w2 = w.cwiseProduct(w);

  InversePlan fft(n);
  for (int t = 0; t < frames; ++t) {
    for (int f = 0; f < cfg.bins(); ++f) {
      fft.in[f][0] = spec(f, t).real();
      fft.in[f][1] = spec(f, t).imag();
    }
    fftw_execute(fft.plan);
    const long start = static_cast<long>(t) * cfg.hop;
    for (int i = 0; i < n; ++i) {
      acc[start + i] += fft.out[i] / n * w[i];
      norm[start + i] += w2[i];
    }
  }

  const double floor = 1e-12 * norm.maxCoeff();
  const long out_len = padded - 2L * pad;
  Eigen::VectorXd out(std::max(out_len, 0L));
  for (long i = 0; i < out.size(); ++i) {
    const double d = norm[pad + i];
    out[i] = d > floor ? acc[pad + i] / d : 0.0;
  }
  return out;
}

Spectrogram zero_band_edges(const Spectrogram& spec, double low_hz,
                            double high_hz, const StftConfig& cfg) {
  cfg.validate();
  const double nyquist = cfg.sample_rate / 2.0;
  if (!(low_hz >= 0.0 && low_hz < high_hz && high_hz <= nyquist))
    throw ArgumentError("band must satisfy 0 <= low < high <= Nyquist");
  if (spec.rows() != cfg.bins())
    throw DimensionError("spectrogram bin count does not match config");

  Spectrogram out = spec;
  for (int f = 0; f < spec.rows(); ++f) {
    const double hz = cfg.bin_hz(f);
    if (hz < low_hz || hz > high_hz) out.row(f).setZero();
  }
  return out;
}

}  // namespace sibf
