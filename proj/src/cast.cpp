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

#include "sibf/cast.hpp"

#include <algorithm>
#include <cmath>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

class OracleGenerator : public RefGenerator {
 public:
  explicit OracleGenerator(RealGrid clean) : clean_(std::move(clean)) {}
  RealGrid generate(const RealGrid& magnitude) const override {
    if (magnitude.rows() != clean_.rows() || magnitude.cols() != clean_.cols())
      throw DimensionError("oracle magnitude shape does not match input");
    return clean_;
  }
  std::string name() const override { return "oracle"; }

 private:
  RealGrid clean_;
};

class IdentityGenerator : public RefGenerator {
 public:
  RealGrid generate(const RealGrid& magnitude) const override {
    return magnitude;
  }
  std::string name() const override { return "identity"; }
};

class BlendGenerator : public RefGenerator {
 public:
  BlendGenerator(RealGrid clean, double lambda)
      : clean_(std::move(clean)), lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw ArgumentError("blend lambda must lie in [0, 1]");
  }
  RealGrid generate(const RealGrid& magnitude) const override {
    if (magnitude.rows() != clean_.rows() || magnitude.cols() != clean_.cols())
      throw DimensionError("blend magnitude shape does not match input");
    return (1.0 - lambda_) * magnitude + lambda_ * clean_;
  }
  std::string name() const override { return "blend"; }

 private:
  RealGrid clean_;
  double lambda_;
};

class FileGenerator : public RefGenerator {
 public:
  explicit FileGenerator(RealGrid magnitude) : mag_(std::move(magnitude)) {}
  RealGrid generate(const RealGrid& magnitude) const override {
    if (magnitude.rows() != mag_.rows() || magnitude.cols() != mag_.cols())
      throw DimensionError("file reference shape does not match scene");
    return mag_;
  }
  std::string name() const override { return "file"; }

 private:
  RealGrid mag_;
};

class WienerGenerator : public RefGenerator {
 public:
  WienerGenerator(double percentile, double min_gain, double oversubtract)
      : percentile_(percentile),
        min_gain_(min_gain),
        oversubtract_(oversubtract) {
    if (!(percentile > 0.0 && percentile < 1.0))
      throw ArgumentError("percentile must lie in (0, 1)");
    if (!(min_gain > 0.0 && min_gain < 1.0))
      throw ArgumentError("min_gain must lie in (0, 1)");
    if (!(oversubtract >= 1.0))
      throw ArgumentError("oversubtract must be >= 1");
  }

  RealGrid generate(const RealGrid& magnitude) const override {
    const int frames = static_cast<int>(magnitude.cols());
    RealGrid out(magnitude.rows(), frames);
    std::vector<double> row(frames);
    for (int f = 0; f < magnitude.rows(); ++f) {
      for (int t = 0; t < frames; ++t) row[t] = magnitude(f, t);
      const int k = std::min<int>(frames - 1,
                                  static_cast<int>(percentile_ * frames));
      std::nth_element(row.begin(), row.begin() + k, row.end());
      const double floor = oversubtract_ * row[k];
      for (int t = 0; t < frames; ++t) {
        const double m = magnitude(f, t);
        const double scrubbed = m * m - floor * floor;
        const double kept = min_gain_ * m;
        out(f, t) = std::sqrt(std::max(scrubbed, kept * kept));
      }
    }
    return out;
  }
  std::string name() const override { return "wiener"; }

 private:
  double percentile_;
  double min_gain_;
  double oversubtract_;
};

}  // namespace

std::unique_ptr<RefGenerator> make_oracle_generator(RealGrid clean_magnitude) {
  return std::make_unique<OracleGenerator>(std::move(clean_magnitude));
}

std::unique_ptr<RefGenerator> make_identity_generator() {
  return std::make_unique<IdentityGenerator>();
}

std::unique_ptr<RefGenerator> make_blend_generator(RealGrid clean_magnitude,
                                                   double lambda) {
  return std::make_unique<BlendGenerator>(std::move(clean_magnitude), lambda);
}

std::unique_ptr<RefGenerator> make_file_generator(RealGrid magnitude) {
  return std::make_unique<FileGenerator>(std::move(magnitude));
}

std::unique_ptr<RefGenerator> make_wiener_generator(double percentile,
                                                    double min_gain,
                                                    double oversubtract) {
  return std::make_unique<WienerGenerator>(percentile, min_gain, oversubtract);
}

CastTrace run_iterative_casting(const MultichannelScene& scene,
                                const CastConfig& cfg) {
  scene.validate();
  cfg.model.validate();
  if (cfg.l_cast < 1) throw ArgumentError("l_cast must be >= 1");
  if (cfg.l_filter < 1) throw ArgumentError("l_filter must be >= 1");
  if (cfg.mic_index < 0 || cfg.mic_index >= scene.num_channels())
    throw ArgumentError("mic_index out of range");
  if (cfg.generator == nullptr) throw ArgumentError("generator not set");

  const WhitenedScene ws = whiten_scene(scene);  // whitened once, up front

  CastTrace trace;
  Spectrogram previous_output = scene.channels[cfg.mic_index];
  for (int cast = 1; cast <= cfg.l_cast; ++cast) {
    RealGrid raw;
    try {
      raw = cfg.generator->generate(previous_output.cwiseAbs());
    } catch (const std::exception& e) {
      throw IoError("reference generation failed in cast " +
                    std::to_string(cast) + ": " + e.what());
    }

    CastRecord rec;
    rec.reference = normalize_reference(raw);
    rec.extraction = scale_output(
        estimate_filter(ws, rec.reference, cfg.model, StartMode::kBoost,
                        cfg.l_filter),
        scene, cfg.mic_index);
    rec.output = rec.extraction.output;
    if (cfg.evaluator) {
      rec.metrics = cfg.evaluator(rec.output);
      rec.has_metrics = true;
    }
    previous_output = rec.output;
    trace.casts.push_back(std::move(rec));
  }
  return trace;
}

}  // namespace sibf
