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

#ifndef SIBF_CAST_HPP_
#define SIBF_CAST_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sibf/eval.hpp"
#include "sibf/extract.hpp"
#include "sibf/models.hpp"
#include "sibf/types.hpp"
#include "sibf/whiten.hpp"

namespace sibf {

// Maps a magnitude spectrogram to a nonnegative reference magnitude of the
// same shape. Stands in for whatever enhancer produces the reference.
class RefGenerator {
 public:
  virtual ~RefGenerator() = default;
  virtual RealGrid generate(const RealGrid& magnitude) const = 0;
  virtual std::string name() const = 0;
};

// Returns the stored clean magnitude regardless of input.
std::unique_ptr<RefGenerator> make_oracle_generator(RealGrid clean_magnitude);

// Passes the input magnitude through unchanged.
std::unique_ptr<RefGenerator> make_identity_generator();

// (1 - lambda) * input + lambda * clean: an enhancer whose accuracy improves
// with its input, for probing the casting loop.
std::unique_ptr<RefGenerator> make_blend_generator(RealGrid clean_magnitude,
                                                   double lambda);

// Returns a fixed magnitude loaded elsewhere (CSV/WAV), for plugging in
// externally generated references.
std::unique_ptr<RefGenerator> make_file_generator(RealGrid magnitude);

// Spectral subtraction against a per-bin noise floor estimated as a
// percentile of the input magnitudes over frames:
//   out = sqrt(max(|x|^2 - (oversubtract * floor)^2, (min_gain |x|)^2)).
std::unique_ptr<RefGenerator> make_wiener_generator(double percentile = 0.2,
                                                    double min_gain = 0.1,
                                                    double oversubtract = 4.0);

struct CastConfig {
  int l_cast = 1;
  int l_filter = 10;
  ModelConfig model;
  int mic_index = 0;
  const RefGenerator* generator = nullptr;
  // Optional hook run on each cast's scaled output.
  std::function<MetricReport(const Spectrogram&)> evaluator;
};

struct CastRecord {
  RealGrid reference;       // normalized reference used in this cast
  Spectrogram output;       // scaled SIBF output
  ExtractionResult extraction;
  MetricReport metrics;     // present when an evaluator is configured
  bool has_metrics = false;
};

struct CastTrace {
  std::vector<CastRecord> casts;
};

// Whitens once, then repeats: generate reference from the previous output's
// magnitude (the observation of mic_index in cast 1), normalize, estimate
// the filter (boost start for the iterative models), rescale.
CastTrace run_iterative_casting(const MultichannelScene& scene,
                                const CastConfig& cfg);

}  // namespace sibf

#endif  // SIBF_CAST_HPP_
