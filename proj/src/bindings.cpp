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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sibf/cast.hpp"
#include "sibf/errors.hpp"
#include "sibf/eval.hpp"
#include "sibf/extract.hpp"
#include "sibf/maxsnr.hpp"
#include "sibf/models.hpp"
#include "sibf/sim.hpp"
#include "sibf/tfr.hpp"
#include "sibf/whiten.hpp"

namespace py = pybind11;
using namespace sibf;

namespace {

StftConfig make_cfg(int fft_size, int hop, const std::string& window,
                    double sample_rate) {
  StftConfig cfg;
  cfg.fft_size = fft_size;
  cfg.hop = hop;
  cfg.sample_rate = sample_rate;
  if (window == "hann") {
    cfg.window = Window::kHann;
  } else if (window == "sqrt_hann") {
    cfg.window = Window::kSqrtHann;
  } else {
    throw ArgumentError("window must be 'hann' or 'sqrt_hann'");
  }
  return cfg;
}

// [channels, bins, frames] complex array -> scene.
MultichannelScene scene_from_array(const py::array_t<Complex>& obs) {
  if (obs.ndim() != 3)
    throw ArgumentError("observation must have shape [channels, bins, frames]");
  const auto acc = obs.unchecked<3>();
  MultichannelScene scene;
  for (py::ssize_t c = 0; c < acc.shape(0); ++c) {
    Spectrogram s(acc.shape(1), acc.shape(2));
    for (py::ssize_t f = 0; f < acc.shape(1); ++f)
      for (py::ssize_t t = 0; t < acc.shape(2); ++t) s(f, t) = acc(c, f, t);
    scene.channels.push_back(std::move(s));
  }
  return scene;
}

ModelConfig make_model(const std::string& model, double beta, double alpha,
                       double nu, double eps, double beta_best) {
  ModelConfig cfg;
  cfg.kind = source_model_from_string(model);
  cfg.beta = beta;
  cfg.alpha = alpha;
  cfg.nu = nu;
  cfg.eps = eps;
  cfg.beta_best = beta_best;
  cfg.validate();
  return cfg;
}

py::dict result_to_dict(const ExtractionResult& res) {
  py::dict out;
  out["output"] = res.output;
  out["y1"] = res.y1;
  out["gamma1"] = res.gamma1;
  Eigen::MatrixXcd filters(res.w1.size(), res.w1.empty() ? 0 : res.w1[0].size());
  for (size_t f = 0; f < res.w1.size(); ++f) filters.row(f) = res.w1[f];
  out["filters"] = filters;
  out["objective_trace"] = res.objective_trace;
  out["flagged"] = res.flagged;
  return out;
}

}  // namespace

PYBIND11_MODULE(_sibf, m) {
  m.doc() = "Reference-guided multichannel target source extraction";

  py::register_exception<DimensionError>(m, "DimensionError",
                                         PyExc_ValueError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError",
                                           PyExc_ArithmeticError);
  py::register_exception<IoError>(m, "IoError", PyExc_IOError);

  m.def(
      "stft",
      [](const Eigen::VectorXd& signal, int fft_size, int hop,
         const std::string& window, double sample_rate) {
        return stft_forward(signal,
                            make_cfg(fft_size, hop, window, sample_rate));
      },
      py::arg("signal"), py::arg("fft_size") = 1024, py::arg("hop") = 256,
      py::arg("window") = "sqrt_hann", py::arg("sample_rate") = 16000.0,
      "One-sided windowed STFT, returns a [bins, frames] complex array.");

  m.def(
      "istft",
      [](const Spectrogram& spec, int fft_size, int hop,
         const std::string& window, double sample_rate) {
        return stft_inverse(spec, make_cfg(fft_size, hop, window, sample_rate));
      },
      py::arg("spec"), py::arg("fft_size") = 1024, py::arg("hop") = 256,
      py::arg("window") = "sqrt_hann", py::arg("sample_rate") = 16000.0,
      "Overlap-add inverse of stft().");

  m.def(
      "zero_band_edges",
      [](const Spectrogram& spec, double low_hz, double high_hz, int fft_size,
         int hop, double sample_rate) {
        return zero_band_edges(
            spec, low_hz, high_hz,
            make_cfg(fft_size, hop, "sqrt_hann", sample_rate));
      },
      py::arg("spec"), py::arg("low_hz"), py::arg("high_hz"),
      py::arg("fft_size") = 1024, py::arg("hop") = 256,
      py::arg("sample_rate") = 16000.0,
      "Zeroes bins whose center frequency falls outside [low_hz, high_hz].");

  m.def("normalize_reference", &normalize_reference, py::arg("reference"),
        "Scales each bin row of a nonnegative grid to unit RMS over frames.");

  m.def(
      "extract",
      [](const py::array_t<Complex>& observation, const RealGrid& reference,
         const std::string& model, double beta, double alpha, double nu,
         double eps, double beta_best, const std::string& start, int iters,
         int mic) {
        const MultichannelScene scene = scene_from_array(observation);
        const ExtractionResult res = run_sibf(
            scene, normalize_reference(reference),
            make_model(model, beta, alpha, nu, eps, beta_best),
            start_mode_from_string(start), iters, mic);
        return result_to_dict(res);
      },
      py::arg("observation"), py::arg("reference"),
      py::arg("model") = "laplace", py::arg("beta") = 8.0,
      py::arg("alpha") = 100.0, py::arg("nu") = 1.0, py::arg("eps") = 1e-7,
      py::arg("beta_best") = 8.0, py::arg("start") = "boost",
      py::arg("iters") = 10, py::arg("mic") = 0,
      "Runs the beamformer on [channels, bins, frames] observations with a\n"
      "[bins, frames] magnitude reference. Returns output, y1, gamma1,\n"
      "filters, objective_trace and flagged bins.");

  m.def(
      "cast",
      [](const py::array_t<Complex>& observation, const std::string& generator,
         const py::object& clean_magnitude, double blend_lambda, int casts,
         int iters, const std::string& model, double beta, double alpha,
         double nu, double eps, double beta_best, int mic) {
        const MultichannelScene scene = scene_from_array(observation);
        std::unique_ptr<RefGenerator> gen;
        if (generator == "identity") {
          gen = make_identity_generator();
        } else if (generator == "wiener") {
          gen = make_wiener_generator();
        } else if (generator == "oracle" || generator == "blend") {
          if (clean_magnitude.is_none())
            throw ArgumentError("generator '" + generator +
                                "' needs clean_magnitude");
          RealGrid mag = clean_magnitude.cast<RealGrid>();
          gen = generator == "oracle"
                    ? make_oracle_generator(std::move(mag))
                    : make_blend_generator(std::move(mag), blend_lambda);
        } else {
          throw ArgumentError("unknown generator: " + generator);
        }
        CastConfig cfg;
        cfg.l_cast = casts;
        cfg.l_filter = iters;
        cfg.model = make_model(model, beta, alpha, nu, eps, beta_best);
        cfg.mic_index = mic;
        cfg.generator = gen.get();
        const CastTrace trace = run_iterative_casting(scene, cfg);
        py::list out;
        for (const auto& rec : trace.casts) {
          py::dict d;
          d["reference"] = rec.reference;
          d["output"] = rec.output;
          out.append(d);
        }
        return out;
      },
      py::arg("observation"), py::arg("generator") = "identity",
      py::arg("clean_magnitude") = py::none(), py::arg("blend_lambda") = 0.5,
      py::arg("casts") = 2, py::arg("iters") = 10,
      py::arg("model") = "laplace", py::arg("beta") = 8.0,
      py::arg("alpha") = 100.0, py::arg("nu") = 1.0, py::arg("eps") = 1e-7,
      py::arg("beta_best") = 8.0, py::arg("mic") = 0,
      "Iterative casting: regenerate the reference from each output and\n"
      "re-extract. Returns one {reference, output} dict per cast.");

  m.def(
      "max_snr",
      [](const py::array_t<Complex>& observation, const RealGrid& mask_target,
         const RealGrid& mask_interference) {
        const MultichannelScene scene = scene_from_array(observation);
        MaskPair masks{mask_target, mask_interference};
        const DirectFilter filter = max_snr_bf(scene, masks);
        py::dict out;
        Eigen::MatrixXcd filters(filter.v1.size(),
                                 filter.v1.empty() ? 0 : filter.v1[0].size());
        std::vector<int> status;
        for (size_t f = 0; f < filter.v1.size(); ++f) {
          filters.row(f) = filter.v1[f];
          status.push_back(static_cast<int>(filter.status[f]));
        }
        out["filters"] = filters;
        out["status"] = status;
        out["y1"] = apply_direct_filter(scene, filter);
        return out;
      },
      py::arg("observation"), py::arg("mask_target"),
      py::arg("mask_interference"),
      "Mask-driven Max SNR beamformer; returns per-bin filters, status codes\n"
      "and the unscaled output.");

  m.def("si_sdr", &si_sdr, py::arg("estimate"), py::arg("reference"),
        "Scale-invariant SDR in dB.");
  m.def("snr", &snr_db, py::arg("signal_part"), py::arg("noise_part"),
        "10 log10 of the energy ratio in dB.");

  m.def(
      "generate_scene",
      [](int mics, int sources, double duration, double sample_rate,
         double multiplier, std::uint64_t seed, int fft_size, int hop) {
        SceneSpec spec;
        spec.n_mics = mics;
        spec.n_sources = sources;
        spec.duration = duration;
        spec.sample_rate = sample_rate;
        spec.noise_multiplier = multiplier;
        spec.seed = seed;
        spec.stft.fft_size = fft_size;
        spec.stft.hop = hop;
        spec.stft.sample_rate = sample_rate;
        const auto [scene, truth] = generate_scene(spec);

        py::dict out;
        py::list obs;
        for (const auto& c : scene.channels) obs.append(c);
        out["observation"] = obs;
        py::list img;
        for (const auto& c : truth.target_image.channels) img.append(c);
        out["target_image"] = img;
        out["image_signals"] = truth.image_signals;
        return out;
      },
      py::arg("mics") = 3, py::arg("sources") = 2, py::arg("duration") = 2.0,
      py::arg("sample_rate") = 16000.0, py::arg("multiplier") = 1.0,
      py::arg("seed") = 0, py::arg("fft_size") = 1024, py::arg("hop") = 256,
      "Synthesizes a deterministic multichannel scene with ground truth.\n"
      "Returns per-channel observation and target-image spectrograms plus\n"
      "the time-domain target image.");

  m.attr("__version__") = "0.1.0";
}
