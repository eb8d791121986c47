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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "sibf/cast.hpp"
#include "sibf/errors.hpp"
#include "sibf/eval.hpp"
#include "sibf/extract.hpp"
#include "sibf/io.hpp"
#include "sibf/maxsnr.hpp"
#include "sibf/tfr.hpp"

namespace sibf::cli {

namespace fs = std::filesystem;

namespace {

struct LoadedScene {
  MultichannelScene scene;
  std::optional<MultichannelScene> image;     // target image per mic
  std::optional<Eigen::MatrixXd> image_time;  // samples x mics
};

std::optional<std::pair<double, double>> parse_band(const std::string& text) {
  if (text.empty() || text == "none") return std::nullopt;
  const auto vals = parse_number_list(text);
  if (vals.size() != 2)
    throw ArgumentError("--band-zero expects 'low,high' or 'none'");
  return std::make_pair(vals[0], vals[1]);
}

fs::path resolve_out_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("SIBF_OUT_DIR")) return env;
  return ".";
}

std::string describe(BinStatus s) {
  switch (s) {
    case BinStatus::kOk: return "ok";
    case BinStatus::kEmptyMask: return "empty_mask";
    case BinStatus::kSingular: return "singular";
    case BinStatus::kUninformative: return "uninformative";
  }
  return "?";
}

Eigen::MatrixXd synthesize(const MultichannelScene& scene) {
  Eigen::VectorXd first = stft_inverse(scene.channels[0], scene.cfg);
  Eigen::MatrixXd out(first.size(), scene.num_channels());
  out.col(0) = first;
  for (int c = 1; c < scene.num_channels(); ++c)
    out.col(c) = stft_inverse(scene.channels[c], scene.cfg);
  return out;
}

MultichannelScene analyze(const Eigen::MatrixXd& samples,
                          const StftConfig& cfg) {
  MultichannelScene scene;
  scene.cfg = cfg;
  for (int c = 0; c < samples.cols(); ++c)
    scene.channels.push_back(stft_forward(samples.col(c), cfg));
  return scene;
}

void save_scene(const fs::path& dir, const MultichannelScene& scene,
                const GroundTruth& truth, const SceneSpec& spec) {
  fs::create_directories(dir / "truth");
  write_wav(dir / "observation.wav", synthesize(scene), spec.sample_rate);
  write_wav(dir / "truth" / "target_image.wav", truth.image_signals,
            spec.sample_rate);
  for (size_t k = 0; k < truth.source_signals.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "source_%02zu.wav", k + 1);
    write_wav(dir / "truth" / name, truth.source_signals[k], spec.sample_rate);
  }

  std::ostringstream m;
  m << "mics = " << spec.n_mics << "\n"
    << "sources = " << spec.n_sources << "\n"
    << "duration = " << format_double(spec.duration) << "\n"
    << "sample_rate = " << format_double(spec.sample_rate) << "\n"
    << "fft_size = " << spec.stft.fft_size << "\n"
    << "hop = " << spec.stft.hop << "\n"
    << "multiplier = " << format_double(spec.noise_multiplier) << "\n"
    << "seed = " << spec.seed << "\n"
    << "sensor_noise = " << format_double(spec.sensor_noise) << "\n"
    << "mixing = "
    << (spec.mixing == MixingKind::kInstantaneousReal ? "real" : "complex")
    << "\n";
  m << "kinds = ";
  for (int k = 0; k < spec.n_sources; ++k)
    m << (k ? "," : "")
      << to_string(k < static_cast<int>(spec.kinds.size())
                       ? spec.kinds[k]
                       : (k == 0 ? SourceKind::kSpeechLike
                                 : SourceKind::kStationaryNoise));
  m << "\n";
  write_text_atomic(dir / "manifest.cfg", m.str());
}

LoadedScene load_scene(const std::string& path, int fft_size, int hop) {
  LoadedScene out;
  StftConfig cfg;
  cfg.fft_size = fft_size;
  cfg.hop = hop;

  const fs::path p(path);
  if (fs::is_directory(p)) {
    const auto manifest = read_config(p / "manifest.cfg");
    cfg.fft_size = std::stoi(manifest.at("fft_size"));
    cfg.hop = std::stoi(manifest.at("hop"));
    cfg.sample_rate = std::stod(manifest.at("sample_rate"));
    const WavData obs = read_wav(p / "observation.wav");
    out.scene = analyze(obs.samples, cfg);
    const fs::path image_path = p / "truth" / "target_image.wav";
    if (fs::exists(image_path)) {
      const WavData img = read_wav(image_path);
      out.image = analyze(img.samples, cfg);
      out.image_time = img.samples;
    }
    return out;
  }

  const WavData obs = read_wav(p);
  cfg.sample_rate = obs.sample_rate;
  out.scene = analyze(obs.samples, cfg);
  return out;
}

int clamp_mic(int mic_1based, int channels) {
  if (mic_1based < 1) throw ArgumentError("--mic must be >= 1");
  return std::min(mic_1based, channels) - 1;
}

ModelConfig model_from(const ExtractOptions& opt) {
  ModelConfig cfg;
  cfg.kind = source_model_from_string(opt.model);
  cfg.beta = opt.beta;
  cfg.alpha = opt.alpha;
  cfg.nu = opt.nu;
  cfg.eps = opt.eps;
  cfg.beta_best = opt.beta_best;
  cfg.validate();
  return cfg;
}

Spectrogram maybe_band_zero(
    const Spectrogram& spec,
    const std::optional<std::pair<double, double>>& band,
    const StftConfig& cfg) {
  if (!band) return spec;
  const double high = std::min(band->second, cfg.sample_rate / 2.0);
  return zero_band_edges(spec, band->first, high, cfg);
}

struct CastMetrics {
  double si_sdr_db = std::nan("");
  double sdr_db = std::nan("");
  double correlation = std::nan("");
  double best_channel_si_sdr_db = std::nan("");
};

// Output is scored against the band-limited target image at the scaling
// mic; observation channels are scored unbanded, as a reference point.
CastMetrics score_output(const Spectrogram& output, const LoadedScene& in,
                         int mic0,
                         const std::optional<std::pair<double, double>>& band) {
  CastMetrics met;
  if (!in.image) return met;
  const StftConfig& cfg = in.scene.cfg;
  const Eigen::VectorXd target =
      stft_inverse(maybe_band_zero(in.image->channels[mic0], band, cfg), cfg);
  const Eigen::VectorXd est =
      stft_inverse(maybe_band_zero(output, band, cfg), cfg);
  const MetricReport rep = sdr_decomposition(est, target);
  met.si_sdr_db = si_sdr(est, target);
  met.sdr_db = rep.sdr_db;
  met.correlation = rep.correlation;

  double best = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < in.scene.num_channels(); ++c) {
    const Eigen::VectorXd ch = stft_inverse(in.scene.channels[c], cfg);
    const Eigen::VectorXd img = stft_inverse(in.image->channels[c], cfg);
    best = std::max(best, si_sdr(ch, img));
  }
  met.best_channel_si_sdr_db = best;
  return met;
}

std::unique_ptr<RefGenerator> build_generator(const ExtractOptions& opt,
                                              const LoadedScene& in,
                                              int mic0) {
  if (opt.generator == "identity") return make_identity_generator();
  if (opt.generator == "wiener") return make_wiener_generator();
  if (opt.generator == "oracle" || opt.generator == "blend") {
    if (!in.image)
      throw ArgumentError("--generator " + opt.generator +
                          " needs a scene directory with ground truth");
    RealGrid mag = in.image->channels[mic0].cwiseAbs();
    if (opt.generator == "oracle") return make_oracle_generator(std::move(mag));
    return make_blend_generator(std::move(mag), opt.blend_lambda);
  }
  if (opt.generator == "file") {
    if (opt.ref_file.empty())
      throw ArgumentError("--generator file needs --ref-file");
    const fs::path p(opt.ref_file);
    RealGrid mag;
    if (p.extension() == ".wav") {
      const WavData wav = read_wav(p);
      mag = stft_forward(wav.samples.col(0), in.scene.cfg).cwiseAbs();
    } else {
      mag = read_csv(p);
    }
    if (mag.rows() != in.scene.bins() || mag.cols() != in.scene.frames())
      throw ArgumentError("reference file shape does not match the scene");
    return make_file_generator(std::move(mag));
  }
  throw ArgumentError("unknown generator: " + opt.generator);
}

std::string metrics_header() {
  return "run_id,cast,model,si_sdr_db,sdr_db,correlation,"
         "best_channel_si_sdr_db,objective\n";
}

std::string metrics_row(const std::string& run_id, int cast,
                        const std::string& model, const CastMetrics& met,
                        double objective) {
  std::ostringstream row;
  row << run_id << ',' << cast << ',' << model << ','
      << format_double(met.si_sdr_db) << ',' << format_double(met.sdr_db)
      << ',' << format_double(met.correlation) << ','
      << format_double(met.best_channel_si_sdr_db) << ','
      << format_double(objective) << '\n';
  return row.str();
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto slash = item.find('/');
    try {
      if (slash != std::string::npos) {
        const double num = std::stod(item.substr(0, slash));
        const double den = std::stod(item.substr(slash + 1));
        if (den == 0.0) throw ArgumentError("division by zero in " + item);
        out.push_back(num / den);
      } else {
        out.push_back(std::stod(item));
      }
    } catch (const std::invalid_argument&) {
      throw ArgumentError("cannot parse number '" + item + "'");
    }
  }
  return out;
}

int run_simulate(const SimulateOptions& opt) {
  SceneSpec spec;
  spec.n_mics = opt.mics;
  spec.n_sources = opt.sources;
  spec.duration = opt.duration;
  spec.sample_rate = opt.sample_rate;
  spec.stft.fft_size = opt.fft_size;
  spec.stft.hop = opt.hop;
  spec.stft.sample_rate = opt.sample_rate;
  spec.noise_multiplier = opt.multiplier;
  spec.seed = opt.seed;
  spec.mixing = opt.mixing == "real" ? MixingKind::kInstantaneousReal
                                     : MixingKind::kInstantaneousComplexPerBin;
  if (!opt.kinds.empty()) {
    std::stringstream ss(opt.kinds);
    std::string item;
    while (std::getline(ss, item, ','))
      spec.kinds.push_back(source_kind_from_string(item));
  }

  const fs::path out = resolve_out_dir(opt.out_dir);
  if (opt.suite) {
    const auto suite = scenario_suite(opt.seed, spec);
    const double mults[4] = {0.25, 0.5, 1.0, 2.0};
    for (size_t i = 0; i < suite.size(); ++i) {
      SceneSpec s = spec;
      s.noise_multiplier = mults[i];
      save_scene(out / ("scenario_" + std::to_string(i + 1)), suite[i].first,
                 suite[i].second, s);
    }
    std::cout << "wrote 4 scenarios under " << out.string() << "\n";
  } else {
    const auto [scene, truth] = generate_scene(spec);
    save_scene(out, scene, truth, spec);
    std::cout << "wrote scene under " << out.string() << "\n";
  }
  return 0;
}

int run_extract(const ExtractOptions& opt) {
  const LoadedScene in = load_scene(opt.scene_path, opt.fft_size, opt.hop);
  const int mic0 = clamp_mic(opt.mic, in.scene.num_channels());
  const ModelConfig model = model_from(opt);
  const auto band = parse_band(opt.band_zero);
  const auto generator = build_generator(opt, in, mic0);
  const fs::path out = resolve_out_dir(opt.out_dir);
  fs::create_directories(out);

  std::string csv = metrics_header();
  Spectrogram final_output;

  if (opt.casts == 1) {
    // Single cast: a plain run with the generated reference, honoring
    // --start. Iterative casting always uses the boost start.
    const RealGrid ref = normalize_reference(
        generator->generate(in.scene.channels[mic0].cwiseAbs()));
    const ExtractionResult res =
        run_sibf(in.scene, ref, model, start_mode_from_string(opt.start),
                 opt.iters, mic0);
    final_output = res.output;
    csv += metrics_row(opt.run_id, 1, opt.model,
                       score_output(res.output, in, mic0, band),
                       res.objective_trace.back());
  } else {
    CastConfig cc;
    cc.l_cast = opt.casts;
    cc.l_filter = opt.iters;
    cc.model = model;
    cc.mic_index = mic0;
    cc.generator = generator.get();
    const CastTrace trace = run_iterative_casting(in.scene, cc);
    for (size_t n = 0; n < trace.casts.size(); ++n) {
      const auto& rec = trace.casts[n];
      csv += metrics_row(opt.run_id, static_cast<int>(n + 1), opt.model,
                         score_output(rec.output, in, mic0, band),
                         rec.extraction.objective_trace.back());
      if (opt.save_casts) {
        char name[32];
        std::snprintf(name, sizeof name, "cast_%02zu.wav", n + 1);
        write_wav(out / name,
                  stft_inverse(maybe_band_zero(rec.output, band, in.scene.cfg),
                               in.scene.cfg),
                  in.scene.cfg.sample_rate);
      }
    }
    final_output = trace.casts.back().output;
  }

  write_wav(out / "output.wav",
            stft_inverse(maybe_band_zero(final_output, band, in.scene.cfg),
                         in.scene.cfg),
            in.scene.cfg.sample_rate);
  write_text_atomic(out / "metrics.csv", csv);
  std::cout << csv;
  return 0;
}

int run_sweep(const SweepOptions& opt) {
  const LoadedScene in =
      load_scene(opt.base.scene_path, opt.base.fft_size, opt.base.hop);
  const int mic0 = clamp_mic(opt.base.mic, in.scene.num_channels());
  const auto band = parse_band(opt.base.band_zero);
  const fs::path out = resolve_out_dir(opt.base.out_dir);
  fs::create_directories(out);

  bool any_grid = false;
  const auto grid_or = [&](const std::string& text, double fallback) {
    const auto vals = parse_number_list(text);
    if (!text.empty() && vals.empty())
      throw ArgumentError("a sweep grid parsed to no values: '" + text + "'");
    if (!vals.empty()) any_grid = true;
    return vals.empty() ? std::vector<double>{fallback} : vals;
  };

  const auto betas = grid_or(opt.grid_beta, opt.base.beta);
  const auto alphas = grid_or(opt.grid_alpha, opt.base.alpha);
  const auto nus = grid_or(opt.grid_nu, opt.base.nu);
  const auto iters = grid_or(opt.grid_iters, opt.base.iters);
  const auto casts = grid_or(opt.grid_casts, opt.base.casts);
  if (!any_grid)
    throw ArgumentError("sweep needs at least one --grid-* option");

  std::string csv =
      "run_id,model,beta,alpha,nu,iters,casts,si_sdr_db,sdr_db,correlation,"
      "best_channel_si_sdr_db,objective\n";

  for (const double beta : betas)
    for (const double alpha : alphas)
      for (const double nu : nus)
        for (const double it : iters)
          for (const double cast_count : casts) {
            ExtractOptions cell = opt.base;
            cell.beta = beta;
            cell.alpha = alpha;
            cell.nu = nu;
            cell.iters = std::max(1, static_cast<int>(std::lround(it)));
            cell.casts = std::max(1, static_cast<int>(std::lround(cast_count)));
            const ModelConfig model = model_from(cell);
            const auto generator = build_generator(cell, in, mic0);

            Spectrogram output;
            double objective = 0.0;
            if (cell.casts == 1) {
              const RealGrid ref = normalize_reference(
                  generator->generate(in.scene.channels[mic0].cwiseAbs()));
              const ExtractionResult res = run_sibf(
                  in.scene, ref, model, start_mode_from_string(cell.start),
                  cell.iters, mic0);
              output = res.output;
              objective = res.objective_trace.back();
            } else {
              CastConfig cc;
              cc.l_cast = cell.casts;
              cc.l_filter = cell.iters;
              cc.model = model;
              cc.mic_index = mic0;
              cc.generator = generator.get();
              const CastTrace trace = run_iterative_casting(in.scene, cc);
              output = trace.casts.back().output;
              objective = trace.casts.back().extraction.objective_trace.back();
            }

            const CastMetrics met = score_output(output, in, mic0, band);
            std::ostringstream row;
            row << cell.run_id << ',' << cell.model << ','
                << format_double(beta) << ',' << format_double(alpha) << ','
                << format_double(nu) << ',' << cell.iters << ',' << cell.casts
                << ',' << format_double(met.si_sdr_db) << ','
                << format_double(met.sdr_db) << ','
                << format_double(met.correlation) << ','
                << format_double(met.best_channel_si_sdr_db) << ','
                << format_double(objective) << '\n';
            csv += row.str();
          }

  write_text_atomic(out / "sweep.csv", csv);
  std::cout << csv;
  return 0;
}

int run_maxsnr(const MaxSnrOptions& opt) {
  const LoadedScene in = load_scene(opt.scene_path, opt.fft_size, opt.hop);
  const int mic0 = clamp_mic(opt.mic, in.scene.num_channels());
  const auto band = parse_band(opt.band_zero);
  const fs::path out = resolve_out_dir(opt.out_dir);
  fs::create_directories(out);

  MaskPair masks;
  if (opt.ideal_masks) {
    if (!in.image)
      throw ArgumentError("--ideal-masks needs a scene with ground truth");
    const int bins = in.scene.bins(), frames = in.scene.frames();
    masks.target = RealGrid::Zero(bins, frames);
    masks.interference = RealGrid::Zero(bins, frames);
    for (int f = 0; f < bins; ++f)
      for (int t = 0; t < frames; ++t) {
        double img = 0.0, rest = 0.0;
        for (int c = 0; c < in.scene.num_channels(); ++c) {
          const Complex i = in.image->channels[c](f, t);
          img += std::norm(i);
          rest += std::norm(in.scene.channels[c](f, t) - i);
        }
        if (img > opt.mask_threshold * rest) masks.target(f, t) = 1.0;
        if (rest > opt.mask_threshold * img) masks.interference(f, t) = 1.0;
      }
  } else {
    if (opt.mask_target.empty() || opt.mask_interference.empty())
      throw ArgumentError(
          "need --mask-target and --mask-interference, or --ideal-masks");
    masks.target = read_csv(opt.mask_target);
    masks.interference = read_csv(opt.mask_interference);
    if (masks.target.rows() != in.scene.bins() ||
        masks.target.cols() != in.scene.frames())
      throw ArgumentError("mask shape does not match the scene");
  }

  const DirectFilter filter = max_snr_bf(in.scene, masks);
  const Spectrogram y1 = apply_direct_filter(in.scene, filter);

  // Minimal-distortion scaling, same as the SIBF postprocess.
  ExtractionResult shaped;
  shaped.y1 = y1;
  shaped.flagged.assign(in.scene.bins(), 0);
  for (int f = 0; f < in.scene.bins(); ++f)
    if (filter.status[f] == BinStatus::kEmptyMask ||
        filter.status[f] == BinStatus::kSingular)
      shaped.flagged[f] = 1;
  shaped = scale_output(std::move(shaped), in.scene, mic0);

  write_wav(out / "output.wav",
            stft_inverse(maybe_band_zero(shaped.output, band, in.scene.cfg),
                         in.scene.cfg),
            in.scene.cfg.sample_rate);

  std::string csv = metrics_header();
  csv += metrics_row(opt.run_id, 1, "maxsnr",
                     score_output(shaped.output, in, mic0, band),
                     std::nan(""));
  write_text_atomic(out / "metrics.csv", csv);
  std::cout << csv;

  const int flagged = filter.flagged_count();
  std::cout << "flagged bins: " << flagged << "\n";
  if (flagged > 0) {
    std::string rep = "bin,status\n";
    for (int f = 0; f < in.scene.bins(); ++f)
      if (filter.status[f] != BinStatus::kOk)
        rep += std::to_string(f) + "," + describe(filter.status[f]) + "\n";
    write_text_atomic(out / "flagged_bins.csv", rep);
  }

  bool strict_violation = opt.strict && flagged > 0;

  if (opt.verify_unified) {
    if (!in.image)
      throw ArgumentError("--verify-unified needs a scene with ground truth");
    const RealGrid ref =
        normalize_reference(in.image->channels[mic0].cwiseAbs());
    ModelConfig model;
    model.kind = source_model_from_string(opt.model);
    const ExtractionResult whitened = estimate_filter(
        whiten_scene(in.scene), ref, model, StartMode::kBoost, opt.iters);
    const DirectExtraction direct =
        run_sibf_direct(in.scene, ref, model, StartMode::kBoost, opt.iters);
    double worst = 0.0;
    double sum = 0.0;
    int counted = 0;
    for (int f = 0; f < in.scene.bins(); ++f) {
      if (whitened.flagged[f] || direct.filter.status[f] != BinStatus::kOk)
        continue;
      const double denom = whitened.y1.row(f).norm();
      if (!(denom > 0)) continue;
      const double dev =
          (whitened.y1.row(f).cwiseAbs() - direct.y1.row(f).cwiseAbs())
              .norm() /
          denom;
      worst = std::max(worst, dev);
      sum += dev;
      ++counted;
    }
    std::cout << "unified-path deviation: max " << format_double(worst)
              << " mean " << format_double(counted ? sum / counted : 0.0)
              << " over " << counted << " bins\n";
    if (opt.strict && worst > 1e-6) strict_violation = true;
  }

  if (strict_violation)
    throw StrictFailure("numerical checks failed under --strict");
  return 0;
}

}  // namespace sibf::cli
