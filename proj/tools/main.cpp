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

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "sibf/errors.hpp"
#include "sibf/io.hpp"

namespace {

// 0 ok, 1 unexpected, 2 bad arguments, 3 I/O, 4 numerical flags (--strict).
constexpr int kExitArgument = 2;
constexpr int kExitIo = 3;
constexpr int kExitStrict = 4;

// Applies a flat "key = value" config file to a subcommand's options.
// Explicit command-line flags win; unknown keys are rejected. Underscore
// keys map onto the hyphenated long option names.
void apply_config_file(CLI::App* cmd, const std::string& path) {
  if (path.empty()) return;
  for (const auto& [key, value] : sibf::read_config(path)) {
    std::string name = "--" + key;
    for (auto& ch : name)
      if (ch == '_') ch = '-';
    CLI::Option* opt = cmd->get_option_no_throw(name);
    if (opt == nullptr || name == "--config")
      throw sibf::ArgumentError("unknown config key: " + key);
    if (opt->count() == 0) {
      opt->add_result(value);
      opt->run_callback();
    }
  }
}

void add_extract_flags(CLI::App* cmd, sibf::cli::ExtractOptions& opt) {
  cmd->add_option("scene", opt.scene_path,
                  "Scene directory from 'simulate', or a multichannel WAV")
      ->required();
  cmd->add_option("--out", opt.out_dir,
                  "Output directory (default: $SIBF_OUT_DIR or .)");
  cmd->add_option("--model", opt.model, "gauss | laplace | student-t")
      ->default_val("laplace");
  cmd->add_option("--beta", opt.beta, "Reference exponent (gauss)")
      ->default_val(8.0);
  cmd->add_option("--alpha", opt.alpha, "Reference weight (laplace)")
      ->default_val(100.0);
  cmd->add_option("--nu", opt.nu, "Degrees of freedom (student-t)")
      ->default_val(1.0);
  cmd->add_option("--eps", opt.eps, "Weight clipping threshold")
      ->default_val(1e-7);
  cmd->add_option("--beta-best", opt.beta_best, "Boost-start exponent")
      ->default_val(8.0);
  cmd->add_option("--iters", opt.iters, "Filter iterations per cast")
      ->default_val(10);
  cmd->add_option("--casts", opt.casts, "Cast count (1 = no recasting)")
      ->default_val(1);
  cmd->add_option("--start", opt.start,
                  "boost | model-specific (single-cast runs; casting always "
                  "boosts)")
      ->default_val("boost");
  cmd->add_option("--generator", opt.generator,
                  "oracle | identity | blend | file | wiener")
      ->default_val("oracle");
  cmd->add_option("--blend-lambda", opt.blend_lambda,
                  "Oracle share for the blend generator")
      ->default_val(0.5);
  cmd->add_option("--ref-file", opt.ref_file,
                  "Magnitude CSV or WAV for --generator file");
  cmd->add_option("--mic", opt.mic,
                  "1-based scaling channel, clamped to the channel count")
      ->default_val(5);
  cmd->add_option("--band-zero", opt.band_zero,
                  "'low,high' zeroed band edges for outputs, or 'none'")
      ->default_val("62.5,7812.5");
  cmd->add_option("--run-id", opt.run_id, "Identifier column in CSV output")
      ->default_val("run");
  cmd->add_option("--fft-size", opt.fft_size, "STFT size for bare WAV input")
      ->default_val(1024);
  cmd->add_option("--hop", opt.hop, "STFT hop for bare WAV input")
      ->default_val(256);
  cmd->add_option("--config", opt.config_file,
                  "Flat key = value config file; explicit flags win");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "sibf: reference-guided multichannel target source extraction"};
  app.require_subcommand(1);

  sibf::cli::SimulateOptions sim;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Generate a synthetic scene");
  simulate->add_option("--out", sim.out_dir, "Output directory");
  simulate->add_option("--mics", sim.mics)->default_val(3);
  simulate->add_option("--sources", sim.sources)->default_val(2);
  simulate->add_option("--duration", sim.duration, "Seconds")->default_val(3.0);
  simulate->add_option("--sample-rate", sim.sample_rate)->default_val(16000.0);
  simulate->add_option("--fft-size", sim.fft_size)->default_val(1024);
  simulate->add_option("--hop", sim.hop)->default_val(256);
  simulate->add_option("--multiplier", sim.multiplier, "Noise scale")
      ->default_val(1.0);
  simulate->add_option("--seed", sim.seed)->default_val(0);
  simulate->add_option(
      "--kinds", sim.kinds,
      "Comma list: speech_like,tone_complex,stationary_noise,babble_like");
  simulate->add_option("--mixing", sim.mixing, "real | complex")
      ->default_val("complex");
  simulate->add_flag("--suite", sim.suite,
                     "Write the four-scenario noise ladder");
  simulate->add_option("--config", sim.config_file,
                       "Flat key = value config file; explicit flags win");

  sibf::cli::ExtractOptions ext;
  bool ext_save_casts = false;
  bool ext_strict = false;
  CLI::App* extract = app.add_subcommand(
      "extract", "Run the beamformer with a generated reference");
  add_extract_flags(extract, ext);
  extract->add_flag("--save-casts", ext_save_casts,
                    "Write one WAV per cast");
  extract->add_flag("--strict", ext_strict, "Nonzero exit on numerical flags");

  sibf::cli::SweepOptions swp;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Grid sweep over hyperparameters, one CSV row per cell");
  add_extract_flags(sweep, swp.base);
  sweep->add_option("--grid-beta", swp.grid_beta,
                    "Comma list (fractions like 1/8 allowed)");
  sweep->add_option("--grid-alpha", swp.grid_alpha, "Comma list");
  sweep->add_option("--grid-nu", swp.grid_nu, "Comma list");
  sweep->add_option("--grid-iters", swp.grid_iters, "Comma list");
  sweep->add_option("--grid-casts", swp.grid_casts, "Comma list");

  sibf::cli::MaxSnrOptions msn;
  CLI::App* maxsnr = app.add_subcommand(
      "maxsnr", "Mask-driven Max SNR beamformer");
  maxsnr->add_option("scene", msn.scene_path, "Scene directory or WAV")
      ->required();
  maxsnr->add_option("--out", msn.out_dir, "Output directory");
  maxsnr->add_option("--mask-target", msn.mask_target, "CSV, bins x frames");
  maxsnr->add_option("--mask-interference", msn.mask_interference,
                     "CSV, bins x frames");
  maxsnr->add_flag("--ideal-masks", msn.ideal_masks,
                   "Binary masks derived from the scene's ground truth");
  maxsnr->add_option("--mask-threshold", msn.mask_threshold,
                     "Power ratio defining single-source cells")
      ->default_val(10.0);
  maxsnr->add_option("--mic", msn.mic, "1-based scaling channel")
      ->default_val(5);
  maxsnr->add_option("--band-zero", msn.band_zero)->default_val("62.5,7812.5");
  maxsnr->add_option("--run-id", msn.run_id)->default_val("run");
  maxsnr->add_option("--fft-size", msn.fft_size)->default_val(1024);
  maxsnr->add_option("--hop", msn.hop)->default_val(256);
  maxsnr->add_flag("--verify-unified", msn.verify_unified,
                   "Run whitened and direct SIBF paths and report deviation");
  maxsnr->add_option("--model", msn.model,
                     "Model for --verify-unified")
      ->default_val("laplace");
  maxsnr->add_option("--iters", msn.iters, "Iterations for --verify-unified")
      ->default_val(10);
  maxsnr->add_flag("--strict", msn.strict,
                   "Nonzero exit on flagged bins or failed verification");
  maxsnr->add_option("--config", msn.config_file,
                     "Flat key = value config file; explicit flags win");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitArgument;
  }

  try {
    apply_config_file(simulate, sim.config_file);
    apply_config_file(extract, ext.config_file);
    apply_config_file(sweep, swp.base.config_file);
    apply_config_file(maxsnr, msn.config_file);

    if (*simulate) return sibf::cli::run_simulate(sim);
    if (*extract) {
      ext.save_casts = ext_save_casts;
      ext.strict = ext_strict;
      return sibf::cli::run_extract(ext);
    }
    if (*sweep) return sibf::cli::run_sweep(swp);
    if (*maxsnr) return sibf::cli::run_maxsnr(msn);
  } catch (const sibf::cli::StrictFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStrict;
  } catch (const sibf::ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const sibf::DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const sibf::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
