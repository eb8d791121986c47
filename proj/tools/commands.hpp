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

#ifndef SIBF_TOOLS_COMMANDS_HPP_
#define SIBF_TOOLS_COMMANDS_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sibf/sim.hpp"
#include "sibf/whiten.hpp"

namespace sibf::cli {

// A numerical check failed and --strict was requested: exit code 4.
struct StrictFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateOptions {
  std::string out_dir;
  int mics = 3;
  int sources = 2;
  double duration = 3.0;
  double sample_rate = 16000.0;
  int fft_size = 1024;
  int hop = 256;
  double multiplier = 1.0;
  std::uint64_t seed = 0;
  std::string kinds;   // comma-separated source kinds, padded when short
  std::string mixing = "complex";
  bool suite = false;  // write the four-scenario ladder instead
  std::string config_file;
};

struct ExtractOptions {
  std::string scene_path;
  std::string out_dir;
  std::string model = "laplace";
  double beta = 8.0;
  double alpha = 100.0;
  double nu = 1.0;
  double eps = 1e-7;
  double beta_best = 8.0;
  int iters = 10;
  int casts = 1;
  std::string start = "boost";
  std::string generator = "oracle";
  double blend_lambda = 0.5;
  std::string ref_file;
  int mic = 5;  // 1-based scaling channel, clamped to the channel count
  std::string band_zero = "62.5,7812.5";
  std::string run_id = "run";
  int fft_size = 1024;  // used only when the scene is a bare WAV
  int hop = 256;
  bool save_casts = false;
  bool strict = false;
  std::string config_file;
};

struct SweepOptions {
  ExtractOptions base;
  std::string grid_beta;
  std::string grid_alpha;
  std::string grid_nu;
  std::string grid_iters;
  std::string grid_casts;
};

struct MaxSnrOptions {
  std::string scene_path;
  std::string out_dir;
  std::string mask_target;
  std::string mask_interference;
  bool ideal_masks = false;
  double mask_threshold = 10.0;  // power ratio defining "only one present"
  int mic = 5;
  std::string band_zero = "62.5,7812.5";
  std::string run_id = "run";
  int fft_size = 1024;
  int hop = 256;
  bool verify_unified = false;
  std::string model = "laplace";  // model used by --verify-unified
  int iters = 10;
  bool strict = false;
  std::string config_file;
};

int run_simulate(const SimulateOptions& opt);
int run_extract(const ExtractOptions& opt);
int run_sweep(const SweepOptions& opt);
int run_maxsnr(const MaxSnrOptions& opt);

// Parses "a,b" with fraction support ("1/8"): helper shared with sweep grids.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace sibf::cli

#endif  // SIBF_TOOLS_COMMANDS_HPP_
