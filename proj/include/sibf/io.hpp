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

#ifndef SIBF_IO_HPP_
#define SIBF_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sibf/types.hpp"

namespace sibf {

enum class WavFormat { kPcm16, kFloat32 };

struct WavData {
  Eigen::MatrixXd samples;  // frames x channels, in [-1, 1] for PCM
  double sample_rate = 0.0;
};

// PCM16 and IEEE float32 WAV, mono or multichannel.
WavData read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const Eigen::MatrixXd& samples,
               double sample_rate, WavFormat format = WavFormat::kFloat32);

// RFC-4180-style CSV: dot decimal separator, LF newlines, no header.
void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
               int precision = 12);
Eigen::MatrixXd read_csv(const std::filesystem::path& path);

// Writes arbitrary text atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content);

// Flat "key = value" config, UTF-8, '#' comments, no sections.
std::map<std::string, std::string> read_config(const std::filesystem::path& path);

// Formats a double with enough digits to round-trip, locale independent.
std::string format_double(double v, int precision = 12);

}  // namespace sibf

#endif  // SIBF_IO_HPP_
