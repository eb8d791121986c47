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

#include "sibf/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sibf/errors.hpp"

namespace sibf {

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u16(std::string& s, std::uint16_t v) {
  for (int i = 0; i < 2; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const std::string& s, size_t off) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[off + i]);
  return v;
}

std::uint16_t get_u16(const std::string& s, size_t off) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(s[off]) |
                                    (static_cast<unsigned char>(s[off + 1]) << 8));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path,
                       const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path.string() + ": " + ec.message());
}

WavData read_wav(const std::filesystem::path& path) {
  const std::string data = read_file(path);
  if (data.size() < 44 || data.compare(0, 4, "RIFF") != 0 ||
      data.compare(8, 4, "WAVE") != 0)
    throw IoError("not a RIFF/WAVE file: " + path.string());

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  size_t data_off = 0, data_len = 0;

  size_t off = 12;
  while (off + 8 <= data.size()) {
    const std::string id = data.substr(off, 4);
    const std::uint32_t len = get_u32(data, off + 4);
    if (id == "fmt ") {
      if (off + 8 + 16 > data.size()) throw IoError("truncated fmt chunk");
      format = get_u16(data, off + 8);
      channels = get_u16(data, off + 10);
      sample_rate = get_u32(data, off + 12);
      bits = get_u16(data, off + 22);
    } else if (id == "data") {
      data_off = off + 8;
      data_len = std::min<size_t>(len, data.size() - data_off);
    }
    off += 8 + len + (len % 2);  // chunks are word aligned
  }
  if (channels == 0 || data_off == 0)
    throw IoError("missing fmt or data chunk: " + path.string());

  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32)
    throw IoError("unsupported WAV encoding (want PCM16 or float32)");

  const size_t bytes_per = bits / 8;
  const size_t frames = data_len / (bytes_per * channels);
  WavData wav;
  wav.sample_rate = sample_rate;
  wav.samples.resize(frames, channels);
  for (size_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const size_t p = data_off + (n * channels + c) * bytes_per;
      if (pcm16) {
        const auto raw = static_cast<std::int16_t>(get_u16(data, p));
        wav.samples(n, c) = raw / 32768.0;
      } else {
        std::uint32_t u = get_u32(data, p);
        float f;
        std::memcpy(&f, &u, sizeof f);
        wav.samples(n, c) = f;
      }
    }
  }
  return wav;
}

void write_wav(const std::filesystem::path& path, const Eigen::MatrixXd& samples,
               double sample_rate, WavFormat format) {
  if (samples.cols() < 1) throw ArgumentError("need at least one channel");
  const auto channels = static_cast<std::uint16_t>(samples.cols());
  const auto frames = static_cast<std::uint32_t>(samples.rows());
  const std::uint16_t bits = format == WavFormat::kPcm16 ? 16 : 32;
  const std::uint32_t byte_rate =
      static_cast<std::uint32_t>(sample_rate) * channels * bits / 8;
  const std::uint32_t data_len = frames * channels * bits / 8;

  std::string out;
  out.reserve(44 + data_len);
  out += "RIFF";
  put_u32(out, 36 + data_len);
  out += "WAVEfmt ";
  put_u32(out, 16);
  put_u16(out, format == WavFormat::kPcm16 ? 1 : 3);
  put_u16(out, channels);
  put_u32(out, static_cast<std::uint32_t>(sample_rate));
  put_u32(out, byte_rate);
  put_u16(out, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(out, bits);
  out += "data";
  put_u32(out, data_len);

  for (std::uint32_t n = 0; n < frames; ++n) {
    for (int c = 0; c < channels; ++c) {
      const double v = samples(n, c);
      if (format == WavFormat::kPcm16) {
        // Symmetric with the 1/32768 read scaling, so quantization error
        // stays within half an LSB.
        const long q = std::lrint(std::max(-1.0, std::min(1.0, v)) * 32768.0);
        const auto raw = static_cast<std::int16_t>(
            std::max(-32768L, std::min(32767L, q)));
        put_u16(out, static_cast<std::uint16_t>(raw));
      } else {
        const auto f = static_cast<float>(v);
        std::uint32_t u;
        std::memcpy(&u, &f, sizeof u);
        put_u32(out, u);
      }
    }
  }
  write_text_atomic(path, out);
}

std::string format_double(double v, int precision) {
  std::ostringstream ss;
  ss.imbue(std::locale::classic());
  ss.precision(precision);
  ss << v;
  return ss.str();
}

void write_csv(const std::filesystem::path& path, const Eigen::MatrixXd& m,
               int precision) {
  std::string out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double(m(i, j), precision);
    }
    out += '\n';
  }
  write_text_atomic(path, out);
}

Eigen::MatrixXd read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("bad CSV cell '" + cell + "' in " + path.string());
      }
    }
    if (!rows.empty() && row.size() != rows[0].size())
      throw IoError("ragged CSV rows in " + path.string());
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("empty CSV: " + path.string());
  Eigen::MatrixXd m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return m;
}

std::map<std::string, std::string> read_config(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError("expected key = value at " + path.string() + ":" +
                    std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw IoError("empty key at " + path.string() + ":" +
                    std::to_string(lineno));
    kv[key] = value;
  }
  return kv;
}

}  // namespace sibf
