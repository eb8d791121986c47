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

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "sibf/errors.hpp"
#include "sibf/sim.hpp"

using namespace sibf;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sibf_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_SUITE("io") {

TEST_CASE("wav round trip") {
  TempDir tmp;
  auto rng = substream(121, "wav");
  std::uniform_real_distribution<double> uni(-0.9, 0.9);
  Eigen::MatrixXd x(500, 3);
  for (int i = 0; i < x.rows(); ++i)
    for (int c = 0; c < 3; ++c) x(i, c) = uni(rng);

  SUBCASE("float32 keeps full single precision") {
    const fs::path p = tmp.path / "f32.wav";
    write_wav(p, x, 16000.0, WavFormat::kFloat32);
    const WavData back = read_wav(p);
    CHECK(back.sample_rate == 16000.0);
    REQUIRE(back.samples.rows() == 500);
    REQUIRE(back.samples.cols() == 3);
    CHECK((back.samples - x).cwiseAbs().maxCoeff() < 1e-7);
  }

  SUBCASE("pcm16 quantizes to half an LSB") {
    const fs::path p = tmp.path / "p16.wav";
    write_wav(p, x, 48000.0, WavFormat::kPcm16);
    const WavData back = read_wav(p);
    CHECK(back.sample_rate == 48000.0);
    CHECK((back.samples - x).cwiseAbs().maxCoeff() < 1.0 / 32768.0);
  }

  SUBCASE("mono stays mono") {
    const fs::path p = tmp.path / "mono.wav";
    write_wav(p, x.col(0), 8000.0);
    CHECK(read_wav(p).samples.cols() == 1);
  }

  SUBCASE("rejects garbage") {
    const fs::path p = tmp.path / "bad.wav";
    write_text_atomic(p, "definitely not a wav file");
    CHECK_THROWS_AS(read_wav(p), IoError);
    CHECK_THROWS_AS(read_wav(tmp.path / "missing.wav"), IoError);
  }
}

TEST_CASE("csv round trip and determinism") {
  TempDir tmp;
  Eigen::MatrixXd m(2, 3);
  m << 1.0, -2.5, 3.25e-7, 0.0, 1e12, -0.125;

  const fs::path p = tmp.path / "m.csv";
  write_csv(p, m);
  const Eigen::MatrixXd back = read_csv(p);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);

  // Byte-identical on rewrite.
  std::ifstream f1(p, std::ios::binary);
  const std::string bytes1((std::istreambuf_iterator<char>(f1)), {});
  write_csv(tmp.path / "m2.csv", m);
  std::ifstream f2(tmp.path / "m2.csv", std::ios::binary);
  const std::string bytes2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(bytes1 == bytes2);
  CHECK(bytes1.find("\r") == std::string::npos);  // LF newlines only

  CHECK_THROWS_AS(read_csv(tmp.path / "missing.csv"), IoError);
}

TEST_CASE("config parsing") {
  TempDir tmp;
  const fs::path p = tmp.path / "run.cfg";
  write_text_atomic(p,
                    "# comment line\n"
                    "model = laplace\n"
                    "alpha=100\n"
                    "  beta = 8.0   # trailing comment\n"
                    "\n"
                    "generator = blend\n");
  const auto kv = read_config(p);
  CHECK(kv.at("model") == "laplace");
  CHECK(kv.at("alpha") == "100");
  CHECK(kv.at("beta") == "8.0");
  CHECK(kv.at("generator") == "blend");
  CHECK(kv.size() == 4);

  write_text_atomic(p, "not a key value line\n");
  CHECK_THROWS_AS(read_config(p), IoError);
}

}  // TEST_SUITE
