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

#include "sibf/eval.hpp"

#include <cmath>

#include "doctest.h"
#include "sibf/errors.hpp"
#include "sibf/sim.hpp"

using namespace sibf;

namespace {

Eigen::VectorXd random_signal(int n, std::uint64_t seed) {
  auto rng = substream(seed, "eval");
  std::normal_distribution<double> gauss;
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) x[i] = gauss(rng);
  return x;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("si-sdr basics") {
  const Eigen::VectorXd s = random_signal(4096, 111);

  SUBCASE("perfect and scaled matches are infinite") {
    CHECK(std::isinf(si_sdr(s, s)));
    CHECK(std::isinf(si_sdr(Eigen::VectorXd(0.5 * s), s)));
  }

  SUBCASE("orthogonal noise at a tenth of the energy gives 10 dB") {
    Eigen::VectorXd noise = random_signal(4096, 112);
    noise -= noise.dot(s) / s.squaredNorm() * s;  // exactly orthogonal
    noise *= std::sqrt(0.1 * s.squaredNorm() / noise.squaredNorm());
    const double got = si_sdr(s + noise, s);
    CHECK(got == doctest::Approx(10.0).epsilon(1e-9));
  }

  SUBCASE("invariant to estimate scaling") {
    Eigen::VectorXd e = random_signal(4096, 113) + s;
    const double base = si_sdr(e, s);
    CHECK(si_sdr(Eigen::VectorXd(-7.25 * e), s) ==
          doctest::Approx(base).epsilon(1e-9));
  }

  SUBCASE("zero reference rejected") {
    CHECK_THROWS_AS(si_sdr(s, Eigen::VectorXd::Zero(4096)), ArgumentError);
  }
}

TEST_CASE("snr basics") {
  const Eigen::VectorXd a = random_signal(2048, 114);

  CHECK(snr_db(a, a) == doctest::Approx(0.0));
  // Doubling the noise amplitude costs 20 log10(2) = 6.02 dB.
  CHECK(snr_db(a, Eigen::VectorXd(2.0 * a)) ==
        doctest::Approx(-20.0 * std::log10(2.0)).epsilon(1e-12));
  CHECK(std::isinf(snr_db(a, Eigen::VectorXd::Zero(2048))));
}

TEST_CASE("sdr decomposition") {
  const Eigen::VectorXd s = random_signal(4096, 115);

  SUBCASE("estimate in the reference span is flagged infinite") {
    const MetricReport rep = sdr_decomposition(Eigen::VectorXd(3.0 * s), s);
    CHECK(rep.sdr_infinite);
    CHECK(rep.correlation == doctest::Approx(1.0));
  }

  SUBCASE("orthogonal estimate is numerically negative infinity") {
    Eigen::VectorXd e = random_signal(4096, 116);
    e -= e.dot(s) / s.squaredNorm() * s;
    const MetricReport rep = sdr_decomposition(e, s);
    CHECK(rep.sdr_db <= -40.0);
  }

  SUBCASE("a 50/50 energy split lands at 0 dB") {
    Eigen::VectorXd ortho = random_signal(4096, 117);
    ortho -= ortho.dot(s) / s.squaredNorm() * s;  // Gram-Schmidt
    const Eigen::VectorXd unit_s = s / s.norm();
    const Eigen::VectorXd unit_o = ortho / ortho.norm();
    const MetricReport rep =
        sdr_decomposition(Eigen::VectorXd(unit_s + unit_o), s);
    CHECK(rep.sdr_db == doctest::Approx(0.0).epsilon(0.01));
  }
}

}  // TEST_SUITE
