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

#ifndef SIBF_TYPES_HPP_
#define SIBF_TYPES_HPP_

#include <complex>

#include <Eigen/Dense>

namespace sibf {

using Complex = std::complex<double>;

// Complex time-frequency grid, bins x frames.
using Spectrogram = Eigen::MatrixXcd;

// Real time-frequency grid (references, model weights, masks), bins x frames.
using RealGrid = Eigen::MatrixXd;

}  // namespace sibf

#endif  // SIBF_TYPES_HPP_
