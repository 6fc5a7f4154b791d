// Copyright 2026 The covnot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace covnot {

using Complex = std::complex<double>;

// Basis ordering for all two-qubit objects: |uu>, |ud>, |du>, |dd> with
// |u> = (1, 0). The first qubit is the most significant index bit.
using Operator2 = Eigen::Matrix2cd;
using Operator4 = Eigen::Matrix4cd;
using Ket4 = Eigen::Vector4cd;
using Matrix16c = Eigen::Matrix<Complex, 16, 16>;
using Matrix16d = Eigen::Matrix<double, 16, 16>;

// Tolerances shared by every predicate in the library.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenFloor = -1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kCpTol = 1e-10;

/// A linear map on two-qubit operators, used for black-box channels.
using ChannelFn = std::function<Operator4(const Operator4&)>;

}  // namespace covnot
