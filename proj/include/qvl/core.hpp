// Copyright 2026 The qvl Authors
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
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace qvl {

using Complex = std::complex<double>;

using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix8c = Eigen::Matrix<Complex, 8, 8>;
using MatrixXc = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;

/// Numerical tolerances shared across modules.
namespace tol {
inline constexpr double kConstruction = 1e-9;  // input validation
inline constexpr double kHermitian = 1e-10;
inline constexpr double kImagResidue = 1e-8;   // hard failure threshold
inline constexpr double kClampNegative = 1e-8; // eigenvalue clamping
inline constexpr double kDegenerate = 1e-12;   // cubic with |gamma2| below this
}  // namespace tol

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Amplitudes do not lie on the unit sphere.
class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A computation produced a value that violates a structural guarantee
/// (large imaginary residue, strongly negative eigenvalue, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qvl
