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

// Permutation-symmetric three-qubit Bell operators.
//
// Every operator in the families O_0..O_8 is a weighted sum of the eight
// products A_1^{s1} x A_2^{s2} x A_3^{s3}, s in {plain, primed}^3, where the
// weight depends only on how many slots are primed. That popcount view is
// the single source of truth for both the dense and the tensor-contraction
// evaluation paths.

#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "qvl/core.hpp"
#include "qvl/state.hpp"

namespace qvl {

struct UnitVector3 {
  double x = 0.0, y = 0.0, z = 1.0;

  /// Direction with polar angle theta and azimuth phi.
  static UnitVector3 from_angles(double theta, double phi) {
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
  }

  double norm2() const { return x * x + y * y + z * z; }
  double operator[](int i) const { return i == 0 ? x : i == 1 ? y : z; }
  UnitVector3 operator-() const { return {-x, -y, -z}; }
  friend bool operator==(const UnitVector3&, const UnitVector3&) = default;
};

inline void validate(const UnitVector3& a) {
  if (!std::isfinite(a.norm2()) || std::abs(a.norm2() - 1.0) > tol::kConstruction) {
    throw DomainError("measurement direction is not a unit vector");
  }
}

/// Measurement directions a_j (plain) and a'_j (primed) for qubits 1..3.
struct SettingsVector {
  std::array<UnitVector3, 3> a{};
  std::array<UnitVector3, 3> a_prime{};

  /// Direction used on `qubit` (0-based) in the plain or primed slot.
  const UnitVector3& pick(int qubit, bool primed) const {
    return primed ? a_prime[static_cast<std::size_t>(qubit)]
                  : a[static_cast<std::size_t>(qubit)];
  }

  /// All six directions set to the same pair.
  static SettingsVector uniform(const UnitVector3& plain, const UnitVector3& primed) {
    SettingsVector s;
    s.a.fill(plain);
    s.a_prime.fill(primed);
    return s;
  }

  friend bool operator==(const SettingsVector&, const SettingsVector&) = default;
};

inline void validate(const SettingsVector& s) {
  for (int q = 0; q < 3; ++q) {
    validate(s.pick(q, false));
    validate(s.pick(q, true));
  }
}

/// Family coefficients; which entries are read depends on the family.
struct CoefficientVector {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  friend bool operator==(const CoefficientVector&, const CoefficientVector&) = default;
};

inline constexpr int kFamilyCount = 9;
inline constexpr int kMerminFamily = 3;

inline CoefficientVector mermin_coefficients() { return {{1.0, -1.0, 0.0, 0.0}}; }

/// Number of coefficients family `f` reads.
inline int coefficient_count(int family) {
  constexpr std::array<int, kFamilyCount> counts{4, 0, 2, 2, 2, 2, 3, 3, 4};
  if (family < 0 || family >= kFamilyCount) {
    throw DomainError("unknown operator family " + std::to_string(family));
  }
  return counts[static_cast<std::size_t>(family)];
}

/// Weight of a product term indexed by its number of primed slots (0..3).
using PopcountWeights = std::array<double, 4>;

inline PopcountWeights family_weights(int family, const CoefficientVector& k) {
  coefficient_count(family);
  for (double v : k.c) {
    if (!std::isfinite(v)) throw DomainError("coefficients must be finite");
  }
  const double c1 = k[0], c2 = k[1], c3 = k[2], c4 = k[3];
  switch (family) {
    case 0:
    case 8: return {c4, c1, c2, c3};
    case 1: return {0.0, 1.0, 0.0, 0.0};
    case 2: return {0.0, std::abs(c1), std::abs(c2), 0.0};
    case 3: return {0.0, c1, 0.0, c2};
    case 4: return {std::abs(c2), std::abs(c1), 0.0, 0.0};
    case 5: return {c2, 0.0, 0.0, c1};
    case 6: return {0.0, c1, c2, c3};
    case 7: return {c3, c1, 0.0, c2};
  }
  return {};
}

/// sum_k |w_k| * (number of products with k primed slots). Each product of
/// unit-vector observables has operator norm 1.
inline double operator_norm_bound(const PopcountWeights& w) {
  constexpr std::array<double, 4> multiplicity{1, 3, 3, 1};
  double b = 0.0;
  for (std::size_t k = 0; k < 4; ++k) b += std::abs(w[k]) * multiplicity[k];
  return b;
}

/// a . sigma
inline Matrix2c pauli_observable(const UnitVector3& a) {
  validate(a);
  Matrix2c m;
  m << Complex(a.z, 0.0), Complex(a.x, -a.y),
       Complex(a.x, a.y), Complex(-a.z, 0.0);
  return m;
}

struct BellOperator {
  Matrix8c matrix = Matrix8c::Zero();
};

/// Dense 8x8 operator of family `family` (0..8) at the given settings.
inline BellOperator build_family(int family, const CoefficientVector& coeffs,
                                 const SettingsVector& s) {
  const PopcountWeights w = family_weights(family, coeffs);
  validate(s);
  std::array<std::array<Matrix2c, 2>, 3> obs;
  for (int q = 0; q < 3; ++q) {
    obs[q][0] = pauli_observable(s.pick(q, false));
    obs[q][1] = pauli_observable(s.pick(q, true));
  }
  BellOperator op;
  for (unsigned mask = 0; mask < 8; ++mask) {
    const double weight = w[static_cast<std::size_t>(std::popcount(mask))];
    if (weight == 0.0) continue;
    const Matrix2c& m1 = obs[0][(mask >> 2) & 1];
    const Matrix2c& m2 = obs[1][(mask >> 1) & 1];
    const Matrix2c& m3 = obs[2][mask & 1];
    const Matrix4c m12 = Eigen::kroneckerProduct(m1, m2);
    const Matrix8c m123 = Eigen::kroneckerProduct(m12, m3);
    op.matrix += weight * m123;
  }
  return op;
}

/// Tr(rho O).
inline double expectation(const DensityMatrix& rho, const BellOperator& op) {
  if (rho.dim() != 8) throw DomainError("expectation needs a three-qubit density matrix");
  const Complex v = (rho.matrix() * op.matrix).trace();
  if (std::abs(v.imag()) > tol::kImagResidue) {
    throw NumericalError("expectation value has a large imaginary part");
  }
  return v.real();
}

}  // namespace qvl
