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

// Three-point Pauli correlation tensor, its flattenings, and the closed-form
// spectrum of each flattening's Gram matrix.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cmath>

#include "qvl/core.hpp"
#include "qvl/measures.hpp"
#include "qvl/operators.hpp"
#include "qvl/state.hpp"

namespace qvl {

/// R_{ijk} = Tr(rho sigma_i x sigma_j x sigma_k), axes ordered x, y, z.
struct CorrelationTensor {
  std::array<double, 27> r{};

  double operator()(int i, int j, int k) const {
    return r[static_cast<std::size_t>(9 * i + 3 * j + k)];
  }
  double& operator()(int i, int j, int k) { return r[static_cast<std::size_t>(9 * i + 3 * j + k)]; }
};

namespace detail {

inline const std::array<Matrix2c, 3>& pauli_matrices() {
  static const std::array<Matrix2c, 3> p = [] {
    std::array<Matrix2c, 3> m;
    const Complex i(0.0, 1.0);
    m[0] << 0.0, 1.0, 1.0, 0.0;
    m[1] << 0.0, -i, i, 0.0;
    m[2] << 1.0, 0.0, 0.0, -1.0;
    return m;
  }();
  return p;
}

}  // namespace detail

inline CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  if (rho.dim() != 8) throw DomainError("correlation tensor needs a three-qubit state");
  const auto& p = detail::pauli_matrices();
  const Matrix8c m = rho.matrix();
  CorrelationTensor t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Matrix4c pij = Eigen::kroneckerProduct(p[i], p[j]);
      for (int k = 0; k < 3; ++k) {
        const Matrix8c op = Eigen::kroneckerProduct(pij, p[k]);
        const Complex v = (m * op).trace();
        if (std::abs(v.imag()) > 1e-10) {
          throw NumericalError("correlation tensor entry has an imaginary residue");
        }
        t(i, j, k) = v.real();
      }
    }
  }
  return t;
}

inline CorrelationTensor correlation_tensor(const StateParams& p) {
  return correlation_tensor(density(p));
}

/// sum_{ijk} R_ijk u_i v_j w_k
inline double trilinear(const CorrelationTensor& t, const UnitVector3& u, const UnitVector3& v,
                        const UnitVector3& w) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double uv = u[i] * v[j];
      s += uv * (t(i, j, 0) * w.x + t(i, j, 1) * w.y + t(i, j, 2) * w.z);
    }
  }
  return s;
}

/// <O> for a pure-Pauli-product operator family evaluated through R, without
/// forming the 8x8 matrix.
inline double family_expectation(const CorrelationTensor& t, const PopcountWeights& w,
                                 const SettingsVector& s) {
  // Contract qubit 1 and 2 first: c[s1][s2] is a 3-vector over the third axis.
  std::array<std::array<std::array<double, 3>, 2>, 2> c{};
  for (int s1 = 0; s1 < 2; ++s1) {
    const UnitVector3& u = s.pick(0, s1 != 0);
    for (int s2 = 0; s2 < 2; ++s2) {
      const UnitVector3& v = s.pick(1, s2 != 0);
      for (int k = 0; k < 3; ++k) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
          acc += u[i] * (t(i, 0, k) * v.x + t(i, 1, k) * v.y + t(i, 2, k) * v.z);
        }
        c[s1][s2][k] = acc;
      }
    }
  }
  double total = 0.0;
  for (unsigned mask = 0; mask < 8; ++mask) {
    const double weight = w[static_cast<std::size_t>(std::popcount(mask))];
    if (weight == 0.0) continue;
    const auto& vec = c[(mask >> 2) & 1][(mask >> 1) & 1];
    const UnitVector3& z = s.pick(2, (mask & 1) != 0);
    total += weight * (vec[0] * z.x + vec[1] * z.y + vec[2] * z.z);
  }
  return total;
}

/// One of the three 3x9 matricizations. Row index is the tensor index on
/// `axis`; the column index fuses the two remaining indices in raster order
/// (earlier axis major, x < y < z).
struct Flattening {
  int axis = 1;
  Eigen::Matrix<double, 3, 9> matrix = Eigen::Matrix<double, 3, 9>::Zero();
};

inline Flattening flatten(const CorrelationTensor& t, int axis) {
  if (axis < 1 || axis > 3) throw DomainError("flattening axis must be 1, 2 or 3");
  Flattening f;
  f.axis = axis;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const double v = t(i, j, k);
        switch (axis) {
          case 1: f.matrix(i, 3 * j + k) = v; break;
          case 2: f.matrix(j, 3 * i + k) = v; break;
          case 3: f.matrix(k, 3 * i + j) = v; break;
        }
      }
    }
  }
  return f;
}

/// Characteristic cubic x^3 + alpha1 x^2 + alpha2 x + alpha3 of M = F F^T
/// and its three real roots from the trigonometric formula.
struct CubicSpectrum {
  Eigen::Matrix3d gram = Eigen::Matrix3d::Zero();
  double alpha1 = 0, alpha2 = 0, alpha3 = 0;
  double gamma1 = 0, gamma2 = 0;
  double theta = 0;          // in [0, pi/3]
  double x1 = 0, x2 = 0, x3 = 0;  // x1 >= x3 >= x2

  double discriminant() const { return gamma1 * gamma1 + gamma2 * gamma2 * gamma2; }
  double residual(double x) const { return ((x + alpha1) * x + alpha2) * x + alpha3; }
};

/// Coefficients of the characteristic cubic of a symmetric 3x3 matrix.
inline std::array<double, 3> characteristic_coefficients(const Eigen::Matrix3d& m) {
  const double xx = m(0, 0), yy = m(1, 1), zz = m(2, 2);
  const double xy = m(0, 1), xz = m(0, 2), yz = m(1, 2);
  return {-xx - yy - zz,
          xx * yy + xx * zz + yy * zz - xy * xy - xz * xz - yz * yz,
          -xx * yy * zz + xx * yz * yz + yy * xz * xz + zz * xy * xy - 2 * xy * yz * xz};
}

/// Below this distance of theta from 0 or pi/3 two roots nearly coincide and
/// the arccos loses about half the significant digits for that pair.
inline constexpr double kNearDoubleRoot = 1e-4;

namespace detail {

// Replaces the nearly equal roots lo <= hi by the eigenvalues of `m`
// restricted to the plane orthogonal to the eigenvector of `isolated`.
inline void refine_close_pair(const Eigen::Matrix3d& m, double isolated, double& lo, double& hi) {
  const Eigen::Matrix3d a = m - isolated * Eigen::Matrix3d::Identity();
  const std::array<Eigen::Vector3d, 3> cand{a.row(0).cross(a.row(1)), a.row(0).cross(a.row(2)),
                                            a.row(1).cross(a.row(2))};
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (cand[i].squaredNorm() > cand[best].squaredNorm()) best = i;
  }
  if (!(cand[best].squaredNorm() > 0.0)) return;
  const Eigen::Vector3d v = cand[best].normalized();
  Eigen::Index axis = 0;
  v.cwiseAbs().minCoeff(&axis);
  const Eigen::Vector3d u = v.cross(Eigen::Vector3d::Unit(axis)).normalized();
  const Eigen::Vector3d w = v.cross(u);
  const double p = u.dot(m * u), q = u.dot(m * w), s = w.dot(m * w);
  const double mid = (p + s) / 2, half = std::hypot((p - s) / 2, q);
  lo = mid - half;
  hi = mid + half;
}

}  // namespace detail

inline CubicSpectrum cubic_roots(const Eigen::Matrix3d& gram) {
  CubicSpectrum c;
  c.gram = gram;
  const auto a = characteristic_coefficients(gram);
  c.alpha1 = a[0];
  c.alpha2 = a[1];
  c.alpha3 = a[2];
  // gamma1 = det(B)/2 and gamma2 = -tr(B^2)/6 with B = M - tr(M)/3 I.
  const double shift = gram.trace() / 3;
  const Eigen::Matrix3d b = gram - shift * Eigen::Matrix3d::Identity();
  c.gamma1 = b.determinant() / 2;
  c.gamma2 = -(b * b).trace() / 6;

  if (std::abs(c.gamma2) < tol::kDegenerate || c.gamma2 > 0.0) {
    c.theta = 0.0;
    c.x1 = c.x2 = c.x3 = shift;
    return c;
  }
  const double r = std::sqrt(-c.gamma2);
  const double arg = std::clamp(c.gamma1 / (r * r * r), -1.0, 1.0);
  c.theta = std::acos(arg) / 3;
  c.x1 = shift + 2 * r * std::cos(c.theta);
  c.x2 = shift + 2 * r * std::cos(c.theta + 2 * kPi / 3);
  c.x3 = shift + 2 * r * std::cos(c.theta - 2 * kPi / 3);
  if (c.theta < kNearDoubleRoot) {
    detail::refine_close_pair(gram, c.x1, c.x2, c.x3);
  } else if (kPi / 3 - c.theta < kNearDoubleRoot) {
    detail::refine_close_pair(gram, c.x2, c.x3, c.x1);
  }
  return c;
}

inline CubicSpectrum gram_cubic(const Flattening& f) {
  return cubic_roots(f.matrix * f.matrix.transpose());
}

/// Per-axis spectra and the resulting bound.
struct GammaRReport {
  std::array<CubicSpectrum, 3> spectra;
  std::array<double, 3> per_axis{};  // 2 sqrt(x1 + x3) for each flattening
  int argmin = 1;                    // 1-based axis attaining the minimum
  double gamma_R = 0.0;
};

inline GammaRReport gamma_R_report(const CorrelationTensor& t) {
  GammaRReport rep;
  for (int axis = 1; axis <= 3; ++axis) {
    const std::size_t j = static_cast<std::size_t>(axis - 1);
    rep.spectra[j] = gram_cubic(flatten(t, axis));
    const CubicSpectrum& c = rep.spectra[j];
    assert(c.x1 >= c.x3 - 1e-9 && c.x3 >= c.x2 - 1e-9);
    const double top = std::max(0.0, c.x1) + std::max(0.0, c.x3);
    rep.per_axis[j] = 2 * std::sqrt(top);
  }
  rep.argmin = 1;
  for (int axis = 2; axis <= 3; ++axis) {
    if (rep.per_axis[static_cast<std::size_t>(axis - 1)] <
        rep.per_axis[static_cast<std::size_t>(rep.argmin - 1)]) {
      rep.argmin = axis;
    }
  }
  rep.gamma_R = rep.per_axis[static_cast<std::size_t>(rep.argmin - 1)];
  return rep;
}

inline double gamma_R(const CorrelationTensor& t) { return gamma_R_report(t).gamma_R; }

inline double gamma_R(const StateParams& p) { return gamma_R(correlation_tensor(p)); }

/// Cubic coefficients of flattening `axis` written in the E measures.
/// Axes 2 and 3 follow from axis 1 by E2 <-> E3 and E1 <-> E3.
inline std::array<double, 3> alpha_from_measures(const MeasureSet& m, int axis) {
  double e1 = m.E1, e2 = m.E2, e3 = m.E3;
  switch (axis) {
    case 1: break;
    case 2: std::swap(e2, e3); break;
    case 3: std::swap(e1, e3); break;
    default: throw DomainError("flattening axis must be 1, 2 or 3");
  }
  const double s1 = e1 * e1, s2 = e2 * e2, s3 = e3 * e3, s4 = m.E4 * m.E4, e5 = m.E5;
  const double a1 = -1 - (2 * s1 + 2 * s2 + 2 * s3 + 3 * s4);
  const double a2 = 2 * (s1 + s2 + s4) * s3 + 2 * (s1 + s2) * (s4 + 1) + s1 * s1 + s2 * s2 +
                    4 * s4 + 16 * e5;
  const double b = s1 + s2 + 2 * s4 + 8 * e5;
  const double a3 = (s1 + s2 + 2 * s3 + 2 * s4) * (2 * s4 * s4 + 2 * s1 * s2 + s1 * s4 + s2 * s4) -
                    b * b;
  return {a1, a2, a3};
}

}  // namespace qvl
