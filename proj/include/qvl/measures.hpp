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

// Local-unitary invariants of canonical three-qubit states: purities,
// tangles, pairwise concurrences and the E1..E5 family.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "qvl/core.hpp"
#include "qvl/state.hpp"

namespace qvl {

struct PurityInvariants {
  double I1 = 1.0;  // Tr rho_1^2
  double I2 = 1.0;
  double I3 = 1.0;
};

struct Tangles {
  double tau_1_23 = 0.0;  // 2 (1 - Tr rho_1^2)
  double tau_1_2 = 0.0;   // squared concurrence of rho_12
  double tau_1_3 = 0.0;
  double tau_2_3 = 0.0;
  double I4 = 0.0;        // three-tangle
};

struct WoottersResult {
  std::array<double, 4> Q{};  // nonincreasing
  double concurrence = 0.0;
};

/// Every invariant of one state.
struct MeasureSet {
  double I1 = 0, I2 = 0, I3 = 0, I4 = 0, I5 = 0;
  double E1 = 0, E2 = 0, E3 = 0, E4 = 0, E5 = 0;
  double tau_1_23 = 0, tau_1_2 = 0, tau_1_3 = 0, tau_2_3 = 0;
  double C1 = 0, C2 = 0, C3 = 0, CT2 = 0;
};

namespace detail {

inline double sq(double x) { return x * x; }

// |lambda1 lambda4 e^{i phi} - lambda2 lambda3|
inline double e3_modulus(const StateParams& p) {
  return std::abs(std::polar(p.l(1) * p.l(4), p.phi) - p.l(2) * p.l(3));
}

inline double trace_power(const MatrixXc& m, int k) {
  MatrixXc acc = m;
  for (int i = 1; i < k; ++i) acc = acc * m;
  return acc.trace().real();
}

}  // namespace detail

inline PurityInvariants purity_invariants(const StateParams& p) {
  validate(p);
  using detail::sq;
  const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
  const Complex e = std::polar(1.0, p.phi);
  PurityInvariants out;
  out.I1 = sq(sq(l0)) + 2 * sq(l0) * sq(l1) + sq(1 - sq(l0));
  out.I2 = sq(1 - sq(l3) - sq(l4)) + 2 * std::norm(l2 * l4 + l1 * l3 * e) + sq(sq(l3) + sq(l4));
  out.I3 = sq(1 - sq(l2) - sq(l4)) + 2 * std::norm(l3 * l4 + l1 * l2 * e) + sq(sq(l2) + sq(l4));
  return out;
}

/// Concurrence of a two-qubit density matrix.
///
/// With rho = W W^H (W = V sqrt(D) from the eigendecomposition of rho), the
/// square roots of the eigenvalues of rho (sy x sy) rho^* (sy x sy) are the
/// singular values of the complex-symmetric matrix T = W^T (sy x sy) W. Taking
/// singular values avoids square roots of the near-zero eigenvalues that
/// rank-deficient reduced states produce.
inline WoottersResult wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DomainError("Wootters concurrence needs a 4x4 density matrix");

  Eigen::SelfAdjointEigenSolver<Matrix4c> es(Matrix4c(rho.matrix()));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  Eigen::Vector4d d = es.eigenvalues();
  if (d.minCoeff() < -tol::kClampNegative) {
    throw NumericalError("two-qubit state has a negative eigenvalue");
  }
  d = d.cwiseMax(0.0).cwiseSqrt();
  const Matrix4c w = es.eigenvectors() * d.cast<Complex>().asDiagonal();

  // sigma_y x sigma_y = -|00><11| + |01><10| + |10><01| - |11><00|
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  const Matrix4c t = w.transpose() * yy * w;
  Eigen::JacobiSVD<Matrix4c> svd(t);
  const Eigen::Vector4d s = svd.singularValues();  // sorted descending

  WoottersResult out;
  for (int i = 0; i < 4; ++i) out.Q[static_cast<std::size_t>(i)] = s[i];
  std::sort(out.Q.begin(), out.Q.end(), std::greater<>());
  out.concurrence = std::max(0.0, out.Q[0] - out.Q[1] - out.Q[2] - out.Q[3]);
  return out;
}

inline Tangles tangles(const StateParams& p) {
  validate(p);
  using detail::sq;
  const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
  Tangles t;
  t.tau_1_23 = 4 * sq(l0) * (1 - sq(l0) - sq(l1));
  t.tau_1_2 = 4 * sq(l0) * sq(l3);
  t.tau_1_3 = 4 * sq(l0) * sq(l2);
  t.tau_2_3 = 4 * sq(detail::e3_modulus(p));
  t.I4 = 4 * sq(l0) * sq(l4);
  return t;
}

/// Fifth invariant. Equal to 3 Tr((rho_i x rho_j) rho_ij) - Tr rho_i^3 -
/// Tr rho_j^3 for every pair (i, j).
inline double invariant_i5(const StateParams& p) {
  validate(p);
  using detail::sq;
  const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
  return 1 + 3 * sq(l0) * (sq(l0) - 1 + sq(l1) - sq(l1) * sq(l4) + sq(l2) * sq(l3)) -
         3 * (1 - sq(l0)) * sq(detail::e3_modulus(p));
}

/// Tr((rho_i x rho_j) rho_ij) - Tr rho_i^2 - Tr rho_j^2 for qubits i < j.
inline double reduced_correlation(const DensityMatrix& rho, int i, int j) {
  const MatrixXc ri = partial_trace(rho, {i}).matrix();
  const MatrixXc rj = partial_trace(rho, {j}).matrix();
  const MatrixXc rij = partial_trace(rho, {i, j}).matrix();
  MatrixXc prod = Eigen::kroneckerProduct(ri, rj);
  return (prod * rij).trace().real() - detail::trace_power(ri, 2) - detail::trace_power(rj, 2);
}

/// Closed-form right-hand sides of the three reduced-density correlation
/// identities, indexed (1,2), (2,3), (1,3).
inline std::array<double, 3> reduced_correlation_closed_form(const MeasureSet& m) {
  using detail::sq;
  return {m.E5 - 1 + (sq(m.E1) + sq(m.E4)) / 4,
          m.E5 - 1 + (sq(m.E3) + sq(m.E4)) / 4,
          m.E5 - 1 + (sq(m.E2) + sq(m.E4)) / 4};
}

/// Fills the whole MeasureSet and checks the correlation identities against
/// the partial-trace route; throws NumericalError when they disagree.
inline MeasureSet entanglement_measures(const StateParams& p) {
  using detail::sq;
  const PurityInvariants pur = purity_invariants(p);
  const Tangles tau = tangles(p);
  const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
  const double e3 = detail::e3_modulus(p);

  MeasureSet m;
  m.I1 = pur.I1;
  m.I2 = pur.I2;
  m.I3 = pur.I3;
  m.I4 = tau.I4;
  m.I5 = invariant_i5(p);
  m.E1 = 2 * l0 * l3;
  m.E2 = 2 * l0 * l2;
  m.E3 = 2 * e3;
  m.E4 = 2 * l0 * l4;
  m.E5 = sq(l0) * (sq(l2) * sq(l3) - sq(l1) * sq(l4) + sq(e3));
  m.tau_1_23 = tau.tau_1_23;
  m.tau_1_2 = tau.tau_1_2;
  m.tau_1_3 = tau.tau_1_3;
  m.tau_2_3 = tau.tau_2_3;
  m.C1 = std::sqrt(std::max(0.0, 2 * (1 - pur.I1)));
  m.C2 = std::sqrt(std::max(0.0, 2 * (1 - pur.I2)));
  m.C3 = std::sqrt(std::max(0.0, 2 * (1 - pur.I3)));
  m.CT2 = sq(m.C1) + sq(m.C2) + sq(m.C3);

  const DensityMatrix rho = density(p);
  const auto expected = reduced_correlation_closed_form(m);
  const std::array<double, 3> got{reduced_correlation(rho, 1, 2), reduced_correlation(rho, 2, 3),
                                  reduced_correlation(rho, 1, 3)};
  for (std::size_t k = 0; k < 3; ++k) {
    if (std::abs(got[k] - expected[k]) > 1e-10) {
      throw NumericalError("reduced-density correlation identity violated");
    }
  }
  return m;
}

}  // namespace qvl
