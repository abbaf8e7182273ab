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

// Canonical three-qubit pure states, density matrices and partial traces.
//
// Basis convention: |b1 b2 b3> has index 4*b1 + 2*b2 + b3, i.e. qubit 1 is
// the most significant bit. Every module uses this ordering.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "qvl/core.hpp"

namespace qvl {

/// Five canonical amplitudes lambda_0..lambda_4 and the relative phase phi.
struct StateParams {
  std::array<double, 5> lambda{1.0, 0.0, 0.0, 0.0, 0.0};
  double phi = 0.0;

  double l(int j) const { return lambda[static_cast<std::size_t>(j)]; }
  friend bool operator==(const StateParams&, const StateParams&) = default;
};

/// Throws DomainError / NormalizationError when `p` is not a canonical state.
inline void validate(const StateParams& p) {
  for (int j = 0; j < 5; ++j) {
    if (!std::isfinite(p.l(j)) || p.l(j) < 0.0) {
      std::ostringstream os;
      os << "lambda" << j << " = " << p.l(j) << " must be finite and >= 0";
      throw DomainError(os.str());
    }
  }
  if (!std::isfinite(p.phi) || p.phi < 0.0 || p.phi > kPi) {
    std::ostringstream os;
    os << "phi = " << p.phi << " outside [0, pi]";
    throw DomainError(os.str());
  }
  double norm2 = 0.0;
  for (double v : p.lambda) norm2 += v * v;
  if (std::abs(norm2 - 1.0) > tol::kConstruction) {
    std::ostringstream os;
    os.precision(17);
    os << "sum of lambda^2 = " << norm2 << " deviates from 1";
    throw NormalizationError(os.str());
  }
}

/// Eight amplitudes over |b1 b2 b3>.
struct StateVector {
  Eigen::Matrix<Complex, 8, 1> amplitudes = Eigen::Matrix<Complex, 8, 1>::Zero();

  double norm2() const { return amplitudes.squaredNorm(); }
};

/// Basis index of |b1 b2 b3>.
constexpr int basis_index(int b1, int b2, int b3) { return 4 * b1 + 2 * b2 + b3; }

inline StateVector make_state(const StateParams& p) {
  validate(p);
  StateVector s;
  s.amplitudes[basis_index(0, 0, 0)] = p.l(0);
  s.amplitudes[basis_index(1, 0, 0)] = std::polar(p.l(1), p.phi);
  s.amplitudes[basis_index(1, 0, 1)] = p.l(2);
  s.amplitudes[basis_index(1, 1, 0)] = p.l(3);
  s.amplitudes[basis_index(1, 1, 1)] = p.l(4);
  return s;
}

/// Hermitian, unit-trace, positive semidefinite matrix on 1, 2 or 3 qubits.
class DensityMatrix {
 public:
  /// Validating constructor.
  explicit DensityMatrix(MatrixXc m) : m_(std::move(m)) { check(); }

  int dim() const { return static_cast<int>(m_.rows()); }
  int qubits() const { return dim() == 2 ? 1 : dim() == 4 ? 2 : 3; }
  const MatrixXc& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix(MatrixXc m, Unchecked) : m_(std::move(m)) {}

  void check() const {
    const auto n = m_.rows();
    if (m_.cols() != n || (n != 2 && n != 4 && n != 8)) {
      throw DomainError("density matrix must be 2x2, 4x4 or 8x8");
    }
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian) {
      throw DomainError("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol::kHermitian) {
      throw DomainError("density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol::kHermitian) {
      throw DomainError("density matrix has a negative eigenvalue");
    }
  }

  MatrixXc m_;

  friend DensityMatrix density(const StateVector& s);
  friend DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);
};

/// Rank-one projector |psi><psi|.
inline DensityMatrix density(const StateVector& s) {
  if (std::abs(s.norm2() - 1.0) > tol::kConstruction) {
    throw NormalizationError("state vector is not normalized");
  }
  MatrixXc m = s.amplitudes * s.amplitudes.adjoint();
  return DensityMatrix(std::move(m), DensityMatrix::Unchecked{});
}

inline DensityMatrix density(const StateParams& p) { return density(make_state(p)); }

/// Traces out every qubit not listed in `keep` (1-based labels). The kept
/// qubits retain their relative order, so keep = {1, 3} yields rho_13 with
/// qubit 1 as the most significant bit.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const int n = rho.qubits();
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw DomainError("partial trace needs a nonempty proper subset of qubits");
  }
  for (int q : keep) {
    if (q < 1 || q > n) throw DomainError("qubit label out of range");
  }
  std::vector<int> traced;
  for (int q = 1; q <= n; ++q) {
    if (!std::binary_search(keep.begin(), keep.end(), q)) traced.push_back(q);
  }

  const int k = static_cast<int>(keep.size());
  const int t = static_cast<int>(traced.size());
  // Scatter the bits of a sub-index onto the listed qubit positions.
  auto scatter = [n](int sub, const std::vector<int>& qubits) {
    int full = 0;
    const int m = static_cast<int>(qubits.size());
    for (int i = 0; i < m; ++i) {
      const int bit = (sub >> (m - 1 - i)) & 1;
      full |= bit << (n - qubits[static_cast<std::size_t>(i)]);
    }
    return full;
  };

  MatrixXc out = MatrixXc::Zero(1 << k, 1 << k);
  for (int r = 0; r < (1 << k); ++r) {
    for (int c = 0; c < (1 << k); ++c) {
      Complex acc = 0.0;
      for (int e = 0; e < (1 << t); ++e) {
        const int env = scatter(e, traced);
        acc += rho.m_(scatter(r, keep) | env, scatter(c, keep) | env);
      }
      out(r, c) = acc;
    }
  }
  return DensityMatrix(std::move(out), DensityMatrix::Unchecked{});
}

/// Samples lambda uniformly on the nonnegative orthant of the unit 4-sphere
/// and phi uniformly on [0, pi]. Deterministic for a given seed.
inline StateParams random_params(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, kPi);
  StateParams p;
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : p.lambda) {
      v = std::abs(normal(gen));
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : p.lambda) v *= inv;
  p.phi = phase(gen);
  return p;
}

}  // namespace qvl
