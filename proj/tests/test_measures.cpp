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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "qvl/measures.hpp"

using namespace qvl;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);
const double kR3 = 1.0 / std::sqrt(3.0);
const StateParams kProduct{{1, 0, 0, 0, 0}, 0.0};
const StateParams kGhz{{kR2, 0, 0, 0, kR2}, 0.0};
const StateParams kWForm{{kR3, 0, kR3, kR3, 0}, 0.0};

// Eigenvalues of rho (sy x sy) rho^* (sy x sy) from a general complex
// eigensolver; returns Q sorted descending.
std::array<double, 4> wootters_by_general_eigensolver(const oracle::Mat& r) {
  Matrix4c rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Matrix4c yy = Matrix4c::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix4c prod = rho * yy * rho.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix4c> es(prod, false);
  std::array<double, 4> q{};
  for (int i = 0; i < 4; ++i) q[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, es.eigenvalues()[i].real()));
  std::sort(q.begin(), q.end(), std::greater<>());
  return q;
}

DensityMatrix to_density(const oracle::Mat& r) {
  MatrixXc m(static_cast<int>(r.size()), static_cast<int>(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = r[i][j];
  return DensityMatrix(m);
}

}  // namespace

TEST_CASE("purity invariants: fixed states") {
  const auto prod = purity_invariants(kProduct);
  CHECK(prod.I1 == 1.0);
  CHECK(prod.I2 == 1.0);
  CHECK(prod.I3 == 1.0);
  const auto ghz = purity_invariants(kGhz);
  CHECK(std::abs(ghz.I1 - 0.5) < 1e-15);
  CHECK(std::abs(ghz.I2 - 0.5) < 1e-15);
  CHECK(std::abs(ghz.I3 - 0.5) < 1e-15);
  const auto bell12 = purity_invariants(StateParams{{kR2, 0, 0, kR2, 0}, 0.0});
  CHECK(std::abs(bell12.I1 - 0.5) < 1e-15);
}

TEST_CASE("purity invariants match Tr rho_j^2") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StateParams p = random_params(seed);
    const auto psi = oracle::amplitudes(p);
    const auto inv = purity_invariants(p);
    CHECK(std::abs(inv.I1 - oracle::trace_pow(oracle::reduced(psi, {1}), 2)) < 1e-10);
    CHECK(std::abs(inv.I2 - oracle::trace_pow(oracle::reduced(psi, {2}), 2)) < 1e-10);
    CHECK(std::abs(inv.I3 - oracle::trace_pow(oracle::reduced(psi, {3}), 2)) < 1e-10);
    CHECK(inv.I1 >= 0.5 - 1e-12);
    CHECK(inv.I1 <= 1.0 + 1e-12);
  }
}

TEST_CASE("Wootters concurrence: fixed two-qubit states") {
  SECTION("Bell state") {
    MatrixXc bell = MatrixXc::Zero(4, 4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const auto w = wootters_concurrence(DensityMatrix(bell));
    CHECK(std::abs(w.concurrence - 1.0) < 1e-12);
    CHECK(std::abs(w.Q[0] - 1.0) < 1e-12);
  }
  SECTION("product") {
    MatrixXc prod = MatrixXc::Zero(4, 4);
    prod(0, 0) = 1.0;
    const auto w = wootters_concurrence(DensityMatrix(prod));
    CHECK(w.concurrence == 0.0);
  }
  SECTION("maximally mixed") {
    const auto w = wootters_concurrence(DensityMatrix(MatrixXc::Identity(4, 4) / 4.0));
    CHECK(w.concurrence == 0.0);
    for (double q : w.Q) CHECK(std::abs(q - 0.25) < 1e-12);
  }
  SECTION("wrong dimension") {
    CHECK_THROWS_AS(wootters_concurrence(density(kGhz)), DomainError);
  }
}

TEST_CASE("Wootters concurrence of reduced pairs equals E1, E2, E3") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StateParams p = random_params(seed);
    const auto psi = oracle::amplitudes(p);
    const MeasureSet m = entanglement_measures(p);
    const std::array<std::pair<std::vector<int>, double>, 3> pairs{
        {{{1, 2}, m.E1}, {{1, 3}, m.E2}, {{2, 3}, m.E3}}};
    for (const auto& [keep, expected] : pairs) {
      const auto r = oracle::reduced(psi, keep);
      const WoottersResult w = wootters_concurrence(to_density(r));
      CHECK(std::abs(w.concurrence - expected) < 1e-10);
      CHECK(w.Q[0] >= w.Q[1]);
      CHECK(w.Q[1] >= w.Q[2]);
      CHECK(w.Q[2] >= w.Q[3]);
      CHECK(w.Q[3] >= 0.0);
      // Independent route: general eigensolver of the non-Hermitian product.
      const auto q = wootters_by_general_eigensolver(r);
      for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(q[i] - w.Q[i]) < 1e-7);
      CHECK(std::abs(std::max(0.0, q[0] - q[1] - q[2] - q[3]) - expected) < 1e-7);
    }
  }
}

TEST_CASE("tangles: fixed states and the three-tangle identity") {
  const Tangles ghz = tangles(kGhz);
  CHECK(std::abs(ghz.tau_1_23 - 1.0) < 1e-15);
  CHECK(ghz.tau_1_2 == 0.0);
  CHECK(ghz.tau_1_3 == 0.0);
  CHECK(std::abs(ghz.I4 - 1.0) < 1e-15);

  const Tangles w = tangles(kWForm);
  CHECK(std::abs(w.I4) < 1e-15);
  CHECK(std::abs(w.tau_1_2 - 4.0 / 9) < 1e-15);
  CHECK(std::abs(w.tau_1_3 - 4.0 / 9) < 1e-15);

  const Tangles prod = tangles(kProduct);
  CHECK(prod.tau_1_23 == 0.0);
  CHECK(prod.tau_1_2 == 0.0);
  CHECK(prod.tau_1_3 == 0.0);
  CHECK(prod.tau_2_3 == 0.0);
  CHECK(prod.I4 == 0.0);

  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StateParams p = random_params(seed);
    const Tangles t = tangles(p);
    CHECK(std::abs(t.I4 - (t.tau_1_23 - t.tau_1_2 - t.tau_1_3)) < 1e-12);
    CHECK(t.I4 >= 0.0);
    const auto r1 = oracle::reduced(oracle::amplitudes(p), {1});
    CHECK(std::abs(t.tau_1_23 - 2 * (1 - oracle::trace_pow(r1, 2))) < 1e-10);
  }
}

TEST_CASE("I5: fixed states") {
  CHECK(std::abs(invariant_i5(kProduct) - 1.0) < 1e-15);
  CHECK(std::abs(invariant_i5(kGhz) - 0.25) < 1e-15);
}

TEST_CASE("I5 equals 3 Tr((rho_i x rho_j) rho_ij) - Tr rho_i^3 - Tr rho_j^3 for every pair") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StateParams p = random_params(seed);
    const auto psi = oracle::amplitudes(p);
    const double i5 = invariant_i5(p);
    for (auto [i, j] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
      const auto ri = oracle::reduced(psi, {i});
      const auto rj = oracle::reduced(psi, {j});
      const auto rij = oracle::reduced(psi, {i, j});
      const double corr = oracle::trace(oracle::mul(oracle::kron(ri, rj), rij)).real();
      const double expected = 3 * corr - oracle::trace_pow(ri, 3) - oracle::trace_pow(rj, 3);
      CHECK(std::abs(i5 - expected) < 1e-10);
    }
  }
}

TEST_CASE("E measures: fixed states") {
  SECTION("GHZ") {
    const MeasureSet m = entanglement_measures(kGhz);
    CHECK(m.E1 == 0.0);
    CHECK(m.E2 == 0.0);
    CHECK(m.E3 == 0.0);
    CHECK(std::abs(m.E4 - 1.0) < 1e-15);
    CHECK(m.E5 == 0.0);
  }
  SECTION("W form") {
    const MeasureSet m = entanglement_measures(kWForm);
    CHECK(std::abs(m.E1 - 2.0 / 3) < 1e-15);
    CHECK(std::abs(m.E2 - 2.0 / 3) < 1e-15);
    CHECK(std::abs(m.E3 - 2.0 / 3) < 1e-15);
    CHECK(m.E4 == 0.0);
    CHECK(std::abs(m.E5 - 2.0 / 27) < 1e-15);
  }
  SECTION("lambda2 = lambda4 = 0 leaves only E1") {
    const StateParams p{{0.6, 0.48, 0.0, 0.64, 0.0}, 1.1};
    const MeasureSet m = entanglement_measures(p);
    CHECK(m.E1 > 0.5);
    CHECK(m.E2 == 0.0);
    CHECK(m.E3 == 0.0);
    CHECK(m.E4 == 0.0);
  }
}

TEST_CASE("MeasureSet invariants hold on random states") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const StateParams p = random_params(seed);
    const MeasureSet m = entanglement_measures(p);
    for (double e : {m.E1, m.E2, m.E3, m.E4}) {
      CHECK(e >= 0.0);
      CHECK(e <= 1.0 + 1e-12);
    }
    CHECK(std::abs(m.C1 * m.C1 - (m.E1 * m.E1 + m.E2 * m.E2 + m.E4 * m.E4)) < 1e-10);
    CHECK(std::abs(m.C2 * m.C2 - (m.E1 * m.E1 + m.E3 * m.E3 + m.E4 * m.E4)) < 1e-10);
    CHECK(std::abs(m.C3 * m.C3 - (m.E2 * m.E2 + m.E3 * m.E3 + m.E4 * m.E4)) < 1e-10);
    CHECK(std::abs(m.CT2 - (m.C1 * m.C1 + m.C2 * m.C2 + m.C3 * m.C3)) < 1e-12);
    CHECK(std::abs(m.I4 - m.E4 * m.E4) < 1e-12);
    CHECK(std::abs(m.tau_1_2 - m.E1 * m.E1) < 1e-12);
    CHECK(std::abs(m.tau_2_3 - m.E3 * m.E3) < 1e-12);
    // E5 written through I5 and the pairwise measures.
    const double s = m.E1 * m.E1 + m.E2 * m.E2 + m.E3 * m.E3 + m.E4 * m.E4;
    CHECK(std::abs(m.E5 - (m.I5 / 3 + s / 4 - 1.0 / 3)) < 1e-10);
  }
}

TEST_CASE("reduced-density correlation identities against the amplitude oracle") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const StateParams p = random_params(seed);
    const auto psi = oracle::amplitudes(p);
    const MeasureSet m = entanglement_measures(p);
    const auto closed = reduced_correlation_closed_form(m);
    const std::array<std::pair<int, int>, 3> pairs{{{1, 2}, {2, 3}, {1, 3}}};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto [i, j] = pairs[k];
      const auto ri = oracle::reduced(psi, {i});
      const auto rj = oracle::reduced(psi, {j});
      const auto rij = oracle::reduced(psi, {i, j});
      const double lhs = oracle::trace(oracle::mul(oracle::kron(ri, rj), rij)).real() -
                         oracle::trace_pow(ri, 2) - oracle::trace_pow(rj, 2);
      CHECK(std::abs(lhs - closed[k]) < 1e-10);
    }
  }
}
