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
#include "qvl/state.hpp"

using Catch::Approx;
using namespace qvl;

namespace {

const double kR2 = 1.0 / std::sqrt(2.0);
const double kR3 = 1.0 / std::sqrt(3.0);

StateParams params(std::array<double, 5> l, double phi = 0.0) { return StateParams{l, phi}; }

double max_abs_diff(const MatrixXc& a, const oracle::Mat& b) {
  double d = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      d = std::max(d, std::abs(a(i, j) - b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
  return d;
}

}  // namespace

TEST_CASE("make_state places amplitudes on the canonical slots") {
  SECTION("product state") {
    const StateVector s = make_state(params({1, 0, 0, 0, 0}));
    CHECK(s.amplitudes[0] == Complex(1.0));
    CHECK(s.amplitudes.squaredNorm() == Approx(1.0));
  }
  SECTION("GHZ") {
    const StateVector s = make_state(params({kR2, 0, 0, 0, kR2}));
    CHECK(std::abs(s.amplitudes[0] - kR2) < 1e-15);
    CHECK(std::abs(s.amplitudes[7] - kR2) < 1e-15);
    for (int i = 1; i < 7; ++i) CHECK(s.amplitudes[i] == Complex(0.0));
  }
  SECTION("bit-flipped W state") {
    const StateVector s = make_state(params({kR3, 0, kR3, kR3, 0}));
    double norm = 0.0;
    for (int i : {basis_index(0, 0, 0), basis_index(1, 0, 1), basis_index(1, 1, 0)}) {
      CHECK(std::abs(s.amplitudes[i] - kR3) < 1e-15);
      norm += std::norm(s.amplitudes[i]);
    }
    CHECK(std::abs(norm - 1.0) < 1e-12);
  }
  SECTION("phase sits on |100>") {
    const StateVector s = make_state(params({kR2, kR2, 0, 0, 0}, kPi / 2));
    CHECK(std::abs(s.amplitudes[4] - Complex(0.0, kR2)) < 1e-15);
  }
}

TEST_CASE("make_state rejects invalid parameters") {
  CHECK_THROWS_AS(make_state(params({0.9, 0, 0, 0, 0})), NormalizationError);
  CHECK_THROWS_AS(make_state(params({-kR2, 0, 0, 0, kR2})), DomainError);
  CHECK_THROWS_AS(make_state(params({1, 0, 0, 0, 0}, -0.1)), DomainError);
  CHECK_THROWS_AS(make_state(params({1, 0, 0, 0, 0}, 3.2)), DomainError);
  CHECK_THROWS_AS(make_state(params({std::nan(""), 0, 0, 0, 0})), DomainError);
  CHECK_NOTHROW(make_state(params({1, 0, 0, 0, 0}, kPi)));
}

TEST_CASE("density builds the rank-one projector") {
  SECTION("product") {
    const DensityMatrix rho = density(params({1, 0, 0, 0, 0}));
    CHECK(rho.dim() == 8);
    CHECK(rho(0, 0) == Complex(1.0));
    CHECK(rho.matrix().cwiseAbs().sum() == Approx(1.0));
  }
  SECTION("GHZ") {
    const DensityMatrix rho = density(params({kR2, 0, 0, 0, kR2}));
    for (auto [i, j] : {std::pair{0, 0}, {0, 7}, {7, 0}, {7, 7}}) CHECK(std::abs(rho(i, j) - 0.5) < 1e-15);
    CHECK(rho.matrix().cwiseAbs().sum() == Approx(2.0));
  }
  SECTION("phase convention: <000|rho|100> = l0 l1 e^{-i phi}") {
    const DensityMatrix rho = density(params({kR2, kR2, 0, 0, 0}, kPi / 2));
    CHECK(std::abs(rho(0, 4) - Complex(0.0, -0.5)) < 1e-15);
  }
}

TEST_CASE("density of any canonical state is a pure-state projector") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const MatrixXc rho = density(random_params(seed)).matrix();
    CHECK(std::abs(rho.trace() - Complex(1.0)) < 1e-10);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("partial_trace matches the amplitude-level oracle") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const StateParams p = random_params(seed);
    const DensityMatrix rho = density(p);
    const auto psi = oracle::amplitudes(p);
    for (const std::vector<int>& keep :
         {std::vector<int>{1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}}) {
      const DensityMatrix red = partial_trace(rho, keep);
      CHECK(max_abs_diff(red.matrix(), oracle::reduced(psi, keep)) < 1e-14);
      CHECK(std::abs(red.matrix().trace() - Complex(1.0)) < 1e-12);
    }
  }
}

TEST_CASE("partial_trace reproduces the printed reduced matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const StateParams p = random_params(seed);
    const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
    const Complex e = std::polar(1.0, p.phi);
    const DensityMatrix rho = density(p);

    const MatrixXc r1 = partial_trace(rho, {1}).matrix();
    CHECK(std::abs(r1(0, 0) - l0 * l0) < 1e-12);
    CHECK(std::abs(r1(0, 1) - l0 * l1 * std::conj(e)) < 1e-12);
    CHECK(std::abs(r1(1, 1) - (1 - l0 * l0)) < 1e-12);

    const MatrixXc r2 = partial_trace(rho, {2}).matrix();
    CHECK(std::abs(r2(0, 0) - (l0 * l0 + l1 * l1 + l2 * l2)) < 1e-12);
    CHECK(std::abs(r2(0, 1) - (l2 * l4 + l1 * l3 * e)) < 1e-12);
    CHECK(std::abs(r2(1, 1) - (l3 * l3 + l4 * l4)) < 1e-12);

    // The |0><0| weight of rho_3 is l0^2 + l1^2 + l3^2 (unsquared).
    const MatrixXc r3 = partial_trace(rho, {3}).matrix();
    CHECK(std::abs(r3(0, 0) - (l0 * l0 + l1 * l1 + l3 * l3)) < 1e-12);
    CHECK(std::abs(r3(0, 1) - (l3 * l4 + l1 * l2 * e)) < 1e-12);
    CHECK(std::abs(r3(1, 1) - (l2 * l2 + l4 * l4)) < 1e-12);

    // rho_12 in the |b1 b2> basis: 00 -> 0, 10 -> 2, 11 -> 3.
    const MatrixXc r12 = partial_trace(rho, {1, 2}).matrix();
    CHECK(std::abs(r12(0, 0) - l0 * l0) < 1e-12);
    CHECK(std::abs(r12(0, 2) - l0 * l1 * std::conj(e)) < 1e-12);
    CHECK(std::abs(r12(0, 3) - l0 * l3) < 1e-12);
    CHECK(std::abs(r12(2, 2) - (l1 * l1 + l2 * l2)) < 1e-12);
    CHECK(std::abs(r12(2, 3) - (l1 * l3 * e + l2 * l4)) < 1e-12);
    CHECK(std::abs(r12(3, 3) - (l3 * l3 + l4 * l4)) < 1e-12);
    CHECK(std::abs(r12(1, 1)) < 1e-15);
  }
}

TEST_CASE("partial traces chain consistently") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const DensityMatrix rho = density(random_params(seed));
    const DensityMatrix r12 = partial_trace(rho, {1, 2});
    CHECK((partial_trace(r12, {1}).matrix() - partial_trace(rho, {1}).matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((partial_trace(r12, {2}).matrix() - partial_trace(rho, {2}).matrix()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("partial_trace and DensityMatrix reject bad input") {
  const DensityMatrix rho = density(params({1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(partial_trace(rho, {}), DomainError);
  CHECK_THROWS_AS(partial_trace(rho, {1, 2, 3}), DomainError);
  CHECK_THROWS_AS(partial_trace(rho, {4}), DomainError);
  CHECK_THROWS_AS(DensityMatrix(MatrixXc::Identity(3, 3) / 3.0), DomainError);
  CHECK_THROWS_AS(DensityMatrix(MatrixXc::Identity(2, 2)), DomainError);
  MatrixXc nonherm = MatrixXc::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix(nonherm), DomainError);
  MatrixXc negative = MatrixXc::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(negative), DomainError);
  CHECK_NOTHROW(DensityMatrix(MatrixXc::Identity(4, 4) / 4.0));
}

TEST_CASE("random_params is deterministic and valid") {
  CHECK(random_params(42) == random_params(42));
  CHECK_FALSE(random_params(1) == random_params(2));
  double mean_l0sq = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const StateParams p = random_params(seed);
    CHECK_NOTHROW(validate(p));
    mean_l0sq += p.l(0) * p.l(0);
  }
  // Sphere symmetry: each lambda_j^2 has mean 1/5.
  CHECK(std::abs(mean_l0sq / 1000 - 0.2) < 0.02);
}
