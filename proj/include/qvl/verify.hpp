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

// Self-verification suite behind the `verify` subcommand.

#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "qvl/measures.hpp"
#include "qvl/rmatrix.hpp"
#include "qvl/state.hpp"
#include "qvl/violation.hpp"

namespace qvl {

struct VerifyCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // largest deviation seen
  double limit = 0.0;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck& c) { return c.passed; });
  }
};

namespace detail {

class CheckAccumulator {
 public:
  CheckAccumulator(std::string name, double limit) : c_{std::move(name), true, 0.0, limit} {}
  void deviation(double d) {
    if (!(d <= c_.limit)) c_.passed = false;
    if (!std::isfinite(d)) d = std::numeric_limits<double>::infinity();
    c_.worst = std::max(c_.worst, d);
  }
  void require(bool ok) { if (!ok) c_.passed = false; }
  VerifyCheck done() const { return c_; }

 private:
  VerifyCheck c_;
};

// Tensor entries in closed form (x = 0, y = 1, z = 2).
inline CorrelationTensor closed_form_tensor(const StateParams& p) {
  const double l0 = p.l(0), l1 = p.l(1), l2 = p.l(2), l3 = p.l(3), l4 = p.l(4);
  const double c = std::cos(p.phi), s = std::sin(p.phi);
  CorrelationTensor t;
  t(0, 0, 0) = 2 * l0 * l4;
  t(0, 0, 2) = 2 * l0 * l3;
  t(0, 1, 1) = -2 * l0 * l4;
  t(0, 2, 0) = 2 * l0 * l2;
  t(0, 2, 2) = 2 * l0 * l1 * c;
  t(1, 0, 1) = -2 * l0 * l4;
  t(1, 1, 0) = -2 * l0 * l4;
  t(1, 1, 2) = -2 * l0 * l3;
  t(1, 2, 1) = -2 * l0 * l2;
  t(1, 2, 2) = 2 * l0 * l1 * s;
  t(2, 0, 0) = -2 * l1 * l4 * c - 2 * l2 * l3;
  t(2, 0, 1) = 2 * l1 * l4 * s;
  t(2, 0, 2) = -2 * l1 * l3 * c + 2 * l2 * l4;
  t(2, 1, 0) = 2 * l1 * l4 * s;
  t(2, 1, 1) = 2 * l1 * l4 * c - 2 * l2 * l3;
  t(2, 1, 2) = 2 * l1 * l3 * s;
  t(2, 2, 0) = -2 * l1 * l2 * c + 2 * l3 * l4;
  t(2, 2, 1) = 2 * l1 * l2 * s;
  t(2, 2, 2) = 1 - 2 * l1 * l1 - 2 * l4 * l4;
  return t;
}

}  // namespace detail

/// Runs every invariant check on `samples` seeded random states plus the
/// fixed endpoints. Bound checks use `cfg` on the first `bound_samples` states.
inline VerifyReport run_verification(int samples, const OptimizerConfig& cfg, int bound_samples = 5) {
  using detail::CheckAccumulator;
  CheckAccumulator closed("closed forms vs partial traces", 1e-10);
  CheckAccumulator wootters("Wootters concurrence vs E1, E2, E3", 1e-10);
  CheckAccumulator tensor("correlation tensor vs closed-form entries", 1e-12);
  CheckAccumulator alpha("cubic coefficients vs measures", 1e-9);
  CheckAccumulator roots("trigonometric roots vs eigensolver", 1e-9);
  CheckAccumulator psd("discriminant and root signs", 0.0);
  CheckAccumulator bound("Mermin violation below gamma_R", 1e-6);
  CheckAccumulator endpoints("GHZ and product endpoints", 1e-6);
  CheckAccumulator monotone("gamma_R nondecreasing on single-measure slices", 1e-8);

  for (int n = 0; n < samples; ++n) {
    const StateParams p = random_params(static_cast<std::uint64_t>(n));
    const MeasureSet m = entanglement_measures(p);
    const DensityMatrix rho = density(p);
    std::array<MatrixXc, 3> single;
    for (int q = 1; q <= 3; ++q) single[static_cast<std::size_t>(q - 1)] = partial_trace(rho, {q}).matrix();
    closed.deviation(std::abs(m.I1 - detail::trace_power(single[0], 2)));
    closed.deviation(std::abs(m.I2 - detail::trace_power(single[1], 2)));
    closed.deviation(std::abs(m.I3 - detail::trace_power(single[2], 2)));
    const MatrixXc r12 = partial_trace(rho, {1, 2}).matrix();
    const MatrixXc prod = Eigen::kroneckerProduct(single[0], single[1]);
    const double i5 = 3 * (prod * r12).trace().real() - detail::trace_power(single[0], 3) -
                      detail::trace_power(single[1], 3);
    closed.deviation(std::abs(m.I5 - i5));
    closed.deviation(std::abs(m.I4 - m.E4 * m.E4));

    wootters.deviation(std::abs(wootters_concurrence(partial_trace(rho, {1, 2})).concurrence - m.E1));
    wootters.deviation(std::abs(wootters_concurrence(partial_trace(rho, {1, 3})).concurrence - m.E2));
    wootters.deviation(std::abs(wootters_concurrence(partial_trace(rho, {2, 3})).concurrence - m.E3));

    const CorrelationTensor t = correlation_tensor(rho);
    const CorrelationTensor expect = detail::closed_form_tensor(p);
    for (std::size_t i = 0; i < 27; ++i) tensor.deviation(std::abs(t.r[i] - expect.r[i]));

    for (int axis = 1; axis <= 3; ++axis) {
      const CubicSpectrum c = gram_cubic(flatten(t, axis));
      const auto a = alpha_from_measures(m, axis);
      alpha.deviation(std::abs(a[0] - c.alpha1));
      alpha.deviation(std::abs(a[1] - c.alpha2));
      alpha.deviation(std::abs(a[2] - c.alpha3));
      alpha.deviation(std::abs(c.gram.trace() - (1 + m.CT2)));

      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(c.gram, Eigen::EigenvaluesOnly);
      std::array<double, 3> mine{c.x1, c.x2, c.x3};
      std::sort(mine.begin(), mine.end());
      for (int k = 0; k < 3; ++k) roots.deviation(std::abs(mine[static_cast<std::size_t>(k)] - es.eigenvalues()[k]));

      psd.require(c.discriminant() <= 1e-10);
      psd.require(std::min({c.x1, c.x2, c.x3}) >= -1e-8);
      psd.require(c.alpha2 >= -1e-10);
    }
  }

  const StateParams ghz = single_measure_slice(4, 1.0);
  const StateParams product{};
  const auto mermin = mermin_coefficients();
  endpoints.deviation(std::abs(maximize(ghz, kMerminFamily, mermin, cfg).gamma - 4.0));
  endpoints.deviation(std::abs(maximize(product, kMerminFamily, mermin, cfg).gamma - 2.0));
  endpoints.deviation(std::abs(gamma_R(ghz) - 4.0));
  endpoints.deviation(std::abs(gamma_R(product) - 2.0));

  for (int n = 0; n < bound_samples; ++n) {
    const BoundCheck b = mermin_bound_check(random_params(static_cast<std::uint64_t>(n)), cfg);
    bound.deviation(std::max(0.0, b.gamma - b.gamma_R));
  }

  for (int measure = 1; measure <= 4; ++measure) {
    double prev = -1.0;
    for (double v : uniform_grid(101)) {
      const double g = gamma_R(single_measure_slice(measure, v));
      monotone.deviation(std::max(0.0, prev - g));
      prev = g;
    }
  }

  VerifyReport rep;
  for (const auto* c : {&closed, &wootters, &tensor, &alpha, &roots, &psd, &bound, &endpoints, &monotone}) {
    rep.checks.push_back(c->done());
  }
  return rep;
}

}  // namespace qvl
