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

// Maximum violation of a Bell-operator family over all measurement
// directions, and single-measure scans.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "qvl/core.hpp"
#include "qvl/measures.hpp"
#include "qvl/nelder_mead.hpp"
#include "qvl/operators.hpp"
#include "qvl/parallel.hpp"
#include "qvl/rmatrix.hpp"
#include "qvl/state.hpp"

namespace qvl {

struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 2000;
  double tol = 1e-9;
  std::uint64_t seed = 0;
  /// Also search over coefficient directions at fixed coefficient norm.
  bool optimize_coefficients = false;
};

inline void validate(const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw DomainError("restarts must be >= 1");
  if (cfg.max_iters < 1) throw DomainError("max_iters must be >= 1");
  if (!(cfg.tol > 0.0)) throw DomainError("tol must be > 0");
}

struct ViolationResult {
  double gamma = 0.0;
  SettingsVector best_settings;
  CoefficientVector coefficients;  // differs from the input only for joint search
  int best_restart = 0;
  int restarts_agreeing = 0;
  bool converged = false;  // false doubles as the convergence warning
};

namespace detail {

inline constexpr int kSettingAngles = 12;

// Angles (theta, phi) per direction in the order a_1, a'_1, a_2, a'_2, a_3, a'_3.
inline SettingsVector settings_from_angles(const std::vector<double>& x) {
  SettingsVector s;
  for (std::size_t q = 0; q < 3; ++q) {
    s.a[q] = UnitVector3::from_angles(x[4 * q], x[4 * q + 1]);
    s.a_prime[q] = UnitVector3::from_angles(x[4 * q + 2], x[4 * q + 3]);
  }
  return s;
}

// Hyperspherical coordinates on the sphere of the given radius.
inline CoefficientVector coefficients_from_angles(const std::vector<double>& x, int count,
                                                  double radius) {
  CoefficientVector c;
  double scale = radius;
  for (int i = 0; i < count - 1; ++i) {
    const double t = x[static_cast<std::size_t>(kSettingAngles + i)];
    c.c[static_cast<std::size_t>(i)] = scale * std::cos(t);
    scale *= std::sin(t);
  }
  c.c[static_cast<std::size_t>(count - 1)] = scale;
  return c;
}

inline std::mt19937_64 task_rng(std::uint64_t seed, std::uint64_t task) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32)};
  return std::mt19937_64(seq);
}

struct RestartOutcome {
  std::vector<double> x;
  double value = -std::numeric_limits<double>::infinity();
};

}  // namespace detail

/// Multi-start simplex search for max <O> over the twelve spherical angles of
/// the six measurement directions.
inline ViolationResult maximize(const StateParams& p, int family, const CoefficientVector& coeffs,
                                const OptimizerConfig& cfg) {
  validate(p);
  validate(cfg);
  const int ncoef = coefficient_count(family);
  const PopcountWeights fixed_weights = family_weights(family, coeffs);
  const CorrelationTensor tensor = correlation_tensor(p);

  const bool joint = cfg.optimize_coefficients && ncoef >= 2;
  double radius = 0.0;
  if (joint) {
    for (int i = 0; i < ncoef; ++i) radius += coeffs[i] * coeffs[i];
    radius = std::sqrt(radius);
    if (radius == 0.0) throw DomainError("joint coefficient search needs nonzero coefficients");
  }
  const std::size_t dim = detail::kSettingAngles + (joint ? static_cast<std::size_t>(ncoef - 1) : 0);

  auto objective = [&](const std::vector<double>& x) {
    const SettingsVector s = detail::settings_from_angles(x);
    const PopcountWeights w =
        joint ? family_weights(family, detail::coefficients_from_angles(x, ncoef, radius))
              : fixed_weights;
    return -family_expectation(tensor, w, s);
  };

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  parallel_for(outcomes.size(), [&](std::size_t r) {
    auto gen = detail::task_rng(cfg.seed, r);
    std::uniform_real_distribution<double> polar(0.0, kPi), azimuth(0.0, 2 * kPi);
    std::vector<double> x(dim);
    for (std::size_t i = 0; i < dim; ++i) x[i] = (i % 2 == 0) ? polar(gen) : azimuth(gen);

    SimplexResult best = nelder_mead(objective, x, 0.5, cfg.tol, cfg.max_iters);
    // Re-seed the simplex around the incumbent until it stops improving.
    double step = 0.05;
    for (int polish = 0; polish < 4; ++polish, step *= 0.1) {
      SimplexResult next = nelder_mead(objective, best.x, step, cfg.tol, cfg.max_iters);
      const bool improved = next.value < best.value - cfg.tol;
      if (next.value < best.value) best = std::move(next);
      if (!improved) break;
    }
    outcomes[r].x = std::move(best.x);
    outcomes[r].value = -best.value;
  });

  std::size_t winner = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[winner].value) winner = r;
  }

  ViolationResult res;
  res.best_restart = static_cast<int>(winner);
  res.best_settings = detail::settings_from_angles(outcomes[winner].x);
  res.coefficients = joint ? detail::coefficients_from_angles(outcomes[winner].x, ncoef, radius) : coeffs;
  for (const auto& o : outcomes) {
    if (o.value >= outcomes[winner].value - 10 * cfg.tol) ++res.restarts_agreeing;
  }
  res.converged = res.restarts_agreeing >= 2;
  // Report the dense-operator value at the winning settings.
  res.gamma = expectation(density(p), build_family(family, res.coefficients, res.best_settings));
  return res;
}

/// Canonical parameters with exactly one of E1..E4 nonzero and E_k^2 = value.
///
/// For E1, E2 and E3 the active amplitude pair is (lambda0, lambda3),
/// (lambda0, lambda2) and (lambda2, lambda3) respectively, scaled as
/// sqrt(E/2) * exp(+-nuisance/2); lambda1 absorbs the remaining norm, so
/// nuisance 0 gives equal amplitudes. For E4 the pair (lambda0, lambda4) is
/// fixed by normalization (lambda0 >= lambda4) and nuisance must be 0.
inline StateParams single_measure_slice(int measure, double value, double nuisance = 0.0) {
  if (measure < 1 || measure > 4) throw DomainError("measure must be 1..4");
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw DomainError("measure value must lie in [0, 1]");
  }
  if (!std::isfinite(nuisance)) throw DomainError("nuisance must be finite");
  const double e = std::sqrt(value);
  StateParams p;
  p.lambda = {0.0, 0.0, 0.0, 0.0, 0.0};
  p.phi = 0.0;

  if (measure == 4) {
    if (nuisance != 0.0) throw DomainError("the E4 slice has no free amplitude for a nuisance");
    const double hi = std::sqrt(1.0 + e), lo = std::sqrt(1.0 - e);
    p.lambda[0] = (hi + lo) / 2;
    p.lambda[4] = (hi - lo) / 2;
    return p;
  }

  const double base = std::sqrt(e / 2);
  const double first = base * std::exp(nuisance / 2);
  const double second = base * std::exp(-nuisance / 2);
  const double rest = 1.0 - first * first - second * second;
  if (rest < -1e-15) throw DomainError("nuisance makes normalization infeasible");
  constexpr std::array<std::array<std::size_t, 2>, 3> pairs{{{0, 3}, {0, 2}, {2, 3}}};
  const auto& pair = pairs[static_cast<std::size_t>(measure - 1)];
  p.lambda[pair[0]] = first;
  p.lambda[pair[1]] = second;
  p.lambda[1] = std::sqrt(std::max(0.0, rest));
  return p;
}

/// n uniform points on [0, 1]; a single point grid is {0}.
inline std::vector<double> uniform_grid(int n) {
  if (n < 1) throw DomainError("grid needs at least one point");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
  return g;
}

struct ScanRow {
  int measure = 1;
  double measure_value = 0.0;  // E_k^2
  double gamma = 0.0;
  double gamma_R = 0.0;
  StateParams params;
  bool converged = true;
  std::string error;  // nonempty when this row failed
};

/// One row per grid value, in grid order. A failing row records its error
/// and the scan continues.
inline std::vector<ScanRow> scan(int measure, const std::vector<double>& grid, int family,
                                 const CoefficientVector& coeffs, const OptimizerConfig& cfg,
                                 double nuisance = 0.0) {
  coefficient_count(family);
  validate(cfg);
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (double v : grid) {
    ScanRow row;
    row.measure = measure;
    row.measure_value = v;
    try {
      row.params = single_measure_slice(measure, v, nuisance);
      row.gamma_R = gamma_R(row.params);
      const ViolationResult vr = maximize(row.params, family, coeffs, cfg);
      row.gamma = vr.gamma;
      row.converged = vr.converged;
    } catch (const Error& err) {
      row.gamma = std::numeric_limits<double>::quiet_NaN();
      row.error = err.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct BoundCheck {
  double gamma = 0.0;
  double gamma_R = 0.0;
  bool holds = false;
};

/// Compares the optimized Mermin violation against the R-matrix bound.
inline BoundCheck mermin_bound_check(const StateParams& p, const OptimizerConfig& cfg) {
  BoundCheck b;
  b.gamma = maximize(p, kMerminFamily, mermin_coefficients(), cfg).gamma;
  b.gamma_R = gamma_R(p);
  b.holds = b.gamma <= b.gamma_R + 1e-6;
  return b;
}

}  // namespace qvl
