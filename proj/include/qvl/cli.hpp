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

// Command-line front end. `parse_args` builds a RunConfig; `run` executes it
// and maps failures onto exit codes.

#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qvl/io.hpp"
#include "qvl/measures.hpp"
#include "qvl/rmatrix.hpp"
#include "qvl/verify.hpp"
#include "qvl/violation.hpp"

namespace qvl::cli {

enum class Command { measures, violate, gamma_r, scan, verify };

enum ExitCode : int {
  kOk = 0,
  kDomainError = 2,
  kNumericalError = 3,
  kVerificationFailed = 4,
};

struct RunConfig {
  Command command = Command::measures;
  std::optional<std::string> state;  // inline JSON or file path
  int family = kMerminFamily;
  std::vector<double> coeffs{1.0, -1.0};
  OptimizerConfig optimizer;
  int measure = 1;
  int grid = 101;
  double nuisance = 0.0;
  std::optional<std::string> out;
  std::optional<std::string> gnuplot;
  int verify_samples = 200;
};

struct ParseResult {
  std::optional<RunConfig> config;  // empty when the process should exit
  int exit_code = kOk;
};

inline ParseResult parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Three-qubit Bell violation and correlation-tensor toolkit", "qvl"};
  app.require_subcommand(1, 1);
  RunConfig cfg;

  auto add_state = [&](CLI::App* sub) {
    sub->add_option("--state", cfg.state, "state descriptor: inline JSON or file path")->required();
  };
  auto add_optimizer = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "operator family 0-8")->check(CLI::Range(0, 8));
    sub->add_option("--coeffs", cfg.coeffs, "family coefficients a,b[,c[,d]]")
        ->delimiter(',')
        ->expected(1, 4);
    sub->add_option("--restarts", cfg.optimizer.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iters", cfg.optimizer.max_iters, "simplex iterations per restart")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", cfg.optimizer.tol, "simplex value tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.optimizer.seed, "random seed");
    sub->add_flag("--optimize-coeffs", cfg.optimizer.optimize_coefficients,
                  "also search coefficient directions at fixed norm");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
  };

  auto* measures = app.add_subcommand("measures", "print every invariant of a state as JSON");
  add_state(measures);
  add_out(measures);

  auto* violate = app.add_subcommand("violate", "maximize a Bell operator over measurement settings");
  add_state(violate);
  add_optimizer(violate);
  add_out(violate);

  auto* gamma_r = app.add_subcommand("gamma-r", "per-flattening spectra and the gamma_R bound");
  add_state(gamma_r);
  add_out(gamma_r);

  auto* scan = app.add_subcommand("scan", "gamma and gamma_R along a single-measure slice (CSV)");
  scan->add_option("--measure", cfg.measure, "active measure 1-4")->check(CLI::Range(1, 4))->required();
  scan->add_option("--grid", cfg.grid, "number of uniform points on E^2 in [0,1]")->check(CLI::PositiveNumber);
  scan->add_option("--nuisance", cfg.nuisance, "log-ratio of the two active amplitudes");
  scan->add_option("--gnuplot", cfg.gnuplot, "also write a gnuplot script to this path");
  add_optimizer(scan);
  add_out(scan);

  auto* verify = app.add_subcommand("verify", "run the built-in invariant suite");
  verify->add_option("--samples", cfg.verify_samples, "random states to check")->check(CLI::PositiveNumber);
  verify->add_option("--restarts", cfg.optimizer.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.optimizer.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {std::nullopt, kOk};
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return {std::nullopt, kOk};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return {std::nullopt, kDomainError};
  }

  if (measures->parsed()) cfg.command = Command::measures;
  if (violate->parsed()) cfg.command = Command::violate;
  if (gamma_r->parsed()) cfg.command = Command::gamma_r;
  if (scan->parsed()) cfg.command = Command::scan;
  if (verify->parsed()) cfg.command = Command::verify;
  return {cfg, kOk};
}

namespace detail {

inline CoefficientVector coefficients_for(int family, const std::vector<double>& given) {
  const int need = coefficient_count(family);
  if (static_cast<int>(given.size()) < need) {
    throw DomainError("family " + std::to_string(family) + " needs " + std::to_string(need) +
                      " coefficients");
  }
  CoefficientVector c;
  for (std::size_t i = 0; i < given.size() && i < 4; ++i) c.c[i] = given[i];
  family_weights(family, c);  // finiteness
  return c;
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out) {
    io::atomic_write(*cfg.out, text);
  } else {
    out << text;
  }
}

inline std::string verify_text(const VerifyReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(50) << c.name
       << " worst=" << std::scientific << std::setprecision(3) << c.worst << " limit=" << c.limit << "\n";
  }
  os << (rep.passed() ? "all checks passed" : "verification FAILED") << "\n";
  return os.str();
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    // Validate every input before computing anything.
    std::optional<StateParams> state;
    if (cfg.state) state = io::load_state(*cfg.state);
    CoefficientVector coeffs;
    if (cfg.command == Command::violate || cfg.command == Command::scan) {
      coeffs = detail::coefficients_for(cfg.family, cfg.coeffs);
      validate(cfg.optimizer);
    }
    if (cfg.command == Command::scan) {
      if (cfg.measure < 1 || cfg.measure > 4) throw DomainError("measure must be 1..4");
      if (!std::isfinite(cfg.nuisance)) throw DomainError("nuisance must be finite");
      if (cfg.measure == 4 && cfg.nuisance != 0.0) {
        throw DomainError("the E4 slice has no free amplitude for a nuisance");
      }
      if (cfg.gnuplot && !cfg.out) throw DomainError("--gnuplot needs --out for the CSV path");
    }
    if (cfg.command != Command::scan && cfg.command != Command::verify && !state) {
      throw DomainError("--state is required");
    }

    switch (cfg.command) {
      case Command::measures:
        detail::emit(cfg, io::measures_json(entanglement_measures(*state)).dump(2) + "\n", out);
        break;
      case Command::violate: {
        const ViolationResult r = maximize(*state, cfg.family, coeffs, cfg.optimizer);
        if (!r.converged) err << "warning: fewer than two restarts agree on the maximum\n";
        detail::emit(cfg, io::violation_json(cfg.family, r).dump(2) + "\n", out);
        break;
      }
      case Command::gamma_r:
        detail::emit(cfg, io::gamma_r_json(gamma_R_report(correlation_tensor(*state))).dump(2) + "\n", out);
        break;
      case Command::scan: {
        const auto rows = scan(cfg.measure, uniform_grid(cfg.grid), cfg.family, coeffs, cfg.optimizer,
                               cfg.nuisance);
        for (const ScanRow& r : rows) {
          if (!r.error.empty()) err << "warning: row " << r.measure_value << ": " << r.error << "\n";
        }
        detail::emit(cfg, io::scan_csv(rows), out);
        if (cfg.gnuplot) io::atomic_write(*cfg.gnuplot, io::gnuplot_script(*cfg.out, cfg.measure));
        break;
      }
      case Command::verify: {
        const VerifyReport rep = run_verification(cfg.verify_samples, cfg.optimizer);
        out << detail::verify_text(rep);
        return rep.passed() ? kOk : kVerificationFailed;
      }
    }
    return kOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace qvl::cli
