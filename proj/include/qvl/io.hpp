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

// JSON/CSV/gnuplot serialization and crash-safe file output.

#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qvl/measures.hpp"
#include "qvl/rmatrix.hpp"
#include "qvl/state.hpp"
#include "qvl/violation.hpp"

namespace qvl::io {

using Json = nlohmann::ordered_json;

/// Parses {"lambda":[l0,l1,l2,l3,l4],"phi":x}. The result is validated.
inline StateParams parse_state(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("state descriptor is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("lambda") || !j.contains("phi")) {
    throw DomainError("state descriptor needs \"lambda\" and \"phi\"");
  }
  const auto& lam = j.at("lambda");
  if (!lam.is_array() || lam.size() != 5) throw DomainError("\"lambda\" must hold five numbers");
  StateParams p;
  for (std::size_t i = 0; i < 5; ++i) {
    if (!lam[i].is_number()) throw DomainError("\"lambda\" entries must be numbers");
    p.lambda[i] = lam[i].get<double>();
  }
  if (!j.at("phi").is_number()) throw DomainError("\"phi\" must be a number");
  p.phi = j.at("phi").get<double>();
  validate(p);
  return p;
}

/// Accepts an inline JSON object or a path to a file holding one.
inline StateParams load_state(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_state(arg);
  std::ifstream in(arg);
  if (!in) throw DomainError("cannot open state file '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_state(ss.str());
}

inline Json state_json(const StateParams& p) {
  return Json{{"lambda", Json(p.lambda)}, {"phi", p.phi}};
}

inline Json measures_json(const MeasureSet& m) {
  return Json{{"I1", m.I1},   {"I2", m.I2},   {"I3", m.I3},   {"I4", m.I4},
              {"I5", m.I5},   {"E1", m.E1},   {"E2", m.E2},   {"E3", m.E3},
              {"E4", m.E4},   {"E5", m.E5},   {"tau_1_23", m.tau_1_23},
              {"tau_1_2", m.tau_1_2},         {"tau_1_3", m.tau_1_3},
              {"tau_2_3", m.tau_2_3},         {"C1", m.C1},   {"C2", m.C2},
              {"C3", m.C3},   {"CT2", m.CT2}};
}

inline Json vector_json(const UnitVector3& v) { return Json::array({v.x, v.y, v.z}); }

inline Json violation_json(int family, const ViolationResult& r) {
  Json a = Json::array(), ap = Json::array();
  for (std::size_t q = 0; q < 3; ++q) {
    a.push_back(vector_json(r.best_settings.a[q]));
    ap.push_back(vector_json(r.best_settings.a_prime[q]));
  }
  return Json{{"family", family},
              {"coefficients", Json(r.coefficients.c)},
              {"gamma", r.gamma},
              {"converged", r.converged},
              {"restarts_agreeing", r.restarts_agreeing},
              {"best_restart", r.best_restart},
              {"settings", Json{{"a", a}, {"a_prime", ap}}}};
}

inline Json gamma_r_json(const GammaRReport& rep) {
  Json axes = Json::array();
  for (std::size_t j = 0; j < 3; ++j) {
    const CubicSpectrum& c = rep.spectra[j];
    axes.push_back(Json{{"axis", j + 1},
                        {"alpha", Json::array({c.alpha1, c.alpha2, c.alpha3})},
                        {"gamma1", c.gamma1},
                        {"gamma2", c.gamma2},
                        {"theta", c.theta},
                        {"roots", Json::array({c.x1, c.x2, c.x3})},
                        {"bound", rep.per_axis[j]}});
  }
  return Json{{"axes", axes}, {"argmin_axis", rep.argmin}, {"gamma_R", rep.gamma_R}};
}

inline constexpr const char* kScanHeader =
    "measure,value,gamma,gamma_R,lambda0,lambda1,lambda2,lambda3,lambda4,phi";

/// 12 significant digits, locale independent.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string scan_csv(const std::vector<ScanRow>& rows) {
  std::string out = kScanHeader;
  out += '\n';
  for (const ScanRow& r : rows) {
    out += std::to_string(r.measure);
    for (double v : {r.measure_value, r.gamma, r.gamma_R}) out += ',' + format_number(v);
    for (double v : r.params.lambda) out += ',' + format_number(v);
    out += ',' + format_number(r.params.phi);
    out += '\n';
  }
  return out;
}

/// Gnuplot script plotting gamma and gamma_R against E_k^2 from `csv_path`.
inline std::string gnuplot_script(const std::string& csv_path, int measure) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set key top left\n"
     << "set xlabel 'E" << measure << "^2'\n"
     << "set ylabel 'maximum expectation'\n"
     << "plot '" << csv_path << "' using 2:3 skip 1 with linespoints title 'gamma', \\\n"
     << "     '" << csv_path << "' using 2:4 skip 1 with lines title 'gamma_R'\n";
  return os.str();
}

/// Writes to a sibling temporary file and renames it over `path`, so a
/// failed run never leaves a partial file behind.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw DomainError("write to '" + tmp.string() + "' failed");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qvl::io
