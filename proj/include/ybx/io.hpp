#pragma once

// File formats: region and contour CSV, matrix and state JSON. Report values
// are printed with 12 significant digits; matrix dumps keep full precision
// so that a reloaded gate is still unitary to machine precision.

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ybx/entanglement.hpp"
#include "ybx/error.hpp"
#include "ybx/generation.hpp"
#include "ybx/tensor_core.hpp"

namespace ybx {

/// %.12g
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, for JSON output.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_real(x));
}

inline nlohmann::json rounded(const std::vector<double>& xs) {
  auto out = nlohmann::json::array();
  for (double x : xs) out.push_back(round12(x));
  return out;
}

// ---------------------------------------------------------------------------
// CSV

/// d=3: ensemble,theta,phi1,i1p,i2p   d=4: ensemble,theta,phi1,phi2,i1p,i2p,i3p
inline std::string region_csv_header(Dimension d) {
  std::string h = "ensemble,theta";
  for (int k = 1; k <= d.value() - 2; ++k) h += ",phi" + std::to_string(k);
  for (int k = 1; k <= d.value() - 1; ++k) h += ",i" + std::to_string(k) + "p";
  return h;
}

inline void write_region_csv(std::ostream& os, Dimension d, std::span<const RegionSample> samples) {
  os << region_csv_header(d) << '\n';
  const std::size_t n_phi = d.size() - 2;
  for (const auto& s : samples) {
    os << to_string(s.source) << ',';
    if (s.source == Ensemble::YangBaxter) os << format_real(s.theta);
    for (std::size_t k = 0; k < n_phi; ++k) {
      os << ',';
      if (s.source == Ensemble::YangBaxter) os << format_real(s.phi.at(k));
    }
    for (double v : s.iprime) os << ',' << format_real(v);
    os << '\n';
  }
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace detail

/// Parses a region CSV written by write_region_csv. Kappa is not part of the
/// schema, so Schmidt rows come back with an empty kappa.
inline std::vector<RegionSample> read_region_csv(std::istream& is, Dimension d) {
  std::string line;
  if (!std::getline(is, line) || line != region_csv_header(d)) {
    throw Error(ErrorCode::Parse, "region CSV header does not match '" + region_csv_header(d) + "'");
  }
  const std::size_t n_phi = d.size() - 2;
  const std::size_t n_cols = 2 + n_phi + (d.size() - 1);
  std::vector<RegionSample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != n_cols) {
      throw Error(ErrorCode::Parse, "region CSV row has " + std::to_string(f.size()) +
                                        " fields, expected " + std::to_string(n_cols));
    }
    RegionSample s;
    s.source = parse_ensemble(f[0]);
    if (s.source == Ensemble::YangBaxter) {
      s.theta = std::stod(f[1]);
      for (std::size_t k = 0; k < n_phi; ++k) s.phi.push_back(std::stod(f[2 + k]));
    }
    for (std::size_t k = 2 + n_phi; k < n_cols; ++k) s.iprime.push_back(std::stod(f[k]));
    out.push_back(std::move(s));
  }
  return out;
}

inline constexpr const char* kContourCsvHeader = "curve,xi,i1p,i2p";

inline void write_contour_csv(std::ostream& os, std::span<const ContourPoint> points) {
  os << kContourCsvHeader << '\n';
  for (const auto& p : points) {
    os << to_string(p.curve) << ',' << format_real(p.xi);
    for (double v : p.iprime) os << ',' << format_real(v);
    os << '\n';
  }
}

// ---------------------------------------------------------------------------
// JSON

/// {"rows":n,"cols":m,"entries":[[re,im],...]} in row-major order.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const cplx& z : m.entries()) entries.push_back({z.real(), z.imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline StateVector complex_list_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "expected an array of [re, im] pairs");
  StateVector out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::Parse, "complex entries must be [re, im] pairs");
    }
    const cplx z(e[0].get<double>(), e[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw Error(ErrorCode::Parse, "non-finite complex entry");
    }
    out.push_back(z);
  }
  return out;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    if (rows == 0 || cols == 0) throw Error(ErrorCode::Parse, "matrix dimensions must be positive");
    return {rows, cols, complex_list_from_json(j.at("entries"))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

/// {"d":3,"amplitudes":[[re,im],...]} with amplitude mu_ij at index i*d + j.
inline nlohmann::json state_to_json(const TwoQuditState& s, bool round = false) {
  nlohmann::json amps = nlohmann::json::array();
  for (const cplx& z : s.amplitudes()) {
    amps.push_back(round ? nlohmann::json{round12(z.real()), round12(z.imag())}
                         : nlohmann::json{z.real(), z.imag()});
  }
  return {{"d", s.dimension().value()}, {"amplitudes", std::move(amps)}};
}

inline TwoQuditState state_from_json(const nlohmann::json& j, double tol = 1e-9) {
  try {
    const Dimension d(j.at("d").get<int>());
    StateVector amps = complex_list_from_json(j.at("amplitudes"));
    // Renormalize away rounding from hand-written files; the tolerance still
    // rejects anything that was not meant to be a unit vector.
    const double n = norm(amps);
    if (std::abs(n - 1.0) > tol) {
      throw Error(ErrorCode::NotNormalized, "state norm is " + std::to_string(n));
    }
    for (auto& z : amps) z /= n;
    return {d, std::move(amps)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

/// {"I":[...],"Iprime":[...],"C":...}
inline nlohmann::json invariants_to_json(const InvariantVector& inv) {
  return {{"I", rounded(inv.I)}, {"Iprime", rounded(inv.Iprime)}, {"C", round12(inv.concurrence)}};
}

inline nlohmann::json coverage_to_json(const CoverageReport& r, Dimension d, double threshold,
                                       std::size_t max_uncovered = 200) {
  nlohmann::json uncovered = nlohmann::json::array();
  for (std::size_t k = 0; k < r.uncovered.size() && k < max_uncovered; ++k) {
    std::vector<double> centre;
    for (int b : r.uncovered[k]) centre.push_back((b + 0.5) / r.grid_resolution);
    uncovered.push_back(rounded(centre));
  }
  return {{"d", d.value()},
          {"grid_resolution", r.grid_resolution},
          {"bins_target", r.bins_target},
          {"bins_covered", r.bins_covered},
          {"coverage", round12(r.coverage)},
          {"threshold", round12(threshold)},
          {"passed", r.coverage >= threshold},
          {"sample_counts", {r.sample_counts.first, r.sample_counts.second}},
          {"uncovered_bin_centres", std::move(uncovered)}};
}

}  // namespace ybx
