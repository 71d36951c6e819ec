// ybx: command-line front end for the Yang-Baxter two-qudit toolkit.
//
// Exit codes: 0 success, 1 check failure, 2 usage, 3 I/O.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ybx/ybx.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_workers() {
  if (const char* env = std::getenv("YBX_WORKERS")) {
    try {
      const int w = std::stoi(env);
      if (w >= 1) return static_cast<unsigned>(w);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("YBX_WORKERS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

/// "1/3" -> pi/3, "0.25" -> pi/4, "-2/5" -> -2 pi/5.
double parse_theta_pi(const std::string& text) {
  try {
    std::size_t used = 0;
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw UsageError("");
      return v * std::numbers::pi;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double p = std::stod(num, &used);
    if (used != num.size()) throw UsageError("");
    const double q = std::stod(den, &used);
    if (used != den.size() || q == 0.0) throw UsageError("");
    return std::numbers::pi * p / q;
  } catch (const std::exception&) {
    throw UsageError("--theta-pi expects a rational such as 1/3, got '" + text + "'");
  }
}

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + " expects comma-separated numbers, got '" + text + "'");
    }
  }
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

/// Writes to `path`, or stdout when empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

/// JSON with 12-significant-digit floats (values are rounded beforehand).
std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string padded(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

// ---------------------------------------------------------------------------

struct AngleOptions {
  std::optional<double> theta;
  std::optional<std::string> theta_pi;

  void add(CLI::App* cmd) {
    auto* t = cmd->add_option("--theta", theta, "angle in radians");
    auto* tp = cmd->add_option("--theta-pi", theta_pi, "angle as a multiple of pi, e.g. 1/3");
    t->excludes(tp);
  }

  std::optional<double> value() const {
    if (theta_pi) return parse_theta_pi(*theta_pi);
    return theta;
  }
};

int cmd_verify(int dv, std::size_t n, std::uint64_t seed) {
  const ybx::Dimension d(dv);
  ybx::Rng rng = ybx::make_stream(seed, 0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  constexpr double kTol = 1e-10;

  struct Worst {
    double value = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
  };
  Worst ybe, unit, inverse;
  for (std::size_t k = 0; k < n; ++k) {
    const double t1 = angle(rng);
    const double t2 = angle(rng);
    const double r = ybx::ybe_residual(d, t1, t2);
    if (r >= ybe.value) ybe = {r, t1, t2};
    const auto u = ybx::unitarity_residuals(d, t1);
    if (u.unit >= unit.value) unit = {u.unit, t1, t2};
    if (u.inverse >= inverse.value) inverse = {u.inverse, t1, t2};
  }
  const double hecke = ybx::hecke_quadratic_residual(d);
  const double braid = ybx::braid_hecke_residual(d);

  std::cout << "d " << dv << "  pairs " << n << "  seed " << seed << '\n';
  std::cout << padded("check", 10) << padded("max_residual", 22) << "status\n";
  bool ok = true;
  auto row = [&](const char* name, double v) {
    const bool pass = v <= kTol;
    ok = ok && pass;
    std::cout << padded(name, 10) << padded(ybx::format_real(v), 22) << (pass ? "ok" : "FAIL") << '\n';
  };
  row("ybe", ybe.value);
  row("unit", unit.value);
  row("inverse", inverse.value);
  row("hecke", hecke);
  row("braid", braid);
  if (!ok) {
    for (const auto* w : {&ybe, &unit, &inverse}) {
      if (w->value > kTol) {
        std::cout << "offending d=" << dv << " theta1=" << ybx::format_real(w->theta1)
                  << " theta2=" << ybx::format_real(w->theta2) << '\n';
      }
    }
    return kExitCheck;
  }
  return 0;
}

int cmd_region(int dv, std::size_t n, std::uint64_t seed, std::optional<int> grid_opt,
               const std::string& out_dir, unsigned workers, std::optional<double> threshold_opt) {
  const ybx::Dimension d(dv);
  const int grid = grid_opt.value_or(dv == 3 ? 200 : 50);
  if (grid < 1) throw UsageError("--grid must be positive");
  const double threshold = threshold_opt.value_or(dv >= 4 ? 0.99 : 0.995);

  const auto schmidt = ybx::sample_region(d, n, seed, ybx::Ensemble::Schmidt, workers);
  const auto yb = ybx::sample_region(d, n, seed, ybx::Ensemble::YangBaxter, workers);
  const auto report = ybx::coverage_report(schmidt, yb, grid);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create '" + out_dir + "': " + ec.message());
  const fs::path dir(out_dir);

  auto write_csv = [&](const char* name, const std::vector<ybx::RegionSample>& samples) {
    std::ostringstream os;
    ybx::write_region_csv(os, d, samples);
    write_text(dir / name, os.str());
  };
  write_csv("schmidt.csv", schmidt);
  write_csv("yb.csv", yb);
  if (dv == 3) {
    std::vector<ybx::ContourPoint> pts;
    for (auto c : {ybx::Curve::OB, ybx::Curve::OG, ybx::Curve::GB}) {
      const auto curve = ybx::contour_curve(c, 200);
      pts.insert(pts.end(), curve.begin(), curve.end());
    }
    std::ostringstream os;
    ybx::write_contour_csv(os, pts);
    write_text(dir / "contours.csv", os.str());
  }
  const json cov = ybx::coverage_to_json(report, d, threshold);
  write_text(dir / "coverage.json", dump(cov));

  std::cout << "coverage " << ybx::format_real(report.coverage) << " (" << report.bins_covered << "/"
            << report.bins_target << " bins, grid " << grid << ", threshold "
            << ybx::format_real(threshold) << ")\n";
  return report.coverage >= threshold ? 0 : kExitCheck;
}

int cmd_contour(std::size_t steps, const std::string& out) {
  std::vector<ybx::ContourPoint> pts;
  for (auto c : {ybx::Curve::OB, ybx::Curve::OG, ybx::Curve::GB}) {
    const auto curve = ybx::contour_curve(c, steps);
    pts.insert(pts.end(), curve.begin(), curve.end());
  }
  std::ostringstream os;
  ybx::write_contour_csv(os, pts);
  emit(out, os.str());
  return 0;
}

json state_report(const ybx::TwoQuditState& s) {
  json j = ybx::state_to_json(s, true);
  const auto dec = ybx::schmidt_decompose(s);
  j["schmidt"] = ybx::rounded(dec.kappa);
  const auto inv = ybx::invariants(s);
  j["Iprime"] = ybx::rounded(inv.Iprime);
  j["C"] = ybx::round12(inv.concurrence);
  return j;
}

int cmd_generate(int dv, double theta, const std::optional<std::string>& phi_text,
                 const std::string& out) {
  const ybx::Dimension d(dv);
  std::vector<double> phi =
      phi_text ? parse_list(*phi_text, "--phi") : std::vector<double>(d.size() - 2, 0.0);
  const ybx::GenerationParams params(d, theta, phi);
  json j = state_report(ybx::generate(params));
  j["theta"] = ybx::round12(params.theta);
  j["phi"] = ybx::rounded(params.phi);
  emit(out, dump(j));
  return 0;
}

int cmd_invariants(const std::string& path, const std::string& out) {
  const json in = read_json_file(path);
  const ybx::TwoQuditState s = ybx::state_from_json(in);
  json j = ybx::invariants_to_json(ybx::invariants(s));
  j["d"] = s.dimension().value();
  j["schmidt"] = ybx::rounded(ybx::schmidt_decompose(s).kappa);
  emit(out, dump(j));
  return 0;
}

int cmd_solve(int dv, const std::string& kappa_text, double tol, const std::string& out) {
  const ybx::Dimension d(dv);
  std::vector<double> kappa = parse_list(kappa_text, "--kappa");
  if (kappa.size() != d.size()) {
    throw UsageError("--kappa needs " + std::to_string(d.size()) + " values");
  }
  double sum_sq = 0.0;
  for (double k : kappa) {
    if (!(k >= 0.0)) throw UsageError("--kappa values must be non-negative");
    sum_sq += k * k;
  }
  if (sum_sq == 0.0) throw UsageError("--kappa must not be all zero");
  // Typed-in spectra are rounded; normalize and sort before solving.
  for (double& k : kappa) k /= std::sqrt(sum_sq);
  std::sort(kappa.begin(), kappa.end(), std::greater<>());

  auto record = [&](const ybx::GenerationParams& p, double residual, bool found) {
    json j;
    j["d"] = dv;
    j["target"] = ybx::rounded(kappa);
    j["theta"] = ybx::round12(p.theta);
    j["phi"] = ybx::rounded(p.phi);
    j["residual"] = ybx::round12(residual);
    j["tol"] = tol;
    j["found"] = found;
    return j;
  };
  try {
    const auto r = ybx::solve_parameters(d, kappa, tol);
    emit(out, dump(record(r.params, r.residual, true)));
    return 0;
  } catch (const ybx::NoSolutionFound& e) {
    emit(out, dump(record(e.best(), e.residual(), false)));
    std::cerr << "ybx: " << e.what() << '\n';
    return kExitCheck;
  }
}

int cmd_epower(std::optional<int> dv_opt, std::optional<double> theta, const std::string& matrix_file,
               int j, std::size_t n, std::uint64_t seed, unsigned workers, const std::string& out) {
  ybx::ComplexMatrix u;
  json record;
  if (!matrix_file.empty()) {
    if (theta) throw UsageError("give either --matrix-file or an angle, not both");
    u = ybx::matrix_from_json(read_json_file(matrix_file));
    const ybx::Dimension d = ybx::pair_dimension(u);
    if (dv_opt && *dv_opt != d.value()) {
      throw UsageError("--d " + std::to_string(*dv_opt) + " does not match the matrix (d = " +
                       std::to_string(d.value()) + ")");
    }
    record["d"] = d.value();
    record["theta"] = nullptr;
  } else {
    if (!dv_opt) throw UsageError("--d is required with an angle");
    if (!theta) throw UsageError("give --theta, --theta-pi or --matrix-file");
    const auto gate = ybx::r_matrix(ybx::Dimension(*dv_opt), *theta);
    u = gate.matrix;
    record["d"] = *dv_opt;
    record["theta"] = ybx::round12(gate.theta);
  }
  const auto est = ybx::entangling_power_mc(u, j, n, seed, workers);
  record["j"] = j;
  record["mc_mean"] = ybx::round12(est.mean);
  record["mc_stderr"] = ybx::round12(est.std_error);
  record["n"] = est.n_samples;
  record["seed"] = seed;
  record["closed"] = j == 1 ? json(ybx::round12(ybx::entangling_power_closed(u))) : json(nullptr);
  emit(out, dump(record));
  return 0;
}

int cmd_dump(const std::string& what, int dv, std::optional<double> theta, int r, const std::string& out) {
  const ybx::Dimension d(dv);
  ybx::ComplexMatrix m;
  if (what == "r") {
    m = ybx::r_matrix(d, theta.value_or(0.0)).matrix;
  } else if (what == "m") {
    m = ybx::m_matrix(d);
  } else if (what == "p") {
    m = ybx::circulation_matrix(d, r);
  } else {
    throw UsageError("--what must be r, m or p");
  }
  emit(out, ybx::matrix_to_json(m).dump() + "\n");
  return 0;
}

int cmd_load(const std::string& path) {
  const ybx::ComplexMatrix m = ybx::matrix_from_json(read_json_file(path));
  json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  if (m.is_square()) j["unitarity_residual"] = ybx::round12(ybx::unitarity_residual(m));
  std::cout << dump(j);
  return 0;
}

int exit_code_for(ybx::ErrorCode code) {
  switch (code) {
    case ybx::ErrorCode::NoSolutionFound: return kExitCheck;
    case ybx::ErrorCode::Parse: return kExitIo;
    default: return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Yang-Baxter two-qudit toolkit"};
  app.require_subcommand(1);

  int d = 3;
  std::optional<int> d_opt;
  std::size_t n = 1000000;
  std::uint64_t seed = 42;
  std::optional<int> grid;
  std::optional<double> threshold;
  std::string out;
  std::optional<unsigned> workers;
  std::optional<std::string> phi;
  std::string kappa;
  double tol = 1e-5;
  std::size_t steps = 200;
  std::string state_file, matrix_file, in_file;
  int order = 1;
  std::string what = "r";
  int r_index = 1;
  AngleOptions angle;

  auto* verify = app.add_subcommand("verify", "Yang-Baxter, unitarity and Hecke residuals");
  verify->add_option("--d", d, "qudit dimension (2..8)")->required();
  std::size_t verify_n = 50;
  verify->add_option("--n", verify_n, "random angle pairs")->capture_default_str();
  verify->add_option("--seed", seed)->capture_default_str();

  auto* region = app.add_subcommand("region", "sample both ensembles and report coverage");
  region->add_option("--d", d)->required();
  region->add_option("--n", n, "samples per ensemble")->capture_default_str();
  region->add_option("--seed", seed)->capture_default_str();
  region->add_option("--grid", grid, "bins per axis (default 200 for d=3, 50 otherwise)");
  region->add_option("--out", out, "output directory")->required();
  region->add_option("--workers", workers, "worker threads (default: YBX_WORKERS or 1)");
  region->add_option("--threshold", threshold, "coverage needed for exit 0");

  auto* contour = app.add_subcommand("contour", "two-qutrit boundary curves OB, OG, GB as CSV");
  contour->add_option("--steps", steps, "points per curve")->capture_default_str();
  contour->add_option("--out", out, "CSV file (default stdout)");

  auto* gen = app.add_subcommand("generate", "state R|phi>|0> and its invariants");
  gen->add_option("--d", d)->required();
  angle.add(gen);
  gen->add_option("--phi", phi, "comma-separated d-2 angles (default zeros)");
  gen->add_option("--out", out, "JSON file (default stdout)");

  auto* inv = app.add_subcommand("invariants", "invariants of a state file");
  inv->add_option("--state-file", state_file, "JSON {\"d\", \"amplitudes\"}")->required();
  inv->add_option("--out", out);

  auto* solve = app.add_subcommand("solve", "find (theta, phi) for a target Schmidt spectrum");
  solve->add_option("--d", d)->required();
  solve->add_option("--kappa", kappa, "comma-separated Schmidt coefficients")->required();
  solve->add_option("--tol", tol, "max coefficient deviation")->capture_default_str();
  solve->add_option("--out", out);

  auto* epower = app.add_subcommand("epower", "entangling power, Monte Carlo and closed form");
  epower->add_option("--d", d_opt);
  AngleOptions epower_angle;
  epower_angle.add(epower);
  epower->add_option("--matrix-file", matrix_file, "unitary as matrix JSON");
  epower->add_option("--j", order, "invariant order")->capture_default_str();
  epower->add_option("--n", n)->capture_default_str();
  epower->add_option("--seed", seed)->capture_default_str();
  epower->add_option("--workers", workers);
  epower->add_option("--out", out);

  auto* dump_cmd = app.add_subcommand("dump", "write R(theta), M or P_r as matrix JSON");
  dump_cmd->add_option("--what", what, "r | m | p")->capture_default_str();
  dump_cmd->add_option("--d", d)->required();
  AngleOptions dump_angle;
  dump_angle.add(dump_cmd);
  dump_cmd->add_option("--r", r_index, "circulation index for --what p")->capture_default_str();
  dump_cmd->add_option("--out", out);

  auto* load = app.add_subcommand("load", "read a matrix JSON and report its shape and unitarity");
  load->add_option("--in", in_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    const unsigned w = workers ? *workers : default_workers();
    if (w == 0) throw UsageError("--workers must be at least 1");
    if (*verify) return cmd_verify(d, verify_n, seed);
    if (*region) return cmd_region(d, n, seed, grid, out, w, threshold);
    if (*contour) return cmd_contour(steps, out);
    if (*gen) {
      const auto theta = angle.value();
      if (!theta) throw UsageError("generate needs --theta or --theta-pi");
      return cmd_generate(d, *theta, phi, out);
    }
    if (*inv) return cmd_invariants(state_file, out);
    if (*solve) return cmd_solve(d, kappa, tol, out);
    if (*epower) return cmd_epower(d_opt, epower_angle.value(), matrix_file, order, n, seed, w, out);
    if (*dump_cmd) return cmd_dump(what, d, dump_angle.value(), r_index, out);
    if (*load) return cmd_load(in_file);
  } catch (const UsageError& e) {
    std::cerr << "ybx: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "ybx: " << e.what() << '\n';
    return kExitIo;
  } catch (const ybx::Error& e) {
    std::cerr << "ybx: " << ybx::to_string(e.code()) << ": " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}
