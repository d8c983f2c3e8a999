// Command-line front end: phase-space maps, CHSH scans, optimization runs and
// the numerical verification battery, driven by a JSON scenario file.
//
// Exit codes: 0 success, 2 config error, 3 validity guard (t < T), 4 I/O
// failure, 5 optimizer non-convergence, 6 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "catbell/config_io.hpp"
#include "catbell/errors.hpp"
#include "catbell/optimize.hpp"
#include "catbell/scan.hpp"
#include "catbell/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidity = 3;
constexpr int kExitIo = 4;
constexpr int kExitNoConvergence = 5;
constexpr int kExitVerifyFailed = 6;

using catbell::format_double;

std::map<std::string, std::string> parse_fix(const std::string& text) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw catbell::ConfigError("--fix expects k=v[,k=v...], got '" + item + "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open output file '" + path + "'");
  return out;
}

int cmd_wigner_map(const std::string& config_path, const std::string& beta_text,
                   const std::string& z_range, const std::string& k_range,
                   const std::string& out_path) {
  const catbell::RunConfig rc = catbell::load_run_config(config_path);
  const double beta = catbell::parse_angle(beta_text);
  const catbell::Range zr = catbell::parse_range(z_range);
  const catbell::Range kr = catbell::parse_range(k_range);
  const catbell::WignerMap map =
      catbell::wigner_map(rc.system, rc.system.tau(), beta, zr, kr);

  auto out = open_output(out_path);
  out << "z_over_L,k_scaled,value\n";
  for (int iz = 0; iz < zr.count; ++iz) {
    for (int ik = 0; ik < kr.count; ++ik) {
      out << format_double(zr.value(iz)) << ',' << format_double(kr.value(ik)) << ','
          << format_double(map.at(iz, ik)) << '\n';
    }
  }
  if (!out) throw std::ios_base::failure("write failed: " + out_path);
  return kExitOk;
}

int cmd_chsh_scan(const std::string& config_path, const std::string& fix_text,
                  const std::string& zp_range, const std::string& bp_range,
                  const std::string& out_path) {
  const catbell::RunConfig rc = catbell::load_run_config(config_path);
  const auto fix = parse_fix(fix_text);
  catbell::ChshScanFixed fixed;
  fixed.k = rc.system.k0();
  fixed.k_prime = rc.system.k0();
  bool have_z = false, have_beta = false;
  for (const auto& [key, value] : fix) {
    if (key == "z") {
      fixed.z = std::stod(value);
      have_z = true;
    } else if (key == "k") {
      fixed.k = std::stod(value);
    } else if (key == "kp") {
      fixed.k_prime = std::stod(value);
    } else if (key == "beta") {
      fixed.beta = catbell::parse_angle(value);
      have_beta = true;
    } else {
      throw catbell::ConfigError("--fix: unknown key '" + key + "' (want z,k,kp,beta)");
    }
  }
  if (!have_z || !have_beta) {
    throw catbell::ConfigError("--fix must set at least z and beta (k, kp default to k0)");
  }
  const catbell::Range zpr = catbell::parse_range(zp_range);
  const catbell::Range bpr = catbell::parse_range(bp_range, /*angles=*/true);
  const catbell::ChshScan scan =
      catbell::chsh_scan(rc.system, rc.system.tau(), fixed, zpr, bpr);

  auto out = open_output(out_path);
  out << "zp_over_L,beta_prime,B_QM,exceeds_2\n";
  for (int iz = 0; iz < zpr.count; ++iz) {
    for (int ib = 0; ib < bpr.count; ++ib) {
      const double v = scan.at(iz, ib);
      out << format_double(zpr.value(iz)) << ',' << format_double(bpr.value(ib)) << ','
          << format_double(v) << ',' << (v > 2.0 ? 1 : 0) << '\n';
    }
  }
  out << "# max=" << format_double(scan.max_value)
      << " at zp=" << format_double(zpr.value(scan.max_iz))
      << " betap=" << format_double(bpr.value(scan.max_ib))
      << " cells_above_2=" << scan.cells_above_2 << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + out_path);
  return kExitOk;
}

int cmd_optimize(const std::string& config_path, const std::string& mode_text, int starts,
                 std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  const catbell::RunConfig rc = catbell::load_run_config(config_path);
  catbell::OptimizeMode mode;
  if (mode_text == "fixed") {
    mode = catbell::OptimizeMode::fixed;
  } else if (mode_text == "design") {
    mode = catbell::OptimizeMode::design;
  } else {
    throw catbell::ConfigError("--mode must be 'fixed' or 'design'");
  }
  const std::uint64_t seed = seed_flag.value_or(rc.seed);
  const catbell::OptimumReport report =
      catbell::optimize_chsh(rc.system, rc.system.tau(), mode, starts, seed);

  nlohmann::json j;
  j["best_value"] = report.best_value;
  j["x"] = report.best_point.x;
  j["x_prime"] = report.best_point.x_prime;
  j["kappa"] = report.best_point.kappa;
  j["kappa_prime"] = report.best_point.kappa_prime;
  j["d"] = report.best_point.d;
  j["kappa0"] = report.best_point.kappa0;
  j["beta_star"] = report.beta_star;
  j["beta_prime_star"] = report.beta_prime_star;
  j["starts"] = report.starts;
  j["converged"] = report.converged;

  auto out = open_output(out_path);
  out << j.dump(2) << '\n';
  if (!out) throw std::ios_base::failure("write failed: " + out_path);
  return report.converged ? kExitOk : kExitNoConvergence;
}

int cmd_verify(const std::string& config_path, int grid_points, double dt,
               std::optional<std::uint64_t> seed_flag, const std::string& out_path) {
  const catbell::RunConfig rc = catbell::load_run_config(config_path);
  const catbell::Grid grid = rc.make_grid(rc.system.tau(), grid_points);
  const double step = dt > 0.0 ? dt : rc.grid.dt.value_or(0.0);
  const catbell::VerifyReport report =
      catbell::run_verification(rc.system, grid, step, seed_flag.value_or(rc.seed));

  const std::string text = report.to_json();
  if (out_path.empty()) {
    std::cout << text << std::endl;
  } else {
    auto out = open_output(out_path);
    out << text << '\n';
    if (!out) throw std::ios_base::failure("write failed: " + out_path);
  }
  return report.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"atom-field cat-state correlation toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, beta_text = "pi/4";
  std::string z_range, k_range, zp_range, bp_range, fix_text;
  std::string mode_text = "design";
  int starts = 32;
  int grid_points = 0;
  double dt = 0.0;
  std::optional<std::uint64_t> seed;

  auto* wigner = app.add_subcommand("wigner-map", "correlation surface over a (z,k) window");
  wigner->add_option("--config", config_path)->required();
  wigner->add_option("--out", out_path)->required();
  wigner->add_option("--beta", beta_text);
  wigner->add_option("--z-range", z_range)->required();
  wigner->add_option("--k-range", k_range)->required();

  auto* scan = app.add_subcommand("chsh-scan", "CHSH sum over a (z',beta') window");
  scan->add_option("--config", config_path)->required();
  scan->add_option("--out", out_path)->required();
  scan->add_option("--fix", fix_text)->required();
  scan->add_option("--zp-range", zp_range)->required();
  scan->add_option("--betap-range", bp_range)->required();

  auto* opt = app.add_subcommand("optimize", "maximize the CHSH sum");
  opt->add_option("--config", config_path)->required();
  opt->add_option("--out", out_path)->required();
  opt->add_option("--mode", mode_text)->check(CLI::IsMember({"fixed", "design"}));
  opt->add_option("--starts", starts)->check(CLI::PositiveNumber);
  opt->add_option("--seed", seed);

  auto* verify = app.add_subcommand("verify", "numerical cross-validation battery");
  verify->add_option("--config", config_path)->required();
  verify->add_option("--out", out_path);
  verify->add_option("--grid-points", grid_points);
  verify->add_option("--dt", dt);
  verify->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (wigner->parsed()) return cmd_wigner_map(config_path, beta_text, z_range, k_range, out_path);
    if (scan->parsed()) return cmd_chsh_scan(config_path, fix_text, zp_range, bp_range, out_path);
    if (opt->parsed()) return cmd_optimize(config_path, mode_text, starts, seed, out_path);
    if (verify->parsed()) return cmd_verify(config_path, grid_points, dt, seed, out_path);
  } catch (const catbell::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return kExitConfig;
  } catch (const catbell::ValidityError& e) {
    std::cerr << "validity guard: " << e.what() << std::endl;
    return kExitValidity;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << std::endl;
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitConfig;
  }
  return kExitOk;
}
