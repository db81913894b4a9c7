// Command-line front end.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "fdfv/csv.hpp"
#include "fdfv/ddo.hpp"
#include "fdfv/errors.hpp"
#include "fdfv/harness.hpp"
#include "fdfv/stability.hpp"
#include "fdfv/time_integration.hpp"

using namespace fdfv;

namespace {

std::vector<int> parse_meshes(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(item, &used);
      if (used != item.size() || n < 1) throw std::invalid_argument(item);
      out.push_back(n);
    } catch (const std::exception&) {
      throw ValidationError("bad mesh size '" + item + "'");
    }
  }
  if (out.empty()) throw ValidationError("empty mesh list");
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void stability_command(const std::vector<std::string>& stencils, const std::string& rk_name,
                       const std::string& out) {
  const RKScheme& rk = rk_scheme(rk_name);
  const auto grid = default_theta_grid();
  CsvWriter summary(out + "/summary.csv", {"stencil", "scheme", "b0", "lambda_asym", "lambda_max"});
  for (const auto& name : stencils) {
    const DDOStencil& s = catalog(name);
    const DiagnosticCurves c = diagnostics(s, grid);
    CsvWriter csv(out + "/diagnostics_" + name + ".csv",
                  {"theta", "dispersion", "dissipation", "phase_avg", "phase_nodal", "mag_avg",
                   "mag_nodal", "noise_avg", "noise_nodal"});
    for (std::size_t k = 0; k < c.theta.size(); ++k) {
      csv << c.theta[k] << c.dispersion[k] << c.dissipation[k] << c.phase_avg[k]
          << c.phase_nodal[k] << c.magnitude_avg[k] << c.magnitude_nodal[k] << c.noise_avg[k]
          << c.noise_nodal[k];
      csv.end_row();
    }
    const double b0 = detail::to_double(s.b0());
    const double lmax = max_courant(s, rk);
    const double lasym = b0 > 0.0 ? asymptotic_bound(rk, b0) : 0.0;
    summary << name << rk_name << b0 << lasym << lmax;
    summary.end_row();

    if (b0 <= 0.0) continue;
    CsvWriter contour(out + "/contour_" + name + "_" + rk_name + ".csv",
                      {"theta", "lambda", "amplification"});
    const double top = std::max(1.5 * std::max(lmax, lasym), 0.1);
    constexpr int nt = 200, nl = 150;
    for (int i = 1; i <= nt; ++i) {
      const double theta = std::numbers::pi * i / nt;
      for (int j = 0; j <= nl; ++j) {
        const double lambda = top * j / nl;
        contour << theta << lambda << amplification(s, rk, theta, lambda);
        contour.end_row();
      }
    }
  }
}

void solve_command(const std::string& config_path, const std::string& out) {
  std::ifstream in(config_path);
  if (!in) throw ValidationError("cannot read config '" + config_path + "'");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid JSON config: ") + e.what());
  }
  static const std::vector<std::string> known = {
      "problem", "ic", "model", "scheme", "stencil", "rk", "cells", "N", "ny",
      "cfl", "dt", "final_time", "T", "bc"};
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  try {
    const std::string name = cfg.contains("problem") ? cfg["problem"].get<std::string>()
                                                     : cfg.value("ic", std::string());
    if (name.empty()) throw ValidationError("config needs 'problem'");
    const Problem& p = problem(name);
    if (cfg.contains("model") && cfg["model"].get<std::string>() != p.model->name()) {
      throw ValidationError("problem '" + name + "' uses model '" + p.model->name() + "'");
    }
    if (cfg.contains("bc")) {
      const std::string bc = cfg["bc"].get<std::string>();
      const std::string actual = p.space_dim == 2 || p.bc.is_periodic() ? "periodic" : "dirichlet";
      if (bc != actual) {
        throw ValidationError("problem '" + name + "' uses " + actual + " boundaries");
      }
    }
    RunSettings rs;
    if (cfg.contains("scheme")) {
      rs.scheme = parse_scheme(cfg["scheme"].get<std::string>());
    } else if (cfg.contains("stencil") && cfg.contains("rk")) {
      rs.scheme = custom_scheme(cfg["stencil"].get<std::string>(), cfg["rk"].get<std::string>());
    } else {
      throw ValidationError("config needs 'scheme' or both 'stencil' and 'rk'");
    }
    if (cfg.contains("cells")) rs.nx = cfg["cells"].get<int>();
    else if (cfg.contains("N")) rs.nx = cfg["N"].get<int>();
    else throw ValidationError("config needs 'cells'");
    rs.ny = cfg.value("ny", 0);
    if (cfg.contains("cfl")) rs.cfl = cfg["cfl"].get<double>();
    if (cfg.contains("dt")) rs.dt = cfg["dt"].get<double>();
    if (cfg.contains("final_time")) rs.final_time = cfg["final_time"].get<double>();
    else if (cfg.contains("T")) rs.final_time = cfg["T"].get<double>();

    const Solution sol = solve(p, rs);
    write_snapshot(p, sol, out);
    std::cout << p.name << " " << sol.scheme << " cells=" << sol.nx << " steps=" << sol.steps
              << " t=" << sol.time << "\n";
    try {
      for (const auto& e : l1_errors(p, sol)) {
        std::cout << "  L1 " << e.quantity << " = " << format_number(e.error) << "\n";
      }
    } catch (const ValidationError&) {
      // No exact data at this time.
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
}

void reference_command(int cells, const std::string& path) {
  const Problem& p = problem("shu-osher");
  RunSettings rs;
  rs.scheme = parse_scheme("fvm-va");
  rs.nx = cells;
  const Solution sol = solve(p, rs);
  CsvWriter csv(path, {"x", "rho", "u", "p"});
  for (int i = 0; i < sol.nx; ++i) {
    const Vars q = conservative_to_primitive(sol.averages[i], 3);
    csv << sol.cell_center(i) << q[0] << q[1] << q[2];
    csv.end_row();
  }
  std::cout << "wrote " << path << " (" << cells << " cells, " << sol.steps << " steps)\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FD-FV solvers, stability analysis and benchmarks"};
  app.require_subcommand(1);

  auto* stab = app.add_subcommand("stability", "von Neumann diagnostics and Courant limits");
  std::string stencil = "all", rk = "rk2", out = "out";
  stab->add_option("--stencil", stencil, "catalog operator, comma list, or 'all'");
  stab->add_option("--rk", rk, "fe, rk2, rk3, rk4 or rk5");
  stab->add_option("--out", out, "output directory");

  auto* solve_cmd = app.add_subcommand("solve", "run one problem from a JSON config");
  std::string config;
  solve_cmd->add_option("--config", config, "JSON config")->required();
  solve_cmd->add_option("--out", out, "output directory");

  auto* conv = app.add_subcommand("convergence", "L1 convergence study");
  std::string prob, scheme = "D1up-RK2", meshes = "20,40,80,160";
  double cfl = 0.0;
  conv->add_option("--problem", prob)->required();
  conv->add_option("--scheme", scheme, "pairing name, fvm or fvm-va");
  conv->add_option("--meshes", meshes, "comma-separated cell counts");
  conv->add_option("--cfl", cfl, "override the problem's default");
  conv->add_option("--out", out, "output directory");

  auto* cmp = app.add_subcommand("compare", "FD-FV against finite volume: error and time");
  std::string match = "same-mesh", schemes = "D1up-RK2,fvm-va";
  int repeats = 3;
  meshes = "20,40,80,160";
  cmp->add_option("--problem", prob)->required();
  cmp->add_option("--match", match, "same-mesh or same-dof");
  cmp->add_option("--schemes", schemes, "first is the base scheme");
  cmp->add_option("--meshes", meshes, "comma-separated cell counts of the base scheme");
  cmp->add_option("--repeats", repeats, "timing repeats (median reported)");
  cmp->add_option("--out", out, "output directory");

  auto* ref = app.add_subcommand("reference", "regenerate the Shu-Osher reference fixture");
  int ref_cells = 10000;
  std::string ref_path = data_dir() + "/shu_osher_reference.csv";
  ref->add_option("--cells", ref_cells);
  ref->add_option("--out", ref_path, "output CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (stab->parsed()) {
      std::vector<std::string> names;
      if (stencil == "all") {
        names = {"1st-backward", "2nd-backward", "3rd-B-biased", "3rd-backward",
                 "4th-B-biased", "4th-backward"};
      } else {
        names = split(stencil);
      }
      stability_command(names, rk, out);
    } else if (solve_cmd->parsed()) {
      solve_command(config, out);
    } else if (conv->parsed()) {
      const Problem& p = problem(prob);
      const auto report = convergence_study(p, parse_scheme(scheme), parse_meshes(meshes),
                                            cfl > 0.0 ? std::optional(cfl) : std::nullopt);
      const std::string path = out + "/convergence_" + prob + "_" + scheme + ".csv";
      write_convergence_csv(report, path);
      for (const auto& r : report.rows) {
        std::cout << r.quantity << " " << r.cells << " " << format_number(r.error) << " "
                  << (r.rate ? format_number(*r.rate) : "") << "\n";
      }
    } else if (cmp->parsed()) {
      const Problem& p = problem(prob);
      std::vector<SchemeSpec> specs;
      for (const auto& s : split(schemes)) specs.push_back(parse_scheme(s));
      const auto rows =
          compare_performance(p, specs, parse_meshes(meshes), parse_match(match), repeats);
      write_performance_csv(rows, out + "/compare_" + prob + "_" + match + ".csv");
      for (const auto& r : rows) {
        std::cout << r.scheme << " " << r.nx << " dof=" << r.dof
                  << " err=" << format_number(r.error) << " iter=" << r.steps
                  << " sec=" << r.seconds << "\n";
      }
    } else if (ref->parsed()) {
      reference_command(ref_cells, ref_path);
    }
  } catch (const BlowUpError& e) {
    std::cerr << "blow-up: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
