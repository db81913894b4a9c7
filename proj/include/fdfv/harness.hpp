#pragma once

// Experiment driver: runs registered problems with FD-FV or finite-volume
// schemes, measures L1 errors against exact or reference data, and assembles
// convergence and performance tables.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdfv/fvm.hpp"
#include "fdfv/problems.hpp"

namespace fdfv {

struct SchemeSpec {
  std::string name;
  bool fvm = false;
  std::string stencil;  // positive-family DDO (FD-FV)
  std::string rk;       // RK scheme (FD-FV)
  Limiter limiter = Limiter::none;
};

// "D1up-RK2", "D2up-RK3", "D3up-biased-RK4", "D3up-RK4", "D4up-biased-RK5",
// "fvm" (MUSCL, no limiter) or "fvm-va" (MUSCL, van Albada).
SchemeSpec parse_scheme(std::string_view name);
// Any catalog stencil with any RK scheme; named "<stencil>+<rk>".
SchemeSpec custom_scheme(std::string_view stencil, std::string_view rk);
// The five standard FD-FV pairings in order of increasing designed order.
const std::vector<std::string>& fdfv_pairings();

struct RunSettings {
  SchemeSpec scheme;
  int nx = 0;
  int ny = 0;  // 2D only; defaults to nx
  std::optional<double> cfl;
  std::optional<double> dt;
  std::optional<double> final_time;
};

// Final state of a run in a solver-independent layout. 2D arrays are stored
// with index i * ny + j; x-faces as f * ny + j (f = 0..nx), y-faces as
// i * (ny + 1) + g.
struct Solution {
  std::string problem;
  std::string scheme;
  bool fvm = false;
  bool periodic = false;
  int space_dim = 1;
  int dim = 1;
  int nx = 0, ny = 1;
  double x_left = 0.0, hx = 0.0, y_left = 0.0, hy = 0.0;
  double time = 0.0;
  std::vector<Vars> averages;
  std::vector<Vars> nodals;  // 1D FD-FV: N + 1 faces
  std::vector<Vars> xfaces;  // 2D FD-FV
  std::vector<Vars> yfaces;
  long steps = 0;
  double seconds = 0.0;  // wall clock of the time loop

  double cell_center(int i) const { return x_left + (i + 0.5) * hx; }
  double face_x(int f) const { return x_left + f * hx; }
};

Solution solve(const Problem& problem, const RunSettings& settings);

// Number of unknowns of a solution.
long degrees_of_freedom(const Solution& solution);

// Exact (or reference) data on the layout of `solution`.
struct ExactData {
  std::vector<Vars> averages;
  std::vector<Vars> nodals;
  std::vector<Vars> xfaces;
  std::vector<Vars> yfaces;
};

ExactData exact_data(const Problem& problem, const Solution& solution);

struct QuantityError {
  std::string quantity;
  double error = 0.0;
};

// L1 errors: h * sum over cells (or distinct faces) of the absolute error,
// with hx * hy weights in 2D. Scalars report "u_avg", "u". Euler reports
// rho, u, (v,) p for averages ("*_avg", velocity and pressure from the
// averaged conserved state) and for face values.
std::vector<QuantityError> l1_errors(const Problem& problem, const Solution& solution);

struct ConvergenceRow {
  std::string scheme;
  std::string quantity;
  int cells = 0;
  double error = 0.0;
  std::optional<double> rate;  // log(e_prev / e) / log(N / N_prev)
};

struct ConvergenceReport {
  std::string problem;
  std::vector<ConvergenceRow> rows;

  // Rows of one quantity, in mesh order.
  std::vector<ConvergenceRow> series(std::string_view quantity) const;
  const ConvergenceRow& at(std::string_view quantity, int cells) const;
};

ConvergenceReport convergence_study(const Problem& problem, const SchemeSpec& scheme,
                                    const std::vector<int>& meshes,
                                    std::optional<double> cfl = std::nullopt);

// Columns: problem, scheme, quantity, cells, l1_error, rate.
void write_convergence_csv(const ConvergenceReport& report, const std::string& path);

struct Oscillation {
  double overshoot = 0.0;   // max(numerical) - max(exact), or 0
  double undershoot = 0.0;  // min(exact) - min(numerical), or 0
  double magnitude() const { return overshoot > undershoot ? overshoot : undershoot; }
};

// Spurious extrema of component `component`: cell averages (and face values)
// against the range of the exact solution over the domain. 1D only.
Oscillation oscillation_metric(const Problem& problem, const Solution& solution,
                               int component = 0, bool include_nodals = true);

enum class MatchMode { same_mesh, same_dof };
MatchMode parse_match(std::string_view name);

struct PerformanceRow {
  std::string scheme;
  int nx = 0, ny = 1;
  long dof = 0;
  double error = 0.0;  // L1 error of the first averaged component
  long steps = 0;
  double seconds = 0.0;  // median over repeats
};

// For each mesh, runs `schemes[0]` on it, then every other scheme either on
// the same mesh or on the mesh with the closest number of unknowns.
std::vector<PerformanceRow> compare_performance(const Problem& problem,
                                                const std::vector<SchemeSpec>& schemes,
                                                const std::vector<int>& meshes,
                                                MatchMode match, int repeats = 3);

// Columns: scheme, mesh, n_dof, error_rho, n_iter, time_sec.
void write_performance_csv(const std::vector<PerformanceRow>& rows, const std::string& path);

// Snapshot files: averages.csv and faces.csv (1D) or averages.csv,
// xfaces.csv and yfaces.csv (2D), columns x[, y] then the conserved
// components.
void write_snapshot(const Problem& problem, const Solution& solution, const std::string& dir);

}  // namespace fdfv
