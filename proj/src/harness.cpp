#include "fdfv/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <mutex>

#include "fdfv/csv.hpp"
#include "fdfv/ddo.hpp"
#include "fdfv/errors.hpp"
#include "fdfv/solver1d.hpp"
#include "fdfv/solver2d.hpp"
#include "fdfv/time_integration.hpp"

namespace fdfv {

namespace {

struct Pairing {
  const char* name;
  const char* stencil;
  const char* rk;
};

constexpr Pairing kPairings[] = {
    {"D1up-RK2", "1st-backward", "rk2"},
    {"D2up-RK3", "2nd-backward", "rk3"},
    {"D3up-biased-RK4", "3rd-B-biased", "rk4"},
    {"D3up-RK4", "3rd-backward", "rk4"},
    {"D4up-biased-RK5", "4th-B-biased", "rk5"},
};

bool is_euler(int dim) { return dim >= 3; }

// Physical quantities reported for a conserved state.
std::vector<std::pair<std::string, double>> quantities(const Vars& w, int dim) {
  if (!is_euler(dim)) return {{"u", w[0]}};
  const Vars q = conservative_to_primitive(w, dim);
  if (dim == 3) return {{"rho", q[0]}, {"u", q[1]}, {"p", q[2]}};
  return {{"rho", q[0]}, {"u", q[1]}, {"v", q[2]}, {"p", q[3]}};
}

std::vector<Vars> to_vars(int count, int dim, const double* base) {
  std::vector<Vars> out(count);
  for (int k = 0; k < count; ++k) {
    for (int c = 0; c < dim; ++c) out[k][c] = base[static_cast<std::size_t>(k) * dim + c];
  }
  return out;
}

RunOptions run_options(const Problem& problem, const RunSettings& settings) {
  RunOptions o;
  o.final_time = settings.final_time.value_or(problem.final_time);
  o.cfl = settings.cfl.value_or(problem.cfl_for(settings.scheme.name));
  if (settings.dt) o.dt = *settings.dt;
  return o;
}

template <class F>
auto timed(double& seconds, F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto result = f();
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

Solution solve_1d(const Problem& problem, const RunSettings& settings) {
  const int d = problem.model->state_dim();
  const int n = settings.nx;
  Solution sol;
  sol.dim = d;
  sol.nx = n;
  sol.x_left = problem.x_left;
  sol.hx = (problem.x_right - problem.x_left) / n;
  sol.periodic = problem.bc.is_periodic();
  const RunOptions options = run_options(problem, settings);
  if (settings.scheme.fvm) {
    FvmSolver1D solver(problem.model, problem.bc, n, problem.x_left, problem.x_right,
                       FvmOptions{settings.scheme.limiter});
    auto result = timed(sol.seconds, [&] {
      return run_fvm(solver, solver.initialize(problem.initial), options);
    });
    sol.averages = to_vars(n, d, result.state.data.data());
    sol.time = result.state.time;
    sol.steps = result.steps;
  } else {
    FdfvSolver1D solver(problem.model, upwind_family(settings.scheme.stencil), problem.bc, n,
                        problem.x_left, problem.x_right);
    const RKScheme& rk = rk_scheme(settings.scheme.rk);
    auto result = timed(sol.seconds, [&] {
      return run(solver, rk, solver.initialize(problem.initial), options);
    });
    sol.averages = to_vars(n, d, result.state.average_ptr(0));
    sol.nodals = to_vars(n + 1, d, result.state.nodal_ptr(0));
    sol.time = result.state.time;
    sol.steps = result.steps;
  }
  return sol;
}

Solution solve_2d(const Problem& problem, const RunSettings& settings) {
  const int d = problem.model->state_dim();
  const int nx = settings.nx;
  const int ny = settings.ny > 0 ? settings.ny : settings.nx;
  Solution sol;
  sol.space_dim = 2;
  sol.dim = d;
  sol.nx = nx;
  sol.ny = ny;
  sol.x_left = problem.x_left;
  sol.y_left = problem.y_left;
  sol.hx = (problem.x_right - problem.x_left) / nx;
  sol.hy = (problem.y_right - problem.y_left) / ny;
  sol.periodic = true;
  const RunOptions options = run_options(problem, settings);
  if (settings.scheme.fvm) {
    FvmSolver2D solver(problem.model, nx, ny, problem.x_left, problem.x_right,
                       problem.y_left, problem.y_right, FvmOptions{settings.scheme.limiter});
    auto result = timed(sol.seconds, [&] {
      return run_fvm_2d(solver, solver.initialize(problem.initial_2d), options);
    });
    sol.averages = to_vars(nx * ny, d, result.state.data.data());
    sol.time = result.state.time;
    sol.steps = result.steps;
  } else {
    FdfvSolver2D solver(problem.model, upwind_family(settings.scheme.stencil), nx, ny,
                        problem.x_left, problem.x_right, problem.y_left, problem.y_right);
    const RKScheme& rk = rk_scheme(settings.scheme.rk);
    auto result = timed(sol.seconds, [&] {
      return run_2d(solver, rk, solver.initialize(problem.initial_2d), options);
    });
    const MeshState2D& s = result.state;
    sol.averages = to_vars(nx * ny, d, s.average_ptr(0, 0));
    sol.xfaces = to_vars((nx + 1) * ny, d, s.xface_ptr(0, 0));
    sol.yfaces = to_vars(nx * (ny + 1), d, s.yface_ptr(0, 0));
    sol.time = s.time;
    sol.steps = result.steps;
  }
  return sol;
}

// Fine-mesh reference runs, computed once per problem and time.
const Solution& reference_solution(const Problem& problem, double time) {
  static std::mutex mutex;
  static std::map<std::pair<std::string, double>, Solution> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(problem.name, time);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  RunSettings rs;
  rs.scheme = parse_scheme(problem.reference->scheme);
  rs.nx = problem.reference->cells;
  rs.cfl = problem.reference->cfl;
  rs.final_time = time;
  return cache.emplace(key, solve(problem, rs)).first->second;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

long dof_for(const Problem& problem, const SchemeSpec& scheme, int n) {
  const long d = problem.model->state_dim();
  const long N = n;
  if (problem.space_dim == 1) return scheme.fvm ? d * N : d * (2 * N + 1);
  return scheme.fvm ? d * N * N : d * (N * N + 2 * (N + 1) * N);
}

// Range of the exact profile over [a, b], including one-sided limits at
// breakpoints.
std::pair<double, double> exact_range(const Profile& exact, double a, double b, int c) {
  double lo = INFINITY, hi = -INFINITY;
  auto visit = [&](double x) {
    const double v = exact.at(x)[c];
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  };
  constexpr int samples = 4096;
  for (int k = 0; k <= samples; ++k) visit(a + (b - a) * k / samples);
  const double eps = 1e-9 * (b - a);
  for (double x : exact.breakpoints) {
    if (x >= a && x <= b) {
      visit(std::max(a, x - eps));
      visit(std::min(b, x + eps));
    }
  }
  return {lo, hi};
}

}  // namespace

SchemeSpec parse_scheme(std::string_view name) {
  for (const auto& p : kPairings) {
    if (name == p.name) return {p.name, false, p.stencil, p.rk, Limiter::none};
  }
  if (name == "fvm") return {"fvm", true, "", "", Limiter::none};
  if (name == "fvm-va") return {"fvm-va", true, "", "", Limiter::van_albada};
  std::string valid;
  for (const auto& p : kPairings) valid += std::string(" ") + p.name;
  throw ValidationError("unknown scheme '" + std::string(name) + "'; valid:" + valid +
                        " fvm fvm-va");
}

SchemeSpec custom_scheme(std::string_view stencil, std::string_view rk) {
  for (const auto& p : kPairings) {
    if (stencil == p.stencil && rk == p.rk) return parse_scheme(p.name);
  }
  // Validate both names.
  upwind_family(stencil);
  rk_scheme(rk);
  return {std::string(stencil) + "+" + std::string(rk), false, std::string(stencil),
          std::string(rk), Limiter::none};
}

const std::vector<std::string>& fdfv_pairings() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : kPairings) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

Solution solve(const Problem& problem, const RunSettings& settings) {
  if (settings.nx < 1) throw ValidationError("number of cells must be positive");
  if (settings.ny < 0) throw ValidationError("number of cells must be positive");
  Solution sol = problem.space_dim == 1 ? solve_1d(problem, settings)
                                        : solve_2d(problem, settings);
  sol.problem = problem.name;
  sol.scheme = settings.scheme.name;
  sol.fvm = settings.scheme.fvm;
  return sol;
}

long degrees_of_freedom(const Solution& s) {
  return static_cast<long>(s.averages.size() + s.nodals.size() + s.xfaces.size() +
                           s.yfaces.size()) *
         s.dim;
}

ExactData exact_data(const Problem& problem, const Solution& sol) {
  ExactData ex;
  const int d = sol.dim;
  if (sol.space_dim == 2) {
    if (!problem.exact_2d) {
      throw ValidationError("problem '" + problem.name + "' has no exact solution");
    }
    const Profile2D prof = problem.exact_2d(sol.time);
    for (int i = 0; i < sol.nx; ++i) {
      for (int j = 0; j < sol.ny; ++j) {
        const double x0 = sol.x_left + i * sol.hx, y0 = sol.y_left + j * sol.hy;
        ex.averages.push_back(cell_average_2d(prof, x0, x0 + sol.hx, y0, y0 + sol.hy, d, 4));
      }
    }
    if (!sol.fvm) {
      for (int f = 0; f <= sol.nx; ++f) {
        for (int j = 0; j < sol.ny; ++j) {
          ex.xfaces.push_back(
              prof.at(sol.x_left + f * sol.hx, sol.y_left + (j + 0.5) * sol.hy));
        }
      }
      for (int i = 0; i < sol.nx; ++i) {
        for (int g = 0; g <= sol.ny; ++g) {
          ex.yfaces.push_back(
              prof.at(sol.x_left + (i + 0.5) * sol.hx, sol.y_left + g * sol.hy));
        }
      }
    }
    return ex;
  }

  if (problem.exact) {
    const Profile prof = problem.exact(sol.time);
    const int points = prof.breakpoints.empty() ? 8 : 5;
    for (int i = 0; i < sol.nx; ++i) {
      ex.averages.push_back(cell_average(prof, sol.face_x(i), sol.face_x(i + 1), d, points));
    }
    if (!sol.fvm) {
      for (int f = 0; f <= sol.nx; ++f) ex.nodals.push_back(prof.at(sol.face_x(f)));
    }
    return ex;
  }
  if (problem.reference) {
    const Solution& ref = reference_solution(problem, sol.time);
    if (ref.nx % sol.nx != 0) {
      throw ValidationError("mesh of " + std::to_string(sol.nx) +
                            " cells does not divide the reference mesh of " +
                            std::to_string(ref.nx) + " cells");
    }
    const int r = ref.nx / sol.nx;
    for (int i = 0; i < sol.nx; ++i) {
      Vars mean{};
      for (int k = 0; k < r; ++k) {
        for (int c = 0; c < d; ++c) mean[c] += ref.averages[i * r + k][c] / r;
      }
      ex.averages.push_back(mean);
    }
    if (!sol.fvm) {
      for (int f = 0; f <= sol.nx; ++f) ex.nodals.push_back(ref.nodals[f * r]);
    }
    return ex;
  }
  throw ValidationError("problem '" + problem.name + "' has no exact or reference solution");
}

std::vector<QuantityError> l1_errors(const Problem& problem, const Solution& sol) {
  const ExactData ex = exact_data(problem, sol);
  const int d = sol.dim;
  const double cell = sol.space_dim == 2 ? sol.hx * sol.hy : sol.hx;
  std::vector<QuantityError> out;

  auto accumulate = [&](const std::vector<Vars>& num, const std::vector<Vars>& exact,
                        auto&& include, std::vector<double>& sums) {
    for (std::size_t k = 0; k < num.size(); ++k) {
      if (!include(k)) continue;
      const auto a = quantities(num[k], d);
      const auto b = quantities(exact[k], d);
      if (sums.empty()) sums.assign(a.size(), 0.0);
      for (std::size_t q = 0; q < a.size(); ++q) sums[q] += std::abs(a[q].second - b[q].second);
    }
  };
  const auto names = quantities(Vars{1.0, 0.0, 0.0, 1.0}, d);

  std::vector<double> avg;
  accumulate(sol.averages, ex.averages, [](std::size_t) { return true; }, avg);
  for (std::size_t q = 0; q < names.size(); ++q) {
    out.push_back({names[q].first + "_avg", cell * avg[q]});
  }
  if (sol.fvm) return out;

  std::vector<double> nod;
  if (sol.space_dim == 1) {
    const std::size_t distinct = sol.periodic ? sol.nx : sol.nx + 1;
    accumulate(sol.nodals, ex.nodals, [&](std::size_t k) { return k < distinct; }, nod);
  } else {
    // Mean of the x-face and y-face errors; periodic duplicates skipped.
    std::vector<double> xs, ys;
    accumulate(sol.xfaces, ex.xfaces,
               [&](std::size_t k) { return static_cast<int>(k) < sol.nx * sol.ny; }, xs);
    accumulate(sol.yfaces, ex.yfaces,
               [&](std::size_t k) { return static_cast<int>(k % (sol.ny + 1)) < sol.ny; }, ys);
    nod.resize(xs.size());
    for (std::size_t q = 0; q < xs.size(); ++q) nod[q] = 0.5 * (xs[q] + ys[q]);
  }
  for (std::size_t q = 0; q < names.size(); ++q) out.push_back({names[q].first, cell * nod[q]});
  return out;
}

std::vector<ConvergenceRow> ConvergenceReport::series(std::string_view quantity) const {
  std::vector<ConvergenceRow> out;
  for (const auto& r : rows) {
    if (r.quantity == quantity) out.push_back(r);
  }
  return out;
}

const ConvergenceRow& ConvergenceReport::at(std::string_view quantity, int cells) const {
  for (const auto& r : rows) {
    if (r.quantity == quantity && r.cells == cells) return r;
  }
  throw ValidationError("no convergence row for " + std::string(quantity) + " at " +
                        std::to_string(cells) + " cells");
}

ConvergenceReport convergence_study(const Problem& problem, const SchemeSpec& scheme,
                                    const std::vector<int>& meshes, std::optional<double> cfl) {
  if (meshes.empty()) throw ValidationError("mesh list is empty");
  for (std::size_t k = 1; k < meshes.size(); ++k) {
    if (meshes[k] <= meshes[k - 1]) throw ValidationError("meshes must be increasing");
  }
  std::vector<std::vector<QuantityError>> errors;
  for (int n : meshes) {
    RunSettings rs;
    rs.scheme = scheme;
    rs.nx = n;
    rs.cfl = cfl;
    errors.push_back(l1_errors(problem, solve(problem, rs)));
  }
  ConvergenceReport report;
  report.problem = problem.name;
  for (std::size_t q = 0; q < errors.front().size(); ++q) {
    for (std::size_t k = 0; k < meshes.size(); ++k) {
      ConvergenceRow row{scheme.name, errors[k][q].quantity, meshes[k], errors[k][q].error, {}};
      if (k > 0) {
        row.rate = std::log(errors[k - 1][q].error / errors[k][q].error) /
                   std::log(static_cast<double>(meshes[k]) / meshes[k - 1]);
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

void write_convergence_csv(const ConvergenceReport& report, const std::string& path) {
  CsvWriter csv(path, {"problem", "scheme", "quantity", "cells", "l1_error", "rate"});
  for (const auto& r : report.rows) {
    csv << report.problem << r.scheme << r.quantity << r.cells << r.error
        << (r.rate ? format_number(*r.rate) : std::string());
    csv.end_row();
  }
}

Oscillation oscillation_metric(const Problem& problem, const Solution& sol, int component,
                               bool include_nodals) {
  if (sol.space_dim != 1) throw ValidationError("oscillation metric is 1D only");
  if (!problem.exact) {
    throw ValidationError("problem '" + problem.name + "' has no exact solution");
  }
  if (component < 0 || component >= sol.dim) throw ValidationError("component out of range");
  const Profile exact = problem.exact(sol.time);
  const auto [lo, hi] = exact_range(exact, problem.x_left, problem.x_right, component);
  Oscillation osc;
  auto check = [&](double value) {
    osc.overshoot = std::max(osc.overshoot, value - hi);
    osc.undershoot = std::max(osc.undershoot, lo - value);
  };
  for (const Vars& w : sol.averages) check(w[component]);
  if (include_nodals) {
    for (const Vars& w : sol.nodals) check(w[component]);
  }
  return osc;
}

MatchMode parse_match(std::string_view name) {
  if (name == "same-mesh") return MatchMode::same_mesh;
  if (name == "same-dof") return MatchMode::same_dof;
  throw ValidationError("unknown match mode '" + std::string(name) +
                        "'; valid: same-mesh same-dof");
}

std::vector<PerformanceRow> compare_performance(const Problem& problem,
                                                const std::vector<SchemeSpec>& schemes,
                                                const std::vector<int>& meshes,
                                                MatchMode match, int repeats) {
  if (schemes.empty()) throw ValidationError("scheme list is empty");
  if (repeats < 1) throw ValidationError("repeats must be >= 1");
  std::vector<PerformanceRow> rows;
  for (int n : meshes) {
    const long target = dof_for(problem, schemes.front(), n);
    for (std::size_t k = 0; k < schemes.size(); ++k) {
      int m = n;
      if (match == MatchMode::same_dof && k > 0) {
        long best = -1;
        for (int c = 1; c <= 4 * n; ++c) {
          const long diff = std::abs(dof_for(problem, schemes[k], c) - target);
          if (best < 0 || diff < best) {
            best = diff;
            m = c;
          }
        }
      }
      RunSettings rs;
      rs.scheme = schemes[k];
      rs.nx = rs.ny = m;
      std::vector<double> times;
      Solution sol;
      for (int r = 0; r < repeats; ++r) {
        sol = solve(problem, rs);
        times.push_back(sol.seconds);
      }
      PerformanceRow row;
      row.scheme = schemes[k].name;
      row.nx = m;
      row.ny = problem.space_dim == 2 ? m : 1;
      row.dof = degrees_of_freedom(sol);
      row.error = l1_errors(problem, sol).front().error;
      row.steps = sol.steps;
      row.seconds = median(times);
      rows.push_back(row);
    }
  }
  return rows;
}

void write_performance_csv(const std::vector<PerformanceRow>& rows, const std::string& path) {
  CsvWriter csv(path, {"scheme", "mesh", "n_dof", "error_rho", "n_iter", "time_sec"});
  for (const auto& r : rows) {
    const std::string mesh =
        r.ny > 1 ? std::to_string(r.nx) + "x" + std::to_string(r.ny) : std::to_string(r.nx);
    csv << r.scheme << mesh << r.dof << r.error << r.steps << r.seconds;
    csv.end_row();
  }
}

void write_snapshot(const Problem& problem, const Solution& sol, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto names = problem.model->component_names();
  auto header = [&](bool two_d) {
    std::vector<std::string> h = {"x"};
    if (two_d) h.push_back("y");
    h.insert(h.end(), names.begin(), names.end());
    return h;
  };
  auto row = [&](CsvWriter& csv, const Vars& w) {
    for (int c = 0; c < sol.dim; ++c) csv << w[c];
    csv.end_row();
  };
  const std::string base = dir + "/";
  if (sol.space_dim == 1) {
    CsvWriter avg(base + "averages.csv", header(false));
    for (int i = 0; i < sol.nx; ++i) {
      avg << sol.cell_center(i);
      row(avg, sol.averages[i]);
    }
    if (!sol.nodals.empty()) {
      CsvWriter faces(base + "faces.csv", header(false));
      for (std::size_t f = 0; f < sol.nodals.size(); ++f) {
        faces << sol.face_x(static_cast<int>(f));
        row(faces, sol.nodals[f]);
      }
    }
    return;
  }
  CsvWriter avg(base + "averages.csv", header(true));
  for (int i = 0; i < sol.nx; ++i) {
    for (int j = 0; j < sol.ny; ++j) {
      avg << sol.x_left + (i + 0.5) * sol.hx << sol.y_left + (j + 0.5) * sol.hy;
      row(avg, sol.averages[i * sol.ny + j]);
    }
  }
  if (sol.fvm) return;
  CsvWriter xf(base + "xfaces.csv", header(true));
  for (int f = 0; f <= sol.nx; ++f) {
    for (int j = 0; j < sol.ny; ++j) {
      xf << sol.x_left + f * sol.hx << sol.y_left + (j + 0.5) * sol.hy;
      row(xf, sol.xfaces[f * sol.ny + j]);
    }
  }
  CsvWriter yf(base + "yfaces.csv", header(true));
  for (int i = 0; i < sol.nx; ++i) {
    for (int g = 0; g <= sol.ny; ++g) {
      yf << sol.x_left + (i + 0.5) * sol.hx << sol.y_left + g * sol.hy;
      row(yf, sol.yfaces[i * (sol.ny + 1) + g]);
    }
  }
}

}  // namespace fdfv
