#pragma once

// Second-order finite-volume baseline: MUSCL reconstruction, Roe flux and
// RK2 (Heun) time stepping, in 1D and dimension by dimension in 2D.

#include <span>
#include <string_view>
#include <vector>

#include "fdfv/physics.hpp"
#include "fdfv/solver1d.hpp"
#include "fdfv/solver2d.hpp"

namespace fdfv {

enum class Limiter { none, van_albada };

// "none" or "van-albada".
Limiter parse_limiter(std::string_view name);

struct FvmOptions {
  Limiter limiter = Limiter::none;
  // Reconstruct and limit primitive instead of conserved variables.
  bool primitive_slopes = false;
  // Harten's fix: |lambda| < delta * (|u| + a) is smoothed. Off by default.
  bool entropy_fix = false;
  double entropy_delta = 0.1;
};

// Limited slope from the backward difference a and the forward difference b.
double limited_slope(double a, double b, Limiter limiter);

// Roe numerical flux between left and right conserved states.
Vars roe_flux(const FluxModel& model, const Vars& wl, const Vars& wr, Axis axis,
              const FvmOptions& options = {});

struct FvState {
  int n_cells = 0;
  int dim = 1;
  double x_left = 0.0;
  double h = 0.0;
  double time = 0.0;
  std::vector<double> data;  // N * dim cell averages

  FvState() = default;
  FvState(int n, int d, double x0, double dx)
      : n_cells(n), dim(d), x_left(x0), h(dx), data(static_cast<std::size_t>(n) * d, 0.0) {}

  std::span<double> values() { return data; }
  std::span<const double> values() const { return data; }
  Vars average(int i) const;
  void set_average(int i, const Vars& w);
  double cell_center(int i) const { return x_left + (i + 0.5) * h; }
};

class FvmSolver1D {
 public:
  // Periodic or Dirichlet boundaries (ghost cells hold g_d(t)).
  FvmSolver1D(ModelPtr model, BoundarySpec bc, int n_cells, double x_left, double x_right,
              FvmOptions options = {});

  const FluxModel& model() const { return *model_; }
  double h() const { return h_; }

  // Averages of `ic`: `points` Gauss points per smooth piece.
  FvState initialize(const Profile& ic, int points = 10) const;
  FvState rhs(const FvState& state, double t) const;
  double max_wave_speed(const FvState& state) const;

 private:
  ModelPtr model_;
  BoundarySpec bc_;
  int n_;
  double x_left_, h_;
  int d_;
  FvmOptions options_;
};

struct FvState2D {
  int nx = 0, ny = 0, dim = 1;
  double x_left = 0.0, y_left = 0.0, hx = 0.0, hy = 0.0, time = 0.0;
  std::vector<double> data;  // [nx][ny] cell averages

  FvState2D() = default;
  FvState2D(int nx_, int ny_, int d, double x0, double y0, double dx, double dy)
      : nx(nx_), ny(ny_), dim(d), x_left(x0), y_left(y0), hx(dx), hy(dy),
        data(static_cast<std::size_t>(nx_) * ny_ * d, 0.0) {}

  std::span<double> values() { return data; }
  std::span<const double> values() const { return data; }
  double* average_ptr(int i, int j) { return data.data() + static_cast<std::size_t>(i * ny + j) * dim; }
  const double* average_ptr(int i, int j) const {
    return data.data() + static_cast<std::size_t>(i * ny + j) * dim;
  }
  Vars average(int i, int j) const;
};

// Periodic 2D solver.
class FvmSolver2D {
 public:
  FvmSolver2D(ModelPtr model, int nx, int ny, double x_left, double x_right,
              double y_left, double y_right, FvmOptions options = {});

  FvState2D initialize(const Profile2D& ic, int points = 1) const;
  FvState2D rhs(const FvState2D& state, double t) const;
  double max_wave_speed(const FvState2D& state) const;

 private:
  ModelPtr model_;
  int nx_, ny_, d_;
  double x_left_, y_left_, hx_, hy_;
  FvmOptions options_;
};

RunResult<FvState> run_fvm(const FvmSolver1D& solver, FvState initial,
                           const RunOptions& options);
RunResult<FvState2D> run_fvm_2d(const FvmSolver2D& solver, FvState2D initial,
                                const RunOptions& options);

}  // namespace fdfv
