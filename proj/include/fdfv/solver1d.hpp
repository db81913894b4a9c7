#pragma once

// One-dimensional FD-FV semi-discretization.
//
// Unknowns are the cell averages ubar_i (i = 0..N-1) and the face values
// u_{f} at x_f = a + f h (f = 0..N). Averages move with the exact flux
// difference; face values move with the characteristic-wise upwinded DDO.

#include <functional>
#include <span>
#include <vector>

#include "fdfv/ddo.hpp"
#include "fdfv/physics.hpp"
#include "fdfv/time_integration.hpp"

namespace fdfv {

struct MeshState {
  int n_cells = 0;
  int dim = 1;
  double x_left = 0.0;
  double h = 0.0;
  double time = 0.0;
  // N * dim cell averages followed by (N + 1) * dim face values.
  std::vector<double> data;

  MeshState() = default;
  MeshState(int n, int d, double x0, double dx)
      : n_cells(n), dim(d), x_left(x0), h(dx), data((2 * n + 1) * d, 0.0) {}

  std::span<double> values() { return data; }
  std::span<const double> values() const { return data; }

  double* average_ptr(int i) { return data.data() + i * dim; }
  const double* average_ptr(int i) const { return data.data() + i * dim; }
  double* nodal_ptr(int f) { return data.data() + (n_cells + f) * dim; }
  const double* nodal_ptr(int f) const { return data.data() + (n_cells + f) * dim; }

  Vars average(int i) const;
  Vars nodal(int f) const;
  void set_average(int i, const Vars& w);
  void set_nodal(int f, const Vars& w);

  double cell_center(int i) const { return x_left + (i + 0.5) * h; }
  double face_x(int f) const { return x_left + f * h; }
};

// A function of x, possibly with jumps or kinks at `breakpoints`. At a
// breakpoint `at` returns the right-hand state.
struct Profile {
  std::function<Vars(double)> at;
  std::vector<double> breakpoints;
};

// Mean of `profile` over [a, b], with `points` Gauss-Legendre points on each
// piece between breakpoints.
Vars cell_average(const Profile& profile, double a, double b, int dim, int points);

struct SideCondition {
  enum class Kind { periodic, dirichlet, neumann };
  Kind kind = Kind::periodic;
  // Dirichlet: boundary state g_d(t). Neumann: boundary gradient g_n(t).
  std::function<Vars(double)> value;
  // Dirichlet only: g_d'(t). A central difference of `value` when empty.
  std::function<Vars(double)> rate;
};

struct BoundarySpec {
  SideCondition left;
  SideCondition right;

  static BoundarySpec periodic();
  static BoundarySpec dirichlet(std::function<Vars(double)> left,
                                std::function<Vars(double)> right);
  bool is_periodic() const { return left.kind == SideCondition::Kind::periodic; }
  // Throws ValidationError if only one side is periodic or a function is
  // missing.
  void check() const;
};

class FdfvSolver1D {
 public:
  FdfvSolver1D(ModelPtr model, UpwindFamily family, BoundarySpec bc, int n_cells,
               double x_left, double x_right);

  const FluxModel& model() const { return *model_; }
  const UpwindFamily& family() const { return family_; }
  const BoundarySpec& boundary() const { return bc_; }
  int n_cells() const { return n_; }
  double h() const { return h_; }
  double x_left() const { return x_left_; }

  // Designed order of the full scheme (DDO order + 1).
  int scheme_order() const { return family_.order + 1; }

  // Face values sampled from `ic`; averages by Gauss-Legendre with
  // ceil(p/2) points when `ic` has no breakpoints, otherwise exact averages
  // piece by piece.
  MeshState initialize(const Profile& ic) const;

  // Time derivative of every unknown. Dirichlet faces move with g_d'(t),
  // Neumann faces get zero rate.
  MeshState rhs(const MeshState& state, double t) const;

  // Dirichlet overwrite, Neumann solve and periodic copy of face N. Applied
  // at every time level.
  void apply_bc(MeshState& state, double t) const;
  // The part of apply_bc applied to Runge-Kutta stage values: Neumann solve
  // and periodic copy. Dirichlet faces keep their integrated value.
  void apply_stage_bc(MeshState& state, double t) const;

  // max over faces of the spectral radius of J.
  double max_wave_speed(const MeshState& state) const;

  // Operator used at `face` for characteristics moving right (positive) or
  // left. Null for faces fixed by boundary conditions.
  const DDOStencil* stencil_at(int face, bool positive) const;

 private:
  bool face_is_fixed(int face) const;
  const DDOStencil* choose(int face, const DDOStencil& preferred) const;
  void derivative(const DDOStencil& s, const MeshState& state, int face,
                  double* out) const;
  void neumann_face(MeshState& state, int face, bool left, double t) const;

  ModelPtr model_;
  UpwindFamily family_;
  BoundarySpec bc_;
  int n_;
  double x_left_;
  double h_;
  int d_;
  std::vector<const DDOStencil*> positive_;
  std::vector<const DDOStencil*> negative_;
};

struct RunOptions {
  double final_time = 0.0;
  double cfl = 0.5;
  double dt = 0.0;  // fixed step when positive; otherwise from cfl
  long max_steps = 100'000'000;
};

template <class State>
struct RunResult {
  State state;
  long steps = 0;
};

// Steps until final_time, landing on it with a clipped last step. Failures
// during the run surface as BlowUpError carrying step and time.
RunResult<MeshState> run(const FdfvSolver1D& solver, const RKScheme& scheme,
                         MeshState initial, const RunOptions& options);

namespace detail {

// Shared time loop. `constrain` is applied to stage values, `level` to the
// state at every time level, and `inverse_dt_unit(state)` returns the CFL
// wave speed divided by the relevant cell size.
template <class State, class Rhs, class Constrain, class Level, class Rate>
RunResult<State> time_loop(const RKScheme& scheme, State state, const RunOptions& options,
                           Rhs&& rhs, Constrain&& constrain, Level&& level,
                           Rate&& inverse_dt_unit) {
  if (!(options.final_time >= 0.0)) throw ValidationError("final time must be >= 0");
  if (!(options.dt > 0.0) && !(options.cfl > 0.0)) {
    throw ValidationError("either cfl or dt must be positive");
  }
  RunResult<State> result{std::move(state), 0};
  State& s = result.state;
  const double t_end = options.final_time;
  double t = s.time;
  try {
    level(s, t);
    while (t < t_end) {
      if (result.steps >= options.max_steps) {
        throw BlowUpError("step limit reached", -1, result.steps, t);
      }
      double dt = options.dt;
      if (!(dt > 0.0)) {
        const double rate = inverse_dt_unit(s);
        if (!(rate > 0.0) || !std::isfinite(rate)) {
          throw BlowUpError("wave speed is zero or non-finite", -1, result.steps, t);
        }
        dt = options.cfl / rate;
      }
      if (t + dt >= t_end) dt = t_end - t;
      s = step(scheme, rhs, s, t, dt, constrain);
      ++result.steps;
      t = (dt == t_end - t) ? t_end : t + dt;
      s.time = t;
      level(s, t);
    }
  } catch (const BlowUpError& e) {
    throw BlowUpError(std::string(e.what()) + " (step " + std::to_string(result.steps + 1) +
                          ", t = " + std::to_string(t) + ")",
                      e.stage(), result.steps + 1, t);
  } catch (const StateError& e) {
    throw BlowUpError(std::string(e.what()) + " (step " + std::to_string(result.steps + 1) +
                          ", t = " + std::to_string(t) + ")",
                      -1, result.steps + 1, t);
  }
  return result;
}

}  // namespace detail

}  // namespace fdfv
