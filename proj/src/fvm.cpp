#include "fdfv/fvm.hpp"

#include <algorithm>
#include <cmath>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

int wrap(int i, int n) {
  if (i >= 0 && i < n) return i;
  i %= n;
  return i < 0 ? i + n : i;
}

Vars load(const double* p, int d) {
  Vars w{};
  std::copy_n(p, d, w.begin());
  return w;
}

// Limited slopes of every entry of `v`, given its neighbours.
Vars slopes(const Vars& prev, const Vars& v, const Vars& next, int d, Limiter limiter) {
  Vars s{};
  for (int k = 0; k < d; ++k) s[k] = limited_slope(v[k] - prev[k], next[k] - v[k], limiter);
  return s;
}

// Conserved states on both sides of an interface from the reconstruction
// variables and slopes of its two cells.
void interface_states(const FluxModel& model, bool primitive, const Vars& vl, const Vars& sl,
                      const Vars& vr, const Vars& sr, int d, Vars& wl, Vars& wr) {
  Vars left{}, right{};
  for (int k = 0; k < d; ++k) {
    left[k] = vl[k] + 0.5 * sl[k];
    right[k] = vr[k] - 0.5 * sr[k];
  }
  wl = primitive ? model.from_reconstruction(left) : left;
  wr = primitive ? model.from_reconstruction(right) : right;
}

Vars reconstruction(const FluxModel& model, const FvmOptions& options, const Vars& w) {
  return options.primitive_slopes ? model.to_reconstruction(w) : w;
}

}  // namespace

Limiter parse_limiter(std::string_view name) {
  if (name == "none") return Limiter::none;
  if (name == "van-albada") return Limiter::van_albada;
  throw ValidationError("unknown limiter '" + std::string(name) + "'; valid: none van-albada");
}

double limited_slope(double a, double b, Limiter limiter) {
  if (limiter == Limiter::none) return 0.5 * (a + b);
  if (a * b <= 0.0) return 0.0;
  return a * b * (a + b) / (a * a + b * b);
}

Vars roe_flux(const FluxModel& model, const Vars& wl, const Vars& wr, Axis axis,
              const FvmOptions& options) {
  const int d = model.state_dim();
  const Vars fl = model.flux(wl, axis);
  const Vars fr = model.flux(wr, axis);
  const Eigensystem e = model.roe_eigen(wl, wr, axis);
  double delta = 0.0;
  if (options.entropy_fix) {
    double radius = 0.0;
    for (int m = 0; m < d; ++m) radius = std::max(radius, std::abs(e.values[m]));
    delta = options.entropy_delta * radius;
  }
  Vars out{};
  for (int k = 0; k < d; ++k) out[k] = 0.5 * (fl[k] + fr[k]);
  for (int m = 0; m < d; ++m) {
    double speed = std::abs(e.values[m]);
    if (speed < delta) speed = (speed * speed + delta * delta) / (2.0 * delta);
    double jump = 0.0;
    for (int k = 0; k < d; ++k) jump += e.left[m][k] * (wr[k] - wl[k]);
    const double s = 0.5 * speed * jump;
    for (int k = 0; k < d; ++k) out[k] -= e.right[k][m] * s;
  }
  return out;
}

Vars FvState::average(int i) const { return load(data.data() + static_cast<std::size_t>(i) * dim, dim); }
void FvState::set_average(int i, const Vars& w) {
  std::copy_n(w.begin(), dim, data.data() + static_cast<std::size_t>(i) * dim);
}
Vars FvState2D::average(int i, int j) const { return load(average_ptr(i, j), dim); }

FvmSolver1D::FvmSolver1D(ModelPtr model, BoundarySpec bc, int n_cells, double x_left,
                         double x_right, FvmOptions options)
    : model_(std::move(model)),
      bc_(std::move(bc)),
      n_(n_cells),
      x_left_(x_left),
      h_((x_right - x_left) / n_cells),
      d_(model_->state_dim()),
      options_(options) {
  if (n_cells < 2) throw ValidationError("need at least 2 cells");
  if (!(h_ > 0.0)) throw ValidationError("domain must have positive length");
  bc_.check();
  if (bc_.left.kind == SideCondition::Kind::neumann ||
      bc_.right.kind == SideCondition::Kind::neumann) {
    throw ValidationError("the finite-volume baseline supports periodic and Dirichlet boundaries only");
  }
}

FvState FvmSolver1D::initialize(const Profile& ic, int points) const {
  FvState s(n_, d_, x_left_, h_);
  for (int i = 0; i < n_; ++i) {
    const double a = x_left_ + i * h_;
    s.set_average(i, cell_average(ic, a, a + h_, d_, points));
  }
  return s;
}

FvState FvmSolver1D::rhs(const FvState& s, double t) const {
  // Reconstruction variables with two ghost cells per side.
  std::vector<Vars> v(n_ + 4);
  for (int i = 0; i < n_; ++i) v[i + 2] = reconstruction(*model_, options_, s.average(i));
  for (int g = 0; g < 2; ++g) {
    if (bc_.is_periodic()) {
      v[g] = v[wrap(g - 2, n_) + 2];
      v[n_ + 2 + g] = v[g + 2];
    } else {
      v[g] = reconstruction(*model_, options_, bc_.left.value(t));
      v[n_ + 2 + g] = reconstruction(*model_, options_, bc_.right.value(t));
    }
  }
  // Slopes of the real cells and the innermost ghosts.
  std::vector<Vars> slope(n_ + 4);
  for (int e = 1; e <= n_ + 2; ++e) slope[e] = slopes(v[e - 1], v[e], v[e + 1], d_, options_.limiter);
  std::vector<Vars> flux(n_ + 1);
  Vars wl, wr;
  for (int k = 0; k <= n_; ++k) {
    // Interface k sits between extended cells k + 1 and k + 2.
    interface_states(*model_, options_.primitive_slopes, v[k + 1], slope[k + 1], v[k + 2], slope[k + 2], d_, wl, wr);
    flux[k] = roe_flux(*model_, wl, wr, Axis::x, options_);
  }
  FvState r(n_, d_, x_left_, h_);
  r.time = s.time;
  for (int i = 0; i < n_; ++i) {
    double* out = r.data.data() + static_cast<std::size_t>(i) * d_;
    for (int k = 0; k < d_; ++k) out[k] = -(flux[i + 1][k] - flux[i][k]) / h_;
  }
  return r;
}

double FvmSolver1D::max_wave_speed(const FvState& s) const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) m = std::max(m, model_->max_speed(s.average(i)));
  return m;
}

FvmSolver2D::FvmSolver2D(ModelPtr model, int nx, int ny, double x_left, double x_right,
                         double y_left, double y_right, FvmOptions options)
    : model_(std::move(model)),
      nx_(nx),
      ny_(ny),
      d_(model_->state_dim()),
      x_left_(x_left),
      y_left_(y_left),
      hx_((x_right - x_left) / nx),
      hy_((y_right - y_left) / ny),
      options_(options) {
  if (model_->space_dim() != 2) {
    throw ValidationError("model '" + model_->name() + "' is not two-dimensional");
  }
  if (nx < 2 || ny < 2) throw ValidationError("need at least 2 cells per direction");
  if (!(hx_ > 0.0) || !(hy_ > 0.0)) throw ValidationError("domain must have positive size");
}

FvState2D FvmSolver2D::initialize(const Profile2D& ic, int points) const {
  FvState2D s(nx_, ny_, d_, x_left_, y_left_, hx_, hy_);
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const double x0 = x_left_ + i * hx_, y0 = y_left_ + j * hy_;
      const Vars w = cell_average_2d(ic, x0, x0 + hx_, y0, y0 + hy_, d_, points);
      std::copy_n(w.begin(), d_, s.average_ptr(i, j));
    }
  return s;
}

FvState2D FvmSolver2D::rhs(const FvState2D& s, double) const {
  std::vector<Vars> v(static_cast<std::size_t>(nx_) * ny_);
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) v[i * ny_ + j] = reconstruction(*model_, options_, s.average(i, j));
  auto idx = [&](int i, int j) { return static_cast<std::size_t>(wrap(i, nx_) * ny_ + wrap(j, ny_)); };
  std::vector<Vars> sx(v.size()), sy(v.size());
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const Vars& c = v[idx(i, j)];
      sx[idx(i, j)] = slopes(v[idx(i - 1, j)], c, v[idx(i + 1, j)], d_, options_.limiter);
      sy[idx(i, j)] = slopes(v[idx(i, j - 1)], c, v[idx(i, j + 1)], d_, options_.limiter);
    }

  FvState2D r(nx_, ny_, d_, x_left_, y_left_, hx_, hy_);
  r.time = s.time;
  Vars wl, wr;
  // x-interfaces: interface f lies between cells f - 1 and f.
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const std::size_t a = idx(i - 1, j), b = idx(i, j);
      interface_states(*model_, options_.primitive_slopes, v[a], sx[a], v[b], sx[b], d_, wl, wr);
      const Vars F = roe_flux(*model_, wl, wr, Axis::x, options_);
      double* left = r.average_ptr(wrap(i - 1, nx_), j);
      double* right = r.average_ptr(i, j);
      for (int k = 0; k < d_; ++k) {
        left[k] -= F[k] / hx_;
        right[k] += F[k] / hx_;
      }
    }
  for (int i = 0; i < nx_; ++i)
    for (int g = 0; g < ny_; ++g) {
      const std::size_t a = idx(i, g - 1), b = idx(i, g);
      interface_states(*model_, options_.primitive_slopes, v[a], sy[a], v[b], sy[b], d_, wl, wr);
      const Vars G = roe_flux(*model_, wl, wr, Axis::y, options_);
      double* below = r.average_ptr(i, wrap(g - 1, ny_));
      double* above = r.average_ptr(i, g);
      for (int k = 0; k < d_; ++k) {
        below[k] -= G[k] / hy_;
        above[k] += G[k] / hy_;
      }
    }
  return r;
}

double FvmSolver2D::max_wave_speed(const FvState2D& s) const {
  double m = 0.0;
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const Vars w = s.average(i, j);
      m = std::max({m, model_->max_speed(w, Axis::x), model_->max_speed(w, Axis::y)});
    }
  return m;
}

RunResult<FvState> run_fvm(const FvmSolver1D& solver, FvState initial,
                           const RunOptions& options) {
  auto rhs = [&](const FvState& s, double t) { return solver.rhs(s, t); };
  auto constrain = [](FvState&, double) {};
  auto rate = [&](const FvState& s) { return solver.max_wave_speed(s) / solver.h(); };
  return detail::time_loop(rk_scheme("rk2"), std::move(initial), options, rhs, constrain, constrain, rate);
}

RunResult<FvState2D> run_fvm_2d(const FvmSolver2D& solver, FvState2D initial,
                                const RunOptions& options) {
  const double h = std::min(initial.hx, initial.hy);
  auto rhs = [&](const FvState2D& s, double t) { return solver.rhs(s, t); };
  auto constrain = [](FvState2D&, double) {};
  auto rate = [&](const FvState2D& s) { return solver.max_wave_speed(s) / h; };
  return detail::time_loop(rk_scheme("rk2"), std::move(initial), options, rhs, constrain, constrain, rate);
}

}  // namespace fdfv
