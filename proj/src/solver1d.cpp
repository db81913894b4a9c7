#include "fdfv/solver1d.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

Vars boundary_rate(const SideCondition& c, double t) {
  if (c.rate) return c.rate(t);
  const double d = 1e-4 * std::max(1.0, std::abs(t));
  const Vars a = c.value(t + d), b = c.value(t - d);
  const Vars a2 = c.value(t + 2 * d), b2 = c.value(t - 2 * d);
  Vars out{};
  for (int k = 0; k < kMaxVars; ++k) out[k] = (8.0 * (a[k] - b[k]) - (a2[k] - b2[k])) / (12.0 * d);
  return out;
}

template <int N>
Vars gauss_mean(const Profile& p, double a, double b, int dim) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  Vars sum{};
  auto add = [&](double xi, double wi) {
    const Vars v = p.at(mid + half * xi);
    for (int k = 0; k < dim; ++k) sum[k] += wi * v[k];
  };
  // The rule stores non-negative abscissae only.
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      add(0.0, w[i]);
    } else {
      add(x[i], w[i]);
      add(-x[i], w[i]);
    }
  }
  for (int k = 0; k < dim; ++k) sum[k] *= 0.5;
  return sum;
}

Vars gauss_mean(const Profile& p, double a, double b, int dim, int points) {
  switch (points) {
    case 1: return gauss_mean<1>(p, a, b, dim);
    case 2: return gauss_mean<2>(p, a, b, dim);
    case 3: return gauss_mean<3>(p, a, b, dim);
    case 4: return gauss_mean<4>(p, a, b, dim);
    case 5: return gauss_mean<5>(p, a, b, dim);
    case 6: return gauss_mean<6>(p, a, b, dim);
    case 8: return gauss_mean<8>(p, a, b, dim);
    case 10: return gauss_mean<10>(p, a, b, dim);
    case 16: return gauss_mean<16>(p, a, b, dim);
    default:
      throw ValidationError("unsupported Gauss point count " + std::to_string(points));
  }
}

int wrap(int i, int n) {
  if (i >= 0 && i < n) return i;
  i %= n;
  return i < 0 ? i + n : i;
}

}  // namespace

Vars MeshState::average(int i) const {
  Vars w{};
  std::copy_n(average_ptr(i), dim, w.begin());
  return w;
}

Vars MeshState::nodal(int f) const {
  Vars w{};
  std::copy_n(nodal_ptr(f), dim, w.begin());
  return w;
}

void MeshState::set_average(int i, const Vars& w) { std::copy_n(w.begin(), dim, average_ptr(i)); }
void MeshState::set_nodal(int f, const Vars& w) { std::copy_n(w.begin(), dim, nodal_ptr(f)); }

Vars cell_average(const Profile& profile, double a, double b, int dim, int points) {
  std::vector<double> cuts{a};
  for (double x : profile.breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);
  Vars total{};
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double lo = cuts[k], hi = cuts[k + 1];
    if (hi <= lo) continue;
    // Gauss nodes lie strictly inside the piece.
    const Vars m = gauss_mean(profile, lo, hi, dim, points);
    for (int c = 0; c < dim; ++c) total[c] += m[c] * (hi - lo);
  }
  for (int c = 0; c < dim; ++c) total[c] /= (b - a);
  return total;
}

BoundarySpec BoundarySpec::periodic() { return {}; }

BoundarySpec BoundarySpec::dirichlet(std::function<Vars(double)> left,
                                     std::function<Vars(double)> right) {
  BoundarySpec bc;
  bc.left = {SideCondition::Kind::dirichlet, std::move(left), {}};
  bc.right = {SideCondition::Kind::dirichlet, std::move(right), {}};
  return bc;
}

void BoundarySpec::check() const {
  const bool lp = left.kind == SideCondition::Kind::periodic;
  const bool rp = right.kind == SideCondition::Kind::periodic;
  if (lp != rp) throw ValidationError("periodic boundary must be used on both sides");
  if (!lp && (!left.value || !right.value)) {
    throw ValidationError("boundary condition is missing its data function");
  }
}

FdfvSolver1D::FdfvSolver1D(ModelPtr model, UpwindFamily family, BoundarySpec bc,
                           int n_cells, double x_left, double x_right)
    : model_(std::move(model)),
      family_(family),
      bc_(std::move(bc)),
      n_(n_cells),
      x_left_(x_left),
      h_((x_right - x_left) / n_cells),
      d_(model_->state_dim()) {
  if (n_cells < 2) throw ValidationError("need at least 2 cells");
  if (!(x_right > x_left)) throw ValidationError("domain must have positive length");
  bc_.check();
  positive_.assign(n_ + 1, nullptr);
  negative_.assign(n_ + 1, nullptr);
  for (int f = 0; f <= n_; ++f) {
    if (face_is_fixed(f)) continue;
    if (bc_.is_periodic()) {
      positive_[f] = family_.positive;
      negative_[f] = family_.negative;
    } else {
      positive_[f] = choose(f, *family_.positive);
      negative_[f] = choose(f, *family_.negative);
    }
  }
}

bool FdfvSolver1D::face_is_fixed(int face) const {
  if (bc_.is_periodic()) return face == n_;
  return face == 0 || face == n_;
}

const DDOStencil* FdfvSolver1D::choose(int face, const DDOStencil& preferred) const {
  auto fits = [&](const DDOStencil& s) {
    if (!s.alpha().empty()) {
      if (face + s.min_average_offset() - 1 < 0) return false;
      if (face + s.max_average_offset() - 1 > n_ - 1) return false;
    }
    if (!s.beta().empty()) {
      if (face + s.min_nodal_offset() < 0) return false;
      if (face + s.max_nodal_offset() > n_) return false;
    }
    return true;
  };
  for (const DDOStencil* s : closure_candidates(preferred)) {
    if (fits(*s)) return s;
  }
  throw ValidationError("mesh of " + std::to_string(n_) +
                        " cells is too small for operator '" + preferred.name() + "'");
}

const DDOStencil* FdfvSolver1D::stencil_at(int face, bool positive) const {
  if (face < 0 || face > n_) throw ValidationError("face index out of range");
  return positive ? positive_[face] : negative_[face];
}

MeshState FdfvSolver1D::initialize(const Profile& ic) const {
  MeshState s(n_, d_, x_left_, h_);
  const int points = ic.breakpoints.empty() ? (scheme_order() + 1) / 2 : 10;
  for (int i = 0; i < n_; ++i) {
    s.set_average(i, cell_average(ic, s.face_x(i), s.face_x(i + 1), d_, points));
  }
  for (int f = 0; f <= n_; ++f) s.set_nodal(f, ic.at(s.face_x(f)));
  if (bc_.is_periodic()) s.set_nodal(n_, s.nodal(0));
  return s;
}

void FdfvSolver1D::derivative(const DDOStencil& st, const MeshState& s, int face,
                              double* out) const {
  std::fill(out, out + d_, 0.0);
  const bool periodic = bc_.is_periodic();
  for (const auto& t : st.average_terms()) {
    const int c = periodic ? wrap(face + t.offset - 1, n_) : face + t.offset - 1;
    const double* w = s.average_ptr(c);
    for (int k = 0; k < d_; ++k) out[k] += t.coefficient * w[k];
  }
  for (const auto& t : st.nodal_terms()) {
    const int f = periodic ? wrap(face + t.offset, n_) : face + t.offset;
    const double* w = s.nodal_ptr(f);
    for (int k = 0; k < d_; ++k) out[k] += t.coefficient * w[k];
  }
  for (int k = 0; k < d_; ++k) out[k] /= h_;
}

MeshState FdfvSolver1D::rhs(const MeshState& s, double t) const {
  MeshState r(n_, d_, x_left_, h_);
  r.time = s.time;

  std::vector<Vars> flux(n_ + 1);
  for (int f = 0; f <= n_; ++f) flux[f] = model_->flux(s.nodal(f));
  for (int i = 0; i < n_; ++i) {
    double* out = r.average_ptr(i);
    for (int k = 0; k < d_; ++k) out[k] = -(flux[i + 1][k] - flux[i][k]) / h_;
  }

  double dpos[kMaxVars], dneg[kMaxVars];
  for (int f = 0; f <= n_; ++f) {
    if (face_is_fixed(f)) continue;
    const Eigensystem e = model_->eigen(s.nodal(f));
    bool need_neg = false, need_pos = false;
    for (int m = 0; m < d_; ++m) (e.values[m] >= 0.0 ? need_pos : need_neg) = true;
    if (need_pos) derivative(*positive_[f], s, f, dpos);
    if (need_neg) derivative(*negative_[f], s, f, dneg);
    double* out = r.nodal_ptr(f);
    for (int m = 0; m < d_; ++m) {
      const double lambda = e.values[m];
      const double* dw = lambda >= 0.0 ? dpos : dneg;
      double domega = 0.0;
      for (int k = 0; k < d_; ++k) domega += e.left[m][k] * dw[k];
      const double scale = -lambda * domega;
      for (int k = 0; k < d_; ++k) out[k] += e.right[k][m] * scale;
    }
  }
  if (bc_.is_periodic()) {
    std::copy_n(r.nodal_ptr(0), d_, r.nodal_ptr(n_));
  } else {
    if (bc_.left.kind == SideCondition::Kind::dirichlet) r.set_nodal(0, boundary_rate(bc_.left, t));
    if (bc_.right.kind == SideCondition::Kind::dirichlet) {
      r.set_nodal(n_, boundary_rate(bc_.right, t));
    }
  }
  return r;
}

void FdfvSolver1D::neumann_face(MeshState& s, int face, bool left, double t) const {
  const DDOStencil& st = one_sided(family_.order, left);
  const Rational b_self = st.beta_at(0);
  if (b_self == Rational(0)) {
    throw IllPosedClosureError("operator '" + st.name() +
                               "' does not involve the boundary value");
  }
  const Vars g = (left ? bc_.left : bc_.right).value(t);
  double* target = s.nodal_ptr(face);
  std::fill(target, target + d_, 0.0);
  double rest[kMaxVars];
  derivative(st, s, face, rest);
  const double b = detail::to_double(b_self);
  for (int k = 0; k < d_; ++k) target[k] = (h_ * g[k] - h_ * rest[k]) / b;
}

void FdfvSolver1D::apply_stage_bc(MeshState& s, double t) const {
  if (bc_.is_periodic()) {
    std::copy_n(s.nodal_ptr(0), d_, s.nodal_ptr(n_));
    return;
  }
  if (bc_.left.kind == SideCondition::Kind::neumann) neumann_face(s, 0, true, t);
  if (bc_.right.kind == SideCondition::Kind::neumann) neumann_face(s, n_, false, t);
}

void FdfvSolver1D::apply_bc(MeshState& s, double t) const {
  if (bc_.is_periodic()) {
    std::copy_n(s.nodal_ptr(0), d_, s.nodal_ptr(n_));
    return;
  }
  auto side = [&](const SideCondition& c, int face, bool left) {
    if (c.kind == SideCondition::Kind::dirichlet) {
      s.set_nodal(face, c.value(t));
    } else {
      neumann_face(s, face, left, t);
    }
  };
  side(bc_.left, 0, true);
  side(bc_.right, n_, false);
}

double FdfvSolver1D::max_wave_speed(const MeshState& s) const {
  double m = 0.0;
  for (int f = 0; f <= n_; ++f) m = std::max(m, model_->max_speed(s.nodal(f)));
  return m;
}

RunResult<MeshState> run(const FdfvSolver1D& solver, const RKScheme& scheme,
                         MeshState initial, const RunOptions& options) {
  auto rhs = [&](const MeshState& s, double t) { return solver.rhs(s, t); };
  auto constrain = [&](MeshState& s, double t) { solver.apply_stage_bc(s, t); };
  auto level = [&](MeshState& s, double t) { solver.apply_bc(s, t); };
  auto rate = [&](const MeshState& s) { return solver.max_wave_speed(s) / solver.h(); };
  return detail::time_loop(scheme, std::move(initial), options, rhs, constrain, level, rate);
}

}  // namespace fdfv
