#include "fdfv/solver2d.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

int wrap(int i, int n) {
  if (i >= 0 && i < n) return i;
  i %= n;
  return i < 0 ? i + n : i;
}

template <int N>
Vars gauss_mean_2d(const Profile2D& p, double x0, double x1, double y0, double y1,
                   int dim) {
  using Rule = boost::math::quadrature::gauss<double, N>;
  std::vector<double> nodes, weights;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  for (std::size_t i = 0; i < x.size(); ++i) {
    nodes.push_back(x[i]);
    weights.push_back(w[i]);
    if (x[i] != 0.0) {
      nodes.push_back(-x[i]);
      weights.push_back(w[i]);
    }
  }
  const double mx = 0.5 * (x0 + x1), hx = 0.5 * (x1 - x0);
  const double my = 0.5 * (y0 + y1), hy = 0.5 * (y1 - y0);
  Vars sum{};
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      const Vars v = p.at(mx + hx * nodes[a], my + hy * nodes[b]);
      const double wt = weights[a] * weights[b];
      for (int k = 0; k < dim; ++k) sum[k] += wt * v[k];
    }
  for (int k = 0; k < dim; ++k) sum[k] *= 0.25;
  return sum;
}

Vars load(const double* p, int d) {
  Vars w{};
  std::copy_n(p, d, w.begin());
  return w;
}

}  // namespace

MeshState2D::MeshState2D(int nx_, int ny_, int d, double x0, double y0, double dx,
                         double dy)
    : nx(nx_), ny(ny_), dim(d), x_left(x0), y_left(y0), hx(dx), hy(dy),
      data(static_cast<std::size_t>(nx_ * ny_ + (nx_ + 1) * ny_ + nx_ * (ny_ + 1)) * d,
           0.0) {}

Vars MeshState2D::average(int i, int j) const { return load(average_ptr(i, j), dim); }
Vars MeshState2D::xface(int f, int j) const { return load(xface_ptr(f, j), dim); }
Vars MeshState2D::yface(int i, int g) const { return load(yface_ptr(i, g), dim); }

Vars cell_average_2d(const Profile2D& profile, double x0, double x1, double y0,
                     double y1, int dim, int points) {
  switch (points) {
    case 1: return gauss_mean_2d<1>(profile, x0, x1, y0, y1, dim);
    case 2: return gauss_mean_2d<2>(profile, x0, x1, y0, y1, dim);
    case 3: return gauss_mean_2d<3>(profile, x0, x1, y0, y1, dim);
    case 4: return gauss_mean_2d<4>(profile, x0, x1, y0, y1, dim);
    case 5: return gauss_mean_2d<5>(profile, x0, x1, y0, y1, dim);
    case 6: return gauss_mean_2d<6>(profile, x0, x1, y0, y1, dim);
    default:
      throw ValidationError("unsupported Gauss point count " + std::to_string(points));
  }
}

FdfvSolver2D::FdfvSolver2D(ModelPtr model, UpwindFamily family, int nx, int ny,
                           double x_left, double x_right, double y_left, double y_right)
    : model_(std::move(model)),
      family_(family),
      nx_(nx),
      ny_(ny),
      d_(model_->state_dim()),
      x_left_(x_left),
      y_left_(y_left),
      hx_((x_right - x_left) / nx),
      hy_((y_right - y_left) / ny) {
  if (family_.order != 1) {
    throw ValidationError("2D FD-FV supports only first-order operators; '" +
                          family_.name + "' is unsupported");
  }
  if (model_->space_dim() != 2) {
    throw ValidationError("model '" + model_->name() + "' is not two-dimensional");
  }
  if (nx < 2 || ny < 2) throw ValidationError("need at least 2 cells per direction");
  if (!(hx_ > 0.0) || !(hy_ > 0.0)) throw ValidationError("domain must have positive size");

  auto merge = [&](int shift, bool nodal, double c, bool positive) {
    auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term& t) {
      return t.shift == shift && t.nodal == nodal;
    });
    if (it == terms_.end()) it = terms_.insert(terms_.end(), Term{shift, nodal, 0.0, 0.0});
    (positive ? it->pos : it->neg) = c;
  };
  for (const bool positive : {true, false}) {
    const DDOStencil& st = positive ? *family_.positive : *family_.negative;
    for (const auto& t : st.average_terms()) merge(t.offset - 1, false, t.coefficient, positive);
    for (const auto& t : st.nodal_terms()) merge(t.offset, true, t.coefficient, positive);
  }
}

MeshState2D FdfvSolver2D::initialize(const Profile2D& ic) const {
  MeshState2D s(nx_, ny_, d_, x_left_, y_left_, hx_, hy_);
  const int points = (scheme_order() + 1) / 2;
  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const Vars w = cell_average_2d(ic, s.x_face(i), s.x_face(i + 1), s.y_face(j),
                                     s.y_face(j + 1), d_, points);
      std::copy_n(w.begin(), d_, s.average_ptr(i, j));
    }
  for (int f = 0; f <= nx_; ++f)
    for (int j = 0; j < ny_; ++j) {
      const Vars w = ic.at(s.x_face(f), s.y_center(j));
      std::copy_n(w.begin(), d_, s.xface_ptr(f, j));
    }
  for (int i = 0; i < nx_; ++i)
    for (int g = 0; g <= ny_; ++g) {
      const Vars w = ic.at(s.x_center(i), s.y_face(g));
      std::copy_n(w.begin(), d_, s.yface_ptr(i, g));
    }
  apply_bc(s, 0.0);
  return s;
}

void FdfvSolver2D::apply_bc(MeshState2D& s, double) const {
  for (int j = 0; j < ny_; ++j) std::copy_n(s.xface_ptr(0, j), d_, s.xface_ptr(nx_, j));
  for (int i = 0; i < nx_; ++i) std::copy_n(s.yface_ptr(i, 0), d_, s.yface_ptr(i, ny_));
}

MeshState2D FdfvSolver2D::rhs(const MeshState2D& s, double) const {
  MeshState2D r(nx_, ny_, d_, x_left_, y_left_, hx_, hy_);
  r.time = s.time;
  const int d = d_;
  const double rx = 1.0 / hx_, ry = 1.0 / hy_;

  // Physical fluxes at the distinct faces.
  std::vector<Vars> fx(static_cast<std::size_t>(nx_) * ny_), gy(fx.size());
  for (int f = 0; f < nx_; ++f)
    for (int j = 0; j < ny_; ++j) fx[f * ny_ + j] = model_->flux(s.xface(f, j), Axis::x);
  for (int i = 0; i < nx_; ++i)
    for (int g = 0; g < ny_; ++g) gy[i * ny_ + g] = model_->flux(s.yface(i, g), Axis::y);

  for (int i = 0; i < nx_; ++i)
    for (int j = 0; j < ny_; ++j) {
      const Vars& fl = fx[i * ny_ + j];
      const Vars& fr = fx[wrap(i + 1, nx_) * ny_ + j];
      const Vars& gb = gy[i * ny_ + j];
      const Vars& gt = gy[i * ny_ + wrap(j + 1, ny_)];
      double* out = r.average_ptr(i, j);
      for (int k = 0; k < d; ++k) out[k] = -(fr[k] - fl[k]) * rx - (gt[k] - gb[k]) * ry;
    }

  switch (d) {
    case 1: face_rates<1>(s, r); break;
    case 2: face_rates<2>(s, r); break;
    case 3: face_rates<3>(s, r); break;
    case 4: face_rates<4>(s, r); break;
    default: throw ValidationError("unsupported state dimension");
  }
  apply_bc(r, 0.0);
  return r;
}

template <int D>
void FdfvSolver2D::face_rates(const MeshState2D& s, MeshState2D& r) const {
  const double rx = 1.0 / hx_, ry = 1.0 / hy_;
  double dpos[kMaxVars], dneg[kMaxVars], tpos[kMaxVars], tneg[kMaxVars], acc[kMaxVars];

  // Normal DDOs along a line; `at(shift, nodal)` gives the data.
  auto normal = [&](double rh, auto&& at) {
    for (int k = 0; k < D; ++k) dpos[k] = dneg[k] = 0.0;
    for (const Term& t : terms_) {
      const double* w = at(t.shift, t.nodal);
      for (int k = 0; k < D; ++k) {
        dpos[k] += t.pos * w[k];
        dneg[k] += t.neg * w[k];
      }
    }
    for (int k = 0; k < D; ++k) {
      dpos[k] *= rh;
      dneg[k] *= rh;
    }
  };
  auto finish = [&](const double* w, Axis normal_axis, Axis tangent_axis, double* out) {
    Vars state{};
    for (int k = 0; k < D; ++k) acc[k] = 0.0, state[k] = w[k];
    model_->add_upwinded(state, normal_axis, dpos, dneg, acc);
    model_->add_upwinded(state, tangent_axis, tpos, tneg, acc);
    for (int k = 0; k < D; ++k) out[k] = -acc[k];
  };

  for (int f = 0; f < nx_; ++f)
    for (int j = 0; j < ny_; ++j) {
      normal(rx, [&](int shift, bool nodal) {
        const int c = wrap(f + shift, nx_);
        return nodal ? s.xface_ptr(c, j) : s.average_ptr(c, j);
      });
      const double* w = s.xface_ptr(f, j);
      const double* below = s.xface_ptr(f, wrap(j - 1, ny_));
      const double* above = s.xface_ptr(f, wrap(j + 1, ny_));
      for (int k = 0; k < D; ++k) {
        tpos[k] = (w[k] - below[k]) * ry;
        tneg[k] = (above[k] - w[k]) * ry;
      }
      finish(w, Axis::x, Axis::y, r.xface_ptr(f, j));
    }

  for (int i = 0; i < nx_; ++i)
    for (int g = 0; g < ny_; ++g) {
      normal(ry, [&](int shift, bool nodal) {
        const int c = wrap(g + shift, ny_);
        return nodal ? s.yface_ptr(i, c) : s.average_ptr(i, c);
      });
      const double* w = s.yface_ptr(i, g);
      const double* left = s.yface_ptr(wrap(i - 1, nx_), g);
      const double* right = s.yface_ptr(wrap(i + 1, nx_), g);
      for (int k = 0; k < D; ++k) {
        tpos[k] = (w[k] - left[k]) * rx;
        tneg[k] = (right[k] - w[k]) * rx;
      }
      finish(w, Axis::y, Axis::x, r.yface_ptr(i, g));
    }
}

double FdfvSolver2D::max_wave_speed(const MeshState2D& s) const {
  double m = 0.0;
  for (int f = 0; f < nx_; ++f)
    for (int j = 0; j < ny_; ++j) {
      const Vars w = s.xface(f, j);
      m = std::max({m, model_->max_speed(w, Axis::x), model_->max_speed(w, Axis::y)});
    }
  for (int i = 0; i < nx_; ++i)
    for (int g = 0; g < ny_; ++g) {
      const Vars w = s.yface(i, g);
      m = std::max({m, model_->max_speed(w, Axis::x), model_->max_speed(w, Axis::y)});
    }
  return m;
}

RunResult<MeshState2D> run_2d(const FdfvSolver2D& solver, const RKScheme& scheme,
                              MeshState2D initial, const RunOptions& options) {
  const double h = std::min(initial.hx, initial.hy);
  auto rhs = [&](const MeshState2D& s, double t) { return solver.rhs(s, t); };
  auto constrain = [&](MeshState2D& s, double t) { solver.apply_bc(s, t); };
  auto rate = [&](const MeshState2D& s) { return solver.max_wave_speed(s) / h; };
  return detail::time_loop(scheme, std::move(initial), options, rhs, constrain, constrain, rate);
}

}  // namespace fdfv
