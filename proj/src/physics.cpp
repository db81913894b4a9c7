#include "fdfv/physics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

constexpr double kVacuum = 1e-12;

class Advection final : public FluxModel {
 public:
  explicit Advection(double c) : c_(c) {}

  std::string name() const override { return "advection"; }
  int state_dim() const override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  Vars flux(const Vars& w, Axis) const override { return {c_ * w[0]}; }

  Matrix jacobian(const Vars&, Axis) const override {
    Matrix j{};
    j[0][0] = c_;
    return j;
  }

  Eigensystem eigen(const Vars&, Axis) const override { return scalar(c_); }
  Eigensystem roe_eigen(const Vars&, const Vars&, Axis) const override {
    return scalar(c_);
  }

  static Eigensystem scalar(double speed) {
    Eigensystem e;
    e.values[0] = speed;
    e.right[0][0] = 1.0;
    e.left[0][0] = 1.0;
    return e;
  }

 private:
  double c_;
};

class Nonconvex final : public FluxModel {
 public:
  std::string name() const override { return "nonconvex"; }
  int state_dim() const override { return 1; }
  std::vector<std::string> component_names() const override { return {"u"}; }

  static double f(double u) { return 0.25 * (u * u - 1.0) * (u * u - 4.0); }
  static double df(double u) { return u * u * u - 2.5 * u; }

  Vars flux(const Vars& w, Axis) const override { return {f(w[0])}; }

  Matrix jacobian(const Vars& w, Axis) const override {
    Matrix j{};
    j[0][0] = df(w[0]);
    return j;
  }

  Eigensystem eigen(const Vars& w, Axis) const override {
    return Advection::scalar(df(w[0]));
  }

  Eigensystem roe_eigen(const Vars& wl, const Vars& wr, Axis) const override {
    const double du = wr[0] - wl[0];
    if (std::abs(du) < 1e-12) return Advection::scalar(df(0.5 * (wl[0] + wr[0])));
    return Advection::scalar((f(wr[0]) - f(wl[0])) / du);
  }
};

// Euler equations written in a frame (rho, m_n, m_t, E) aligned with the
// flux direction, then permuted into storage order.
class Euler final : public FluxModel {
 public:
  explicit Euler(int dims) : dims_(dims), d_(dims + 2) {}

  std::string name() const override { return dims_ == 1 ? "euler1d" : "euler2d"; }
  int state_dim() const override { return d_; }
  int space_dim() const override { return dims_; }

  std::vector<std::string> component_names() const override {
    if (dims_ == 1) return {"rho", "rhou", "E"};
    return {"rho", "rhou", "rhov", "E"};
  }

  Vars flux(const Vars& w, Axis axis) const override {
    const auto [n, t] = momentum_index(axis);
    const double rho = w[0];
    const double un = w[n] / rho;
    const double p = pressure(w);
    Vars f{};
    f[0] = w[n];
    f[n] = w[n] * un + p;
    if (dims_ == 2) f[t] = w[t] * un;
    f[d_ - 1] = (w[d_ - 1] + p) * un;
    return f;
  }

  Matrix jacobian(const Vars& w, Axis axis) const override {
    const auto [n, t] = momentum_index(axis);
    const int e = d_ - 1;
    const double g1 = kGamma - 1.0;
    const double rho = w[0];
    const double un = w[n] / rho;
    const double ut = dims_ == 2 ? w[t] / rho : 0.0;
    const double q2 = un * un + ut * ut;
    const double phi = 0.5 * g1 * q2;
    const double h = (w[e] + pressure(w)) / rho;

    Matrix j{};
    j[0][n] = 1.0;
    j[n][0] = phi - un * un;
    j[n][n] = (3.0 - kGamma) * un;
    j[n][e] = g1;
    if (dims_ == 2) {
      j[n][t] = -g1 * ut;
      j[t][0] = -un * ut;
      j[t][n] = ut;
      j[t][t] = un;
      j[e][t] = -g1 * un * ut;
    }
    j[e][0] = un * (phi - h);
    j[e][n] = h - g1 * un * un;
    j[e][e] = kGamma * un;
    return j;
  }

  Eigensystem eigen(const Vars& w, Axis axis) const override {
    validate(w);
    const auto [n, t] = momentum_index(axis);
    const double rho = w[0];
    const double un = w[n] / rho;
    const double ut = dims_ == 2 ? w[t] / rho : 0.0;
    const double p = pressure(w);
    const double h = (w[d_ - 1] + p) / rho;
    return system(un, ut, h, std::sqrt(kGamma * p / rho), axis);
  }

  Eigensystem roe_eigen(const Vars& wl, const Vars& wr, Axis axis) const override {
    validate(wl);
    validate(wr);
    const auto [n, t] = momentum_index(axis);
    const double sl = std::sqrt(wl[0]), sr = std::sqrt(wr[0]);
    auto avg = [&](double ql, double qr) { return (sl * ql + sr * qr) / (sl + sr); };
    const double un = avg(wl[n] / wl[0], wr[n] / wr[0]);
    const double ut = dims_ == 2 ? avg(wl[t] / wl[0], wr[t] / wr[0]) : 0.0;
    const double h = avg((wl[d_ - 1] + pressure(wl)) / wl[0],
                         (wr[d_ - 1] + pressure(wr)) / wr[0]);
    const double a2 = (kGamma - 1.0) * (h - 0.5 * (un * un + ut * ut));
    if (!(a2 > kVacuum)) {
      throw StateError("Roe average has non-positive sound speed squared");
    }
    return system(un, ut, h, std::sqrt(a2), axis);
  }

  void add_upwinded(const Vars& w, Axis axis, const double* dpos, const double* dneg,
                    double* out) const override {
    const auto [n, t] = momentum_index(axis);
    const int e = d_ - 1;
    const bool two = dims_ == 2;
    const double p = pressure(w);
    if (!(w[0] >= kVacuum) || !(p >= kVacuum) || !std::isfinite(w[e])) validate(w);
    const double inv_rho = 1.0 / w[0];
    const double un = w[n] * inv_rho;
    const double ut = two ? w[t] * inv_rho : 0.0;
    const double h = (w[e] + p) * inv_rho;
    const double a2 = kGamma * p * inv_rho;
    const double a = std::sqrt(a2);
    const double inv_a = 1.0 / a;
    const double b1 = (kGamma - 1.0) / a2;
    const double q2 = un * un + ut * ut;
    const double b2 = 0.5 * b1 * q2;
    const double* dw = nullptr;

    // Acoustic waves u -/+ a.
    for (const double side : {-1.0, 1.0}) {
      const double lambda = un + side * a;
      dw = lambda >= 0.0 ? dpos : dneg;
      double amp = 0.5 * ((b2 - side * un * inv_a) * dw[0] - (b1 * un - side * inv_a) * dw[n] +
                          b1 * dw[e]);
      if (two) amp -= 0.5 * b1 * ut * dw[t];
      const double scale = lambda * amp;
      out[0] += scale;
      out[n] += lambda * scale;
      if (two) out[t] += ut * scale;
      out[e] += (h + side * un * a) * scale;
    }
    // Entropy and shear waves travel with u.
    dw = un >= 0.0 ? dpos : dneg;
    double amp = (1.0 - b2) * dw[0] + b1 * un * dw[n] - b1 * dw[e];
    if (two) amp += b1 * ut * dw[t];
    double scale = un * amp;
    out[0] += scale;
    out[n] += un * scale;
    if (two) out[t] += ut * scale;
    out[e] += 0.5 * q2 * scale;
    if (two) {
      scale = un * (dw[t] - ut * dw[0]);
      out[t] += scale;
      out[e] += ut * scale;
    }
  }

  double max_speed(const Vars& w, Axis axis) const override {
    validate(w);
    const int n = momentum_index(axis).first;
    return std::abs(w[n] / w[0]) + std::sqrt(kGamma * pressure(w) / w[0]);
  }

  void validate(const Vars& w, std::string_view where = {}) const override {
    for (int k = 0; k < d_; ++k) {
      if (!std::isfinite(w[k])) fail("non-finite state", w, where);
    }
    if (w[0] < kVacuum) fail("density below vacuum threshold", w, where);
    if (pressure(w) < kVacuum) fail("pressure below vacuum threshold", w, where);
  }

  Vars to_reconstruction(const Vars& w) const override {
    return conservative_to_primitive(w, d_);
  }
  Vars from_reconstruction(const Vars& v) const override {
    return primitive_to_conservative(v, d_);
  }

 private:
  std::pair<int, int> momentum_index(Axis axis) const {
    if (dims_ == 1) return {1, 1};
    return axis == Axis::x ? std::pair{1, 2} : std::pair{2, 1};
  }

  double pressure(const Vars& w) const {
    double kinetic = 0.0;
    for (int k = 1; k <= dims_; ++k) kinetic += w[k] * w[k];
    return (kGamma - 1.0) * (w[d_ - 1] - 0.5 * kinetic / w[0]);
  }

  // Right/left eigenvectors for normal velocity un, tangential velocity ut,
  // total enthalpy h and sound speed a.
  Eigensystem system(double un, double ut, double h, double a, Axis axis) const {
    const auto [n, t] = momentum_index(axis);
    const int e = d_ - 1;
    const double q2 = un * un + ut * ut;
    const double b1 = (kGamma - 1.0) / (a * a);
    const double b2 = 0.5 * b1 * q2;

    Eigensystem s;
    // Columns: u - a, u (entropy), [u (shear)], u + a.
    const int last = d_ - 1;
    s.values[0] = un - a;
    s.values[1] = un;
    if (dims_ == 2) s.values[2] = un;
    s.values[last] = un + a;

    Matrix& r = s.right;
    r[0][0] = 1.0;  r[n][0] = un - a;  r[e][0] = h - un * a;
    r[0][1] = 1.0;  r[n][1] = un;      r[e][1] = 0.5 * q2;
    r[0][last] = 1.0;  r[n][last] = un + a;  r[e][last] = h + un * a;
    if (dims_ == 2) {
      r[t][0] = ut;
      r[t][1] = ut;
      r[t][2] = 1.0;
      r[e][2] = ut;
      r[t][last] = ut;
    }

    Matrix& l = s.left;
    l[0][0] = 0.5 * (b2 + un / a);
    l[0][n] = -0.5 * (b1 * un + 1.0 / a);
    l[0][e] = 0.5 * b1;
    l[1][0] = 1.0 - b2;
    l[1][n] = b1 * un;
    l[1][e] = -b1;
    l[last][0] = 0.5 * (b2 - un / a);
    l[last][n] = -0.5 * (b1 * un - 1.0 / a);
    l[last][e] = 0.5 * b1;
    if (dims_ == 2) {
      l[0][t] = -0.5 * b1 * ut;
      l[1][t] = b1 * ut;
      l[2][0] = -ut;
      l[2][t] = 1.0;
      l[last][t] = -0.5 * b1 * ut;
    }
    return s;
  }

  [[noreturn]] void fail(const char* what, const Vars& w, std::string_view where) const {
    std::ostringstream msg;
    msg << name() << ": " << what;
    if (!where.empty()) msg << " at " << where;
    msg << " (state";
    for (int k = 0; k < d_; ++k) msg << ' ' << w[k];
    msg << ')';
    throw StateError(msg.str());
  }

  int dims_;
  int d_;
};

}  // namespace

void FluxModel::add_upwinded(const Vars& w, Axis axis, const double* dpos,
                             const double* dneg, double* out) const {
  const Eigensystem e = eigen(w, axis);
  const int d = state_dim();
  for (int m = 0; m < d; ++m) {
    const double lambda = e.values[m];
    const double* dw = lambda >= 0.0 ? dpos : dneg;
    double domega = 0.0;
    for (int k = 0; k < d; ++k) domega += e.left[m][k] * dw[k];
    const double scale = lambda * domega;
    for (int k = 0; k < d; ++k) out[k] += e.right[k][m] * scale;
  }
}

double FluxModel::max_speed(const Vars& w, Axis axis) const {
  const Eigensystem e = eigen(w, axis);
  double m = 0.0;
  for (int k = 0; k < state_dim(); ++k) m = std::max(m, std::abs(e.values[k]));
  return m;
}

void FluxModel::validate(const Vars& w, std::string_view where) const {
  for (int k = 0; k < state_dim(); ++k) {
    if (!std::isfinite(w[k])) {
      throw StateError(name() + ": non-finite state" +
                       (where.empty() ? std::string() : " at " + std::string(where)));
    }
  }
}

ModelPtr advection_model(double c) { return std::make_shared<Advection>(c); }
ModelPtr nonconvex_model() { return std::make_shared<Nonconvex>(); }
ModelPtr euler1d_model() { return std::make_shared<Euler>(1); }
ModelPtr euler2d_model() { return std::make_shared<Euler>(2); }

ModelPtr make_model(std::string_view name, double speed) {
  if (name == "advection") return advection_model(speed);
  if (name == "nonconvex") return nonconvex_model();
  if (name == "euler1d") return euler1d_model();
  if (name == "euler2d") return euler2d_model();
  throw ValidationError("unknown model '" + std::string(name) +
                        "'; valid: advection nonconvex euler1d euler2d");
}

Vars conservative_to_primitive(const Vars& w, int dim) {
  if (dim != 3 && dim != 4) throw ValidationError("Euler state must have 3 or 4 components");
  Vars q{};
  const double rho = w[0];
  q[0] = rho;
  double kinetic = 0.0;
  for (int k = 1; k < dim - 1; ++k) {
    q[k] = w[k] / rho;
    kinetic += w[k] * w[k];
  }
  q[dim - 1] = (kGamma - 1.0) * (w[dim - 1] - 0.5 * kinetic / rho);
  return q;
}

Vars primitive_to_conservative(const Vars& q, int dim) {
  if (dim != 3 && dim != 4) throw ValidationError("Euler state must have 3 or 4 components");
  Vars w{};
  const double rho = q[0];
  w[0] = rho;
  double q2 = 0.0;
  for (int k = 1; k < dim - 1; ++k) {
    w[k] = rho * q[k];
    q2 += q[k] * q[k];
  }
  w[dim - 1] = q[dim - 1] / (kGamma - 1.0) + 0.5 * rho * q2;
  return w;
}

Vars multiply(const Matrix& m, const Vars& v, int d) {
  Vars out{};
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int k = 0; k < d; ++k) s += m[i][k] * v[k];
    out[i] = s;
  }
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b, int d) {
  Matrix out{};
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  return out;
}

}  // namespace fdfv
