#pragma once

// Conservation laws w_t + f(w)_x (+ g(w)_y) = 0: fluxes, Jacobians and
// characteristic decompositions.

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace fdfv {

constexpr int kMaxVars = 4;
constexpr double kGamma = 1.4;

using Vars = std::array<double, kMaxVars>;
using Matrix = std::array<std::array<double, kMaxVars>, kMaxVars>;

enum class Axis { x, y };

// J = R diag(values) L with L = R^{-1}; values ascending.
struct Eigensystem {
  Vars values{};
  Matrix right{};
  Matrix left{};
};

class FluxModel {
 public:
  virtual ~FluxModel() = default;

  virtual std::string name() const = 0;
  virtual int state_dim() const = 0;
  virtual int space_dim() const { return 1; }
  virtual std::vector<std::string> component_names() const = 0;

  virtual Vars flux(const Vars& w, Axis axis = Axis::x) const = 0;
  virtual Matrix jacobian(const Vars& w, Axis axis = Axis::x) const = 0;
  virtual Eigensystem eigen(const Vars& w, Axis axis = Axis::x) const = 0;

  // Eigensystem of the Roe matrix A(wl, wr), which satisfies
  // A (wr - wl) = f(wr) - f(wl).
  virtual Eigensystem roe_eigen(const Vars& wl, const Vars& wr,
                                Axis axis = Axis::x) const = 0;

  // out += sum_m lambda_m r_m (l_m . d), d = dpos where lambda_m >= 0 and
  // dneg otherwise.
  virtual void add_upwinded(const Vars& w, Axis axis, const double* dpos,
                            const double* dneg, double* out) const;

  // Largest |lambda| of the Jacobian.
  virtual double max_speed(const Vars& w, Axis axis = Axis::x) const;

  // Throws StateError for inadmissible states. `where` is added to the
  // message.
  virtual void validate(const Vars& w, std::string_view where = {}) const;

  // Variables used by MUSCL reconstruction, and back.
  virtual Vars to_reconstruction(const Vars& w) const { return w; }
  virtual Vars from_reconstruction(const Vars& v) const { return v; }
};

using ModelPtr = std::shared_ptr<const FluxModel>;

// f(u) = c u.
ModelPtr advection_model(double c);
// f(u) = (u^2 - 1)(u^2 - 4) / 4.
ModelPtr nonconvex_model();
// Ideal gas, gamma = 1.4. Conserved variables (rho, rho u, E) and
// (rho, rho u, rho v, E).
ModelPtr euler1d_model();
ModelPtr euler2d_model();

// "advection" (c = 1 unless given), "nonconvex", "euler1d", "euler2d".
ModelPtr make_model(std::string_view name, double speed = 1.0);

// Euler helpers; `dim` is the number of conserved variables (3 or 4).
// Primitive layout: (rho, u, p) or (rho, u, v, p).
Vars conservative_to_primitive(const Vars& w, int dim);
Vars primitive_to_conservative(const Vars& q, int dim);

// Small dense helpers on the leading d x d block.
Vars multiply(const Matrix& m, const Vars& v, int d);
Matrix multiply(const Matrix& a, const Matrix& b, int d);

}  // namespace fdfv
