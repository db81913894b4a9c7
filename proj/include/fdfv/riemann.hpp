#pragma once

// Exact solution of the Riemann problem for the 1D Euler equations with an
// ideal gas (gamma = 1.4).

namespace fdfv {

struct Primitive1D {
  double rho = 0.0;
  double u = 0.0;
  double p = 0.0;
};

class ExactRiemann {
 public:
  // Throws ValidationError if the data would generate vacuum.
  ExactRiemann(Primitive1D left, Primitive1D right);

  double star_pressure() const { return p_star_; }
  double star_velocity() const { return u_star_; }

  // State at similarity coordinate xi = (x - x0) / t.
  Primitive1D sample(double xi) const;

 private:
  double pressure_function(double p, const Primitive1D& s, double a, double& derivative) const;

  Primitive1D l_, r_;
  double al_, ar_;
  double p_star_ = 0.0, u_star_ = 0.0;
};

}  // namespace fdfv
