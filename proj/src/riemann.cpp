#include "fdfv/riemann.hpp"

#include <algorithm>
#include <cmath>

#include "fdfv/errors.hpp"
#include "fdfv/physics.hpp"

namespace fdfv {

namespace {
constexpr double g = kGamma;
}

ExactRiemann::ExactRiemann(Primitive1D left, Primitive1D right)
    : l_(left), r_(right) {
  if (!(l_.rho > 0.0 && r_.rho > 0.0 && l_.p > 0.0 && r_.p > 0.0)) {
    throw ValidationError("Riemann data must have positive density and pressure");
  }
  al_ = std::sqrt(g * l_.p / l_.rho);
  ar_ = std::sqrt(g * r_.p / r_.rho);
  if (2.0 * (al_ + ar_) / (g - 1.0) <= r_.u - l_.u) {
    throw ValidationError("Riemann data generates vacuum");
  }

  // Newton iteration on f_L(p) + f_R(p) + du = 0 from the two-rarefaction
  // guess.
  const double z = (g - 1.0) / (2.0 * g);
  double p = std::pow((al_ + ar_ - 0.5 * (g - 1.0) * (r_.u - l_.u)) /
                          (al_ / std::pow(l_.p, z) + ar_ / std::pow(r_.p, z)),
                      1.0 / z);
  p = std::max(p, 1e-10);
  for (int it = 0; it < 100; ++it) {
    double dl, dr;
    const double f = pressure_function(p, l_, al_, dl) + pressure_function(p, r_, ar_, dr) +
                     (r_.u - l_.u);
    const double next = std::max(p - f / (dl + dr), 1e-12);
    const double change = 2.0 * std::abs(next - p) / (next + p);
    p = next;
    if (change < 1e-15) break;
  }
  p_star_ = p;
  double dl, dr;
  u_star_ = 0.5 * (l_.u + r_.u) +
            0.5 * (pressure_function(p, r_, ar_, dr) - pressure_function(p, l_, al_, dl));
}

double ExactRiemann::pressure_function(double p, const Primitive1D& s, double a,
                                       double& derivative) const {
  if (p > s.p) {
    const double A = 2.0 / ((g + 1.0) * s.rho);
    const double B = (g - 1.0) / (g + 1.0) * s.p;
    const double q = std::sqrt(A / (p + B));
    derivative = q * (1.0 - 0.5 * (p - s.p) / (p + B));
    return (p - s.p) * q;
  }
  const double ratio = p / s.p;
  derivative = std::pow(ratio, -(g + 1.0) / (2.0 * g)) / (s.rho * a);
  return 2.0 * a / (g - 1.0) * (std::pow(ratio, (g - 1.0) / (2.0 * g)) - 1.0);
}

Primitive1D ExactRiemann::sample(double xi) const {
  const double gm = (g - 1.0) / (g + 1.0);
  if (xi <= u_star_) {
    const Primitive1D& s = l_;
    const double a = al_;
    if (p_star_ > s.p) {
      const double ratio = p_star_ / s.p;
      const double speed = s.u - a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
      if (xi <= speed) return s;
      return {s.rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
    }
    const double head = s.u - a;
    const double a_star = a * std::pow(p_star_ / s.p, (g - 1.0) / (2.0 * g));
    const double tail = u_star_ - a_star;
    if (xi <= head) return s;
    if (xi >= tail) return {s.rho * std::pow(p_star_ / s.p, 1.0 / g), u_star_, p_star_};
    const double c = 2.0 / (g + 1.0) + gm / a * (s.u - xi);
    return {s.rho * std::pow(c, 2.0 / (g - 1.0)),
            2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * s.u + xi),
            s.p * std::pow(c, 2.0 * g / (g - 1.0))};
  }
  const Primitive1D& s = r_;
  const double a = ar_;
  if (p_star_ > s.p) {
    const double ratio = p_star_ / s.p;
    const double speed = s.u + a * std::sqrt((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g));
    if (xi >= speed) return s;
    return {s.rho * (ratio + gm) / (gm * ratio + 1.0), u_star_, p_star_};
  }
  const double head = s.u + a;
  const double a_star = a * std::pow(p_star_ / s.p, (g - 1.0) / (2.0 * g));
  const double tail = u_star_ + a_star;
  if (xi >= head) return s;
  if (xi <= tail) return {s.rho * std::pow(p_star_ / s.p, 1.0 / g), u_star_, p_star_};
  const double c = 2.0 / (g + 1.0) - gm / a * (s.u - xi);
  return {s.rho * std::pow(c, 2.0 / (g - 1.0)),
          2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * s.u + xi),
          s.p * std::pow(c, 2.0 * g / (g - 1.0))};
}

}  // namespace fdfv
