#include "fdfv/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fdfv/errors.hpp"

namespace fdfv {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
constexpr double kUnitCircleSlack = 1e-10;

struct Symbols {
  Complex a, b;
};

Symbols symbol_parts(const DDOStencil& stencil, double theta) {
  if (!(theta > 0.0) || theta > kPi * (1.0 + 1e-15)) {
    throw ValidationError("wave angle must lie in (0, pi]");
  }
  Complex alpha_sum{0.0, 0.0}, beta_sum{0.0, 0.0};
  for (const auto& t : stencil.average_terms()) {
    alpha_sum += t.coefficient * std::exp(kI * (t.offset * theta));
  }
  for (const auto& t : stencil.nodal_terms()) {
    beta_sum += t.coefficient * std::exp(kI * (t.offset * theta));
  }
  const Complex a = (1.0 - std::exp(-kI * theta)) / (kI * theta * theta) * alpha_sum;
  const Complex b = beta_sum / theta;
  return {a, b};
}

SymbolSpectrum spectrum_near(const DDOStencil& stencil, double theta,
                             Complex target) {
  const auto [a, b] = symbol_parts(stencil, theta);
  const Complex root = std::sqrt(b * b + 4.0 * kI * a);
  Complex l1 = 0.5 * (b + root);
  Complex l2 = 0.5 * (b - root);
  if (std::abs(l2 - target) < std::abs(l1 - target)) std::swap(l1, l2);
  return {theta, a, b, l1, l2};
}

}  // namespace

SymbolSpectrum symbol(const DDOStencil& stencil, double theta) {
  return spectrum_near(stencil, theta, kI);
}

SymbolSpectrum symbol_tracked(const DDOStencil& stencil, double theta,
                              Complex previous) {
  return spectrum_near(stencil, theta, previous);
}

DiagnosticCurves diagnostics(const DDOStencil& stencil,
                             std::span<const double> theta_grid) {
  const std::size_t n = theta_grid.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto i, auto j) { return theta_grid[i] < theta_grid[j]; });

  DiagnosticCurves out;
  out.theta.assign(theta_grid.begin(), theta_grid.end());
  for (auto* v : {&out.dispersion, &out.dissipation, &out.phase_avg,
                  &out.phase_nodal, &out.magnitude_avg, &out.magnitude_nodal,
                  &out.noise_avg, &out.noise_nodal}) {
    v->assign(n, 0.0);
  }

  Complex previous = kI;
  for (std::size_t idx : order) {
    const double theta = theta_grid[idx];
    const SymbolSpectrum s = symbol_tracked(stencil, theta, previous);
    previous = s.lambda1;
    const Complex l1 = s.lambda1, l2 = s.lambda2;

    const Complex scaled = l1 * theta / kI;
    out.dispersion[idx] = scaled.real();
    out.dissipation[idx] = scaled.imag();

    const Complex stationary_avg = (l2 - kI) / (l2 - l1);
    const Complex stationary_nodal = l1 * (l2 - kI) / (kI * (l2 - l1));
    out.phase_avg[idx] = std::arg(stationary_avg);
    out.phase_nodal[idx] = std::arg(stationary_nodal);
    out.magnitude_avg[idx] = std::abs(stationary_avg);
    out.magnitude_nodal[idx] = std::abs(stationary_nodal);

    // At t = h/c the exponent c k (lambda2 - i) t equals theta (lambda2 - i).
    const Complex decay = std::exp(-theta * (l2 - kI));
    out.noise_avg[idx] = std::abs((l1 - kI) / (l2 - l1) * decay);
    out.noise_nodal[idx] = std::abs(l2 * (l1 - kI) / (kI * (l2 - l1)) * decay);
  }
  return out;
}

std::vector<double> default_theta_grid(int uniform, int geometric) {
  std::vector<double> grid;
  grid.reserve(uniform + geometric);
  for (int k = 1; k <= uniform; ++k) grid.push_back(kPi * k / uniform);
  for (int k = 0; k < geometric; ++k) {
    const double s = geometric > 1 ? static_cast<double>(k) / (geometric - 1) : 0.0;
    grid.push_back(std::pow(10.0, -4.0 + 2.0 * s));
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

Complex rk_stability_function(const RKScheme& scheme, Complex z) {
  const auto coefficients = scheme.stability_polynomial();
  Complex p{0.0, 0.0};
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    p = p * z + detail::to_double(*it);
  }
  return p;
}

double real_axis_limit(const RKScheme& scheme) {
  auto stable = [&](double y) {
    return std::abs(rk_stability_function(scheme, Complex(-y, 0.0))) <=
           1.0 + kUnitCircleSlack;
  };
  const double step = 1e-3;
  double lo = 0.0;
  while (stable(lo + step)) {
    lo += step;
    if (lo > 100.0) return lo;
  }
  double hi = lo + step;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

double asymptotic_bound(const RKScheme& scheme, double b0) {
  if (b0 == 0.0) throw ValidationError("asymptotic bound needs b0 != 0");
  return real_axis_limit(scheme) / std::abs(b0);
}

double amplification(const DDOStencil& stencil, const RKScheme& scheme,
                     double theta, double courant) {
  const SymbolSpectrum s = symbol(stencil, theta);
  return std::max(std::abs(rk_stability_function(scheme, -courant * theta * s.lambda1)),
                  std::abs(rk_stability_function(scheme, -courant * theta * s.lambda2)));
}

double max_courant(const DDOStencil& stencil, const RKScheme& scheme,
                   int theta_samples, double tol) {
  if (theta_samples < 512) {
    throw ValidationError("max_courant needs at least 512 theta samples");
  }
  const double b0 = detail::to_double(stencil.b0());
  if (b0 == 0.0) throw ValidationError("max_courant needs b0 != 0");

  // Both branches at every sample; the stability polynomial is evaluated on
  // theta * lambda_l, scaled by -courant.
  std::vector<Complex> scaled;
  for (double theta : default_theta_grid(theta_samples, 64)) {
    const SymbolSpectrum s = symbol(stencil, theta);
    scaled.push_back(theta * s.lambda1);
    scaled.push_back(theta * s.lambda2);
  }
  const auto coefficients = scheme.stability_polynomial();
  std::vector<double> c(coefficients.size());
  std::transform(coefficients.begin(), coefficients.end(), c.begin(),
                 [](const Rational& r) { return detail::to_double(r); });
  auto stable = [&](double courant) {
    for (const Complex& w : scaled) {
      const Complex z = -courant * w;
      Complex p{0.0, 0.0};
      for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * z + *it;
      if (std::abs(p) > 1.0 + kUnitCircleSlack) return false;
    }
    return true;
  };

  // Scan for the first unstable Courant number, then bisect the bracket.
  const double upper = 1.5 * asymptotic_bound(scheme, b0);
  if (!stable(tol)) return 0.0;
  const int scan = 300;
  double lo = tol, hi = upper;
  for (int k = 1; k <= scan; ++k) {
    const double trial = upper * k / scan;
    if (trial <= lo) continue;
    if (!stable(trial)) {
      hi = trial;
      break;
    }
    lo = trial;
  }
  if (lo >= upper) return upper;
  while (hi - lo > tol * 1e-2) {
    const double mid = 0.5 * (lo + hi);
    (stable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace fdfv
