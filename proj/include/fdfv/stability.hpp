#pragma once

// Von Neumann analysis of the FD-FV scheme for u_t + c u_x = 0.
//
// With exact simple-wave data the semi-discrete scheme reduces to a 2x2 ODE
// system whose matrix is C(theta) = [[0, i], [a(theta), b(theta)]]. Its two
// eigenvalues are the physical branch lambda1 (close to i) and the spurious
// branch lambda2 (~ b0/theta).

#include <complex>
#include <span>
#include <vector>

#include "fdfv/ddo.hpp"
#include "fdfv/time_integration.hpp"

namespace fdfv {

using Complex = std::complex<double>;

struct SymbolSpectrum {
  double theta = 0.0;
  Complex a_sym;
  Complex b_sym;
  Complex lambda1;  // physical branch
  Complex lambda2;  // spurious branch
};

// a(theta), b(theta) and both eigenvalues. lambda1 is the root nearer to i.
// Throws ValidationError unless 0 < theta <= pi.
SymbolSpectrum symbol(const DDOStencil& stencil, double theta);

// Same as symbol(), but lambda1 is taken as the root nearest to `previous`.
// Used to follow the physical branch continuously along a theta sweep.
SymbolSpectrum symbol_tracked(const DDOStencil& stencil, double theta,
                              Complex previous);

struct DiagnosticCurves {
  std::vector<double> theta;
  std::vector<double> dispersion;        // Re(lambda1 theta / i)
  std::vector<double> dissipation;       // Im(lambda1 theta / i)
  std::vector<double> phase_avg;         // stationary phase, cell averages
  std::vector<double> phase_nodal;       // stationary phase, nodal values
  std::vector<double> magnitude_avg;     // stationary magnitude, cell averages
  std::vector<double> magnitude_nodal;   // stationary magnitude, nodal values
  std::vector<double> noise_avg;         // spurious-mode size at t = h/c
  std::vector<double> noise_nodal;
};

// The five error measures on a grid in (0, pi]. The physical branch is
// seeded at the smallest theta and followed by continuity.
DiagnosticCurves diagnostics(const DDOStencil& stencil,
                             std::span<const double> theta_grid);

// `uniform` equispaced points on (0, pi] plus `geometric` points spaced
// geometrically over [1e-4, 1e-2], sorted ascending.
std::vector<double> default_theta_grid(int uniform = 1024, int geometric = 64);

// P(z): one step of the scheme applied to y' = z y with unit step.
Complex rk_stability_function(const RKScheme& scheme, Complex z);

// Largest x such that |P(-y)| <= 1 for all y in [0, x].
double real_axis_limit(const RKScheme& scheme);

// Necessary Courant bound from the theta -> 0 limit: real_axis_limit / |b0|.
double asymptotic_bound(const RKScheme& scheme, double b0);

// Largest Courant number lambda with max_{theta, l} |P(-lambda theta
// lambda_l(theta))| <= 1 + 1e-10 over the sampled grid. Returns 0 when no
// positive lambda is stable.
double max_courant(const DDOStencil& stencil, const RKScheme& scheme,
                   int theta_samples = 1024, double tol = 1e-4);

// max_l |P(-lambda theta lambda_l(theta))| at one point of the theta-lambda
// plane.
double amplification(const DDOStencil& stencil, const RKScheme& scheme,
                     double theta, double courant);

}  // namespace fdfv
