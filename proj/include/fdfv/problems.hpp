#pragma once

// Registry of the benchmark problems.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fdfv/physics.hpp"
#include "fdfv/solver1d.hpp"
#include "fdfv/solver2d.hpp"

namespace fdfv {

// A numerical reference computed on a fine mesh when no exact solution is
// known.
struct ReferenceRecipe {
  std::string scheme;
  int cells = 0;
  double cfl = 0.0;
};

struct Problem {
  std::string name;
  ModelPtr model;
  int space_dim = 1;
  double x_left = 0.0, x_right = 1.0;
  double y_left = 0.0, y_right = 1.0;
  double final_time = 0.0;

  Profile initial;        // 1D
  Profile2D initial_2d;   // 2D (periodic)
  BoundarySpec bc;        // 1D

  // Exact solution at time t, when known.
  std::function<Profile(double)> exact;
  std::function<Profile2D(double)> exact_2d;
  // Otherwise one of these provides the reference.
  std::optional<ReferenceRecipe> reference;
  std::string fixture;  // CSV in the data directory: x, rho, u, p at cell centres

  // Default CFL by scheme name; `fallback_cfl` for anything else.
  std::map<std::string, double, std::less<>> default_cfl;
  double fallback_cfl = 0.5;

  double cfl_for(std::string_view scheme) const;
};

// "advection-periodic", "advection-dirichlet", "square-wave",
// "euler-smooth-periodic", "sod", "shu-osher", "nonconvex", "vortex2d".
const Problem& problem(std::string_view name);
const std::vector<std::string>& problem_names();

// Solution of the non-convex Riemann problem (-3 | 3) at time t.
double nonconvex_exact(double x, double t);

// Inverse of f'(u) = u^3 - 5u/2 on the branch u in [-3, -sqrt(5/6)], for
// xi in [f'(-3), f'(-sqrt(5/6))].
double nonconvex_g(double xi);

// Directory holding reference fixtures.
std::string data_dir();

}  // namespace fdfv
