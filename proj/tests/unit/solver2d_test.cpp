#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fdfv/errors.hpp"
#include "fdfv/problems.hpp"
#include "fdfv/solver1d.hpp"
#include "fdfv/solver2d.hpp"

using namespace fdfv;

namespace {

constexpr double kPi = std::numbers::pi;

Vars prim1d(double x) { return {1.0 + 0.3 * std::sin(2 * kPi * x), 0.8, 1.0 + 0.2 * std::cos(2 * kPi * x)}; }

double total(const MeshState2D& s, int k) {
  double sum = 0.0;
  for (int i = 0; i < s.nx; ++i)
    for (int j = 0; j < s.ny; ++j) sum += s.average_ptr(i, j)[k] * s.hx * s.hy;
  return sum;
}

}  // namespace

TEST(Solver2D, ConstantStateIsSteady) {
  FdfvSolver2D solver(euler2d_model(), upwind_family("1st-backward"), 8, 6, 0, 1, 0, 2);
  const Vars w = primitive_to_conservative({1.2, 0.3, -0.5, 0.9}, 4);
  const MeshState2D s = solver.initialize(Profile2D{[w](double, double) { return w; }});
  for (double v : solver.rhs(s, 0.0).data) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(Solver2D, ReducesToOneDimension) {
  const int nx = 24, ny = 5;
  FdfvSolver2D s2(euler2d_model(), upwind_family("1st-backward"), nx, ny, 0, 1, 0, 0.5);
  FdfvSolver1D s1(euler1d_model(), upwind_family("1st-backward"), BoundarySpec::periodic(), nx, 0, 1);
  const MeshState2D a0 = s2.initialize(Profile2D{[](double x, double) {
    const Vars q = prim1d(x);
    return primitive_to_conservative({q[0], q[1], 0.0, q[2]}, 4);
  }});
  const MeshState b0 = s1.initialize(Profile{[](double x) { return primitive_to_conservative(prim1d(x), 3); }, {}});
  RunOptions opt;
  opt.final_time = 0.3;
  opt.dt = 0.01;
  const MeshState2D a = run_2d(s2, rk_scheme("rk2"), a0, opt).state;
  const MeshState b = run(s1, rk_scheme("rk2"), b0, opt).state;
  const int map[3] = {0, 1, 3};
  double worst = 0.0;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a.average(i, j)[map[k]] - b.average(i)[k]));
      EXPECT_EQ(a.average(i, j)[2], 0.0);
    }
    for (int f = 0; f <= nx; ++f)
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(a.xface(f, j)[map[k]] - b.nodal(f)[k]));
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Solver2D, RateSumVanishesForVortex) {
  const Problem& p = problem("vortex2d");
  FdfvSolver2D solver(p.model, upwind_family("1st-backward"), 20, 20, p.x_left, p.x_right,
                      p.y_left, p.y_right);
  const MeshState2D s = solver.initialize(p.initial_2d);
  const MeshState2D r = solver.rhs(s, 0.0);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(total(r, k), 0.0, 1e-12);
}

TEST(Solver2D, VortexRunConserves) {
  const Problem& p = problem("vortex2d");
  FdfvSolver2D solver(p.model, upwind_family("1st-backward"), 16, 16, p.x_left, p.x_right,
                      p.y_left, p.y_right);
  const MeshState2D s0 = solver.initialize(p.initial_2d);
  RunOptions opt;
  opt.final_time = 1.0;
  opt.cfl = 0.3;
  const MeshState2D s = run_2d(solver, rk_scheme("rk2"), s0, opt).state;
  for (int k = 0; k < 4; ++k) {
    EXPECT_NEAR(total(s, k), total(s0, k), 1e-12 * std::max(1.0, std::abs(total(s0, k))));
  }
  EXPECT_EQ(s.time, 1.0);
}

TEST(Solver2D, PeriodicFacesStayAliased) {
  const Problem& p = problem("vortex2d");
  FdfvSolver2D solver(p.model, upwind_family("1st-backward"), 8, 8, p.x_left, p.x_right,
                      p.y_left, p.y_right);
  RunOptions opt;
  opt.final_time = 0.2;
  opt.cfl = 0.3;
  const MeshState2D s = run_2d(solver, rk_scheme("rk2"), solver.initialize(p.initial_2d), opt).state;
  for (int j = 0; j < 8; ++j) EXPECT_EQ(s.xface(0, j), s.xface(8, j));
  for (int i = 0; i < 8; ++i) EXPECT_EQ(s.yface(i, 0), s.yface(i, 8));
}

TEST(Solver2D, RejectsUnsupportedSetups) {
  EXPECT_THROW(FdfvSolver2D(euler2d_model(), upwind_family("2nd-backward"), 4, 4, 0, 1, 0, 1),
               ValidationError);
  EXPECT_THROW(FdfvSolver2D(euler1d_model(), upwind_family("1st-backward"), 4, 4, 0, 1, 0, 1),
               ValidationError);
  EXPECT_THROW(FdfvSolver2D(euler2d_model(), upwind_family("1st-backward"), 1, 4, 0, 1, 0, 1),
               ValidationError);
}

TEST(Solver2D, CellAverageQuadrature) {
  const Profile2D p{[](double x, double y) { return Vars{x * x * y}; }};
  // Mean of x^2 y over [0,1] x [0,2] is (1/3)(1) = 1/3.
  EXPECT_NEAR(cell_average_2d(p, 0, 1, 0, 2, 1, 2)[0], 1.0 / 3.0, 1e-15);
}
