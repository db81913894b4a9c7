#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>

#include "fdfv/errors.hpp"
#include "fdfv/fvm.hpp"
#include "fdfv/problems.hpp"

using namespace fdfv;

namespace {

constexpr double kPi = std::numbers::pi;

FvState run_problem(const Problem& p, int n, Limiter limiter, double cfl) {
  FvmOptions o;
  o.limiter = limiter;
  FvmSolver1D solver(p.model, p.bc, n, p.x_left, p.x_right, o);
  RunOptions opt;
  opt.final_time = p.final_time;
  opt.cfl = cfl;
  return run_fvm(solver, solver.initialize(p.initial), opt).state;
}

double overshoot(const FvState& s, double hi) {
  double m = 0.0;
  for (int i = 0; i < s.n_cells; ++i) m = std::max(m, s.average(i)[0] - hi);
  return m;
}

}  // namespace

TEST(Limiter, VanAlbada) {
  EXPECT_EQ(limited_slope(1.0, -2.0, Limiter::van_albada), 0.0);
  EXPECT_EQ(limited_slope(0.0, 2.0, Limiter::van_albada), 0.0);
  EXPECT_DOUBLE_EQ(limited_slope(0.5, 0.5, Limiter::van_albada), 0.5);
  EXPECT_DOUBLE_EQ(limited_slope(1.0, 3.0, Limiter::van_albada), 1.2);
  EXPECT_DOUBLE_EQ(limited_slope(1.0, 3.0, Limiter::none), 2.0);
  EXPECT_EQ(parse_limiter("van-albada"), Limiter::van_albada);
  EXPECT_THROW(parse_limiter("minmod"), ValidationError);
}

TEST(RoeFlux, ConsistentWithPhysicalFlux) {
  const auto m = euler2d_model();
  const Vars w = primitive_to_conservative({0.7, 0.3, -1.1, 2.0}, 4);
  for (Axis axis : {Axis::x, Axis::y}) {
    const Vars f = roe_flux(*m, w, w, axis), g = m->flux(w, axis);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(f[k], g[k], 1e-14);
  }
}

TEST(RoeFlux, ScalarIsUpwind) {
  EXPECT_DOUBLE_EQ(roe_flux(*advection_model(1.5), {2.0}, {5.0}, Axis::x)[0], 3.0);
  EXPECT_DOUBLE_EQ(roe_flux(*advection_model(-1.5), {2.0}, {5.0}, Axis::x)[0], -7.5);
}

TEST(RoeFlux, EntropyFixOnlyWhenAsked) {
  const auto m = euler1d_model();
  const Vars wl = primitive_to_conservative({1.0, 0.9, 1.0}, 3);
  const Vars wr = primitive_to_conservative({0.5, 1.3, 0.4}, 3);
  FvmOptions fix;
  fix.entropy_fix = true;
  const Vars a = roe_flux(*m, wl, wr, Axis::x), b = roe_flux(*m, wl, wr, Axis::x, fix);
  double diff = 0.0;
  for (int k = 0; k < 3; ++k) diff += std::abs(a[k] - b[k]);
  EXPECT_GT(diff, 0.0);
}

TEST(Fvm1D, UniformStateIsSteady) {
  const Vars w = primitive_to_conservative({1.0, 0.5, 1.0}, 3);
  FvmSolver1D solver(euler1d_model(), BoundarySpec::periodic(), 10, 0, 1);
  const FvState s = solver.initialize(Profile{[w](double) { return w; }, {}});
  for (double v : solver.rhs(s, 0.0).data) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Fvm1D, ConstantAdvectionIsExact) {
  FvmSolver1D solver(advection_model(1.0), BoundarySpec::periodic(), 10, 0, 1);
  RunOptions opt;
  opt.final_time = 0.37;
  opt.cfl = 0.5;
  const FvState s =
      run_fvm(solver, solver.initialize(Profile{[](double) { return Vars{3.0}; }, {}}), opt).state;
  for (double v : s.data) EXPECT_DOUBLE_EQ(v, 3.0);
}

TEST(Fvm1D, ConservesOnPeriodicMesh) {
  const Problem& p = problem("square-wave");
  FvmSolver1D solver(p.model, p.bc, 40, p.x_left, p.x_right);
  const FvState s0 = solver.initialize(p.initial);
  RunOptions opt;
  opt.final_time = 1.0;
  opt.cfl = 0.5;
  const FvState s = run_fvm(solver, s0, opt).state;
  double a = 0.0, b = 0.0;
  for (int i = 0; i < 40; ++i) a += s0.average(i)[0] * s0.h, b += s.average(i)[0] * s.h;
  EXPECT_NEAR(a, b, 1e-12 * std::abs(a));
}

TEST(Fvm1D, SecondOrderWithoutLimiter) {
  auto err = [](int n) {
    FvmSolver1D solver(advection_model(1.0), BoundarySpec::periodic(), n, 0, 1);
    const Profile ic{[](double x) { return Vars{std::sin(2 * kPi * x)}; }, {}};
    RunOptions opt;
    opt.final_time = 1.0;
    opt.cfl = 0.5;
    const FvState s = run_fvm(solver, solver.initialize(ic), opt).state;
    const FvState exact = solver.initialize(ic);
    double e = 0.0;
    for (int i = 0; i < n; ++i) e += std::abs(s.average(i)[0] - exact.average(i)[0]) * s.h;
    return e;
  };
  EXPECT_NEAR(std::log2(err(80) / err(160)), 2.0, 0.2);
}

TEST(Fvm1D, LimitedSodStaysInRange) {
  const FvState s = run_problem(problem("sod"), 100, Limiter::van_albada, 0.5);
  for (int i = 0; i < s.n_cells; ++i) {
    EXPECT_GE(s.average(i)[0], 0.12);
    EXPECT_LE(s.average(i)[0], 1.01);
  }
}

TEST(Fvm1D, UnlimitedSodLosesPositivity) {
  EXPECT_THROW(run_problem(problem("sod"), 20, Limiter::none, 0.5), BlowUpError);
}

TEST(Fvm1D, LimiterRemovesSquareWaveOvershoot) {
  const Problem& p = problem("square-wave");
  EXPECT_GT(overshoot(run_problem(p, 80, Limiter::none, 0.5), 2.0), 1e-2);
  EXPECT_LT(overshoot(run_problem(p, 80, Limiter::van_albada, 0.5), 2.0), 1e-12);
}

TEST(Fvm2D, UniformStateIsSteady) {
  const Vars w = primitive_to_conservative({1.0, 0.5, 0.25, 1.0}, 4);
  FvmSolver2D solver(euler2d_model(), 6, 5, 0, 1, 0, 1, FvmOptions{Limiter::van_albada});
  const FvState2D s = solver.initialize(Profile2D{[w](double, double) { return w; }});
  for (double v : solver.rhs(s, 0.0).data) EXPECT_NEAR(v, 0.0, 1e-14);
}

TEST(Fvm2D, VortexConserves) {
  const Problem& p = problem("vortex2d");
  FvmSolver2D solver(p.model, 16, 16, p.x_left, p.x_right, p.y_left, p.y_right,
                     FvmOptions{Limiter::van_albada});
  const FvState2D s0 = solver.initialize(p.initial_2d);
  RunOptions opt;
  opt.final_time = 1.0;
  opt.cfl = 0.3;
  const FvState2D s = run_fvm_2d(solver, s0, opt).state;
  for (int k = 0; k < 4; ++k) {
    double a = 0.0, b = 0.0;
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) a += s0.average(i, j)[k], b += s.average(i, j)[k];
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a)));
  }
}
