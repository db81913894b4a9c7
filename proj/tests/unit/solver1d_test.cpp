#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fdfv/errors.hpp"
#include "fdfv/solver1d.hpp"

using namespace fdfv;

namespace {

constexpr double kPi = std::numbers::pi;

Profile smooth(std::function<double(double)> u) {
  return Profile{[u](double x) { return Vars{u(x)}; }, {}};
}

double total(const MeshState& s, int component = 0) {
  double sum = 0.0;
  for (int i = 0; i < s.n_cells; ++i) sum += s.average_ptr(i)[component] * s.h;
  return sum;
}

double max_abs(const MeshState& s) {
  double m = 0.0;
  for (double v : s.data) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Initialize, ConstantIsExact) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("2nd-backward"),
                      BoundarySpec::periodic(), 10, 0.0, 1.0);
  const MeshState s = solver.initialize(smooth([](double) { return 4.25; }));
  for (double v : s.data) EXPECT_EQ(v, 4.25);
}

TEST(Initialize, GaussAverageOfSmoothData) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("4th-B-biased"),
                      BoundarySpec::periodic(), 20, -1.0, 1.0);
  const MeshState s = solver.initialize(smooth([](double x) { return 1 + 0.5 * std::sin(kPi * x); }));
  auto U = [](double x) { return x - 0.5 * std::cos(kPi * x) / kPi; };
  EXPECT_NEAR(s.average(0)[0], (U(-0.9) - U(-1.0)) / 0.1, 1e-6);
  EXPECT_DOUBLE_EQ(s.nodal(3)[0], 1 + 0.5 * std::sin(kPi * (-1.0 + 0.3)));
}

TEST(Initialize, ExactAveragesAcrossJump) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                      BoundarySpec::periodic(), 3, 0.0, 1.0);
  const Profile step{[](double x) { return Vars{x < 0.5 ? 2.0 : 0.0}; }, {0.5}};
  const MeshState s = solver.initialize(step);
  EXPECT_NEAR(s.average(0)[0], 2.0, 1e-15);
  EXPECT_NEAR(s.average(1)[0], 1.0, 1e-14);
  EXPECT_NEAR(s.average(2)[0], 0.0, 1e-15);
}

TEST(Rhs, ConstantStateIsSteady) {
  FdfvSolver1D solver(euler1d_model(), upwind_family("3rd-B-biased"), BoundarySpec::periodic(),
                      16, 0.0, 1.0);
  const Vars w = primitive_to_conservative({1.3, 0.4, 2.0}, 3);
  const MeshState s = solver.initialize(Profile{[w](double) { return w; }, {}});
  const MeshState r = solver.rhs(s, 0.0);
  for (double v : r.data) EXPECT_NEAR(v, 0.0, 1e-13);
}

TEST(Rhs, PositiveSpeedUsesBackwardFamily) {
  FdfvSolver1D solver(advection_model(2.0), upwind_family("2nd-backward"),
                      BoundarySpec::periodic(), 8, 0.0, 1.0);
  for (int f = 0; f < 8; ++f) EXPECT_EQ(solver.stencil_at(f, true)->name(), "2nd-backward");
  for (int f = 0; f < 8; ++f) EXPECT_EQ(solver.stencil_at(f, false)->name(), "2nd-forward");
  // The last face aliases the first.
  EXPECT_EQ(solver.stencil_at(8, true), nullptr);
}

TEST(Rhs, AveragesMoveWithFluxDifference) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FdfvSolver1D solver(nonconvex_model(), upwind_family("1st-backward"), BoundarySpec::periodic(),
                      12, 0.0, 1.2);
  MeshState s = solver.initialize(smooth([](double) { return 0.0; }));
  for (double& v : s.data) v = dist(rng);
  solver.apply_bc(s, 0.0);
  const MeshState r = solver.rhs(s, 0.0);
  const auto m = nonconvex_model();
  for (int i = 0; i < 12; ++i) {
    const double expect = -(m->flux(s.nodal(i + 1))[0] - m->flux(s.nodal(i))[0]) / 0.1;
    EXPECT_NEAR(r.average(i)[0], expect, 1e-12);
  }
}

// Exact simple-wave data e^{ikx}: every face rate is -c e^{ikx_f} theta (a + b) / h,
// with a(theta), b(theta) evaluated directly from the coefficients.
TEST(Rhs, SimpleWaveMatchesSymbol) {
  const double c = 2.0;
  const int n = 32;
  const double h = 1.0 / n;
  for (const std::string name : {"1st-backward", "2nd-backward", "3rd-B-biased",
                                 "3rd-backward", "4th-B-biased"}) {
    const DDOStencil& st = catalog(name);
    for (int mode : {1, 3, 7}) {
      const double k = 2 * kPi * mode, theta = k * h;
      const std::complex<double> I(0, 1);
      std::complex<double> sa = 0, sb = 0;
      for (const auto& [l, a] : st.alpha()) sa += detail::to_double(a) * std::exp(I * (l * theta));
      for (const auto& [l, b] : st.beta()) sb += detail::to_double(b) * std::exp(I * (l * theta));
      const auto a = (1.0 - std::exp(-I * theta)) / (I * theta * theta) * sa;
      const auto b = sb / theta;
      for (const bool imag : {false, true}) {
        auto part = [imag](std::complex<double> z) { return imag ? z.imag() : z.real(); };
        FdfvSolver1D solver(advection_model(c), upwind_family(name), BoundarySpec::periodic(), n,
                            0.0, 1.0);
        MeshState s(n, 1, 0.0, h);
        for (int i = 0; i < n; ++i) {
          const auto avg = (std::exp(I * (k * (i + 1) * h)) - std::exp(I * (k * i * h))) / (I * k * h);
          s.average_ptr(i)[0] = part(avg);
        }
        for (int f = 0; f <= n; ++f) s.nodal_ptr(f)[0] = part(std::exp(I * (k * f * h)));
        const MeshState r = solver.rhs(s, 0.0);
        for (int f = 0; f < n; ++f) {
          const auto want = -c * std::exp(I * (k * f * h)) * theta * (a + b) / h;
          EXPECT_NEAR(r.nodal(f)[0], part(want), 1e-10 * std::abs(want)) << name << " mode " << mode;
        }
      }
    }
  }
}

TEST(Run, ConservesTotal) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("2nd-backward"),
                      BoundarySpec::periodic(), 50, -1.0, 1.0);
  const Profile square{[](double x) { return Vars{x <= 0.0 ? 2.0 : 1.0}; }, {0.0}};
  const MeshState s0 = solver.initialize(square);
  RunOptions opt;
  opt.final_time = 2.0;
  opt.cfl = 0.4;
  const auto r = run(solver, rk_scheme("rk3"), s0, opt);
  EXPECT_NEAR(total(r.state), total(s0), 1e-12 * std::abs(total(s0)));
  EXPECT_EQ(r.state.time, 2.0);
  EXPECT_EQ(r.state.nodal(0)[0], r.state.nodal(50)[0]);
}

TEST(Run, EulerConservesEveryComponent) {
  FdfvSolver1D solver(euler1d_model(), upwind_family("1st-backward"), BoundarySpec::periodic(),
                      40, 0.0, 1.0);
  const Profile ic{[](double x) {
                     return primitive_to_conservative({1 + 0.2 * std::sin(2 * kPi * x), 1.0, 1.0}, 3);
                   },
                   {}};
  const MeshState s0 = solver.initialize(ic);
  RunOptions opt;
  opt.final_time = 0.5;
  opt.cfl = 0.5;
  const auto r = run(solver, rk_scheme("rk2"), s0, opt);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(total(r.state, k), total(s0, k), 1e-12 * std::abs(total(s0, k)));
}

TEST(Run, LandsOnFinalTime) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                      BoundarySpec::periodic(), 10, 0.0, 1.0);
  RunOptions opt;
  opt.final_time = 0.123;
  opt.cfl = 0.7;
  const auto r = run(solver, rk_scheme("rk2"), solver.initialize(smooth([](double x) { return x; })), opt);
  EXPECT_EQ(r.state.time, 0.123);
  EXPECT_EQ(r.steps, static_cast<long>(std::ceil(0.123 / 0.07 - 1e-9)));
}

TEST(Run, RespectsLinearStabilityLimit) {
  auto amplification = [](double cfl, int n) {
    FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                        BoundarySpec::periodic(), n, 0.0, 1.0);
    const MeshState s0 = solver.initialize(smooth([](double x) { return std::sin(2 * kPi * x); }));
    RunOptions opt;
    opt.final_time = 10.0;
    opt.cfl = cfl;
    try {
      return max_abs(run(solver, rk_scheme("rk2"), s0, opt).state) / max_abs(s0);
    } catch (const BlowUpError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  EXPECT_LE(amplification(0.98, 40), 1.05);
  EXPECT_GT(amplification(1.1, 80), 1.05);
}

TEST(Run, BlowUpReportsStepAndTime) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                      BoundarySpec::periodic(), 20, 0.0, 1.0);
  RunOptions opt;
  opt.final_time = 100.0;
  opt.cfl = 3.0;
  try {
    run(solver, rk_scheme("rk2"), solver.initialize(smooth([](double x) { return std::sin(2 * kPi * x); })), opt);
    FAIL() << "expected BlowUpError";
  } catch (const BlowUpError& e) {
    EXPECT_GT(e.step(), 1);
    EXPECT_GT(e.time(), 0.0);
  }
}

TEST(Run, RejectsBadOptions) {
  FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                      BoundarySpec::periodic(), 4, 0.0, 1.0);
  RunOptions opt;
  opt.final_time = 1.0;
  opt.cfl = 0.0;
  EXPECT_THROW(run(solver, rk_scheme("rk2"), solver.initialize(smooth([](double) { return 1.0; })), opt),
               ValidationError);
}

TEST(Boundary, DirichletOverwrite) {
  auto g = [](double t) {
    return Vars{1 + 0.5 * std::pow(t + 0.5, 3) * std::sin(2 * kPi * (t + 0.5))};
  };
  FdfvSolver1D solver(advection_model(1.0), upwind_family("2nd-backward"),
                      BoundarySpec::dirichlet(g, g), 10, -0.5, 0.5);
  MeshState s = solver.initialize(smooth([](double) { return 0.0; }));
  solver.apply_bc(s, 0.3);
  EXPECT_EQ(s.nodal(0)[0], g(0.3)[0]);
  EXPECT_EQ(solver.stencil_at(0, true), nullptr);
}

TEST(Boundary, DirichletRateFromDerivative) {
  auto g = [](double t) { return Vars{std::sin(t)}; };
  FdfvSolver1D solver(advection_model(1.0), upwind_family("1st-backward"),
                      BoundarySpec::dirichlet(g, g), 10, 0.0, 1.0);
  const MeshState s = solver.initialize(smooth([](double x) { return std::sin(-x); }));
  EXPECT_NEAR(solver.rhs(s, 0.4).nodal(0)[0], std::cos(0.4), 1e-9);
}

TEST(Boundary, ClosuresStayInsideDomain) {
  auto g = [](double) { return Vars{1.0}; };
  FdfvSolver1D solver(advection_model(1.0), upwind_family("4th-B-biased"),
                      BoundarySpec::dirichlet(g, g), 12, 0.0, 1.0);
  for (int f = 1; f < 12; ++f) {
    for (bool positive : {true, false}) {
      const DDOStencil* st = solver.stencil_at(f, positive);
      ASSERT_NE(st, nullptr);
      EXPECT_GE(f + st->min_average_offset() - 1, 0);
      EXPECT_LE(f + st->max_average_offset() - 1, 11);
      EXPECT_GE(f + st->min_nodal_offset(), 0);
      EXPECT_LE(f + st->max_nodal_offset(), 12);
      EXPECT_EQ(st->b0() > Rational(0), positive);
    }
  }
  EXPECT_EQ(solver.stencil_at(6, true)->name(), "4th-B-biased");
  EXPECT_EQ(solver.stencil_at(1, true)->name(), "3rd-B-biased");
}

TEST(Boundary, NeumannThirdOrderFormula) {
  const double gn = 0.7;
  BoundarySpec bc;
  bc.left.kind = SideCondition::Kind::neumann;
  bc.left.value = [gn](double) { return Vars{gn}; };
  bc.right = bc.left;
  FdfvSolver1D solver(advection_model(1.0), upwind_family("3rd-backward"), bc, 8, 0.0, 1.0);
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  MeshState s(8, 1, 0.0, 0.125);
  for (double& v : s.data) v = dist(rng);
  solver.apply_bc(s, 0.0);
  const double h = 0.125;
  const double want = (s.average(1)[0] - 8 * s.nodal(1)[0] + 17 * s.average(0)[0] - 2 * h * gn) / 10;
  EXPECT_NEAR(s.nodal(0)[0], want, 1e-14);
}

TEST(Boundary, RejectsHalfPeriodic) {
  BoundarySpec bc = BoundarySpec::periodic();
  bc.right.kind = SideCondition::Kind::dirichlet;
  bc.right.value = [](double) { return Vars{0.0}; };
  EXPECT_THROW(FdfvSolver1D(advection_model(1.0), upwind_family("1st-backward"), bc, 4, 0.0, 1.0),
               ValidationError);
}
