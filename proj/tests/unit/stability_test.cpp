#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fdfv/errors.hpp"
#include "fdfv/stability.hpp"

using namespace fdfv;

namespace {

const Complex I(0.0, 1.0);

// One step of the tableau on y' = z y with unit step, stage by stage.
Complex direct_rk(const RKScheme& s, Complex z) {
  std::vector<Complex> k;
  for (int i = 0; i < s.stage_count(); ++i) {
    Complex y = 1.0;
    for (int j = 0; j < i; ++j) y += detail::to_double(s.stage_coefficients[i][j]) * k[j];
    k.push_back(z * y);
  }
  Complex out = 1.0;
  for (int i = 0; i < s.stage_count(); ++i) out += detail::to_double(s.output_weights[i]) * k[i];
  return out;
}

}  // namespace

TEST(Symbol, SmallThetaBranches) {
  const double theta = 1e-3;
  const SymbolSpectrum s = symbol(catalog("1st-backward"), theta);
  EXPECT_LT(std::abs(s.lambda1 - I), 1e-5);
  EXPECT_NEAR(s.lambda2.real(), 2.0 / theta, 0.01 * 2.0 / theta);
}

TEST(Symbol, RootIdentities) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(1e-3, std::numbers::pi);
  for (const auto& name : catalog_names()) {
    for (int n = 0; n < 20; ++n) {
      const SymbolSpectrum s = symbol(catalog(name), dist(rng));
      const double scale = std::max(1.0, std::abs(s.b_sym));
      EXPECT_LT(std::abs(s.lambda1 + s.lambda2 - s.b_sym), 1e-10 * scale) << name;
      EXPECT_LT(std::abs(s.lambda1 * s.lambda2 + I * s.a_sym), 1e-10 * scale * scale) << name;
    }
  }
}

TEST(Symbol, MatchesDenseEigenSolver) {
  const SymbolSpectrum s = symbol(catalog("3rd-B-biased"), std::numbers::pi / 4);
  Eigen::Matrix2cd c;
  c << 0.0, I, s.a_sym, s.b_sym;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(c);
  auto ev = solver.eigenvalues();
  const double d1 = std::min(std::abs(ev[0] - s.lambda1), std::abs(ev[1] - s.lambda1));
  const double d2 = std::min(std::abs(ev[0] - s.lambda2), std::abs(ev[1] - s.lambda2));
  EXPECT_LT(d1, 1e-10);
  EXPECT_LT(d2, 1e-10);
  EXPECT_GT(std::abs(s.lambda1 - s.lambda2), 1e-3);
}

TEST(Symbol, MatchesDirectFormulas) {
  const DDOStencil& st = catalog("2nd-backward");
  const double theta = 0.7;
  Complex alpha_sum = 0.0, beta_sum = 0.0;
  for (const auto& [l, a] : st.alpha()) alpha_sum += detail::to_double(a) * std::exp(I * (l * theta));
  for (const auto& [l, b] : st.beta()) beta_sum += detail::to_double(b) * std::exp(I * (l * theta));
  const Complex a = (1.0 - std::exp(-I * theta)) / (I * theta * theta) * alpha_sum;
  const Complex b = beta_sum / theta;
  const SymbolSpectrum s = symbol(st, theta);
  EXPECT_LT(std::abs(s.a_sym - a), 1e-12);
  EXPECT_LT(std::abs(s.b_sym - b), 1e-12);
}

TEST(Symbol, RejectsZeroTheta) {
  EXPECT_THROW(symbol(catalog("1st-backward"), 0.0), ValidationError);
  EXPECT_THROW(symbol(catalog("1st-backward"), 4.0), ValidationError);
}

TEST(Diagnostics, FourthBackwardIsUnstableNearPi) {
  const DiagnosticCurves c = diagnostics(catalog("4th-backward"), default_theta_grid());
  EXPECT_GT(c.dissipation.back(), 0.0);
}

TEST(Diagnostics, FourthBBiasedIsDissipativeEverywhere) {
  const DiagnosticCurves c = diagnostics(catalog("4th-B-biased"), default_theta_grid());
  for (double e : c.dissipation) EXPECT_LE(e, 1e-12);
}

TEST(Diagnostics, ConsistentAtSmallTheta) {
  const std::vector<double> grid = {1e-4, 1e-3, 0.5, 1.0, std::numbers::pi};
  for (const std::string name : {"1st-backward", "2nd-backward", "3rd-B-biased",
                                 "3rd-backward", "4th-B-biased"}) {
    const DiagnosticCurves c = diagnostics(catalog(name), grid);
    EXPECT_NEAR(c.dispersion[0] / 1e-4, 1.0, 1e-3) << name;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      EXPECT_TRUE(std::isfinite(c.magnitude_avg[k]) && std::isfinite(c.magnitude_nodal[k]) &&
                  std::isfinite(c.noise_avg[k]) && std::isfinite(c.noise_nodal[k]))
          << name;
    }
  }
}

TEST(Diagnostics, BranchTrackedToI) {
  for (const std::string name : {"1st-backward", "2nd-backward", "3rd-B-biased",
                                 "3rd-backward", "4th-B-biased"}) {
    const auto grid = default_theta_grid();
    const DiagnosticCurves c = diagnostics(catalog(name), grid);
    // dispersion + i dissipation = lambda1 theta / i
    const Complex l1 = I * Complex(c.dispersion[0], c.dissipation[0]) / grid[0];
    EXPECT_LT(std::abs(l1 - I), 1e-3) << name;
  }
}

TEST(ThetaGrid, SortedInRange) {
  const auto g = default_theta_grid();
  EXPECT_EQ(g.size(), 1024u + 64u);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_GT(g.front(), 0.0);
  EXPECT_NEAR(g.front(), 1e-4, 1e-12);
  EXPECT_DOUBLE_EQ(g.back(), std::numbers::pi);
}

TEST(RkStability, ForwardEuler) {
  const Complex z(-0.3, 0.7);
  EXPECT_LT(std::abs(rk_stability_function(rk_scheme("fe"), z) - (1.0 + z)), 1e-15);
}

TEST(RkStability, ConsistentAtZero) {
  for (const auto& name : rk_scheme_names()) {
    EXPECT_LT(std::abs(rk_stability_function(rk_scheme(name), 0.0) - 1.0), 1e-15) << name;
  }
}

TEST(RkStability, MatchesStageByStageEvaluation) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-3.0, 1.0);
  for (const auto& name : rk_scheme_names()) {
    const RKScheme& s = rk_scheme(name);
    for (int n = 0; n < 20; ++n) {
      const Complex z(dist(rng), dist(rng));
      EXPECT_LT(std::abs(rk_stability_function(s, z) - direct_rk(s, z)), 1e-12) << name;
    }
  }
}

TEST(AsymptoticBound, KnownValues) {
  EXPECT_NEAR(asymptotic_bound(rk_scheme("fe"), 2.0), 1.0, 1e-6);
  EXPECT_NEAR(asymptotic_bound(rk_scheme("rk3"), 6.0), 0.418, 0.002);
  EXPECT_NEAR(asymptotic_bound(rk_scheme("rk5"), 5.0), 0.504, 0.002);
}

TEST(RealAxisLimit, Constants) {
  EXPECT_NEAR(real_axis_limit(rk_scheme("fe")), 2.0, 1e-6);
  EXPECT_NEAR(real_axis_limit(rk_scheme("rk2")), 2.0, 1e-6);
  EXPECT_NEAR(real_axis_limit(rk_scheme("rk3")), 2.51, 0.01);
  EXPECT_NEAR(real_axis_limit(rk_scheme("rk4")), 2.78, 0.01);
  EXPECT_NEAR(real_axis_limit(rk_scheme("rk5")), 2.52, 0.01);
}

TEST(MaxCourant, TableValues) {
  EXPECT_NEAR(max_courant(catalog("1st-backward"), rk_scheme("rk2")), 1.0, 0.005);
  EXPECT_NEAR(max_courant(catalog("3rd-backward"), rk_scheme("rk4")), 0.309, 0.005);
  EXPECT_NEAR(max_courant(catalog("4th-B-biased"), rk_scheme("rk5")), 0.494, 0.005);
}

TEST(MaxCourant, BelowAsymptoticBound) {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"1st-backward", "rk2"}, {"2nd-backward", "rk3"}, {"3rd-B-biased", "rk4"},
      {"3rd-backward", "rk4"}, {"4th-B-biased", "rk5"}};
  for (const auto& [st, rk] : pairs) {
    const double b0 = detail::to_double(catalog(st).b0());
    EXPECT_LE(max_courant(catalog(st), rk_scheme(rk)),
              asymptotic_bound(rk_scheme(rk), b0) + 1e-3)
        << st;
  }
}

TEST(MaxCourant, FourthBackwardHasNoStableStep) {
  EXPECT_EQ(max_courant(catalog("4th-backward"), rk_scheme("rk5")), 0.0);
}

TEST(Amplification, StableBelowLimitUnstableAbove) {
  const DDOStencil& s = catalog("2nd-backward");
  const RKScheme& rk = rk_scheme("rk3");
  const double lmax = max_courant(s, rk);
  double below = 0.0, above = 0.0;
  for (const double theta : default_theta_grid()) {
    below = std::max(below, amplification(s, rk, theta, 0.98 * lmax));
    above = std::max(above, amplification(s, rk, theta, 1.1 * lmax));
  }
  EXPECT_LE(below, 1.0 + 1e-10);
  EXPECT_GT(above, 1.0 + 1e-6);
}
