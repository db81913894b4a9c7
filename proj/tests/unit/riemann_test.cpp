#include <gtest/gtest.h>

#include <cmath>

#include "fdfv/errors.hpp"
#include "fdfv/riemann.hpp"

using namespace fdfv;

namespace {

double energy_flux(const Primitive1D& s) {
  const double e = s.p / 0.4 + 0.5 * s.rho * s.u * s.u;
  return (e + s.p) * s.u;
}

}  // namespace

TEST(ExactRiemann, SodStarState) {
  const ExactRiemann r({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
  EXPECT_NEAR(r.star_pressure(), 0.30313, 1e-5);
  EXPECT_NEAR(r.star_velocity(), 0.92745, 1e-5);
}

TEST(ExactRiemann, FarFieldIsInitialData) {
  const ExactRiemann r({1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
  EXPECT_EQ(r.sample(-10.0).rho, 1.0);
  EXPECT_EQ(r.sample(10.0).p, 0.1);
}

TEST(ExactRiemann, ShockSatisfiesJumpConditions) {
  const Primitive1D right{0.125, 0.0, 0.1};
  const ExactRiemann r({1.0, 0.0, 1.0}, right);
  // Locate the right shock by sampling.
  double lo = r.star_velocity(), hi = 5.0;
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    (r.sample(mid).p > 0.5 * (r.star_pressure() + right.p) ? lo : hi) = mid;
  }
  const double s = 0.5 * (lo + hi);
  const Primitive1D star = r.sample(s - 1e-6);
  EXPECT_NEAR(s * (star.rho - right.rho), star.rho * star.u - right.rho * right.u, 1e-5);
  EXPECT_NEAR(s * (star.rho * star.u - right.rho * right.u),
              star.rho * star.u * star.u + star.p - right.p, 1e-5);
  const double el = star.p / 0.4 + 0.5 * star.rho * star.u * star.u, er = right.p / 0.4;
  EXPECT_NEAR(s * (el - er), energy_flux(star) - energy_flux(right), 1e-5);
}

TEST(ExactRiemann, SymmetricData) {
  const ExactRiemann r({1.0, -1.0, 1.0}, {1.0, 1.0, 1.0});
  EXPECT_NEAR(r.star_velocity(), 0.0, 1e-12);
  EXPECT_LT(r.star_pressure(), 1.0);
  EXPECT_NEAR(r.sample(0.3).rho, r.sample(-0.3).rho, 1e-12);
}

TEST(ExactRiemann, VacuumIsRejected) {
  EXPECT_THROW(ExactRiemann({1.0, -20.0, 1.0}, {1.0, 20.0, 1.0}), ValidationError);
}
