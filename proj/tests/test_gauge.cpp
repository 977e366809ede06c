#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dnls/dnls.hpp"
#include "support.hpp"

using namespace dnls;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

}  // namespace

TEST(Gauge, ZeroExponentIsIdentity) {
  std::mt19937_64 rng(1);
  const Field v = fixtures::random_bumps(default_grid(), rng);
  EXPECT_EQ(max_abs_diff(gauge_transform(v, 0.0), v), 0.0);
}

TEST(Gauge, UnitModulusFactor) {
  std::mt19937_64 rng(2);
  const Field v = fixtures::random_bumps(default_grid(), rng);
  const Field u = gauge_transform(v, 1.7);
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_NEAR(std::abs(u[j]), std::abs(v[j]), 1e-15);
}

TEST(Gauge, GaussianPhaseMatchesErf) {
  // |v|^2 = A^2 exp(-x^2/s^2): int_{-inf}^x = A^2 s sqrt(pi)/2 (1 + erf(x/s))
  const GridSpec g = default_grid();
  const double A = 1.2, s = 1.5, a = 0.75;
  const Field v = Field::from_function(g, [&](double x) { return Complex(A * std::exp(-x * x / (2 * s * s))); });
  const Field u = to_u_form(v);
  for (std::size_t j = 0; j < g.size(); j += 13) {
    const double theta = A * A * s * std::sqrt(std::numbers::pi) / 2.0 * (1.0 + std::erf(g.x(j) / s));
    EXPECT_LT(std::abs(u[j] - std::polar(1.0, a * theta) * v[j]), 1e-12) << g.x(j);
  }
}

TEST(Gauge, RoundTripAndMass) {
  std::mt19937_64 rng(3);
  const GridSpec g = default_grid();
  for (int trial = 0; trial < 10; ++trial) {
    const Field v = fixtures::random_bumps(g, rng, 2.0);
    EXPECT_LT(max_abs_diff(to_v_form(to_u_form(v)), v), 1e-10);
    EXPECT_LT(max_abs_diff(gauge_transform(gauge_transform(v, 0.75), -0.75), v), 1e-10);
    for (double a : {-3.0, -0.75, 0.4, 0.75, 10.0}) {
      EXPECT_NEAR(mass(gauge_transform(v, a)), mass(v), 1e-13 * std::max(1.0, mass(v)));
    }
  }
}

TEST(Gauge, Composition) {
  std::mt19937_64 rng(4);
  const GridSpec g = default_grid();
  for (int trial = 0; trial < 10; ++trial) {
    const Field v = fixtures::random_bumps(g, rng);
    const double a = -1.0 + 0.3 * trial, b = 0.5 - 0.2 * trial;
    EXPECT_LT(max_abs_diff(gauge_transform(gauge_transform(v, b), a), gauge_transform(v, a + b)), 1e-10);
  }
}

TEST(Gauge, TailMassSmallForDecayingFields) {
  const GridSpec g = default_grid();
  EXPECT_LT(gauge_tail_mass(varphi_profile({{1, 1}, 0, 0}, g)), 1e-15);
  const Field flat = Field::from_function(g, [](double) { return Complex(1.0); });
  EXPECT_NEAR(gauge_tail_mass(flat), 80.0 / 8.0, 1e-12);
}
