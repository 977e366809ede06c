#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "dnls/dnls.hpp"

namespace dnls::fixtures {

/// Sum of a few modulated Gaussians; smooth and decaying well inside the
/// default box, so spectral quantities are accurate to round-off.
inline Field random_bumps(const GridSpec& grid, std::mt19937_64& rng, double amp_max = 1.0) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const int count = 1 + static_cast<int>(U(rng) * 3.0);
  struct Bump { double a, x0, w, k, th; };
  std::vector<Bump> bumps;
  for (int i = 0; i < count; ++i) {
    bumps.push_back({amp_max * (0.2 + 0.8 * U(rng)), -8.0 + 16.0 * U(rng), 0.7 + 2.0 * U(rng),
                     -2.0 + 4.0 * U(rng), 2.0 * std::numbers::pi * U(rng)});
  }
  return Field::from_function(grid, [&](double x) {
    Complex z = 0.0;
    for (const Bump& b : bumps) {
      const double y = (x - b.x0) / b.w;
      z += std::polar(b.a * std::exp(-y * y), b.th + b.k * x);
    }
    return z;
  });
}

/// lambda * f with lambda drawn below the Nehari root, retried until the
/// result classifies into K+.
inline Field random_kplus(const GridSpec& grid, const Params& p, double j0, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (;;) {
    const Field f = random_bumps(grid, rng);
    // K(lambda f) = lambda^2 (q2 + q4 s - q6 s^2), s = lambda^2.
    const ScalingPolynomial poly = ScalingPolynomial::of(f, p);
    const double s0 = (poly.q4 + std::sqrt(poly.q4 * poly.q4 + 4.0 * poly.q2 * poly.q6)) / (2.0 * poly.q6);
    const double lambda0 = std::sqrt(s0);
    Field g = f;
    g *= lambda0 * (0.05 + 0.95 * U(rng));
    if (classify(g, p, j0).set == InvariantSet::KPlus) return g;
  }
}

}  // namespace dnls::fixtures
