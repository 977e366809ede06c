#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// G_a(v) = exp(i a int_{-inf}^x |v|^2) v, with the lower limit truncated at
/// the left grid edge.
///
/// The primitive uses PrimitiveRule::Spectral. The first-order rectangle
/// primitive leaves an O(h |v|^2) phase error that does not cancel between
/// the two flows.
inline Field gauge_transform(const Field& v, double a) {
  const Field density = v.map([](Complex z) { return Complex(std::norm(z)); });
  const Field theta = cumulative_integral(density, PrimitiveRule::Spectral);
  std::vector<Complex> out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    out[j] = std::polar(1.0, a * theta[j].real()) * v[j];
  }
  return Field(v.grid(), std::move(out));
}

inline Field to_u_form(const Field& v) { return gauge_transform(v, 0.75); }
inline Field to_v_form(const Field& u) { return gauge_transform(u, -0.75); }

/// Mass of |v|^2 in the outer 1/16 of the box on each side. Bounds how much
/// the truncated lower limit can matter for a decaying field.
inline double gauge_tail_mass(const Field& v) {
  const std::size_t n = v.size();
  const std::size_t band = std::max<std::size_t>(1, n / 16);
  double acc = 0.0;
  for (std::size_t j = 0; j < band; ++j) acc += std::norm(v[j]);
  for (std::size_t j = n - band; j < n; ++j) acc += std::norm(v[j]);
  return acc * v.grid().spacing();
}

}  // namespace dnls
