#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// One member of the two-parameter solitary-wave family, placed at phase
/// theta0 and position x0.
struct SolitonSpec {
  Params params;
  double phase_shift = 0.0;
  double translation = 0.0;
};

/// Real profile phi_{omega,c}(x) at a single point.
///
/// Subcritical: [sqrt(w)/(4w-c^2) (cosh(sqrt(4w-c^2) x) - c/(2 sqrt(w)))]^{-1/2}.
/// Critical with c > 0: 2 sqrt(c) / sqrt(c^2 x^2 + 1).
inline double phi_value(const Params& p, double x) {
  require_admissible(p, "phi_profile");
  if (p.regime() == Regime::CriticalPositive) {
    return 2.0 * std::sqrt(p.c) / std::sqrt(p.c * p.c * x * x + 1.0);
  }
  const double disc = 4.0 * p.omega - p.c * p.c;
  const double sw = std::sqrt(p.omega);
  const double s = std::sqrt(disc);
  // cosh overflows to +inf far out, giving the correct limit 0.
  const double bracket = sw / disc * (std::cosh(s * x) - p.c / (2.0 * sw));
  return 1.0 / std::sqrt(bracket);
}

inline Field phi_profile(const SolitonSpec& spec, const GridSpec& grid) {
  require_admissible(spec.params, "phi_profile");
  return Field::from_function(grid, [&](double x) { return phi_value(spec.params, x - spec.translation); });
}

/// e^{i theta0} e^{i (c/2)(x - x0)} phi(x - x0).
inline Field varphi_profile(const SolitonSpec& spec, const GridSpec& grid) {
  require_admissible(spec.params, "varphi_profile");
  const double c = spec.params.c;
  return Field::from_function(grid, [&](double x) {
    const double y = x - spec.translation;
    return std::polar(phi_value(spec.params, y), spec.phase_shift + 0.5 * c * y);
  });
}

/// Exact solution e^{i omega t} varphi(x - c t) of the u-form equation.
inline Field traveling_wave(const SolitonSpec& spec, const GridSpec& grid, double t) {
  SolitonSpec moved = spec;
  moved.phase_shift += spec.params.omega * t;
  moved.translation += spec.params.c * t;
  return varphi_profile(moved, grid);
}

/// ||phi_{omega,c}||_{L^2}^2 = 8 atan sqrt((2 sqrt(w) + c)/(2 sqrt(w) - c)).
/// Only the subcritical branch has this closed form.
inline double soliton_mass(const Params& p) {
  if (p.regime() != Regime::Subcritical) {
    require_admissible(p, "soliton_mass");
    throw UnsupportedRegime("soliton_mass: closed form only holds for 4*omega > c^2");
  }
  const double sw2 = 2.0 * std::sqrt(p.omega);
  return 8.0 * std::atan(std::sqrt((sw2 + p.c) / (sw2 - p.c)));
}

namespace detail {

inline double residual_norm(const GridSpec& g, const std::vector<Complex>& r) {
  std::vector<double> a(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) a[j] = std::norm(r[j]);
  return std::sqrt(quadrature(a, g.spacing()));
}

}  // namespace detail

/// ||w f - f_xx - (3/16)|f|^4 f + i c f_x + (c/2)|f|^2 f||_{L^2}.
inline double residual_semilinear(const Field& f, const Params& p) {
  const Field fx = spectral_derivative(f);
  const Field fxx = spectral_second_derivative(f);
  const Complex ic(0.0, p.c);
  std::vector<Complex> r(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Complex z = f[j];
    const double a = std::norm(z);
    r[j] = p.omega * z - fxx[j] - (3.0 / 16.0) * a * a * z + ic * fx[j] + 0.5 * p.c * a * z;
  }
  return detail::residual_norm(f.grid(), r);
}

/// Residual of the quasilinear traveling-wave equation:
/// ||w f - f_xx - (3/16)|f|^4 f + i c f_x - (i/2)|f|^2 f_x + (i/2) f^2 conj(f)_x||.
inline double residual_quasilinear(const Field& f, const Params& p) {
  const Field fx = spectral_derivative(f);
  const Field fbx = spectral_derivative(f.conj());
  const Field fxx = spectral_second_derivative(f);
  const Complex ic(0.0, p.c);
  const Complex half_i(0.0, 0.5);
  std::vector<Complex> r(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const Complex z = f[j];
    const double a = std::norm(z);
    r[j] = p.omega * z - fxx[j] - (3.0 / 16.0) * a * a * z + ic * fx[j] - half_i * a * fx[j] +
           half_i * z * z * fbx[j];
  }
  return detail::residual_norm(f.grid(), r);
}

/// Profile equation with the e^{icx/2} factor removed (semilinear form):
/// ||(w - c^2/4) g - g'' - (3/16)|g|^4 g + (c/2)|g|^2 g||.
inline double residual_profile_semilinear(const Field& g, const Params& p) {
  const Field gxx = spectral_second_derivative(g);
  const double m = p.omega - 0.25 * p.c * p.c;
  std::vector<Complex> r(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Complex z = g[j];
    const double a = std::norm(z);
    r[j] = m * z - gxx[j] - (3.0 / 16.0) * a * a * z + 0.5 * p.c * a * z;
  }
  return detail::residual_norm(g.grid(), r);
}

/// Profile equation keeping the quasilinear terms
/// - (i/2)|g|^2 g' + (i/2) g^2 conj(g)'.
inline double residual_profile_quasilinear(const Field& g, const Params& p) {
  const Field gx = spectral_derivative(g);
  const Field gbx = spectral_derivative(g.conj());
  const Field gxx = spectral_second_derivative(g);
  const double m = p.omega - 0.25 * p.c * p.c;
  const Complex half_i(0.0, 0.5);
  std::vector<Complex> r(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Complex z = g[j];
    const double a = std::norm(z);
    r[j] = m * z - gxx[j] - (3.0 / 16.0) * a * a * z + 0.5 * p.c * a * z - half_i * a * gx[j] +
           half_i * z * z * gbx[j];
  }
  return detail::residual_norm(g.grid(), r);
}

}  // namespace dnls
