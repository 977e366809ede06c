#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "dnls/fft.hpp"
#include "dnls/grid.hpp"

namespace dnls {

namespace detail {

/// d/dx of periodic samples in place, Nyquist mode zeroed.
inline void differentiate(const GridSpec& grid, std::span<Complex> v) {
  Fft& fft = Fft::local(grid.size());
  fft.forward(v, v);
  const auto k = grid.wavenumbers();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= Complex(0.0, k[j]);
  if (grid.has_nyquist()) v[grid.nyquist_index()] = 0.0;
  fft.inverse(v, v);
}

inline void differentiate_twice(const GridSpec& grid, std::span<Complex> v) {
  Fft& fft = Fft::local(grid.size());
  fft.forward(v, v);
  const auto k = grid.wavenumbers();
  for (std::size_t j = 0; j < v.size(); ++j) v[j] *= -k[j] * k[j];
  fft.inverse(v, v);
}

/// Fixed-order sequential sum times spacing.
template <class T>
T rectangle_sum(std::span<const T> v, double h) {
  T acc{};
  for (const T& z : v) acc += z;
  return acc * h;
}

}  // namespace detail

/// Fourier differentiation of a periodic field.
inline Field spectral_derivative(const Field& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  detail::differentiate(f.grid(), v);
  return Field(f.grid(), std::move(v));
}

inline Field spectral_second_derivative(const Field& f) {
  std::vector<Complex> v(f.values().begin(), f.values().end());
  detail::differentiate_twice(f.grid(), v);
  return Field(f.grid(), std::move(v));
}

/// Periodic rectangle rule sum_j f_j * h, accumulated in index order.
inline Complex quadrature(const Field& f) {
  return detail::rectangle_sum(f.values(), f.grid().spacing());
}

inline double quadrature(std::span<const double> v, double h) {
  return detail::rectangle_sum(v, h);
}

enum class PrimitiveRule {
  /// F(x_j) = sum_{m<j} f_m h. First order.
  Rectangle,
  /// Mean part integrated exactly, zero-mean part integrated in Fourier
  /// space; spectrally accurate for smooth decaying integrands.
  Spectral,
};

/// Running primitive from the left grid edge, F(-L) = 0.
inline Field cumulative_integral(const Field& f, PrimitiveRule rule = PrimitiveRule::Rectangle) {
  const GridSpec& g = f.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  std::vector<Complex> out(n);
  if (rule == PrimitiveRule::Rectangle) {
    Complex acc{};
    for (std::size_t j = 0; j < n; ++j) {
      out[j] = acc * h;
      acc += f[j];
    }
    return Field(g, std::move(out));
  }

  Fft& fft = Fft::local(n);
  std::vector<Complex> spec(f.values().begin(), f.values().end());
  fft.forward(spec, spec);
  const Complex mean = spec[0] / static_cast<double>(n);
  const auto k = g.wavenumbers();
  spec[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) spec[j] /= Complex(0.0, k[j]);
  if (g.has_nyquist()) spec[g.nyquist_index()] = 0.0;
  fft.inverse(spec, spec);
  const Complex base = spec[0];
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = mean * (g.x(j) + g.half_width()) + (spec[j] - base);
  }
  return Field(g, std::move(out));
}

struct Norms {
  double l2_sq = 0.0;     ///< int |f|^2
  double h1dot_sq = 0.0;  ///< int |f_x|^2
  double l4_4 = 0.0;      ///< int |f|^4
  double l6_6 = 0.0;      ///< int |f|^6
};

inline Norms norms(const Field& f) {
  const Field fx = spectral_derivative(f);
  const std::size_t n = f.size();
  std::vector<double> a2(n), d2(n), a4(n), a6(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = std::norm(f[j]);
    a2[j] = r;
    a4[j] = r * r;
    a6[j] = r * r * r;
    d2[j] = std::norm(fx[j]);
  }
  const double h = f.grid().spacing();
  return {quadrature(a2, h), quadrature(d2, h), quadrature(a4, h), quadrature(a6, h)};
}

/// Discrete L^2 norm (not squared).
inline double l2_norm(const Field& f) {
  std::vector<double> a2(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) a2[j] = std::norm(f[j]);
  return std::sqrt(quadrature(a2, f.grid().spacing()));
}

inline double l2_distance(const Field& a, const Field& b) { return l2_norm(a - b); }

}  // namespace dnls
