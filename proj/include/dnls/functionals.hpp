#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "dnls/grid.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// Every scalar functional of one field at one (omega, c).
///
/// kq, kn and h are only defined for the admissible regimes (subcritical and
/// critical with c > 0); elsewhere they are empty.
struct FunctionalReport {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double action = 0.0;
  double nehari = 0.0;
  std::optional<double> quadratic_part;
  std::optional<double> nonlinear_part;
  std::optional<double> positive_part;
  Params params;
  Regime regime = Regime::Subcritical;
};

/// Pointwise integrands of a field, integrated once.
struct Integrals {
  double l2 = 0.0;      ///< int |f|^2
  double grad = 0.0;    ///< int |f_x|^2
  double im_flux = 0.0; ///< int Im(conj(f) f_x)
  double l4 = 0.0;      ///< int |f|^4
  double l6 = 0.0;      ///< int |f|^6

  static Integrals of(const Field& f) {
    const Field fx = spectral_derivative(f);
    const std::size_t n = f.size();
    std::vector<double> a(n), d(n), im(n), a2(n), a3(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double r = std::norm(f[j]);
      a[j] = r;
      d[j] = std::norm(fx[j]);
      im[j] = std::imag(std::conj(f[j]) * fx[j]);
      a2[j] = r * r;
      a3[j] = r * r * r;
    }
    const double h = f.grid().spacing();
    return {quadrature(a, h), quadrature(d, h), quadrature(im, h), quadrature(a2, h),
            quadrature(a3, h)};
  }
};

inline double mass(const Field& f) { return 0.5 * Integrals::of(f).l2; }

inline double momentum(const Field& f) {
  const Integrals in = Integrals::of(f);
  return -0.5 * in.im_flux + 0.125 * in.l4;
}

inline double energy(const Field& f) {
  const Integrals in = Integrals::of(f);
  return 0.5 * in.grad - in.l6 / 32.0;
}

/// J = E + omega M + c P.
inline double action_J(const Field& f, const Params& p) {
  const Integrals in = Integrals::of(f);
  const double m = 0.5 * in.l2;
  const double mom = -0.5 * in.im_flux + 0.125 * in.l4;
  const double e = 0.5 * in.grad - in.l6 / 32.0;
  return e + p.omega * m + p.c * mom;
}

/// J from its expanded integrand, summed as one pointwise density.
inline double action_J_expanded(const Field& f, const Params& p) {
  const Field fx = spectral_derivative(f);
  std::vector<double> dens(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::norm(f[j]);
    dens[j] = 0.5 * std::norm(fx[j]) - a * a * a / 32.0 + 0.5 * p.omega * a -
              0.5 * p.c * std::imag(std::conj(f[j]) * fx[j]) + 0.125 * p.c * a * a;
  }
  return quadrature(dens, f.grid().spacing());
}

/// K from its pointwise integrand. Defined for every (omega, c).
inline double nehari_value(const Field& f, const Params& p) {
  const Field fx = spectral_derivative(f);
  std::vector<double> dens(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::norm(f[j]);
    dens[j] = std::norm(fx[j]) - (3.0 / 16.0) * a * a * a + p.omega * a -
              p.c * std::imag(std::conj(f[j]) * fx[j]) + 0.5 * p.c * a * a;
  }
  return quadrature(dens, f.grid().spacing());
}

struct NehariParts {
  double k = 0.0;
  double kq = 0.0;
  double kn = 0.0;
};

/// K = KQ - KN with the regime-dependent split.
///
/// Subcritical: KQ = int |f_x|^2 + w|f|^2 - c Im(conj f f_x),
///              KN = int (3/16)|f|^6 - (c/2)|f|^4.
/// Critical:    KQ additionally carries (c/2)|f|^4, KN = (3/16) int |f|^6.
inline NehariParts nehari_K(const Field& f, const Params& p) {
  require_admissible(p, "nehari_K split");
  const Integrals in = Integrals::of(f);
  const double quad = in.grad + p.omega * in.l2 - p.c * in.im_flux;
  NehariParts out;
  if (p.regime() == Regime::Subcritical) {
    out.kq = quad;
    out.kn = (3.0 / 16.0) * in.l6 - 0.5 * p.c * in.l4;
  } else {
    out.kq = quad + 0.5 * p.c * in.l4;
    out.kn = (3.0 / 16.0) * in.l6;
  }
  out.k = out.kq - out.kn;
  return out;
}

/// ||d/dx (e^{-icx/2} f)||_{L^2}^2, evaluated pointwise as |f_x - i(c/2) f|^2
/// so that no non-periodic phase is differentiated.
inline double xc_gradient_sq(const Field& f, double c) {
  const Field fx = spectral_derivative(f);
  std::vector<double> dens(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    dens[j] = std::norm(fx[j] - Complex(0.0, 0.5 * c) * f[j]);
  }
  return quadrature(dens, f.grid().spacing());
}

inline double xc_gradient_norm(const Field& f, double c) { return std::sqrt(xc_gradient_sq(f, c)); }

/// ||e^{-icx/2} f||_{L^4} = ||f||_{L^4}.
inline double xc_l4_norm(const Field& f) { return std::pow(norms(f).l4_4, 0.25); }

/// Subcritical: H = J - K/4. Critical: H = J - K/6.
inline double positive_H(const Field& f, const Params& p) {
  require_admissible(p, "positive_H");
  const double j = action_J(f, p);
  const double k = nehari_value(f, p);
  return p.regime() == Regime::Subcritical ? j - 0.25 * k : j - k / 6.0;
}

/// H from the manifestly nonnegative completed-square integrand.
inline double positive_H_direct(const Field& f, const Params& p) {
  require_admissible(p, "positive_H");
  const Field fx = spectral_derivative(f);
  const double m = p.omega - 0.25 * p.c * p.c;
  const bool sub = p.regime() == Regime::Subcritical;
  std::vector<double> dens(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double a = std::norm(f[j]);
    const double g = std::norm(fx[j] - Complex(0.0, 0.5 * p.c) * f[j]);
    dens[j] = sub ? 0.25 * (g + m * a + a * a * a / 16.0) : (g + m * a + 0.125 * p.c * a * a) / 3.0;
  }
  return quadrature(dens, f.grid().spacing());
}

inline FunctionalReport functional_report(const Field& f, const Params& p) {
  const Integrals in = Integrals::of(f);
  FunctionalReport r;
  r.params = p;
  r.regime = p.regime();
  r.mass = 0.5 * in.l2;
  r.momentum = -0.5 * in.im_flux + 0.125 * in.l4;
  r.energy = 0.5 * in.grad - in.l6 / 32.0;
  r.action = r.energy + p.omega * r.mass + p.c * r.momentum;
  const double quad = in.grad + p.omega * in.l2 - p.c * in.im_flux;
  r.nehari = quad + 0.5 * p.c * in.l4 - (3.0 / 16.0) * in.l6;
  if (r.regime == Regime::Subcritical) {
    r.quadratic_part = quad;
    r.nonlinear_part = (3.0 / 16.0) * in.l6 - 0.5 * p.c * in.l4;
    r.positive_part = r.action - 0.25 * r.nehari;
  } else if (r.regime == Regime::CriticalPositive) {
    r.quadratic_part = quad + 0.5 * p.c * in.l4;
    r.nonlinear_part = (3.0 / 16.0) * in.l6;
    r.positive_part = r.action - r.nehari / 6.0;
  }
  return r;
}

/// J, K and H along the ray lambda -> lambda f.
///
/// K(lambda f) = q2 lambda^2 + q4 lambda^4 - q6 lambda^6 with
/// q2 = int |f_x|^2 + w|f|^2 - c Im(conj f f_x), q4 = (c/2) int |f|^4,
/// q6 = (3/16) int |f|^6; J(lambda f) = q2/2 lambda^2 + q4/4 lambda^4 - q6/6 lambda^6.
struct ScalingPolynomial {
  double q2 = 0.0;
  double q4 = 0.0;
  double q6 = 0.0;
  Regime regime = Regime::Subcritical;

  static ScalingPolynomial of(const Field& f, const Params& p) {
    const Integrals in = Integrals::of(f);
    return {in.grad + p.omega * in.l2 - p.c * in.im_flux, 0.5 * p.c * in.l4, (3.0 / 16.0) * in.l6,
            p.regime()};
  }

  [[nodiscard]] double nehari(double lambda) const {
    const double s = lambda * lambda;
    return s * (q2 + s * (q4 - s * q6));
  }
  [[nodiscard]] double action(double lambda) const {
    const double s = lambda * lambda;
    return s * (0.5 * q2 + s * (0.25 * q4 - s * q6 / 6.0));
  }
  [[nodiscard]] double positive(double lambda) const {
    return regime == Regime::Subcritical ? action(lambda) - 0.25 * nehari(lambda)
                                         : action(lambda) - nehari(lambda) / 6.0;
  }
};

}  // namespace dnls
