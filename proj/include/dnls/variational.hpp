#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "dnls/functionals.hpp"
#include "dnls/grid.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

struct RescaleResult {
  double lambda0 = 1.0;
  Field g;
};

/// Largest lambda in (0, 1] with K(lambda f) = 0, by bisection on the exact
/// scaling polynomial. Throws NoRoot when K(f) > k_tol.
inline double nehari_root(const ScalingPolynomial& poly, double k_tol = 1e-10) {
  const double k1 = poly.nehari(1.0);
  if (std::abs(k1) <= k_tol) return 1.0;
  if (k1 > 0.0) {
    throw NoRoot("rescale_to_nehari: K(f) > 0, the root lies above lambda = 1");
  }
  // K(lambda) ~ q2 lambda^2 > 0 near zero; walk down to bracket the
  // sign change closest to 1.
  double hi = 1.0;
  double lo = 0.5;
  while (poly.nehari(lo) <= 0.0) {
    hi = lo;
    lo *= 0.5;
    if (lo < 1e-300) throw NoRoot("rescale_to_nehari: K stays nonpositive along the ray");
  }
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (poly.nehari(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::abs(poly.nehari(lo)) < std::abs(poly.nehari(hi)) ? lo : hi;
}

inline RescaleResult rescale_to_nehari(const Field& f, const Params& p, double k_tol = 1e-10) {
  const double lambda0 = nehari_root(ScalingPolynomial::of(f, p), k_tol);
  return {lambda0, lambda0 * f};
}

/// Even, radially nonincreasing rearrangement of real samples about x = 0.
///
/// Values are sorted in decreasing order (stable, so ties keep index order)
/// and laid out from the center index N/2 outward, right side first.
inline Field schwarz_symmetrize(const Field& f) {
  if (!f.is_real(1e-14)) throw ComplexInput("schwarz_symmetrize: expects a real-valued field");
  const std::size_t n = f.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return f[a].real() > f[b].real(); });

  std::vector<std::size_t> slots;
  slots.reserve(n);
  const std::size_t center = n / 2;
  slots.push_back(center);
  for (std::size_t m = 1; slots.size() < n; ++m) {
    if (center + m < n) slots.push_back(center + m);
    if (m <= center) slots.push_back(center - m);
  }
  std::vector<Complex> out(n);
  for (std::size_t r = 0; r < n; ++r) out[slots[r]] = Complex(f[order[r]].real(), 0.0);
  return Field(f.grid(), std::move(out));
}

struct MinimizeOptions {
  double k_tol = 1e-10;
  double j_tol = 1e-8;
  int symmetrize_every = 25;
  int max_iterations = 5000;
  double initial_step = 0.5;
  /// Relative amplitude of seeded noise added to the initial bump (0 = none).
  double init_noise = 0.0;
  std::uint64_t seed = 0;
};

struct HistoryEntry {
  int iteration = 0;
  double h = 0.0;
  double k = 0.0;
  bool symmetrized = false;
};

struct MinimizationResult {
  Field minimizer;
  std::vector<double> profile;
  double j_value = 0.0;
  double h_value = 0.0;
  double k_value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<HistoryEntry> history;
};

/// Functionals of the structured field e^{icx/2} phi for a real profile phi.
///
/// With the phase factored out, |varphi_x|^2 + w|varphi|^2 - c Im(conj varphi
/// varphi_x) = phi'^2 + (w - c^2/4) phi^2, so only the periodic profile is
/// ever differentiated.
class ProfileFunctional {
 public:
  ProfileFunctional(GridSpec grid, Params p) : grid_(std::move(grid)), p_(p) {}

  [[nodiscard]] ScalingPolynomial polynomial(std::span<const double> phi) const {
    const std::vector<double> d = derivative(phi);
    const std::size_t n = phi.size();
    const double m = p_.omega - 0.25 * p_.c * p_.c;
    std::vector<double> quad(n), a4(n), a6(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double s = phi[j] * phi[j];
      quad[j] = d[j] * d[j] + m * s;
      a4[j] = s * s;
      a6[j] = s * s * s;
    }
    const double h = grid_.spacing();
    return {quadrature(quad, h), 0.5 * p_.c * quadrature(a4, h), (3.0 / 16.0) * quadrature(a6, h),
            p_.regime()};
  }

  /// L^2 gradient of J: -phi'' + (w - c^2/4) phi + (c/2) phi^3 - (3/16) phi^5.
  [[nodiscard]] std::vector<double> gradient(std::span<const double> phi) const {
    std::vector<Complex> v(phi.begin(), phi.end());
    detail::differentiate_twice(grid_, v);
    const double m = p_.omega - 0.25 * p_.c * p_.c;
    std::vector<double> g(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) {
      const double s = phi[j] * phi[j];
      g[j] = -v[j].real() + m * phi[j] + 0.5 * p_.c * s * phi[j] - (3.0 / 16.0) * s * s * phi[j];
    }
    return g;
  }

  /// Applies (-d^2/dx^2 + mu)^{-1}.
  [[nodiscard]] std::vector<double> precondition(std::span<const double> g, double mu) const {
    std::vector<Complex> v(g.begin(), g.end());
    Fft& fft = Fft::local(grid_.size());
    fft.forward(v, v);
    const auto k = grid_.wavenumbers();
    for (std::size_t j = 0; j < v.size(); ++j) v[j] /= (k[j] * k[j] + mu);
    fft.inverse(v, v);
    std::vector<double> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) out[j] = v[j].real();
    return out;
  }

  [[nodiscard]] Field structured(std::span<const double> phi) const {
    std::vector<Complex> v(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) v[j] = std::polar(phi[j], 0.5 * p_.c * grid_.x(j));
    return Field(grid_, std::move(v));
  }

  [[nodiscard]] const GridSpec& grid() const { return grid_; }

 private:
  [[nodiscard]] std::vector<double> derivative(std::span<const double> phi) const {
    std::vector<Complex> v(phi.begin(), phi.end());
    detail::differentiate(grid_, v);
    std::vector<double> d(phi.size());
    for (std::size_t j = 0; j < phi.size(); ++j) d[j] = v[j].real();
    return d;
  }

  GridSpec grid_;
  Params p_;
};

namespace detail {

/// Scale factor putting a profile on K = 0. Scales up by powers of two when
/// K > 0, then hands the sign change to nehari_root.
inline double nehari_scale(const ScalingPolynomial& poly, double k_tol) {
  double up = 1.0;
  ScalingPolynomial scaled = poly;
  while (scaled.nehari(1.0) > k_tol) {
    up *= 2.0;
    scaled.q2 = poly.q2 * up * up;
    scaled.q4 = poly.q4 * std::pow(up, 4);
    scaled.q6 = poly.q6 * std::pow(up, 6);
    if (up > 1e100) throw NoRoot("minimize_threshold: K stays positive along the ray");
  }
  return up * nehari_root(scaled, k_tol);
}

inline std::vector<double> scaled(std::span<const double> v, double s) {
  std::vector<double> out(v.begin(), v.end());
  for (double& x : out) x *= s;
  return out;
}

inline std::vector<double> symmetrize_profile(const GridSpec& grid, std::span<const double> phi) {
  std::vector<Complex> v(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) v[j] = std::abs(phi[j]);
  const Field sym = schwarz_symmetrize(Field(grid, std::move(v)));
  std::vector<double> out(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) out[j] = sym[j].real();
  return out;
}

}  // namespace detail

/// Approximates the threshold J0 = inf{H : K <= 0} by descent on the real
/// profile phi of varphi = e^{icx/2} phi.
///
/// Each iteration takes a Sobolev-preconditioned gradient step of the
/// scale-invariant functional phi -> J(lambda(phi) phi), projects back onto
/// K = 0 and accepts when H decreases, halving the step from initial_step.
/// Every symmetrize_every iterations phi is replaced by its Schwarz
/// rearrangement.
inline MinimizationResult minimize_threshold(const Params& p, const GridSpec& grid,
                                             const MinimizeOptions& opt = {}) {
  require_admissible(p, "minimize_threshold");
  const ProfileFunctional pf(grid, p);
  const std::size_t n = grid.size();

  std::vector<double> phi(n);
  for (std::size_t j = 0; j < n; ++j) phi[j] = std::exp(-grid.x(j) * grid.x(j));
  if (opt.init_noise > 0.0) {
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> noise(0.0, opt.init_noise);
    for (std::size_t j = 0; j < n; ++j) phi[j] *= 1.0 + noise(rng);
    phi = detail::symmetrize_profile(grid, phi);
  }
  while (pf.polynomial(phi).nehari(1.0) >= 0.0) phi = detail::scaled(phi, 2.0);
  ScalingPolynomial poly = pf.polynomial(phi);
  const double lambda0 = nehari_root(poly, opt.k_tol);
  phi = detail::scaled(phi, lambda0);
  poly = pf.polynomial(phi);

  MinimizationResult res{pf.structured(phi), {}, 0.0, 0.0, 0.0, 0, false, {}};
  double h = poly.positive(1.0);
  res.history.push_back({0, h, poly.nehari(1.0), false});

  const double mu = p.omega;
  int it = 1;
  for (; it <= opt.max_iterations; ++it) {
    const std::vector<double> dir = pf.precondition(pf.gradient(phi), mu);
    double tau = opt.initial_step;
    bool accepted = false;
    std::vector<double> trial(n);
    double h_trial = h;
    ScalingPolynomial trial_poly;
    while (tau > 1e-14) {
      for (std::size_t j = 0; j < n; ++j) trial[j] = phi[j] - tau * dir[j];
      const ScalingPolynomial raw = pf.polynomial(trial);
      const double lam = detail::nehari_scale(raw, opt.k_tol);
      for (double& x : trial) x *= lam;
      trial_poly = pf.polynomial(trial);
      h_trial = trial_poly.positive(1.0);
      if (h_trial < h) {
        accepted = true;
        break;
      }
      tau *= 0.5;
    }
    if (!accepted) {
      // No descent direction left at working precision.
      res.converged = std::abs(poly.nehari(1.0)) < opt.k_tol;
      break;
    }
    const double drop = h - h_trial;
    phi = trial;
    poly = trial_poly;
    h = h_trial;
    res.history.push_back({it, h, poly.nehari(1.0), false});

    if (opt.symmetrize_every > 0 && it % opt.symmetrize_every == 0) {
      phi = detail::symmetrize_profile(grid, phi);
      const double lam = detail::nehari_scale(pf.polynomial(phi), opt.k_tol);
      phi = detail::scaled(phi, lam);
      poly = pf.polynomial(phi);
      h = poly.positive(1.0);
      res.history.push_back({it, h, poly.nehari(1.0), true});
    }
    if (drop < opt.j_tol && std::abs(poly.nehari(1.0)) < opt.k_tol) {
      res.converged = true;
      break;
    }
  }

  res.iterations = std::min(it, opt.max_iterations);
  res.profile = phi;
  res.minimizer = pf.structured(phi);
  res.h_value = poly.positive(1.0);
  res.j_value = poly.action(1.0);
  res.k_value = poly.nehari(1.0);
  return res;
}

/// min over integer cyclic shifts and a global phase of ||a - e^{i theta} S b||.
inline double aligned_l2_distance(const Field& a, const Field& b) {
  const std::size_t n = a.size();
  Fft& fft = Fft::local(n);
  std::vector<Complex> fa(a.values().begin(), a.values().end());
  std::vector<Complex> fb(b.values().begin(), b.values().end());
  fft.forward(fa, fa);
  fft.forward(fb, fb);
  // corr[s] = sum_j a_j conj(b_{j-s})
  std::vector<Complex> corr(n);
  for (std::size_t k = 0; k < n; ++k) corr[k] = fa[k] * std::conj(fb[k]);
  fft.inverse(corr, corr);
  std::size_t best = 0;
  for (std::size_t s = 1; s < n; ++s) {
    if (std::abs(corr[s]) > std::abs(corr[best])) best = s;
  }
  const Complex phase = std::abs(corr[best]) > 0.0 ? corr[best] / std::abs(corr[best]) : Complex(1.0);
  const Field moved = phase * b.shifted(static_cast<long>(best));
  return l2_distance(a, moved);
}

}  // namespace dnls
