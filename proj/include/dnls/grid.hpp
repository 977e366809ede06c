#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "dnls/errors.hpp"

namespace dnls {

using Complex = std::complex<double>;

enum class Regime { Subcritical, CriticalPositive, CriticalNonpositive, Supercritical };

inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "Subcritical";
    case Regime::CriticalPositive: return "CriticalPositive";
    case Regime::CriticalNonpositive: return "CriticalNonpositive";
    case Regime::Supercritical: return "Supercritical";
  }
  return "Unknown";
}

/// Frequency omega and speed c of a traveling wave e^{i omega t} varphi(x - c t).
struct Params {
  double omega = 1.0;
  double c = 0.0;

  /// 4 omega = c^2 is decided with a relative tolerance of 1e-12 so that
  /// parameters such as (c^2/4, c) built in floating point stay critical.
  [[nodiscard]] Regime regime() const {
    const double disc = 4.0 * omega - c * c;
    const double scale = std::max({std::abs(4.0 * omega), c * c, 1e-300});
    if (std::abs(disc) <= 1e-12 * scale) {
      return c > 0.0 ? Regime::CriticalPositive : Regime::CriticalNonpositive;
    }
    return disc > 0.0 ? Regime::Subcritical : Regime::Supercritical;
  }

  /// Regimes in which the solitary wave exists.
  [[nodiscard]] bool admissible() const {
    const Regime r = regime();
    return r == Regime::Subcritical || r == Regime::CriticalPositive;
  }

  friend bool operator==(const Params&, const Params&) = default;
};

inline void require_admissible(const Params& p, const char* what) {
  switch (p.regime()) {
    case Regime::Subcritical:
    case Regime::CriticalPositive:
      return;
    case Regime::CriticalNonpositive:
      throw UnsupportedRegime(std::string(what) +
                              ": 4*omega = c^2 with c <= 0 admits no nontrivial solitary wave");
    case Regime::Supercritical:
      throw UnsupportedRegime(std::string(what) +
                              ": 4*omega < c^2 (supercritical) admits no nontrivial solitary wave");
  }
}

/// Uniform periodic grid x_j = -L + j*h, h = 2L/N, on [-L, L).
///
/// Wavenumbers follow the FFT ordering: k_j = pi j / L for j < N/2,
/// k_{N/2} = -pi N / (2L) (Nyquist), then the negative modes.
class GridSpec {
 public:
  GridSpec(std::size_t n_points, double half_width)
      : n_(n_points), half_width_(half_width) {
    if (n_points < 2) throw DomainError("GridSpec: need at least two points");
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
      throw DomainError("GridSpec: half_width must be positive and finite");
    }
    spacing_ = 2.0 * half_width / static_cast<double>(n_points);
    auto k = std::make_shared<std::vector<double>>(n_points);
    const double dk = std::numbers::pi / half_width;
    const auto n = static_cast<long>(n_points);
    for (long j = 0; j < n; ++j) {
      const long m = (j < (n + 1) / 2) ? j : j - n;
      (*k)[static_cast<std::size_t>(j)] = dk * static_cast<double>(m);
    }
    k_ = std::move(k);
  }

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] double half_width() const { return half_width_; }
  [[nodiscard]] double spacing() const { return spacing_; }
  [[nodiscard]] double x(std::size_t j) const {
    return -half_width_ + static_cast<double>(j) * spacing_;
  }
  [[nodiscard]] std::span<const double> wavenumbers() const { return *k_; }
  [[nodiscard]] bool has_nyquist() const { return n_ % 2 == 0; }
  [[nodiscard]] std::size_t nyquist_index() const { return n_ / 2; }

  [[nodiscard]] std::vector<double> coordinates() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = x(j);
    return xs;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.n_ == b.n_ && a.half_width_ == b.half_width_;
  }

 private:
  std::size_t n_;
  double half_width_;
  double spacing_;
  std::shared_ptr<const std::vector<double>> k_;
};

inline GridSpec default_grid() { return GridSpec(4096, 40.0); }

/// Complex samples of a function on a GridSpec. Always finite.
class Field {
 public:
  explicit Field(GridSpec grid) : grid_(std::move(grid)), values_(grid_.size()) {}

  Field(GridSpec grid, std::vector<Complex> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      throw DomainError("Field: value count does not match the grid");
    }
    for (const Complex& z : values_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NonFinite("Field: non-finite sample");
      }
    }
  }

  template <class F>
  static Field from_function(const GridSpec& grid, F&& fn) {
    std::vector<Complex> v(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) v[j] = Complex(fn(grid.x(j)));
    return Field(grid, std::move(v));
  }

  [[nodiscard]] const GridSpec& grid() const { return grid_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] std::span<const Complex> values() const { return values_; }
  [[nodiscard]] const Complex& operator[](std::size_t j) const { return values_[j]; }

  [[nodiscard]] bool is_real(double tol = 0.0) const {
    for (const Complex& z : values_) {
      if (std::abs(z.imag()) > tol) return false;
    }
    return true;
  }

  Field& operator*=(Complex s) {
    for (Complex& z : values_) z *= s;
    return *this;
  }
  Field& operator+=(const Field& o) {
    check_same_grid(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
    return *this;
  }
  Field& operator-=(const Field& o) {
    check_same_grid(o);
    for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
    return *this;
  }

  friend Field operator*(Complex s, Field f) { return f *= s; }
  friend Field operator*(double s, Field f) { return f *= Complex(s); }
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }

  /// Pointwise map producing a new field on the same grid.
  template <class F>
  [[nodiscard]] Field map(F&& fn) const {
    std::vector<Complex> v(values_.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = fn(values_[j]);
    return Field(grid_, std::move(v));
  }

  /// Cyclic shift: result[j] = (*this)[j - shift mod N].
  [[nodiscard]] Field shifted(long shift) const {
    const auto n = static_cast<long>(values_.size());
    std::vector<Complex> v(values_.size());
    for (long j = 0; j < n; ++j) {
      long src = (j - shift) % n;
      if (src < 0) src += n;
      v[static_cast<std::size_t>(j)] = values_[static_cast<std::size_t>(src)];
    }
    return Field(grid_, std::move(v));
  }

  /// x -> -x on the grid: index j maps to (N - j) mod N.
  [[nodiscard]] Field reflected() const {
    const std::size_t n = values_.size();
    std::vector<Complex> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = values_[(n - j) % n];
    return Field(grid_, std::move(v));
  }

  [[nodiscard]] Field conj() const {
    return map([](Complex z) { return std::conj(z); });
  }

 private:
  void check_same_grid(const Field& o) const {
    if (!(grid_ == o.grid_)) throw DomainError("Field: grids differ");
  }

  GridSpec grid_;
  std::vector<Complex> values_;
};

}  // namespace dnls
