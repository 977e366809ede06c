#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "dnls/functionals.hpp"
#include "dnls/grid.hpp"
#include "dnls/soliton.hpp"

namespace dnls {

enum class InvariantSet { KPlus, KMinus, AboveThreshold };

inline const char* to_string(InvariantSet s) {
  switch (s) {
    case InvariantSet::KPlus: return "KPlus";
    case InvariantSet::KMinus: return "KMinus";
    case InvariantSet::AboveThreshold: return "AboveThreshold";
  }
  return "Unknown";
}

/// Threshold J0 = J(varphi_{omega,c}).
///
/// Subcritical: the action of the sampled closed-form soliton on `grid`.
/// Critical: the exact value pi c^2 / 2 = (c^2/4) * 2 pi. The sampled critical
/// soliton carries a non-periodic phase and a 1/|x| tail, so its on-grid
/// action is off by about 1.5% at L = 40.
inline double default_threshold(const Params& p, const GridSpec& grid) {
  require_admissible(p, "threshold");
  if (p.regime() == Regime::CriticalPositive) return 0.5 * std::numbers::pi * p.c * p.c;
  return action_J(varphi_profile({p, 0.0, 0.0}, grid), p);
}

struct ClassificationResult {
  Params params;
  double j_value = 0.0;
  double k_value = 0.0;
  double j_threshold = 0.0;
  InvariantSet set = InvariantSet::AboveThreshold;
  /// For KPlus data: ||u_x(t)||^2 <= 8 J0 - 2 (w - 2c^2) ||u0||^2 for all t.
  std::optional<double> h1_bound;
};

inline ClassificationResult classify(const Field& f, const Params& p, double j_threshold) {
  require_admissible(p, "classify");
  ClassificationResult r;
  r.params = p;
  r.j_threshold = j_threshold;
  r.j_value = action_J(f, p);
  r.k_value = nehari_value(f, p);
  if (r.j_value < j_threshold) {
    r.set = r.k_value >= 0.0 ? InvariantSet::KPlus : InvariantSet::KMinus;
  } else {
    r.set = InvariantSet::AboveThreshold;
  }
  if (r.set == InvariantSet::KPlus) {
    const double l2 = 2.0 * mass(f);
    r.h1_bound = 8.0 * j_threshold - 2.0 * (p.omega - 2.0 * p.c * p.c) * l2;
  }
  return r;
}

struct KLowerBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// K(f) >= min{4 (J0 - J(f)), 1/4 ||d(e^{-icx/2} f)||^2 + 1/4 (w - c^2/4) ||f||^2}
/// for f in K+.
inline KLowerBound k_lower_bound(const Field& f, const Params& p, double j_threshold) {
  const ClassificationResult cls = classify(f, p, j_threshold);
  if (cls.set != InvariantSet::KPlus) throw NotInKPlus("k_lower_bound: field is not in K+");
  const double coercive =
      0.25 * xc_gradient_sq(f, p.c) + 0.25 * (p.omega - 0.25 * p.c * p.c) * 2.0 * mass(f);
  KLowerBound b;
  b.lhs = cls.k_value;
  b.rhs = std::min(4.0 * (j_threshold - cls.j_value), coercive);
  b.holds = b.lhs >= b.rhs - 1e-10;
  return b;
}

enum class GlobalCondition { MassBelow2Pi, MassEqNegMomentum, MassEqZeroMomNegEnergy, None };

inline const char* to_string(GlobalCondition g) {
  switch (g) {
    case GlobalCondition::MassBelow2Pi: return "MassBelow2Pi";
    case GlobalCondition::MassEqNegMomentum: return "MassEqNegMomentum";
    case GlobalCondition::MassEqZeroMomNegEnergy: return "MassEqZeroMomNegEnergy";
    case GlobalCondition::None: return "None";
  }
  return "Unknown";
}

struct GlobalExistenceCertificate {
  GlobalCondition condition_met = GlobalCondition::None;
  std::optional<double> admissible_c;
  std::optional<Params> kplus_params;
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
  double equality_tolerance = 1e-9;
};

/// Checks the three global-existence clauses on M, P, E (equalities to
/// within 1e-9), then looks for c in {1, 2, 4, ..., 2^20} putting f into
/// K+ at the critical parameters (c^2/4, c), whose threshold is (c^2/4) 2 pi.
inline GlobalExistenceCertificate certify_global(const Field& f) {
  constexpr double tol = 1e-9;
  const double two_pi = 2.0 * std::numbers::pi;
  GlobalExistenceCertificate cert;
  cert.mass = mass(f);
  cert.momentum = momentum(f);
  cert.energy = energy(f);
  cert.equality_tolerance = tol;

  const bool mass_eq = std::abs(cert.mass - two_pi) <= tol;
  if (cert.mass < two_pi && !mass_eq) {
    cert.condition_met = GlobalCondition::MassBelow2Pi;
  } else if (mass_eq && cert.momentum < -tol) {
    cert.condition_met = GlobalCondition::MassEqNegMomentum;
  } else if (mass_eq && std::abs(cert.momentum) <= tol && cert.energy < 0.0) {
    cert.condition_met = GlobalCondition::MassEqZeroMomNegEnergy;
  } else {
    return cert;
  }

  for (int e = 0; e <= 20; ++e) {
    const double c = std::ldexp(1.0, e);
    const Params p{0.25 * c * c, c};
    const double j = cert.energy + p.omega * cert.mass + c * cert.momentum;
    if (j < p.omega * two_pi && nehari_value(f, p) > 0.0) {
      cert.admissible_c = c;
      cert.kplus_params = p;
      break;
    }
  }
  return cert;
}

}  // namespace dnls
