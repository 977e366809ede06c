// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.
//
// Everything runs on the default grid N = 4096, L = 40.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dnls/dnls.hpp"
#include "support.hpp"

using namespace dnls;
using std::numbers::pi;

namespace tol {
constexpr double residual = 1e-8;
constexpr double mass_formula = 1e-6;
constexpr double ground_energy = 1e-8;
constexpr double nehari = 1e-6;
constexpr double threshold_sub = 0.01;
constexpr double threshold_crit = 0.02;
constexpr double minimizer_l2 = 1e-2;
constexpr double minimize_seconds = 300.0;
constexpr double identity = 1e-10;
constexpr double k_bound = 1e-10;  // applied inside k_lower_bound
constexpr double drift_mass = 1e-8;
constexpr double drift_momentum = 1e-7;
constexpr double drift_energy = 1e-7;
constexpr double traveling_wave = 1e-4;
constexpr double order = 3.5;
constexpr double gauge_forms = 1e-3;
constexpr double gauge_round_trip = 1e-10;
constexpr double gauge_mass = 1e-13;
}  // namespace tol

namespace {

const std::vector<Params> kBattery = {{1, 0}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
const std::vector<Params> kSubcritical = {{1, 0}, {1, 1}, {1, -1}, {2, 1}};

std::string pair(const Params& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%g,%g)", p.omega, p.c);
  return buf;
}

struct Criterion {
  Criterion(int i, std::string t) : id(i), title(std::move(t)) {}

  int id;
  std::string title;
  bool pass = true;
  std::vector<std::string> details;

  void note(const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    details.push_back(std::string("     ") + buf);
  }

  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    details.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
    pass = pass && ok;
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

Criterion soliton_residual(const GridSpec& g) {
  Criterion c{1, "soliton residuals below 1e-8"};
  for (const Params& p : kBattery) {
    const Field v = varphi_profile({p, 0, 0}, g);
    const double rs = residual_semilinear(v, p), rq = residual_quasilinear(v, p);
    c.check(rs < tol::residual && rq < tol::residual, "%-7s semilinear %.3e  quasilinear %.3e", pair(p).c_str(), rs, rq);
  }
  return c;
}

Criterion mass_formula(const GridSpec& g) {
  Criterion c{2, "soliton mass formula and limits"};
  for (const Params& p : kSubcritical) {
    const double q = norms(varphi_profile({p, 0, 0}, g)).l2_sq, m = soliton_mass(p);
    c.check(std::abs(q - m) < tol::mass_formula, "%-7s quadrature %.12f  formula %.12f", pair(p).c_str(), q, m);
  }
  const double q10 = norms(phi_profile({{1, 0}, 0, 0}, g)).l2_sq;
  c.check(std::abs(q10 - 2 * pi) < tol::mass_formula, "(1,0) quadrature - 2 pi = %.3e", q10 - 2 * pi);
  for (const double target_c : {2.0, -2.0}) {
    const double limit = target_c > 0 ? 4 * pi : 0.0;
    bool monotone = true;
    double prev = INFINITY, last = 0.0;
    for (int i = 1; i <= 10; ++i) {
      const double cc = target_c - std::copysign(std::ldexp(1.0, -i), target_c);
      last = soliton_mass({1, cc});
      const double d = std::abs(last - limit);
      monotone = monotone && d < prev;
      prev = d;
    }
    c.check(monotone, "c -> %+g along 10 points: monotone approach, last value %.6f (limit %.6f)", target_c, last, limit);
  }
  return c;
}

Criterion energy_signs(const GridSpec& g) {
  Criterion c{3, "energy signs of (1,0), (1,1), (1,-1)"};
  const double e0 = energy(varphi_profile({{1, 0}, 0, 0}, g));
  const double e1 = energy(varphi_profile({{1, 1}, 0, 0}, g));
  const double em = energy(varphi_profile({{1, -1}, 0, 0}, g));
  c.check(std::abs(e0) < tol::ground_energy, "E(1,0)  = %.3e", e0);
  c.check(e1 < 0, "E(1,1)  = %.6f < 0", e1);
  c.check(em > 0, "E(1,-1) = %.6f > 0", em);
  return c;
}

Criterion nehari_identity(const GridSpec& g) {
  Criterion c{4, "Nehari functional vanishes on solitons"};
  for (const Params& p : kBattery) {
    const double k = nehari_value(varphi_profile({p, 0, 0}, g), p);
    c.check(std::abs(k) < tol::nehari, "%-7s K = %.3e", pair(p).c_str(), k);
  }
  return c;
}

Criterion threshold(const GridSpec& g) {
  Criterion c{5, "threshold reproduced by constrained minimization"};
  for (const Params& p : {Params{1, 0}, Params{1, 1}, Params{1, 2}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const MinimizationResult r = minimize_threshold(p, g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool crit = p.regime() == Regime::CriticalPositive;
    const double ref = default_threshold(p, g);
    const double err = std::abs(r.j_value - ref) / ref;
    const double dist = aligned_l2_distance(r.minimizer, varphi_profile({p, 0, 0}, g));
    c.check(err < (crit ? tol::threshold_crit : tol::threshold_sub), "%-7s J = %.10f  reference %.10f  rel %.2e",
            pair(p).c_str(), r.j_value, ref, err);
    c.check(dist < tol::minimizer_l2, "%-7s aligned L2 distance to closed form %.3e", pair(p).c_str(), dist);
    c.check(secs < tol::minimize_seconds && r.converged, "%-7s %d iterations, %.2f s, converged %s", pair(p).c_str(),
            r.iterations, secs, r.converged ? "yes" : "no");
  }
  return c;
}

Criterion identities(const GridSpec& g) {
  Criterion c{6, "functional identities on 100 random fields"};
  std::mt19937_64 rng(20260601);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_j = 0, worst_k = 0, worst_h = 0, worst_sq = 0, min_h = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const Field f = fixtures::random_bumps(g, rng, 2.0);
    const double cc = -3.0 + 6.0 * U(rng);
    const double omega = trial % 5 == 0 ? 0.25 * cc * cc : 0.25 * cc * cc + 2.0 * U(rng) + 1e-3;
    Params p{omega, cc};
    if (p.regime() == Regime::CriticalNonpositive) p.c = -p.c;
    const double j = action_J_expanded(f, p);
    worst_j = std::max(worst_j, rel(j, energy(f) + p.omega * mass(f) + p.c * momentum(f)));
    const NehariParts k = nehari_K(f, p);
    worst_k = std::max(worst_k, rel(nehari_value(f, p), k.kq - k.kn));
    const double h = positive_H_direct(f, p);
    const double hk = p.regime() == Regime::Subcritical ? j - nehari_value(f, p) / 4 : j - nehari_value(f, p) / 6;
    worst_h = std::max(worst_h, rel(h, hk));
    min_h = std::min(min_h, h);
    if (p.regime() == Regime::Subcritical) {
      const double sq = xc_gradient_sq(f, p.c) + (p.omega - 0.25 * p.c * p.c) * norms(f).l2_sq;
      worst_sq = std::max(worst_sq, rel(k.kq, sq));
    }
  }
  c.check(worst_j < tol::identity, "J = E + wM + cP        worst rel %.2e", worst_j);
  c.check(worst_k < tol::identity, "K = KQ - KN            worst rel %.2e", worst_k);
  c.check(worst_h < tol::identity, "H = J - K/4 or J - K/6 worst rel %.2e", worst_h);
  c.check(min_h >= -tol::identity, "H >= 0                 min %.3e", min_h);
  c.check(worst_sq < tol::identity, "completed square KQ    worst rel %.2e", worst_sq);
  return c;
}

Criterion k_bound(const GridSpec& g) {
  Criterion c{7, "K lower bound on 100 random K+ samples"};
  std::mt19937_64 rng(20260602);
  int held = 0;
  double worst = INFINITY;
  for (int trial = 0; trial < 100; ++trial) {
    const Params& p = kBattery[static_cast<std::size_t>(trial) % kBattery.size()];
    const double j0 = default_threshold(p, g);
    const KLowerBound b = k_lower_bound(fixtures::random_kplus(g, p, j0, rng), p, j0);
    held += b.holds;
    worst = std::min(worst, b.lhs - b.rhs);
  }
  c.check(held == 100, "%d/100 hold, smallest margin lhs - rhs = %.3e (tolerance %.0e)", held, worst, tol::k_bound);
  return c;
}

Criterion flow_invariance(const GridSpec& g) {
  Criterion c{8, "K+ is invariant under the flow to t = 1"};
  const Params p{1, 1};
  const double j0 = default_threshold(p, g);
  std::vector<Field> data;
  for (double eps : {0.01, 0.3, 0.6, 0.8, 0.95}) {
    Field f = varphi_profile({p, 0.5 * eps, -eps}, g);
    f *= eps;
    data.push_back(f);
  }
  std::mt19937_64 rng(20260603);
  while (data.size() < 10) data.push_back(fixtures::random_kplus(g, p, j0, rng));

  const EvolutionConfig cfg{1.0, 1e-3, true, 10, EquationForm::UForm};
  int all_plus = 0;
  Drift worst;
  for (const Field& u0 : data) {
    const EvolutionTrace tr = evolve(u0, cfg, p);
    bool plus = tr.status == EvolutionStatus::Completed;
    for (const Field& u : tr.snapshots) plus = plus && classify(u, p, j0).set == InvariantSet::KPlus;
    all_plus += plus;
    worst.mass = std::max(worst.mass, tr.max_drift.mass);
    worst.momentum = std::max(worst.momentum, tr.max_drift.momentum);
    worst.energy = std::max(worst.energy, tr.max_drift.energy);
  }
  c.check(all_plus == 10, "%d/10 trajectories stay in K+ at every snapshot (dt 1e-3, 101 snapshots)", all_plus);
  c.check(worst.mass < tol::drift_mass, "max mass drift     %.3e", worst.mass);
  c.check(worst.momentum < tol::drift_momentum, "max momentum drift %.3e", worst.momentum);
  c.check(worst.energy < tol::drift_energy, "max energy drift   %.3e", worst.energy);
  return c;
}

Criterion propagation(const GridSpec& g) {
  Criterion c{9, "traveling-wave propagation and fourth-order convergence"};
  const SolitonSpec s{{1, 1}, 0, 0};
  const Field u0 = varphi_profile(s, g);
  const double err = l2_distance(evolve_to(u0, 1.0, 1e-4), traveling_wave(s, g, 1.0));
  c.check(err < tol::traveling_wave, "(1,1) dt 1e-4 to t = 1: L2 error %.3e", err);
  const auto rows = convergence_study(u0, 4e-3, 3, 1.0, [&](double t) { return traveling_wave(s, g, t); });
  for (const ConvergenceRow& r : rows) {
    if (r.observed_order) {
      c.check(*r.observed_order >= tol::order, "dt %.1e  error %.3e  order %.2f", r.dt, r.error, *r.observed_order);
    } else {
      c.note("dt %.1e  error %.3e", r.dt, r.error);
    }
  }
  return c;
}

Criterion gauge_consistency(const GridSpec& g) {
  Criterion c{10, "gauge consistency between the two equation forms"};
  const Params p{1, 1};
  const Field u0 = varphi_profile({p, 0, 0}, g);
  const Field u = evolve_to(u0, 1.0, 1e-3, EquationForm::UForm);
  const Field v = evolve_to(to_v_form(u0), 1.0, 1e-3, EquationForm::VForm);
  const double d = l2_distance(to_u_form(v), u);
  c.check(d < tol::gauge_forms, "u-form vs gauged v-form at t = 1: L2 %.3e", d);
  std::mt19937_64 rng(20260604);
  double rt = 0.0, dm = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Field f = trial == 0 ? u0 : fixtures::random_bumps(g, rng, 2.0);
    const Field back = to_v_form(to_u_form(f));
    for (std::size_t j = 0; j < f.size(); ++j) rt = std::max(rt, std::abs(back[j] - f[j]));
    dm = std::max(dm, std::abs(mass(to_u_form(f)) - mass(f)));
  }
  c.check(rt < tol::gauge_round_trip, "round trip max error %.3e", rt);
  c.check(dm < tol::gauge_mass, "mass change %.3e", dm);
  return c;
}

Criterion certificate(const GridSpec& g) {
  Criterion c{11, "global existence certificate on 20 fields with M < 2 pi"};
  std::mt19937_64 rng(20260605);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int found = 0, sound = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Field f = fixtures::random_bumps(g, rng);
    // first half: ||u0||^2 < 2 pi (M < pi); second half: pi <= M < 2 pi
    const double m = trial < 10 ? pi * (0.02 + 0.97 * U(rng)) : pi * (1.0 + 0.999 * U(rng));
    f *= std::sqrt(m / mass(f));
    const GlobalExistenceCertificate cert = certify_global(f);
    if (cert.condition_met != GlobalCondition::MassBelow2Pi || !cert.admissible_c) continue;
    ++found;
    const double cc = *cert.admissible_c;
    const Params kp{0.25 * cc * cc, cc};
    sound += classify(f, kp, kp.omega * 2.0 * pi).set == InvariantSet::KPlus;
  }
  c.check(found == 20, "%d/20 certificates found", found);
  c.check(sound == 20, "%d/20 pass the K+ re-check at (c^2/4, c)", sound);
  return c;
}

}  // namespace

int main() {
  const GridSpec g = default_grid();
  const std::vector<std::function<Criterion(const GridSpec&)>> all = {
      soliton_residual, mass_formula, energy_signs, nehari_identity, threshold,         identities,
      k_bound,          flow_invariance, propagation, gauge_consistency, certificate};
  int failed = 0;
  for (const auto& run : all) {
    const auto t0 = std::chrono::steady_clock::now();
    const Criterion c = run(g);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s [%2d] %s (%.1f s)\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), secs);
    for (const std::string& d : c.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
    failed += !c.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed;
}
