// dnls_lab: command-line front end for the derivative NLS laboratory.
//
// Every subcommand prints one JSON document on stdout. Exit codes: 0 ok,
// 1 domain error, 2 I/O error, 64 usage error.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dnls/dnls.hpp"

namespace {

using namespace dnls;

constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;

struct GridOpts {
  std::size_t n = 4096;
  double half_width = 40.0;
  [[nodiscard]] GridSpec spec() const { return GridSpec(n, half_width); }
};

struct ParamOpts {
  double omega = 1.0;
  double c = 0.0;
  [[nodiscard]] Params params() const { return {omega, c}; }
};

void add_grid(CLI::App* app, GridOpts& g) {
  app->add_option("--n", g.n, "grid points")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 26));
  app->add_option("--half-width", g.half_width, "box is [-L, L)")->check(CLI::PositiveNumber);
}

void add_params(CLI::App* app, ParamOpts& p) {
  app->add_option("--omega", p.omega, "frequency omega");
  app->add_option("--c", p.c, "speed c");
}

void write_report_fields(JsonWriter& w, const FunctionalReport& r) {
  w.field("mass", r.mass).field("momentum", r.momentum).field("energy", r.energy);
  w.field("action", r.action).field("nehari", r.nehari);
  w.field("quadratic_part", r.quadratic_part).field("nonlinear_part", r.nonlinear_part);
  w.field("positive_part", r.positive_part);
}

// ---- soliton -----------------------------------------------------------------

struct SolitonCmd {
  ParamOpts p;
  GridOpts g;
  std::string out;

  int run() const {
    const Params par = p.params();
    const GridSpec grid = g.spec();
    const Field f = varphi_profile({par, 0.0, 0.0}, grid);
    if (!out.empty()) write_field_csv(out, f);
    const FunctionalReport r = functional_report(f, par);
    JsonWriter w(std::cout);
    w.begin_object();
    w.key("params"); write_json(w, par);
    w.key("grid"); write_json(w, grid);
    if (par.regime() == Regime::Subcritical) w.field("soliton_mass", soliton_mass(par)); else w.key("soliton_mass").null();
    w.field("l2_sq", 2.0 * r.mass);
    write_report_fields(w, r);
    w.field("residual_semilinear", residual_semilinear(f, par));
    w.field("residual_quasilinear", residual_quasilinear(f, par));
    if (!out.empty()) w.field("out", out);
    w.end_object();
    w.finish();
    return 0;
  }
};

// ---- functionals -------------------------------------------------------------

struct FunctionalsCmd {
  ParamOpts p;
  std::string in;

  int run() const {
    const Field f = read_field_csv(std::filesystem::path(in));
    const Params par = p.params();
    const FunctionalReport r = functional_report(f, par);
    JsonWriter w(std::cout);
    w.begin_object();
    w.key("params"); write_json(w, par);
    w.key("grid"); write_json(w, f.grid());
    w.field("l2_sq", 2.0 * r.mass);
    write_report_fields(w, r);
    w.end_object();
    w.finish();
    return 0;
  }
};

// ---- gauge -------------------------------------------------------------------

struct GaugeCmd {
  std::string in;
  std::string out;
  double a = 0.75;

  int run() const {
    const Field v = read_field_csv(std::filesystem::path(in));
    const Field u = gauge_transform(v, a);
    if (!out.empty()) write_field_csv(out, u);
    JsonWriter w(std::cout);
    w.begin_object();
    w.field("a", a);
    w.field("mass_in", mass(v)).field("mass_out", mass(u));
    w.field("tail_mass", gauge_tail_mass(v));
    if (!out.empty()) w.field("out", out);
    w.end_object();
    w.finish();
    return 0;
  }
};

// ---- minimize ----------------------------------------------------------------

struct MinimizeCmd {
  std::vector<double> omegas{1.0};
  std::vector<double> cs{0.0};
  GridOpts g;
  std::string out;
  int jobs = 1;

  /// Pairs (omega_i, c_i); a single value on either side is broadcast.
  [[nodiscard]] std::vector<Params> sweep() const {
    const std::size_t n = std::max(omegas.size(), cs.size());
    if ((omegas.size() != n && omegas.size() != 1) || (cs.size() != n && cs.size() != 1)) {
      throw CLI::ValidationError("--omega/--c", "lists must have equal length or length 1");
    }
    std::vector<Params> ps;
    for (std::size_t i = 0; i < n; ++i) {
      ps.push_back({omegas[omegas.size() == 1 ? 0 : i], cs[cs.size() == 1 ? 0 : i]});
    }
    return ps;
  }

  int run() const {
    const std::vector<Params> ps = sweep();
    for (const Params& par : ps) require_admissible(par, "minimize");
    const GridSpec grid = g.spec();
    MinimizeOptions opt;
    if (const char* seed = std::getenv("DNLS_LAB_SEED")) {
      opt.seed = std::strtoull(seed, nullptr, 10);
      opt.init_noise = 1e-3;
    }

    std::vector<std::optional<MinimizationResult>> results(ps.size());
    std::vector<std::string> errors(ps.size());
    auto worker = [&](std::size_t first) {
      for (std::size_t i = first; i < ps.size(); i += static_cast<std::size_t>(jobs)) {
        try {
          results[i] = minimize_threshold(ps[i], grid, opt);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs && static_cast<std::size_t>(t) < ps.size(); ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    for (const std::string& e : errors) {
      if (!e.empty()) throw DomainError(e);
    }

    auto out_path = [&](std::size_t i) -> std::string {
      if (out.empty() || ps.size() == 1) return out;
      const std::filesystem::path base(out);
      return (base.parent_path() / (base.stem().string() + "_" + std::to_string(i) + base.extension().string())).string();
    };
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (!out.empty()) write_field_csv(out_path(i), results[i]->minimizer);
    }

    JsonWriter w(std::cout);
    if (ps.size() > 1) w.begin_array();
    for (std::size_t i = 0; i < ps.size(); ++i) write_json(w, *results[i], ps[i], grid);
    if (ps.size() > 1) w.end_array();
    w.finish();
    return 0;
  }
};

// ---- classify / certify --------------------------------------------------------

struct ClassifyCmd {
  ParamOpts p;
  std::string in;
  std::optional<double> threshold;

  int run() const {
    const Field f = read_field_csv(std::filesystem::path(in));
    const Params par = p.params();
    const double j0 = threshold ? *threshold : default_threshold(par, f.grid());
    JsonWriter w(std::cout);
    write_json(w, classify(f, par, j0));
    w.finish();
    return 0;
  }
};

struct CertifyCmd {
  std::string in;

  int run() const {
    const Field f = read_field_csv(std::filesystem::path(in));
    JsonWriter w(std::cout);
    write_json(w, certify_global(f));
    w.finish();
    return 0;
  }
};

// ---- evolve / converge ---------------------------------------------------------

struct EvolveOpts {
  ParamOpts p;
  GridOpts g;
  std::string in;
  double t_end = 1.0;
  double dt = 1e-3;
  std::string dealias = "on";
  std::string form = "u";

  [[nodiscard]] EquationForm equation_form() const { return form == "v" ? EquationForm::VForm : EquationForm::UForm; }

  /// Input file as given, or the soliton of (omega, c) mapped to the chosen form.
  [[nodiscard]] Field initial() const {
    if (!in.empty()) return read_field_csv(std::filesystem::path(in));
    const Field u = varphi_profile({p.params(), 0.0, 0.0}, g.spec());
    return equation_form() == EquationForm::VForm ? to_v_form(u) : u;
  }
};

void add_evolve(CLI::App* app, EvolveOpts& e) {
  add_params(app, e.p);
  add_grid(app, e.g);
  app->add_option("--in", e.in, "initial field (field-csv); default is the soliton of (omega, c)");
  app->add_option("--t-end", e.t_end, "final time")->check(CLI::NonNegativeNumber);
  app->add_option("--dt", e.dt, "time step")->check(CLI::PositiveNumber);
  app->add_option("--dealias", e.dealias, "2/3-rule dealiasing")->check(CLI::IsMember({"on", "off"}));
  app->add_option("--form", e.form, "equation form")->check(CLI::IsMember({"u", "v"}));
}

struct EvolveCmd {
  EvolveOpts e;
  int stride = 100;
  std::string out = "trace";

  int run() const {
    const Field u0 = e.initial();
    const EvolutionConfig cfg{e.t_end, e.dt, e.dealias == "on", stride, e.equation_form()};
    const Params par = e.p.params();
    const EvolutionTrace tr = evolve(u0, cfg, par);
    write_trace(out, tr, cfg, par);
    write_trace_meta(std::cout, tr, cfg, par);
    if (tr.status != EvolutionStatus::Completed) {
      std::cerr << "dnls_lab: " << tr.message << '\n';
      return kExitDomain;
    }
    return 0;
  }
};

struct ConvergeCmd {
  EvolveOpts e;
  int levels = 3;

  int run() const {
    const Field u0 = e.initial();
    const EquationForm form = e.equation_form();
    const bool exact = e.in.empty() && form == EquationForm::UForm;
    const SolitonSpec spec{e.p.params(), 0.0, 0.0};
    const GridSpec grid = u0.grid();
    std::function<Field(double)> ref;
    if (exact) ref = [&](double t) { return traveling_wave(spec, grid, t); };
    const auto rows = convergence_study(u0, e.dt, levels, e.t_end, ref, form, e.dealias == "on");
    JsonWriter w(std::cout);
    w.begin_object();
    w.field("reference", exact ? "exact" : "richardson");
    w.field("t_end", e.t_end).field("equation_form", to_string(form));
    w.key("rows").begin_array();
    for (const ConvergenceRow& r : rows) {
      w.begin_object().field("dt", r.dt).field("error", r.error).field("observed_order", r.observed_order).end_object();
    }
    w.end_array();
    w.end_object();
    w.finish();
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for the derivative nonlinear Schroedinger equation", "dnls_lab"};
  app.require_subcommand(1);

  SolitonCmd soliton;
  auto* s = app.add_subcommand("soliton", "closed-form solitary wave");
  add_params(s, soliton.p);
  add_grid(s, soliton.g);
  s->add_option("--out", soliton.out, "write the profile as field-csv");

  FunctionalsCmd functionals;
  auto* f = app.add_subcommand("functionals", "all functionals of a field");
  add_params(f, functionals.p);
  f->add_option("--in", functionals.in, "field-csv")->required();

  GaugeCmd gauge;
  auto* g = app.add_subcommand("gauge", "gauge transform exp(i a int |v|^2) v");
  g->add_option("--in", gauge.in, "field-csv")->required();
  g->add_option("--out", gauge.out, "write the result as field-csv");
  g->add_option("--a", gauge.a, "gauge exponent");

  MinimizeCmd minimize;
  auto* m = app.add_subcommand("minimize", "constrained minimization of the action on the Nehari set");
  m->add_option("--omega", minimize.omegas, "frequency (comma list for sweeps)")->delimiter(',');
  m->add_option("--c", minimize.cs, "speed (comma list for sweeps)")->delimiter(',');
  add_grid(m, minimize.g);
  m->add_option("--out", minimize.out, "write the minimizer as field-csv");
  m->add_option("--jobs", minimize.jobs, "concurrent runs in a sweep")->check(CLI::Range(1, 256));

  ClassifyCmd classify_cmd;
  auto* c = app.add_subcommand("classify", "K+ / K- / above-threshold classification");
  add_params(c, classify_cmd.p);
  c->add_option("--in", classify_cmd.in, "field-csv")->required();
  c->add_option("--threshold", classify_cmd.threshold, "override the threshold J0");

  CertifyCmd certify;
  auto* cf = app.add_subcommand("certify", "global existence certificate");
  cf->add_option("--in", certify.in, "field-csv")->required();

  EvolveCmd evolve_cmd;
  auto* ev = app.add_subcommand("evolve", "time integration with snapshots");
  add_evolve(ev, evolve_cmd.e);
  ev->add_option("--stride", evolve_cmd.stride, "steps between snapshots")->check(CLI::PositiveNumber);
  ev->add_option("--out", evolve_cmd.out, "trace directory");

  ConvergeCmd converge;
  auto* cv = app.add_subcommand("converge", "time-step refinement study");
  add_evolve(cv, converge.e);
  cv->add_option("--levels", converge.levels, "number of halvings")->check(CLI::Range(1, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*s) return soliton.run();
    if (*f) return functionals.run();
    if (*g) return gauge.run();
    if (*m) return minimize.run();
    if (*c) return classify_cmd.run();
    if (*cf) return certify.run();
    if (*ev) return evolve_cmd.run();
    if (*cv) return converge.run();
  } catch (const CLI::ValidationError& e) {
    std::cerr << "dnls_lab: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "dnls_lab: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "dnls_lab: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "dnls_lab: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}
