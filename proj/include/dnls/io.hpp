#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dnls/classify.hpp"
#include "dnls/evolve.hpp"
#include "dnls/functionals.hpp"
#include "dnls/grid.hpp"
#include "dnls/variational.hpp"

namespace dnls {

/// Shortest round-trip is not enough for byte-stable diffs across
/// platforms; always emit 17 significant digits in C-locale scientific form.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw IoError("cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

// ---- field-csv -------------------------------------------------------------

inline void write_field_csv(std::ostream& os, const Field& f) {
  os << "x,re,im\n";
  for (std::size_t j = 0; j < f.size(); ++j) {
    os << format_double(f.grid().x(j)) << ',' << format_double(f[j].real()) << ','
       << format_double(f[j].imag()) << '\n';
  }
}

inline void write_field_csv(const std::filesystem::path& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  write_field_csv(os, f);
  if (!os) throw IoError("write failed for '" + path.string() + "'");
}

/// Reads field-csv. The grid is recovered from the x column, which must be
/// uniformly spaced to 1e-9 relative and start at -L with L = N h / 2.
inline Field read_field_csv(std::istream& is, const std::string& name = "<stream>") {
  std::string line;
  if (!std::getline(is, line)) throw IoError(name + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,re,im") throw IoError(name + ": expected header 'x,re,im'");
  std::vector<double> xs;
  std::vector<Complex> vals;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw IoError(name + ":" + std::to_string(lineno) + ": expected three columns");
    }
    const std::string_view sv(line);
    try {
      xs.push_back(parse_double(sv.substr(0, c1)));
      vals.emplace_back(parse_double(sv.substr(c1 + 1, c2 - c1 - 1)), parse_double(sv.substr(c2 + 1)));
    } catch (const IoError& e) {
      throw IoError(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  const std::size_t n = xs.size();
  if (n < 2) throw IoError(name + ": need at least two rows");
  const double h = (xs.back() - xs.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw IoError(name + ": x column must be increasing");
  for (std::size_t j = 1; j < n; ++j) {
    if (std::abs((xs[j] - xs[j - 1]) - h) > 1e-9 * h) {
      throw IoError(name + ": x column is not uniform near row " + std::to_string(j + 1));
    }
  }
  const double half_width = 0.5 * h * static_cast<double>(n);
  if (std::abs(xs.front() + half_width) > 1e-9 * half_width) {
    throw IoError(name + ": x column does not start at -N h / 2");
  }
  try {
    return Field(GridSpec(n, half_width), std::move(vals));
  } catch (const NonFinite&) {
    throw IoError(name + ": non-finite field value");
  }
}

inline Field read_field_csv(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "'");
  return read_field_csv(is, path.string());
}

// ---- JSON ------------------------------------------------------------------

/// Minimal streaming JSON writer; keys in insertion order, doubles via
/// format_double so files are byte-reproducible.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os, int indent = 2) : os_(os), indent_(indent) {}

  JsonWriter& begin_object() { open('{'); return *this; }
  JsonWriter& end_object() { close('}'); return *this; }
  JsonWriter& begin_array() { open('['); return *this; }
  JsonWriter& end_array() { close(']'); return *this; }

  JsonWriter& key(std::string_view k) {
    separator();
    write_string(k);
    os_ << (indent_ > 0 ? ": " : ":");
    after_key_ = true;
    return *this;
  }

  JsonWriter& value(double v) {
    prefix();
    if (std::isfinite(v)) os_ << format_double(v); else os_ << "null";
    return *this;
  }
  JsonWriter& value(int v) { prefix(); os_ << v; return *this; }
  JsonWriter& value(long v) { prefix(); os_ << v; return *this; }
  JsonWriter& value(std::size_t v) { prefix(); os_ << v; return *this; }
  JsonWriter& value(bool v) { prefix(); os_ << (v ? "true" : "false"); return *this; }
  JsonWriter& value(std::string_view v) { prefix(); write_string(v); return *this; }
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& null() { prefix(); os_ << "null"; return *this; }
  template <typename T>
  JsonWriter& value(const std::optional<T>& v) {
    return v ? value(*v) : null();
  }

  template <typename T>
  JsonWriter& field(std::string_view k, const T& v) {
    key(k);
    return value(v);
  }

  void finish() { os_ << '\n'; }

 private:
  void open(char c) {
    prefix();
    os_ << c;
    first_.push_back(true);
  }
  void close(char c) {
    const bool empty = first_.back();
    first_.pop_back();
    if (!empty) newline();
    os_ << c;
  }
  void separator() {
    if (!first_.empty()) {
      if (!first_.back()) os_ << ',';
      first_.back() = false;
      newline();
    }
  }
  void prefix() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    separator();
  }
  void newline() {
    if (indent_ <= 0) return;
    os_ << '\n' << std::string(first_.size() * static_cast<std::size_t>(indent_), ' ');
  }
  void write_string(std::string_view s) {
    os_ << '"';
    for (const char ch : s) {
      switch (ch) {
        case '"': os_ << "\\\""; break;
        case '\\': os_ << "\\\\"; break;
        case '\n': os_ << "\\n"; break;
        case '\t': os_ << "\\t"; break;
        case '\r': os_ << "\\r"; break;
        default:
          if (static_cast<unsigned char>(ch) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", ch);
            os_ << buf;
          } else {
            os_ << ch;
          }
      }
    }
    os_ << '"';
  }

  std::ostream& os_;
  int indent_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

inline void write_json(JsonWriter& w, const Params& p) {
  w.begin_object().field("omega", p.omega).field("c", p.c).field("regime", to_string(p.regime())).end_object();
}

inline void write_json(JsonWriter& w, const GridSpec& g) {
  w.begin_object().field("n", g.size()).field("half_width", g.half_width()).field("spacing", g.spacing()).end_object();
}

inline void write_json(JsonWriter& w, const FunctionalReport& r) {
  w.begin_object();
  w.field("mass", r.mass).field("momentum", r.momentum).field("energy", r.energy);
  w.field("action", r.action).field("nehari", r.nehari);
  w.field("quadratic_part", r.quadratic_part).field("nonlinear_part", r.nonlinear_part);
  w.field("positive_part", r.positive_part);
  w.key("params"); write_json(w, r.params);
  w.field("regime", to_string(r.regime));
  w.end_object();
}

inline void write_json(JsonWriter& w, const MinimizationResult& r, const Params& p, const GridSpec& g) {
  w.begin_object();
  w.key("params"); write_json(w, p);
  w.key("grid"); write_json(w, g);
  w.field("j_value", r.j_value).field("h_value", r.h_value).field("k_value", r.k_value);
  w.field("iterations", r.iterations).field("converged", r.converged);
  w.key("history").begin_array();
  for (const HistoryEntry& e : r.history) {
    w.begin_object().field("iteration", e.iteration).field("h", e.h).field("k", e.k);
    w.field("symmetrized", e.symmetrized).end_object();
  }
  w.end_array();
  w.end_object();
}

inline void write_json(JsonWriter& w, const ClassificationResult& r) {
  w.begin_object();
  w.key("params"); write_json(w, r.params);
  w.field("j_value", r.j_value).field("k_value", r.k_value).field("j_threshold", r.j_threshold);
  w.field("set", to_string(r.set)).field("h1_bound", r.h1_bound);
  w.end_object();
}

inline void write_json(JsonWriter& w, const GlobalExistenceCertificate& c) {
  w.begin_object();
  w.field("condition_met", to_string(c.condition_met));
  w.field("admissible_c", c.admissible_c);
  w.key("kplus_params");
  if (c.kplus_params) write_json(w, *c.kplus_params); else w.null();
  w.field("mass", c.mass).field("momentum", c.momentum).field("energy", c.energy);
  w.field("equality_tolerance", c.equality_tolerance);
  w.end_object();
}

inline const char* to_string(EvolutionStatus s) {
  return s == EvolutionStatus::Completed ? "completed" : "non_finite";
}

inline void write_json(JsonWriter& w, const EvolutionConfig& c) {
  w.begin_object().field("t_end", c.t_end).field("dt", c.dt).field("dealias", c.dealias);
  w.field("snapshot_stride", c.snapshot_stride).field("equation_form", to_string(c.form)).end_object();
}

inline void write_json(JsonWriter& w, const Drift& d) {
  w.begin_object().field("mass", d.mass).field("momentum", d.momentum).field("energy", d.energy).end_object();
}

// ---- trace directory ---------------------------------------------------------

inline void write_reports_csv(std::ostream& os, const EvolutionTrace& tr) {
  os << "index,t,mass,momentum,energy,action,nehari,quadratic_part,nonlinear_part,positive_part\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (std::size_t i = 0; i < tr.reports.size(); ++i) {
    const FunctionalReport& r = tr.reports[i];
    os << i << ',' << format_double(tr.times[i]) << ',' << format_double(r.mass) << ','
       << format_double(r.momentum) << ',' << format_double(r.energy) << ',' << format_double(r.action)
       << ',' << format_double(r.nehari) << ',' << opt(r.quadratic_part) << ',' << opt(r.nonlinear_part)
       << ',' << opt(r.positive_part) << '\n';
  }
}

inline void write_trace_meta(std::ostream& os, const EvolutionTrace& tr, const EvolutionConfig& cfg,
                             const Params& p) {
  JsonWriter w(os);
  w.begin_object();
  w.key("config"); write_json(w, cfg);
  w.key("params"); write_json(w, p);
  w.key("grid"); write_json(w, tr.snapshots.front().grid());
  w.field("status", to_string(tr.status));
  if (!tr.message.empty()) w.field("message", tr.message);
  w.field("steps", tr.steps).field("dt_used", tr.dt_used);
  w.field("snapshots", tr.snapshots.size());
  w.key("max_drift"); write_json(w, tr.max_drift);
  w.end_object();
  w.finish();
}

/// dir/meta.json, dir/t_<index>.csv per snapshot, dir/reports.csv.
inline void write_trace(const std::filesystem::path& dir, const EvolutionTrace& tr,
                        const EvolutionConfig& cfg, const Params& p) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  auto open = [](const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
  };
  {
    auto os = open(dir / "meta.json");
    write_trace_meta(os, tr, cfg, p);
  }
  {
    auto os = open(dir / "reports.csv");
    write_reports_csv(os, tr);
  }
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    write_field_csv(dir / ("t_" + std::to_string(i) + ".csv"), tr.snapshots[i]);
  }
}

}  // namespace dnls
