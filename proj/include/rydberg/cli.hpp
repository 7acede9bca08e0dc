#pragma once

// Subcommands of the command-line front end. Each cmd_* writes its table to
// `out`, diagnostics to `err`, and returns the process exit code.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "format.hpp"
#include "hydrogenic.hpp"
#include "norms.hpp"

namespace rydberg::cli {

enum ExitCode : int { exit_ok = 0, exit_invalid = 2, exit_convergence = 3 };

struct Options {
  double tol = 1e-9;
  /// "csv" or "json"; empty picks the command default
  std::string format;
  std::string out;
  int threads = 1;
};

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// helpers

inline int integer_dimension(double D) {
  if (!std::isfinite(D) || D < 2.0 || D != std::floor(D) || D > 100000.0)
    throw domain_error("unsupported dimension D=" + format_double(D) + " (states need integer D >= 2)");
  return static_cast<int>(D);
}

inline Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "asymptotic") return Backend::asymptotic;
  throw domain_error("unknown backend '" + s + "' (exact | asymptotic)");
}

/// Inclusive arithmetic progression from..to, indices rather than repeated addition.
inline std::vector<double> progression(double from, double to, double step) {
  if (!(step > 0.0) || !(to >= from)) throw domain_error("range needs step > 0 and to >= from");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  if (count > 1000000) throw domain_error("range has too many points");
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) v[i] = from + static_cast<double>(i) * step;
  return v;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers; rethrows the
/// first exception after all workers stop.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
  }
  if (failure) std::rethrow_exception(failure);
}

using Cell = std::variant<std::nullptr_t, bool, long long, double, std::string>;

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  bool converged = true;
};

inline std::string cell_text(const Cell& c) {
  struct {
    std::string operator()(std::nullptr_t) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

inline json cell_json(const Cell& c) {
  struct {
    json operator()(std::nullptr_t) const { return nullptr; }
    json operator()(bool b) const { return b; }
    json operator()(long long v) const { return v; }
    json operator()(double v) const { return std::isfinite(v) ? json(v) : json(nullptr); }
    json operator()(const std::string& s) const { return s; }
  } visit;
  return std::visit(visit, c);
}

inline void write_table(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.header.size(); ++i) obj[t.header[i]] = cell_json(row[i]);
      arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << '\n';
    return;
  }
  write_csv_row(out, t.header);
  for (const auto& row : t.rows) {
    std::vector<std::string> fields;
    fields.reserve(row.size());
    for (const auto& c : row) fields.push_back(cell_text(c));
    write_csv_row(out, fields);
  }
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json state_json(const QuantumState& s) {
  return json{{"D", s.D}, {"Z", s.Z}, {"n", s.n}, {"l", s.l}, {"mu", s.mu}};
}

inline json report_json(const EntropyReport& r) {
  json j = state_json(r.state);
  j["p"] = r.p;
  j["method"] = to_string(r.method);
  j["energy"] = energy(r.state);
  j["W_p"] = finite_or_null(r.W_p);
  j["log_W_p"] = finite_or_null(r.log_W_p);
  j["R_p"] = finite_or_null(r.R_p);
  j["T_p"] = finite_or_null(r.T_p);
  j["S"] = r.S ? finite_or_null(*r.S) : json(nullptr);
  j["disequilibrium"] = r.disequilibrium ? finite_or_null(*r.disequilibrium) : json(nullptr);
  j["radial_R"] = finite_or_null(r.radial_R);
  j["angular_R"] = finite_or_null(r.angular_R);
  j["regime"] = r.regime ? json(to_string(r.regime->kind)) : json(nullptr);
  j["case_label"] = r.regime ? json(r.regime->case_label) : json(nullptr);
  j["offset_unknown"] = r.offset_unknown;
  j["error_estimate"] = finite_or_null(r.error_estimate);
  j["converged"] = r.converged;
  j["warning"] = r.warning;
  return j;
}

/// Maps library exceptions onto the exit-code contract.
template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const rydberg::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_invalid;
  }
}

/// Sends a finished table to --out or the given stream.
inline int emit(const Table& t, const Options& o, const std::string& default_format, std::ostream& out,
                std::ostream& err) {
  const std::string format = o.format.empty() ? default_format : o.format;
  if (o.out.empty()) {
    write_table(t, format, out);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << o.out << " for writing\n";
      return exit_invalid;
    }
    write_table(t, format, file);
  }
  if (!t.converged) {
    err << "error: at least one row did not reach the requested tolerance (see the converged column)\n";
    return exit_convergence;
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// eval

struct EvalArgs {
  double D = 3.0;
  int n = 1;
  int l = 0;
  std::vector<int> mu;
  double Z = 1.0;
  double p = 2.0;
  std::string backend = "exact";
};

inline int cmd_eval(const EvalArgs& a, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const QuantumState s = make_state(integer_dimension(a.D), a.Z, a.n, a.l, a.mu);
    const EntropyReport rep = entropy_report(s, a.p, parse_backend(a.backend), o.tol);
    const json j = report_json(rep);
    if (!rep.converged) {
      err << j.dump(2) << '\n' << "error: quadrature did not reach the requested tolerance\n";
      return static_cast<int>(exit_convergence);
    }
    if (o.format == "csv") {
      Table t;
      for (auto it = j.begin(); it != j.end(); ++it) {
        t.header.push_back(it.key());
      }
      std::vector<Cell> row;
      for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (v.is_null()) row.emplace_back(nullptr);
        else if (v.is_boolean()) row.emplace_back(v.get<bool>());
        else if (v.is_number_integer()) row.emplace_back(v.get<long long>());
        else if (v.is_number()) row.emplace_back(v.get<double>());
        else if (v.is_string()) row.emplace_back(v.get<std::string>());
        else row.emplace_back(v.dump());
      }
      t.rows.push_back(std::move(row));
      return emit(t, o, "csv", out, err);
    }
    if (o.out.empty()) {
      out << j.dump(2) << '\n';
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << o.out << " for writing\n";
        return static_cast<int>(exit_invalid);
      }
      file << j.dump(2) << '\n';
    }
    return static_cast<int>(exit_ok);
  });
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  double D = 3.0;
  int l = 0;
  std::vector<int> mu;
  double Z = 1.0;
  double p = 1.5;
  int n_from = 50;
  int n_to = 200;
  int n_step = 50;
};

/// n, exact norm, leading asymptotic term and their ratio. In the transition
/// regimes the leading term carries ln(n-l-1)/pi^2 without the unknown O(1)
/// offset, so the ratio is the log-compensated statistic N pi^2 n_r^{-e}/ln n_r.
inline Table compare_table(const CompareArgs& a, const Options& o) {
  const int D = integer_dimension(a.D);
  if (a.n_step < 1 || a.n_to < a.n_from) throw domain_error("compare: need n-step >= 1 and n-to >= n-from");
  std::vector<int> ns;
  for (int n = a.n_from; n <= a.n_to; n += a.n_step) ns.push_back(n);
  Table t;
  t.header = {"n", "n_r", "N_exact", "N_exact_error", "N_asymptotic_leading", "ratio", "statistic", "regime",
              "converged"};
  t.rows.resize(ns.size());
  const AsymptoticEstimate est = asymptotic_norm(make_state(D, a.Z, std::max(ns.front(), a.l + 1), a.l, a.mu), a.p);
  parallel_for(ns.size(), o.threads, [&](std::size_t i) {
    const QuantumState s = make_state(D, a.Z, ns[i], a.l, a.mu);
    const IntegrationResult N = hydrogenic_norm(s, a.p, o.tol);
    const double lead = est.value(s.n_r());
    t.rows[i] = {static_cast<long long>(s.n),
                 static_cast<long long>(s.n_r()),
                 N.value,
                 N.error_estimate,
                 lead,
                 std::exp(N.log_value - est.log_value(s.n_r())),
                 std::string(est.log_factor ? "compensated" : "ratio"),
                 std::string(to_string(est.regime.kind)),
                 N.converged};
  });
  for (const auto& row : t.rows) t.converged = t.converged && std::get<bool>(row.back());
  return t;
}

inline int cmd_compare(const CompareArgs& a, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return emit(compare_table(a, o), o, "csv", out, err); });
}

// ---------------------------------------------------------------------------
// sweep

struct SweepSpec {
  std::string series;
  /// n, p, Z or D
  std::string axis = "n";
  std::vector<double> values;
  double D = 3.0;
  int n = 100;
  int l = 0;
  std::vector<int> mu;
  double Z = 1.0;
  double p = 2.0;
  /// exact, asymptotic or both
  std::string backend = "exact";
  /// derive every Z from the Z = 1 value via R_p(Z) = R_p(1) - D ln Z
  bool z_translation = false;
};

inline std::vector<SweepSpec> sweep_preset(const std::string& name) {
  std::vector<SweepSpec> out;
  if (name == "fig1") {
    const std::vector<double> ns = progression(50, 200, 25);
    struct Series { double p; double D; const char* label; };
    for (Series s : {Series{1.25, 6, "p=5/4,D=6"}, Series{10.0 / 7.0, 5, "p=10/7,D=5"},
                     Series{0.75, 4, "p=3/4,D=4"}, Series{3.0, 2, "p=3,D=2"}}) {
      SweepSpec sp;
      sp.series = s.label;
      sp.axis = "n";
      sp.values = ns;
      sp.D = s.D;
      sp.p = s.p;
      out.push_back(sp);
    }
  } else if (name == "fig2") {
    SweepSpec sp;
    sp.series = "n=100,l=1,D=4";
    sp.axis = "p";
    sp.values = {1.25, 1.5, 1.75};
    for (int p = 2; p <= 10; ++p) sp.values.push_back(p);
    sp.D = 4;
    sp.n = 100;
    sp.l = 1;
    out.push_back(sp);
  } else if (name == "fig3") {
    struct Series { double p; double D; const char* label; };
    for (Series s : {Series{3.0, 2, "p=3,D=2"}, Series{0.75, 4, "p=3/4,D=4"}}) {
      SweepSpec sp;
      sp.series = s.label;
      sp.axis = "Z";
      sp.values = progression(1, 103, 1);
      sp.D = s.D;
      sp.p = s.p;
      sp.z_translation = true;
      out.push_back(sp);
    }
  } else if (name == "fig4") {
    for (double p : {0.5, 4.0}) {
      SweepSpec sp;
      sp.series = p == 0.5 ? "p=1/2" : "p=4";
      sp.axis = "D";
      sp.values = progression(50, 200, 1);
      sp.p = p;
      sp.backend = "asymptotic";
      out.push_back(sp);
    }
  } else {
    throw domain_error("unknown preset '" + name + "' (fig1 | fig2 | fig3 | fig4)");
  }
  return out;
}

namespace detail {

struct SweepPoint {
  const SweepSpec* spec;
  double value;
  Backend backend;
};

inline QuantumState sweep_state(const SweepSpec& sp, double value) {
  double D = sp.D, Z = sp.Z;
  int n = sp.n;
  if (sp.axis == "D") D = value;
  if (sp.axis == "Z") Z = value;
  if (sp.axis == "n") {
    if (value != std::floor(value)) throw domain_error("sweep: n values must be integers");
    n = static_cast<int>(value);
  }
  const int Di = integer_dimension(D);
  std::vector<int> mu = sp.mu;
  if (sp.axis == "D" && !mu.empty() && mu.size() != static_cast<std::size_t>(Di - 2))
    throw domain_error("sweep: a fixed mu chain cannot follow a D axis");
  return make_state(Di, Z, n, sp.l, mu);
}

}  // namespace detail

inline Table sweep_table(const std::vector<SweepSpec>& specs, const Options& o) {
  std::vector<detail::SweepPoint> points;
  for (const auto& sp : specs) {
    if (sp.axis != "n" && sp.axis != "p" && sp.axis != "Z" && sp.axis != "D")
      throw domain_error("sweep axis must be one of n, p, Z, D");
    if (sp.values.empty()) throw domain_error("sweep needs at least one axis value");
    if (sp.z_translation && sp.axis != "Z") throw domain_error("Z translation applies to a Z axis only");
    std::vector<Backend> backends;
    if (sp.backend == "both") backends = {Backend::exact, Backend::asymptotic};
    else backends = {parse_backend(sp.backend)};
    for (double v : sp.values)
      for (Backend b : backends) points.push_back({&sp, v, b});
  }

  Table t;
  t.header = {"series", "axis", "value", "D", "n", "l", "Z", "p", "backend", "method", "regime",
              "R_p", "T_p", "log_W_p", "error_estimate", "converged"};
  t.rows.resize(points.size());
  // validate every state before any quadrature runs
  for (const auto& pt : points) (void)detail::sweep_state(*pt.spec, pt.value);

  // Z-translation bases: one report at Z = 1 per (series, backend)
  std::vector<std::pair<const SweepSpec*, Backend>> base_keys;
  for (const auto& pt : points)
    if (pt.spec->z_translation &&
        std::find(base_keys.begin(), base_keys.end(), std::make_pair(pt.spec, pt.backend)) == base_keys.end())
      base_keys.emplace_back(pt.spec, pt.backend);
  std::vector<EntropyReport> bases(base_keys.size());
  parallel_for(base_keys.size(), o.threads, [&](std::size_t i) {
    QuantumState s = detail::sweep_state(*base_keys[i].first, 1.0);
    bases[i] = entropy_report(s, base_keys[i].first->p, base_keys[i].second, o.tol);
  });

  parallel_for(points.size(), o.threads, [&](std::size_t i) {
    const auto& pt = points[i];
    const SweepSpec& sp = *pt.spec;
    const QuantumState s = detail::sweep_state(sp, pt.value);
    const double p = sp.axis == "p" ? pt.value : sp.p;
    EntropyReport rep;
    std::string method = to_string(pt.backend);
    if (sp.z_translation) {
      const auto k = std::find(base_keys.begin(), base_keys.end(), std::make_pair(pt.spec, pt.backend)) -
                     base_keys.begin();
      rep = bases[k];
      rep.state = s;
      const double shift = -s.D * std::log(s.Z);
      rep.R_p += shift;
      rep.radial_R += shift;
      if (p == 1.0) {
        rep.T_p = rep.R_p;
        rep.S = rep.R_p;
      } else {
        rep.log_W_p = (1.0 - p) * rep.R_p;
        rep.W_p = std::exp(rep.log_W_p);
        rep.T_p = tsallis_from_renyi(rep.R_p, p);
      }
      method += "+z-translation";
    } else {
      rep = entropy_report(s, p, pt.backend, o.tol);
    }
    t.rows[i] = {sp.series,
                 sp.axis,
                 pt.value,
                 static_cast<long long>(s.D),
                 static_cast<long long>(s.n),
                 static_cast<long long>(s.l),
                 s.Z,
                 p,
                 std::string(to_string(pt.backend)),
                 method,
                 rep.regime ? Cell(std::string(to_string(rep.regime->kind))) : Cell(nullptr),
                 rep.R_p,
                 rep.T_p,
                 rep.log_W_p,
                 rep.error_estimate,
                 rep.converged};
  });
  for (const auto& row : t.rows) t.converged = t.converged && std::get<bool>(row.back());
  return t;
}

inline int cmd_sweep(const std::vector<SweepSpec>& specs, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return emit(sweep_table(specs, o), o, "csv", out, err); });
}

// ---------------------------------------------------------------------------
// regimes

struct RegimeArgs {
  double D_from = 2.0;
  double D_to = 12.0;
  double D_step = 1.0;
  double p_from = 0.25;
  double p_to = 10.0;
  double p_step = 0.25;
};

inline Table regimes_table(const RegimeArgs& a) {
  Table t;
  t.header = {"kind", "D", "p", "regime", "beta", "exponent", "log_factor", "boundary"};
  for (double D : progression(a.D_from, a.D_to, a.D_step)) {
    for (double p : progression(a.p_from, a.p_to, a.p_step)) {
      const RegimeClass r = classify_regime(D, p);
      t.rows.push_back({std::string("grid"), D, p, std::string(to_string(r.kind)), r.beta, n_exponent(r),
                        r.log_factor(), nullptr});
    }
    const std::vector<double> bs = regime_boundaries(D);
    std::vector<std::string> names;
    if (D < 3.0 - boundary_tol) names = {"2", "(6D-2)/(6D-10)"};
    else if (bs.size() == 1) names = {"2"};
    else names = {"(D-1)/(D-2)", "2D/(2D-3)"};
    for (std::size_t i = 0; i < bs.size(); ++i) {
      const RegimeClass r = classify_regime(D, bs[i]);
      t.rows.push_back({std::string("boundary"), D, bs[i], std::string(to_string(r.kind)), r.beta, n_exponent(r),
                        r.log_factor(), names[i]});
    }
  }
  return t;
}

inline int cmd_regimes(const RegimeArgs& a, const Options& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] { return emit(regimes_table(a), o, "csv", out, err); });
}

}  // namespace rydberg::cli
