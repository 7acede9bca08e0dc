#pragma once

// Entropic moments and Renyi / Shannon / Tsallis entropies of hydrogenic
// states, split into radial and angular parts.

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "errors.hpp"
#include "hydrogenic.hpp"
#include "norms.hpp"
#include "quadrature.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"

namespace rydberg {

enum class Backend { exact, asymptotic };

inline const char* to_string(Backend b) { return b == Backend::exact ? "exact" : "asymptotic"; }

struct EntropyReport {
  QuantumState state;
  double p = 1.0;
  Backend method = Backend::exact;
  double W_p = 1.0;
  double log_W_p = 0.0;
  double R_p = 0.0;
  double T_p = 0.0;
  std::optional<double> S;
  /// W_2 of the full density, present for p = 2
  std::optional<double> disequilibrium;
  std::optional<RegimeClass> regime;
  bool offset_unknown = false;
  double radial_R = 0.0;
  double angular_R = 0.0;
  /// absolute uncertainty of R_p (or S) from the quadratures
  double error_estimate = 0.0;
  bool converged = true;
  std::string warning;
};

/// [exp((1-p) R) - 1] / (1-p)
inline double tsallis_from_renyi(double R, double p) {
  if (p == 1.0) throw domain_error("tsallis_from_renyi: p = 1 is the Shannon limit");
  return std::expm1((1.0 - p) * R) / (1.0 - p);
}

// ---------------------------------------------------------------------------
// Angular part

/// Lambda for l = 0: 2^{1-p} pi^{D(1-p)/2} Gamma(D/2)^{p-1}
inline double f_closed_form_log(double p, int D) {
  return (1.0 - p) * std::numbers::ln2 + 0.5 * D * (1.0 - p) * std::log(std::numbers::pi) +
         (p - 1.0) * gamma_ln(0.5 * D);
}
inline double f_closed_form(double p, int D) { return std::exp(f_closed_form_log(p, D)); }

/// Same quantity written as 2^{D(1-p)} pi^{(-Dp+D+p-1)/2} [Gamma(D)/Gamma((D+1)/2)]^{p-1}
inline double f_body_form_log(double p, int D) {
  return D * (1.0 - p) * std::numbers::ln2 + 0.5 * (-D * p + D + p - 1.0) * std::log(std::numbers::pi) +
         (p - 1.0) * (gamma_ln(D) - gamma_ln(0.5 * (D + 1.0)));
}
inline double f_body_form(double p, int D) { return std::exp(f_body_form_log(p, D)); }

/// Shannon entropy of the constant harmonic Y_00 on S^{D-1}, -ln N_00^2
inline double shannon_Y00(int D) {
  return D * std::numbers::ln2 + 0.5 * (D - 1.0) * std::log(std::numbers::pi) + gamma_ln(0.5 * (D + 1.0)) -
         gamma_ln(D);
}

namespace detail {

/// [0, theta zeros of the Gegenbauer factor, pi]
inline std::vector<double> axis_breakpoints(const HarmonicSpec& spec, int j) {
  std::vector<double> bp{0.0};
  const int k = spec.degree(j);
  if (k > 0) {
    const double lam = spec.gegenbauer_param(j);
    auto c = [&](double th) { return gegenbauer(k, lam, std::cos(th)); };
    const int steps = 64 * (k + 1);
    std::vector<double> grid(steps + 1);
    for (int i = 0; i <= steps; ++i) grid[i] = std::numbers::pi * (i + 0.5) / (steps + 1);
    for (double z : sign_change_roots(c, std::span<const double>(grid))) bp.push_back(z);
  }
  bp.push_back(std::numbers::pi);
  return bp;
}

}  // namespace detail

/// ln of the angular moment Lambda = int |Y|^{2p} dOmega.
inline IntegrationResult log_angular_moment(HarmonicSpec spec, double p, double tol = 1e-10) {
  spec.validate();
  if (!(p > 0.0)) throw domain_error("angular_moment: p must be positive");
  IntegrationResult r;
  r.converged = true;
  double acc = p * harmonic_norm_sq_log(spec) + std::log(2.0 * std::numbers::pi);
  double rel = 0.0;
  for (int j = 1; j <= spec.axes(); ++j) {
    const double w = 2.0 * spec.alpha_axis(j);
    auto g = [&](double th) {
      const double s = std::sin(th);
      const double f = std::abs(harmonic_axis_factor(spec, j, th));
      if (f == 0.0 || s <= 0.0) return 0.0;
      return std::exp(2.0 * p * std::log(f) + w * std::log(s));
    };
    const std::vector<double> bp = detail::axis_breakpoints(spec, j);
    const IntegrationResult I = integrate_adaptive(g, std::span<const double>(bp), AdaptiveOptions{0.1 * tol, 0.0, 4000});
    acc += std::log(I.value);
    rel += I.error_estimate / I.value;
    r.subintervals_used += I.subintervals_used;
    r.converged = r.converged && I.converged;
  }
  r.log_value = acc;
  r.value = std::exp(acc);
  r.error_estimate = rel * r.value;
  return r;
}

inline double angular_moment(const HarmonicSpec& spec, double p, double tol = 1e-10) {
  return log_angular_moment(spec, p, tol).value;
}

/// Shannon entropy of |Y|^2 on S^{D-1}, one theta axis at a time.
inline double harmonic_shannon(HarmonicSpec spec, double tol = 1e-10) {
  spec.validate();
  if (spec.l == 0) return shannon_Y00(spec.D);
  double S = -harmonic_norm_sq_log(spec);
  for (int j = 1; j <= spec.axes(); ++j) {
    const double w = 2.0 * spec.alpha_axis(j);
    auto mass = [&](double th) {
      const double f = harmonic_axis_factor(spec, j, th);
      return f * f * std::pow(std::sin(th), w);
    };
    auto info = [&](double th) {
      const double f = harmonic_axis_factor(spec, j, th);
      const double g = f * f;
      return g > 0.0 ? g * std::log(g) * std::pow(std::sin(th), w) : 0.0;
    };
    const std::vector<double> bp = detail::axis_breakpoints(spec, j);
    const AdaptiveOptions opt{0.1 * tol, 1e-15, 4000};
    const double h = integrate_adaptive(mass, std::span<const double>(bp), opt).value;
    const double e = integrate_adaptive(info, std::span<const double>(bp), opt).value;
    S -= e / h;
  }
  return S;
}

// ---------------------------------------------------------------------------
// Radial part

namespace detail {

/// ln W_rad = [D(1-p)-p] ln eta - [D(1-p)+p] ln 2 - D(1-p) ln Z + ln N
inline double radial_log_prefactor(const QuantumState& s, double p) {
  const double D = s.D;
  return (D * (1.0 - p) - p) * std::log(s.eta()) - (D * (1.0 - p) + p) * std::numbers::ln2 -
         D * (1.0 - p) * std::log(s.Z);
}

struct RadialPart {
  double log_W = 0.0;
  double rel_error = 0.0;
  bool converged = true;
  std::optional<RegimeClass> regime;
  bool offset_unknown = false;
  std::string warning;
};

inline RadialPart radial_part(const QuantumState& s, double p, Backend backend, double tol) {
  RadialPart out;
  if (backend == Backend::exact) {
    const IntegrationResult N = hydrogenic_norm(s, p, tol);
    out.log_W = radial_log_prefactor(s, p) + N.log_value;
    out.rel_error = N.error_estimate / N.value;
    if (!std::isfinite(out.rel_error)) out.rel_error = N.converged ? tol : 1.0;
    out.converged = N.converged;
    out.warning = N.warning;
  } else {
    const AsymptoticEstimate e = asymptotic_norm(s, p);
    out.log_W = radial_log_prefactor(s, p) + e.log_value(s.n_r());
    out.regime = e.regime;
    out.offset_unknown = e.offset_unknown;
  }
  return out;
}

inline void check_order(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw domain_error("entropy order p must be positive");
  if (p == 1.0) throw domain_error("p = 1 is singular for the Renyi formula; use the Shannon path");
}

}  // namespace detail

/// Radial Renyi entropy R_p[rho_{n,l}].
inline double renyi_radial(const QuantumState& state, double p, Backend backend = Backend::exact,
                           double tol = 1e-9) {
  detail::check_order(p);
  QuantumState s = state;
  s.validate();
  return detail::radial_part(s, p, backend, tol).log_W / (1.0 - p);
}

/// Radial plus angular Renyi entropy of the full density, with W_p and T_p.
inline EntropyReport renyi_total(const QuantumState& state, double p, Backend backend = Backend::exact,
                                 double tol = 1e-9) {
  detail::check_order(p);
  EntropyReport rep;
  rep.state = state;
  rep.state.validate();
  rep.p = p;
  rep.method = backend;
  const detail::RadialPart rad = detail::radial_part(rep.state, p, backend, tol);
  const IntegrationResult ang = log_angular_moment(HarmonicSpec::of(rep.state), p, 0.1 * tol);
  rep.log_W_p = rad.log_W + ang.log_value;
  rep.W_p = std::exp(rep.log_W_p);
  rep.radial_R = rad.log_W / (1.0 - p);
  rep.angular_R = ang.log_value / (1.0 - p);
  rep.R_p = rep.log_W_p / (1.0 - p);
  rep.T_p = tsallis_from_renyi(rep.R_p, p);
  if (p == 2.0) rep.disequilibrium = rep.W_p;
  rep.regime = rad.regime;
  rep.offset_unknown = rad.offset_unknown;
  rep.error_estimate = (rad.rel_error + ang.error_estimate / ang.value) / std::abs(1.0 - p);
  rep.converged = rad.converged && ang.converged;
  rep.warning = rad.warning;
  return rep;
}

/// -int rho ln rho r^{D-1} dr by direct quadrature.
inline IntegrationResult shannon_radial_exact_result(const QuantumState& state, double tol = 1e-9) {
  QuantumState s = state;
  s.validate();
  const int n = s.n_r();
  const double alpha = s.alpha();
  const double eta = s.eta();
  const int D = s.D;
  // g = phat^2 x^alpha e^{-x}; integrand g x (ln g + (2-D) ln x)
  auto h = [&](double x) {
    if (x <= 0.0) return 0.0;
    const SignedLog w = laguerre_weighted_log(n, alpha, x);
    if (w.sign == 0) return 0.0;
    const double lg = 2.0 * w.log_abs;
    const double lx = std::log(x);
    return std::exp(lg + lx) * (lg + (2.0 - D) * lx);
  };
  const std::vector<double> zeros = laguerre_zeros(n, alpha);
  const double nu = 4.0 * n + 2.0 * alpha + 2.0;
  const double scale = 2.0 * std::cbrt(nu) + 4.0;
  // magnitude of the integral is ~ 2 eta |ln|; use it for an absolute floor
  const AdaptiveOptions opt{0.1 * tol, 1e-3 * tol, 20000};
  IntegrationResult body;
  double start = 0.0;
  if (!zeros.empty()) {
    std::vector<double> bp{0.0};
    bp.insert(bp.end(), zeros.begin(), zeros.end());
    body = integrate_adaptive(h, std::span<const double>(bp), opt);
    start = zeros.back();
  } else {
    body.converged = true;
  }
  const IntegrationResult tail =
      integrate_adaptive(h, start, std::numeric_limits<double>::infinity(), 0.1 * tol, scale);
  const double integral = body.value + tail.value;
  IntegrationResult r;
  r.value = D * std::log(s.lambda_scale()) + std::log(2.0 * eta) - integral / (2.0 * eta);
  r.error_estimate = (body.error_estimate + tail.error_estimate) / (2.0 * eta);
  r.subintervals_used = body.subintervals_used + tail.subintervals_used;
  r.converged = body.converged && tail.converged;
  return r;
}

inline double shannon_radial_exact(const QuantumState& state, double tol = 1e-9) {
  return shannon_radial_exact_result(state, tol).value;
}

/// Large-n limit of the radial Shannon entropy:
/// 2D ln n + (2-D) ln 2 + ln pi - D ln Z + D - 3
inline double shannon_radial_limit(const QuantumState& state) {
  const double D = state.D;
  return 2.0 * D * std::log(static_cast<double>(state.n)) + (2.0 - D) * std::numbers::ln2 +
         std::log(std::numbers::pi) - D * std::log(state.Z) + D - 3.0;
}

/// Leading-order total Shannon entropy for n >> l: radial limit plus S[Y].
inline double shannon_limit_formula(const QuantumState& state) {
  QuantumState s = state;
  s.validate();
  return shannon_radial_limit(s) + harmonic_shannon(HarmonicSpec::of(s));
}

/// Shannon entropy report (the p = 1 member of the family).
inline EntropyReport shannon_total(const QuantumState& state, Backend backend = Backend::exact, double tol = 1e-9) {
  EntropyReport rep;
  rep.state = state;
  rep.state.validate();
  rep.p = 1.0;
  rep.method = backend;
  const HarmonicSpec spec = HarmonicSpec::of(rep.state);
  rep.angular_R = harmonic_shannon(spec, 0.1 * tol);
  if (backend == Backend::exact) {
    const IntegrationResult rad = shannon_radial_exact_result(rep.state, tol);
    rep.radial_R = rad.value;
    rep.error_estimate = rad.error_estimate;
    rep.converged = rad.converged;
  } else {
    rep.radial_R = shannon_radial_limit(rep.state);
    rep.offset_unknown = true;
    rep.warning = "leading-order limit for n >> l; o(1) remainder not included";
  }
  rep.R_p = rep.radial_R + rep.angular_R;
  rep.T_p = rep.R_p;
  rep.S = rep.R_p;
  return rep;
}

/// Renyi report for p != 1, Shannon report for p = 1.
inline EntropyReport entropy_report(const QuantumState& state, double p, Backend backend = Backend::exact,
                                    double tol = 1e-9) {
  if (p == 1.0) return shannon_total(state, backend, tol);
  return renyi_total(state, p, backend, tol);
}

}  // namespace rydberg
