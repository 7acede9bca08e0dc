#pragma once

// Leading-order n -> infinity behaviour of the hydrogenic Laguerre norms
// N_{n,l}(D, p): regime classification and the constants C, C_A, C_B.

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hydrogenic.hpp"
#include "quadrature.hpp"
#include "specfun.hpp"

namespace rydberg {

inline constexpr double boundary_tol = 1e-12;

enum class RegimeKind { cosine, airy, bessel, cosine_airy, cosine_bessel };

inline const char* to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::cosine: return "cosine";
    case RegimeKind::airy: return "airy";
    case RegimeKind::bessel: return "bessel";
    case RegimeKind::cosine_airy: return "cosine-airy";
    case RegimeKind::cosine_bessel: return "cosine-bessel";
  }
  return "?";
}

struct RegimeClass {
  RegimeKind kind = RegimeKind::cosine;
  std::string case_label;
  double D = 3.0;
  double p = 1.0;
  double beta = 0.0;
  /// (D-1)/(D-2); NaN for D = 2
  double p_low = std::numeric_limits<double>::quiet_NaN();
  /// 2D/(2D-3)
  double p_high = 0.0;
  /// Airy and Bessel contributions add up (the D = 2, p = 5 line)
  bool mixed = false;

  bool log_factor() const { return kind == RegimeKind::cosine_airy || kind == RegimeKind::cosine_bessel; }
};

inline double beta_of(double D, double p) { return (2.0 - D) * p + D - 1.0; }

namespace detail {
inline bool near(double a, double b) { return std::abs(a - b) <= boundary_tol; }
}  // namespace detail

/// Airy/Bessel crossover for 2 <= D < 3, (6D-2)/(6D-10); equals 5 at D = 2.
inline double airy_bessel_threshold(double D) { return (6.0 * D - 2.0) / (6.0 * D - 10.0); }

inline RegimeClass classify_regime(double D, double p) {
  if (!std::isfinite(D) || D < 2.0 - boundary_tol)
    throw domain_error("unsupported dimension D < 2 for the asymptotic regimes");
  if (!(p > 0.0) || !std::isfinite(p)) throw domain_error("classify_regime: p must be positive");
  using detail::near;
  RegimeClass r;
  r.D = D;
  r.p = p;
  r.beta = beta_of(D, p);
  r.p_high = 2.0 * D / (2.0 * D - 3.0);
  if (!near(D, 2.0)) r.p_low = (D - 1.0) / (D - 2.0);

  if (D < 3.0 - boundary_tol) {
    const double pab = airy_bessel_threshold(D);
    const std::string tag = near(D, 2.0) ? "D=2" : "2<D<3";
    if (near(p, 2.0)) {
      r.kind = RegimeKind::cosine_airy;
      r.case_label = tag + ", p=2";
    } else if (p < 2.0) {
      r.kind = RegimeKind::cosine;
      r.case_label = tag + ", 0<p<2";
    } else if (near(p, pab)) {
      r.kind = RegimeKind::bessel;
      r.mixed = true;
      r.case_label = tag + ", p at Airy/Bessel threshold";
    } else if (p < pab) {
      r.kind = RegimeKind::airy;
      r.case_label = tag + ", 2<p below Airy/Bessel threshold";
    } else {
      r.kind = RegimeKind::bessel;
      r.case_label = tag + ", p above Airy/Bessel threshold";
    }
    return r;
  }
  if (near(D, 3.0)) {
    if (near(p, 2.0)) {
      r.kind = RegimeKind::cosine_airy;
      r.case_label = "D=3, p=2";
    } else if (p < 2.0) {
      r.kind = RegimeKind::cosine;
      r.case_label = "D=3, 0<p<2";
    } else {
      r.kind = RegimeKind::bessel;
      r.case_label = "D=3, p>2";
    }
    return r;
  }
  if (near(p, r.p_high)) {
    r.kind = RegimeKind::cosine_bessel;
    r.case_label = "D>3, p=2D/(2D-3)";
  } else if (p < r.p_high) {
    r.kind = RegimeKind::cosine;
    if (near(p, r.p_low))
      r.case_label = "D>3, beta=0, p=(D-1)/(D-2)";
    else if (p < r.p_low)
      r.case_label = "D>3, beta>0, p<(D-1)/(D-2)";
    else
      r.case_label = "D>3, beta<0, (D-1)/(D-2)<p<2D/(2D-3)";
  } else {
    r.kind = RegimeKind::bessel;
    r.case_label = "D>3, p>2D/(2D-3)";
  }
  return r;
}

/// p values where the regime changes at dimension D.
inline std::vector<double> regime_boundaries(double D) {
  if (D < 2.0 - boundary_tol) throw domain_error("unsupported dimension D < 2");
  if (D < 3.0 - boundary_tol) return {2.0, airy_bessel_threshold(D)};
  if (detail::near(D, 3.0)) return {2.0};
  return {(D - 1.0) / (D - 2.0), 2.0 * D / (2.0 * D - 3.0)};
}

// ---------------------------------------------------------------------------
// Constants

namespace detail {
inline bool near_pole(double x) { return x <= boundary_tol && std::abs(x - std::nearbyint(x)) <= boundary_tol; }
}  // namespace detail

/// Cosine-regime constant C(beta, p) as a signed log.
inline SignedLog constant_C_log(double beta, double p) {
  if (!(p > 0.0)) throw domain_error("constant_C: p must be positive");
  const double g1 = beta + 1.0 - 0.5 * p, g2 = 1.0 - 0.5 * p, g3 = beta + 2.0 - p;
  if (detail::near_pole(g1) || detail::near_pole(g2) || detail::near_pole(g3))
    throw regime_boundary_error("constant_C: Gamma pole at beta=" + std::to_string(beta) + ", p=" +
                                std::to_string(p) + "; use the transition-regime formula");
  const SignedLog a = log_abs_gamma(g1), b = log_abs_gamma(g2), c = log_abs_gamma(g3);
  SignedLog r;
  r.log_abs = (beta + 1.0) * std::numbers::ln2 - (p + 0.5) * std::log(std::numbers::pi) + a.log_abs + b.log_abs +
              gamma_ln(p + 0.5) - c.log_abs - gamma_ln(1.0 + p);
  r.sign = a.sign * b.sign * c.sign;
  return r;
}

inline double constant_C(double beta, double p) { return constant_C_log(beta, p).value(); }

/// int_{-inf}^{inf} Ai(s)^{2p} ds (not yet scaled into C_A); p > 2.
inline IntegrationResult airy_power_integral(double p, int lobe_budget = 64, double tol = 1e-9) {
  if (!(p > 2.0))
    throw divergence_error("constant_CA: Ai^{2p} is integrable only for p > 2", Endpoint::infinity);
  auto decaying = [p](double s) {
    const double a = airy_ai(s);
    return a == 0.0 ? 0.0 : std::pow(std::abs(a), 2.0 * p);
  };
  IntegrationResult pos = integrate_adaptive(decaying, 0.0, std::numeric_limits<double>::infinity(), 1e-2 * tol);
  OscillatorySpec spec;
  spec.integrand = [p](double t) { return std::pow(std::abs(airy_ai(-t)), 2.0 * p); };
  spec.zero_locator = [](int k) { return -airy_ai_zero(k); };
  spec.decay_exponent = -0.5 * p;
  spec.zero_growth = 2.0 / 3.0;
  spec.lobes = LobeSigns::same;
  spec.lobe_budget = lobe_budget;
  OscillatoryResult neg = integrate_oscillatory_semiinfinite(spec, tol);
  IntegrationResult r;
  r.value = pos.value + neg.value;
  r.error_estimate = pos.error_estimate + neg.error_estimate;
  r.subintervals_used = pos.subintervals_used + neg.subintervals_used;
  r.converged = pos.converged && neg.converged;
  r.log_value = std::log(r.value);
  r.warning = neg.warning;
  return r;
}

/// 2^{2/3} (2^{2/3} pi)^p int Ai^{2p}: the Airy-regime constant
inline IntegrationResult airy_constant(double p, int lobe_budget = 64, double tol = 1e-9) {
  IntegrationResult r = airy_power_integral(p, lobe_budget, tol);
  const double log_scale = (2.0 / 3.0) * std::numbers::ln2 + p * ((2.0 / 3.0) * std::numbers::ln2 + std::log(std::numbers::pi));
  const double scale = std::exp(log_scale);
  r.value *= scale;
  r.error_estimate *= scale;
  r.log_value += log_scale;
  return r;
}

/// 2 int_0^inf t^{2beta+1} |J_alpha(2t)|^{2p} dt, evaluated with a log-shift so
/// that values far outside double range survive in `log_value`.
inline IntegrationResult bessel_constant(double alpha, double beta, double p, int lobe_budget = 64,
                                         double tol = 1e-9) {
  if (!(alpha >= 0.0)) throw domain_error("constant_CB: alpha must be non-negative");
  if (!(p > 0.0)) throw domain_error("constant_CB: p must be positive");
  const double e0 = 2.0 * beta + 1.0 + 2.0 * p * alpha;
  if (!(e0 > -1.0))
    throw divergence_error("constant_CB diverges at the origin: need 2beta+1+2p*alpha > -1", Endpoint::origin);
  if (!(p > 2.0 * beta + 2.0 + boundary_tol))
    throw divergence_error("constant_CB diverges at infinity: need p > 2beta+2", Endpoint::infinity);

  const std::vector<double> jz = bessel_j_zeros(alpha, lobe_budget + 1);
  std::vector<double> tz(jz.size());
  for (std::size_t i = 0; i < jz.size(); ++i) tz[i] = 0.5 * jz[i];

  auto logf = [=](double t) {
    const SignedLog j = log_abs_bessel_j(alpha, 2.0 * t);
    if (j.sign == 0) return -std::numeric_limits<double>::infinity();
    return std::numbers::ln2 + (2.0 * beta + 1.0) * std::log(t) + 2.0 * p * j.log_abs;
  };
  double M = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 400; ++i) M = std::max(M, logf(tz[0] * i / 401.0));
  for (std::size_t k = 0; k + 1 < tz.size(); ++k) M = std::max(M, logf(0.5 * (tz[k] + tz[k + 1])));

  // first lobe with t = b v^m so that a singular origin becomes regular
  const double b = tz[0];
  const double m = e0 < 0.0 ? 1.0 / (e0 + 1.0) : 1.0;
  auto first = [&](double v) {
    if (v <= 0.0) return 0.0;
    const double t = b * std::pow(v, m);
    return std::exp(logf(t) - M + std::log(m * b) + (m - 1.0) * std::log(v));
  };
  const std::array<double, 2> bp{0.0, 1.0};
  IntegrationResult head = integrate_adaptive(first, std::span<const double>(bp), AdaptiveOptions{1e-2 * tol, 0.0, 4000});

  OscillatorySpec spec;
  spec.integrand = [=](double t) { return std::exp(logf(t) - M); };
  spec.zero_locator = [tz](int k) { return tz[k]; };
  spec.lower = b;
  spec.decay_exponent = 2.0 * beta + 1.0 - p;
  spec.lobes = LobeSigns::same;
  spec.lobe_budget = lobe_budget;
  OscillatoryResult tail = integrate_oscillatory_semiinfinite(spec, tol);

  IntegrationResult r;
  const double total = head.value + tail.value;
  r.log_value = M + std::log(total);
  r.value = std::exp(r.log_value);
  r.error_estimate = std::exp(M) * (head.error_estimate + tail.error_estimate);
  r.subintervals_used = head.subintervals_used + tail.subintervals_used;
  r.converged = head.converged && (tail.converged || tail.error_estimate <= tol * total);
  r.warning = tail.warning;
  return r;
}

namespace detail {

struct ConstantCache {
  std::mutex mutex;
  std::map<std::array<double, 3>, double> log_values;
};

inline ConstantCache& constant_cache() {
  static ConstantCache cache;
  return cache;
}

inline double round_key(double x) {
  if (x == 0.0) return 0.0;
  const double scale = std::pow(10.0, 12 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  return std::nearbyint(x * scale) / scale;
}

template <class Compute>
double cached_log_constant(std::array<double, 3> key, Compute compute) {
  for (auto& k : key) k = round_key(k);
  auto& c = constant_cache();
  {
    std::lock_guard lock(c.mutex);
    if (auto it = c.log_values.find(key); it != c.log_values.end()) return it->second;
  }
  const double v = compute();
  std::lock_guard lock(c.mutex);
  c.log_values.emplace(key, v);
  return v;
}

}  // namespace detail

inline double log_constant_CA(double p) {
  return detail::cached_log_constant({0.0, 0.0, p}, [p] { return airy_constant(p).log_value; });
}
inline double constant_CA(double p) { return std::exp(log_constant_CA(p)); }

inline double log_constant_CB(double alpha, double beta, double p) {
  return detail::cached_log_constant({1.0 + alpha, beta, p},
                                     [=] { return bessel_constant(alpha, beta, p).log_value; });
}
inline double constant_CB(double alpha, double beta, double p) { return std::exp(log_constant_CB(alpha, beta, p)); }

// ---------------------------------------------------------------------------
// Leading terms

/// Power of n_r in the leading term of regime r.
inline double n_exponent(const RegimeClass& r) {
  switch (r.kind) {
    case RegimeKind::cosine: return 1.0 + r.beta - r.p;
    case RegimeKind::cosine_airy: return 2.0 - r.D;
    case RegimeKind::airy: return r.beta + (1.0 - 2.0 * r.p) / 3.0;
    case RegimeKind::cosine_bessel:
    case RegimeKind::bessel: return -1.0 - r.beta;
  }
  return 0.0;
}

/// N ~ coefficient * n_r^n_exponent * (ln n_r if log_factor), n_r = n-l-1.
/// Printed scale factors such as (2 n_r)^e or (4 n_r)^e are folded into the
/// coefficient.
struct AsymptoticEstimate {
  double coefficient = 0.0;
  double log_coefficient = 0.0;
  double n_exponent = 0.0;
  bool log_factor = false;
  /// an unspecified O(1) term is added to ln n_r in the printed formula
  bool offset_unknown = false;
  RegimeClass regime;

  double log_value(double n_r) const {
    if (!(n_r > 0.0)) throw domain_error("asymptotic estimate needs n-l-1 >= 1");
    double v = log_coefficient + n_exponent * std::log(n_r);
    if (log_factor) {
      if (!(n_r > 1.0)) throw domain_error("log-factor regimes need n-l-1 >= 2");
      v += std::log(std::log(n_r));
    }
    return v;
  }
  double value(double n_r) const { return std::exp(log_value(n_r)); }
};

/// Leading term for real D >= 2, orbital number l and order p.
inline AsymptoticEstimate asymptotic_norm(double D, int l, double p) {
  const RegimeClass reg = classify_regime(D, p);
  const double beta = reg.beta;
  const double alpha = 2.0 * l + D - 2.0;
  const double pi = std::numbers::pi;
  AsymptoticEstimate e;
  e.regime = reg;
  e.log_factor = reg.log_factor();
  e.offset_unknown = e.log_factor;
  e.n_exponent = n_exponent(reg);
  switch (reg.kind) {
    case RegimeKind::cosine: {
      const SignedLog c = constant_C_log(beta, p);
      if (c.sign <= 0) throw domain_error("constant_C is not positive at these parameters");
      e.log_coefficient = c.log_abs + e.n_exponent * std::numbers::ln2;
      break;
    }
    case RegimeKind::cosine_airy:
      e.log_coefficient = -2.0 * std::log(pi);
      break;
    case RegimeKind::airy:
      e.log_coefficient = log_constant_CA(p) - p * std::log(pi) + e.n_exponent * std::log(4.0);
      break;
    case RegimeKind::cosine_bessel:
      e.log_coefficient = std::numbers::ln2 + gamma_ln(p + 0.5) - (p + 0.5) * std::log(pi) - gamma_ln(p + 1.0) +
                          e.n_exponent * std::log(4.0);
      break;
    case RegimeKind::bessel:
      e.log_coefficient = log_constant_CB(alpha, beta, p);
      if (reg.mixed) {
        const double airy = log_constant_CA(p) - p * std::log(pi) + e.n_exponent * std::log(4.0);
        const double hi = std::max(airy, e.log_coefficient);
        e.log_coefficient = hi + std::log(std::exp(airy - hi) + std::exp(e.log_coefficient - hi));
      }
      break;
  }
  e.coefficient = std::exp(e.log_coefficient);
  return e;
}

inline AsymptoticEstimate asymptotic_norm(const QuantumState& state, double p) {
  QuantumState s = state;
  s.validate();
  return asymptotic_norm(static_cast<double>(s.D), s.l, p);
}

}  // namespace rydberg
