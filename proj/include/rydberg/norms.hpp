#pragma once

// Exact Laguerre L_p-norms N_n(alpha, p, beta) = int_0^inf (phat_n^2 w_alpha)^p x^beta dx
// by quadrature split at the polynomial zeros.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hydrogenic.hpp"
#include "quadrature.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"

namespace rydberg {

struct NormParams {
  double alpha = 0.0;
  double p = 1.0;
  double beta = 0.0;
  int degree = 0;

  /// exponent of x in the integrand near the origin
  double origin_exponent() const { return p * alpha + beta; }

  void validate() const {
    if (!(alpha > -1.0)) throw domain_error("norm: alpha must exceed -1");
    if (!(p > 0.0) || !std::isfinite(p)) throw domain_error("norm: p must be positive");
    if (degree < 0) throw domain_error("norm: degree must be non-negative");
    if (!std::isfinite(beta)) throw domain_error("norm: beta must be finite");
    if (!(origin_exponent() > -1.0))
      throw divergence_error("norm integral diverges at the origin: need beta + p*alpha > -1", Endpoint::origin);
  }
};

inline NormParams hydrogenic_params(const QuantumState& s, double p) {
  return {s.alpha(), p, (2.0 - s.D) * p + s.D - 1.0, s.n_r()};
}

enum class NormStrategy { zero_split, uniform_panels };

/// Zeros of L_n^alpha in increasing order. All lie below 4n + 2 alpha + 2.
inline std::vector<double> laguerre_zeros(int n, double alpha) {
  if (n == 0) return {};
  detail::check_laguerre_args(n, alpha, 0.0);
  const double nu = 4.0 * n + 2.0 * alpha + 2.0;
  const double umax = std::sqrt(nu) * 1.02 + 1.0;
  for (int refine = 4; refine <= 64; refine *= 2) {
    // zeros are at least pi/sqrt(nu) apart in u = sqrt(x)
    const double du = std::numbers::pi / (refine * std::sqrt(nu));
    std::vector<double> zeros;
    zeros.reserve(n);
    double u0 = 0.5 * du;
    double x0 = u0 * u0;
    SignedLog f0 = detail::laguerre_orthonormal_log(n, alpha, x0);
    for (double u1 = u0 + du; u1 <= umax; u1 += du) {
      const double x1 = u1 * u1;
      const SignedLog f1 = detail::laguerre_orthonormal_log(n, alpha, x1);
      if (f1.sign == 0) {
        zeros.push_back(x1);
      } else if (f0.sign != 0 && f0.sign != f1.sign) {
        const double ref = std::max(f0.log_abs, f1.log_abs);
        auto scaled = [&](double x) {
          const SignedLog v = detail::laguerre_orthonormal_log(n, alpha, x);
          return v.sign * std::exp(v.log_abs - ref);
        };
        zeros.push_back(refine_root(scaled, x0, x1, f0.sign * std::exp(f0.log_abs - ref),
                                    f1.sign * std::exp(f1.log_abs - ref)));
      }
      x0 = x1;
      f0 = f1;
    }
    if (static_cast<int>(zeros.size()) == n) return zeros;
  }
  throw domain_error("laguerre_zeros: failed to isolate all " + std::to_string(n) + " zeros");
}

namespace detail {

/// ln of the norm integrand (phat^2 w)^p x^beta
inline double norm_integrand_log(const NormParams& q, double x) {
  if (x <= 0.0) return q.origin_exponent() > 0.0 ? -std::numeric_limits<double>::infinity() : 0.0;
  const SignedLog w = laguerre_weighted_log(q.degree, q.alpha, x);
  if (w.sign == 0) return -std::numeric_limits<double>::infinity();
  return 2.0 * q.p * w.log_abs + q.beta * std::log(x);
}

/// Upper bound on -d/dx ln f valid for every x >= X beyond the last zero `last`;
/// non-positive when no bound is available yet.
inline double tail_decay_rate(const NormParams& q, double X, double last) {
  const double gap = X - last;
  if (gap <= 0.0) return 0.0;
  return -(q.p * (2.0 * q.degree / gap + std::max(q.alpha, 0.0) / X - 1.0) + std::max(q.beta, 0.0) / X);
}

struct ShiftedIntegrand {
  const NormParams& q;
  double shift;
  double operator()(double x) const { return std::exp(norm_integrand_log(q, x) - shift); }
};

}  // namespace detail

/// N_n(alpha, p, beta) by adaptive quadrature. The relative tolerance applies
/// to the whole integral; degrees above 500 fall back to 1e-7 with a warning.
inline IntegrationResult exact_norm(const NormParams& q, double tol = 1e-9,
                                    NormStrategy strategy = NormStrategy::zero_split) {
  q.validate();
  if (!(tol > 0.0)) throw domain_error("exact_norm: tolerance must be positive");
  std::string warning;
  if (q.degree > 500 && tol < 1e-7) {
    tol = 1e-7;
    warning = "degree > 500: tolerance relaxed to 1e-7";
  }
  const int n = q.degree;
  const std::vector<double> zeros = laguerre_zeros(n, q.alpha);
  const double nu = 4.0 * n + 2.0 * q.alpha + 2.0;
  const double s = q.origin_exponent();
  const double width = 2.0 * std::cbrt(nu) + 4.0 / q.p;
  const double tail_start = zeros.empty() ? width : zeros.back();

  // global log-shift so the integrand is O(1) at its maximum
  double shift = -std::numeric_limits<double>::infinity();
  auto probe = [&](double x) { shift = std::max(shift, detail::norm_integrand_log(q, x)); };
  for (std::size_t i = 0; i + 1 < zeros.size(); ++i) probe(0.5 * (zeros[i] + zeros[i + 1]));
  if (!zeros.empty()) probe(0.5 * zeros.front());
  if (s > 0.0) probe(std::min(s / q.p, tail_start));
  double X = tail_start;
  const double last = zeros.empty() ? 0.0 : zeros.back();
  for (int k = 1; k < 100000; ++k) {
    X = tail_start + 0.25 * k * width;
    const double lf = detail::norm_integrand_log(q, X);
    probe(X);
    if (detail::tail_decay_rate(q, X, last) > 0.0 && lf < shift - 40.0) break;
  }
  if (!std::isfinite(shift)) throw domain_error("exact_norm: integrand vanishes identically");
  const detail::ShiftedIntegrand f{q, shift};
  const AdaptiveOptions opt{0.1 * tol, 0.0, 20000};

  IntegrationResult out;
  double total = 0.0, err = 0.0;
  bool ok = true;
  auto absorb = [&](const IntegrationResult& r) {
    total += r.value;
    err += r.error_estimate;
    out.subintervals_used += r.subintervals_used;
    ok = ok && r.converged;
  };

  if (strategy == NormStrategy::zero_split) {
    // first segment; x = b v^m removes an integrable singularity at the origin
    const double b = zeros.empty() ? width : zeros.front();
    if (s < 0.0) {
      const double m = 1.0 / (s + 1.0);
      const double log_jac = std::log(m * b);
      auto g = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double x = b * std::pow(v, m);
        return std::exp(detail::norm_integrand_log(q, x) - shift + log_jac + (m - 1.0) * std::log(v));
      };
      const std::array<double, 2> bp{0.0, 1.0};
      absorb(integrate_adaptive(g, std::span<const double>(bp), opt));
    } else {
      const std::array<double, 2> bp{0.0, b};
      absorb(integrate_adaptive(f, std::span<const double>(bp), opt));
    }
    if (zeros.size() > 1) absorb(integrate_adaptive(f, std::span<const double>(zeros), opt));
  } else {
    const int panels = 4 * (n + 1);
    std::vector<double> bp(panels + 1);
    for (int i = 0; i <= panels; ++i) bp[i] = tail_start * i / panels;
    absorb(integrate_adaptive(f, std::span<const double>(bp), opt));
  }

  // tail panels until the analytic remainder bound f(X)/kappa is negligible;
  // below machine resolution further panels cannot change the sum
  const double cutoff = std::max(0.01 * tol, 1e-3 * std::numeric_limits<double>::epsilon());
  double a = tail_start;
  const double panel = 0.5 * width;
  double remainder = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 100000; ++k) {
    const std::array<double, 2> bp{a, a + panel};
    absorb(integrate_adaptive(f, std::span<const double>(bp), opt));
    a += panel;
    const double kappa = detail::tail_decay_rate(q, a, last);
    if (kappa > 0.0) {
      remainder = f(a) / kappa;
      if (remainder <= cutoff * std::abs(total)) break;
    }
  }
  err += remainder;

  out.value = std::exp(shift) * total;
  out.log_value = shift + std::log(total);
  out.error_estimate = std::exp(shift) * err;
  out.converged = ok && err <= tol * std::abs(total);
  out.warning = warning;
  if (!out.converged) {
    if (!out.warning.empty()) out.warning += "; ";
    out.warning += "norm quadrature did not reach the requested tolerance";
  }
  return out;
}

/// N_{n,l}(D, p): the hydrogenic specialization alpha = 2l+D-2,
/// beta = (2-D)p + D-1, degree n-l-1.
inline IntegrationResult hydrogenic_norm(const QuantumState& state, double p, double tol = 1e-9) {
  QuantumState s = state;
  s.validate();
  return exact_norm(hydrogenic_params(s, p), tol);
}

}  // namespace rydberg
