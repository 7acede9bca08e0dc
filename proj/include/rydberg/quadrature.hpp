#pragma once

// Adaptive Gauss-Kronrod integration (global bisection of the worst
// subinterval, QUADPACK-style error heuristic) and a lobe-by-lobe engine for
// semi-infinite oscillatory integrals with algebraic decay.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rydberg {

struct IntegrationResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subintervals_used = 0;
  bool converged = false;
  /// ln(value) for positive integrals; stays finite when `value` itself would
  /// under- or overflow. NaN when not provided.
  double log_value = std::numeric_limits<double>::quiet_NaN();
  /// Non-empty when the integration ran with a relaxed tolerance or hit a limit.
  std::string warning;

  double relative_error() const {
    return value != 0.0 ? error_estimate / std::abs(value) : std::numeric_limits<double>::infinity();
  }
};

struct AdaptiveOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subintervals = 4000;
};

namespace detail {

struct GKEstimate {
  double value;
  double error;
};

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (non-negative half).
inline constexpr std::array<double, 8> gk15_nodes = {
    0.00000000000000000e+00, 2.07784955007898468e-01, 4.05845151377397167e-01,
    5.86087235467691130e-01, 7.41531185599394440e-01, 8.64864423359769073e-01,
    9.49107912342758525e-01, 9.91455371120812639e-01};
inline constexpr std::array<double, 8> gk15_weights = {
    2.09482141084727828e-01, 2.04432940075298892e-01, 1.90350578064785410e-01,
    1.69004726639267903e-01, 1.40653259715525919e-01, 1.04790010322250184e-01,
    6.30920926299785533e-02, 2.29353220105292250e-02};
// Gauss 7-point weights at nodes 0, 2, 4, 6 of the Kronrod set
inline constexpr std::array<double, 4> g7_weights = {
    4.17959183673469388e-01, 3.81830050505118945e-01, 2.79705391489276668e-01,
    1.29484966168869693e-01};

template <class F>
GKEstimate gauss_kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 15> fv;
  fv[0] = f(center);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gk15_nodes[i];
    fv[2 * i - 1] = f(center - dx);
    fv[2 * i] = f(center + dx);
  }
  double kronrod = gk15_weights[0] * fv[0];
  double gauss = g7_weights[0] * fv[0];
  double resabs = std::abs(kronrod);
  for (int i = 1; i < 8; ++i) {
    const double pair = fv[2 * i - 1] + fv[2 * i];
    kronrod += gk15_weights[i] * pair;
    resabs += gk15_weights[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
    if (i % 2 == 0) gauss += g7_weights[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double resasc = gk15_weights[0] * std::abs(fv[0] - mean);
  for (int i = 1; i < 8; ++i)
    resasc += gk15_weights[i] * (std::abs(fv[2 * i - 1] - mean) + std::abs(fv[2 * i] - mean));
  const double scale = std::abs(half);
  kronrod *= half;
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((kronrod - gauss * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
  return {kronrod, err};
}

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Globally adaptive integration over the union of [breakpoints[i], breakpoints[i+1]].
/// Stops once the summed error estimate is below max(abs_tol, rel_tol * |value|).
template <class F>
IntegrationResult integrate_adaptive(F&& f, std::span<const double> breakpoints,
                                     const AdaptiveOptions& opt = {}) {
  if (breakpoints.size() < 2) throw domain_error("integrate_adaptive: need at least two breakpoints");
  if (!(opt.rel_tol > 0.0 || opt.abs_tol > 0.0)) throw domain_error("integrate_adaptive: tolerance must be positive");

  std::priority_queue<detail::Segment> active;
  std::vector<detail::Segment> frozen;
  double total = 0.0, total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i], b = breakpoints[i + 1];
    if (!(b > a)) {
      if (b == a) continue;
      throw domain_error("integrate_adaptive: breakpoints must be increasing");
    }
    auto e = detail::gauss_kronrod15(f, a, b);
    active.push({a, b, e.value, e.error});
    total += e.value;
    total_err += e.error;
  }
  const int limit = std::max<int>(opt.max_subintervals, 4 * static_cast<int>(breakpoints.size()));
  int count = static_cast<int>(active.size());

  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  while (!active.empty() && total_err > target() && count < limit) {
    detail::Segment s = active.top();
    active.pop();
    const double mid = 0.5 * (s.a + s.b);
    const double width = s.b - s.a;
    if (width <= 1e3 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s.a), std::abs(s.b)) ||
        width < 1e-300) {
      frozen.push_back(s);
      continue;
    }
    auto left = detail::gauss_kronrod15(f, s.a, mid);
    auto right = detail::gauss_kronrod15(f, mid, s.b);
    total += left.value + right.value - s.value;
    total_err += left.error + right.error - s.error;
    active.push({s.a, mid, left.value, left.error});
    active.push({mid, s.b, right.value, right.error});
    ++count;
  }

  // exact re-summation, small to large
  std::vector<detail::Segment> all(std::move(frozen));
  while (!active.empty()) {
    all.push_back(active.top());
    active.pop();
  }
  std::sort(all.begin(), all.end(), [](auto& x, auto& y) { return std::abs(x.value) < std::abs(y.value); });
  IntegrationResult r;
  for (auto& s : all) {
    r.value += s.value;
    r.error_estimate += s.error;
  }
  r.subintervals_used = static_cast<int>(all.size());
  r.converged = std::isfinite(r.value) &&
                r.error_estimate <= std::max(opt.abs_tol, opt.rel_tol * std::abs(r.value));
  if (r.value > 0.0) r.log_value = std::log(r.value);
  if (!r.converged) r.warning = "subdivision budget exhausted before reaching tolerance";
  return r;
}

/// Integral of f over [a, b] to within max(tol, tol*|value|). b may be +infinity,
/// in which case f must decay at least exponentially; the half-line is mapped
/// onto [0, 1) by x = a + scale * t / (1 - t).
template <class F>
IntegrationResult integrate_adaptive(F&& f, double a, double b, double tol, double scale = 1.0) {
  if (!(tol > 0.0)) throw domain_error("integrate_adaptive: tolerance must be positive");
  AdaptiveOptions opt{tol, tol, 4000};
  if (std::isinf(b)) {
    if (b < 0 || std::isinf(a)) throw domain_error("integrate_adaptive: only [a, +inf) is supported");
    auto g = [&](double t) {
      const double u = 1.0 - t;
      const double x = a + scale * t / u;
      const double v = f(x);
      return v == 0.0 ? 0.0 : v * scale / (u * u);
    };
    const std::array<double, 2> bp{0.0, 1.0};
    return integrate_adaptive(g, std::span<const double>(bp), opt);
  }
  if (b < a) {
    auto r = integrate_adaptive(f, b, a, tol, scale);
    r.value = -r.value;
    r.log_value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  const std::array<double, 2> bp{a, b};
  return integrate_adaptive(f, std::span<const double>(bp), opt);
}

// ---------------------------------------------------------------------------
// Semi-infinite oscillatory integrals

/// Whether successive lobe integrals keep one sign (e.g. |J|^{2p}) or alternate (J itself).
enum class LobeSigns { same, alternating };

struct OscillatorySpec {
  std::function<double(double)> integrand;
  /// Position of the k-th zero of the oscillation, k = 1, 2, ...; increasing.
  std::function<double(int)> zero_locator;
  /// The integrand envelope decays like t^decay_exponent.
  double decay_exponent = -2.0;
  LobeSigns lobes = LobeSigns::same;
  /// Zeros grow like k^zero_growth (1 for Bessel/trig, 2/3 for Airy).
  double zero_growth = 1.0;
  double lower = 0.0;
  int lobe_budget = 64;
};

struct OscillatoryResult : IntegrationResult {
  /// partial_sums[k-1] is the integral from `lower` to the k-th zero.
  std::vector<double> partial_sums;
};

namespace detail {

// Solves the small dense system A x = rhs in place (partial pivoting).
inline std::vector<double> solve_dense(std::vector<std::vector<double>> A, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double m = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= m * A[c][k];
      rhs[r] -= m * rhs[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= A[i][k] * x[k];
    x[i] = s / A[i][i];
  }
  return x;
}

/// Limit of S_K = S + sum_{j<terms} c_j K^{-(gamma+j)} fitted through
/// terms+1 partial sums ending at index `last` (1-based) with stride h.
inline double tail_extrapolate(const std::vector<double>& sums, int last, int terms, int h, double gamma) {
  const int n = terms + 1;
  std::vector<std::vector<double>> A(n, std::vector<double>(n));
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    const int K = last - i * h;
    const double u = static_cast<double>(K) / last;
    A[i][0] = 1.0;
    for (int j = 0; j < terms; ++j) A[i][j + 1] = std::pow(u, -(gamma + j));
    rhs[i] = sums[K - 1];
  }
  return solve_dense(std::move(A), std::move(rhs))[0];
}

/// Repeated pairwise averaging of the last `window`+1 partial sums ending at `last`.
inline double iterated_average(const std::vector<double>& sums, int last, int window) {
  std::vector<double> s(sums.begin() + (last - 1 - window), sums.begin() + last);
  while (s.size() > 1) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) s[i] = 0.5 * (s[i] + s[i + 1]);
    s.pop_back();
  }
  return s[0];
}

}  // namespace detail

/// Integral over [lower, inf) of an oscillatory integrand with algebraic decay.
/// Each lobe between consecutive zeros is integrated adaptively; the sequence
/// of partial sums is then accelerated (iterated averaging for alternating
/// lobes, extrapolation in the known tail exponent for same-sign lobes).
inline OscillatoryResult integrate_oscillatory_semiinfinite(const OscillatorySpec& spec, double tol) {
  if (!(tol > 0.0)) throw domain_error("integrate_oscillatory_semiinfinite: tolerance must be positive");
  if (spec.lobes == LobeSigns::same && !(spec.decay_exponent < -1.0))
    throw divergence_error("oscillatory integral diverges: same-sign lobes need decay exponent < -1",
                           Endpoint::infinity);
  if (spec.lobes == LobeSigns::alternating && !(spec.decay_exponent < 0.0))
    throw divergence_error("oscillatory integral diverges: alternating lobes need decay exponent < 0",
                           Endpoint::infinity);
  const int K = std::max(spec.lobe_budget, 16);

  OscillatoryResult out;
  out.partial_sums.reserve(K);
  const AdaptiveOptions lobe_opt{1e-3 * tol, 0.0, 2000};
  double left = spec.lower;
  double running = 0.0, lobe_err = 0.0, lobe_abs = 0.0;
  bool lobes_ok = true;
  for (int k = 1; k <= K; ++k) {
    const double right = spec.zero_locator(k);
    const std::array<double, 2> bp{left, right};
    auto r = integrate_adaptive(spec.integrand, std::span<const double>(bp), lobe_opt);
    // a lobe that vanishes to rounding is fine; only flag real shortfalls
    if (!r.converged && r.error_estimate > 1e-3 * tol * std::abs(running + r.value)) lobes_ok = false;
    running += r.value;
    lobe_err += r.error_estimate;
    lobe_abs += std::abs(r.value);
    out.subintervals_used += r.subintervals_used;
    out.partial_sums.push_back(running);
    left = right;
  }

  double estimate = 0.0, accel_err = 0.0;
  if (spec.lobes == LobeSigns::alternating) {
    const int window = std::min(12, K / 4);
    estimate = detail::iterated_average(out.partial_sums, K, window);
    const double shifted = detail::iterated_average(out.partial_sums, K - 1, window);
    accel_err = std::abs(estimate - shifted);
  } else {
    const double gamma = -(spec.decay_exponent + 1.0) * spec.zero_growth;
    const int terms = 6;
    if (gamma > 20.0) {
      // tail beyond the budget is below the last lobe by a factor ~ K/gamma
      out.value = out.partial_sums.back();
      out.error_estimate = std::abs(out.partial_sums[K - 1] - out.partial_sums[K - 2]) * K / gamma +
                           lobe_err + 1e-15 * lobe_abs;
      out.converged = lobes_ok && out.error_estimate <= tol * std::abs(out.value);
      if (out.value > 0.0) out.log_value = std::log(out.value);
      if (!out.converged) out.warning = "lobe summation did not reach the requested tolerance";
      return out;
    }
    const int h = std::max(1, K / (2 * terms + 2));
    estimate = detail::tail_extrapolate(out.partial_sums, K, terms, h, gamma);
    const double shifted = detail::tail_extrapolate(out.partial_sums, K - h, terms, h, gamma);
    const double higher = detail::tail_extrapolate(out.partial_sums, K, terms + 1, h, gamma);
    accel_err = std::max(std::abs(estimate - shifted), std::abs(estimate - higher));
  }
  out.value = estimate;
  out.error_estimate = accel_err + lobe_err + 1e-15 * lobe_abs;
  out.converged = lobes_ok && out.error_estimate <= tol * std::abs(estimate);
  if (estimate > 0.0) out.log_value = std::log(estimate);
  if (!out.converged) out.warning = "lobe acceleration did not reach the requested tolerance";
  return out;
}

}  // namespace rydberg
