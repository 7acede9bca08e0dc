#pragma once

// Special functions used throughout the library: log-Gamma, orthonormal
// Laguerre and Gegenbauer polynomials, Bessel J of real order and the Airy
// function Ai. Everything is double precision and evaluated from series,
// recurrences or asymptotic expansions; large magnitudes are carried as
// logarithms so that degree-10^3 polynomials and order-200 Bessel functions
// stay representable.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "rootfind.hpp"

namespace rydberg {

/// A real number stored as sign * exp(log_abs). sign == 0 encodes an exact zero.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  static SignedLog from(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v < 0 ? -1 : 1};
  }
};

// ---------------------------------------------------------------------------
// Gamma

/// ln Gamma(x) for x > 0 (Lanczos, g = 671/128, 14 terms).
inline double gamma_ln(double x) {
  if (!(x > 0.0)) throw domain_error("gamma_ln: argument must be positive");
  static constexpr std::array<double, 14> cof = {
      57.1562356658629235,     -59.5979603554754912,     14.1360979747417471,
      -0.491913816097620199,   .339946499848118887e-4,   .465236289270485756e-4,
      -.983744753048795646e-4, .158088703224912494e-3,   -.210264441724104883e-3,
      .217439618115212643e-3,  -.164318106536763890e-3,  .844182239838527433e-4,
      -.261908384015814087e-4, .368991826595316234e-5};
  if (x < 0.5) {
    // reflection keeps the Lanczos sum away from its poorly conditioned corner
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - gamma_ln(1.0 - x);
  }
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

/// ln|Gamma(x)| with the sign of Gamma(x), valid for any real x that is not a
/// pole (0, -1, -2, ...).
inline SignedLog log_abs_gamma(double x) {
  if (x > 0.0) return {gamma_ln(x), 1};
  if (x == std::nearbyint(x)) throw domain_error("log_abs_gamma: pole at non-positive integer");
  const double s = std::sin(std::numbers::pi * x);
  return {std::log(std::numbers::pi / std::abs(s)) - gamma_ln(1.0 - x), s < 0 ? -1 : 1};
}

// ---------------------------------------------------------------------------
// Laguerre

namespace detail {

/// Orthonormal Laguerre recurrence run with periodic rescaling. Returns
/// ln|phat_k(x)| and its sign where phat_k = (k!/Gamma(k+alpha+1))^{1/2} L_k^alpha.
inline SignedLog laguerre_orthonormal_log(int k, double alpha, double x) {
  double prev = 0.0;
  double cur = 1.0;
  double log_scale = -0.5 * gamma_ln(alpha + 1.0);
  for (int j = 0; j < k; ++j) {
    const double next =
        ((2.0 * j + alpha + 1.0 - x) * cur - std::sqrt(j * (j + alpha)) * prev) /
        std::sqrt((j + 1.0) * (j + 1.0 + alpha));
    prev = cur;
    cur = next;
    const double mag = std::abs(cur);
    if (mag > 1e150 || (mag < 1e-150 && mag != 0.0 && std::abs(prev) < 1e-150)) {
      const double shift = std::log(mag);
      const double factor = std::exp(-shift);
      cur *= factor;
      prev *= factor;
      log_scale += shift;
    }
  }
  if (cur == 0.0) return {};
  return {std::log(std::abs(cur)) + log_scale, cur < 0 ? -1 : 1};
}

inline void check_laguerre_args(int k, double alpha, double x) {
  if (!(alpha > -1.0)) throw domain_error("laguerre: alpha must exceed -1");
  if (k < 0) throw domain_error("laguerre: degree must be non-negative");
  if (!(x >= 0.0)) throw domain_error("laguerre: x must be non-negative");
}

}  // namespace detail

/// Orthonormal Laguerre polynomial with respect to x^alpha e^{-x} on [0, inf).
inline double laguerre_orthonormal(int k, double alpha, double x) {
  detail::check_laguerre_args(k, alpha, x);
  return detail::laguerre_orthonormal_log(k, alpha, x).value();
}

/// The weighted function phat_k(x) * x^{alpha/2} * e^{-x/2} in log form. Its
/// square is the integrand of the Laguerre orthonormality relation; it is O(1)
/// in the oscillatory bulk for every degree.
inline SignedLog laguerre_weighted_log(int k, double alpha, double x) {
  detail::check_laguerre_args(k, alpha, x);
  SignedLog r = detail::laguerre_orthonormal_log(k, alpha, x);
  if (r.sign == 0) return r;
  if (x == 0.0) {
    if (alpha > 0.0) return {};
    if (alpha < 0.0) return {std::numeric_limits<double>::infinity(), r.sign};
    return r;
  }
  r.log_abs += 0.5 * alpha * std::log(x) - 0.5 * x;
  return r;
}

inline double laguerre_weighted(int k, double alpha, double x) {
  return laguerre_weighted_log(k, alpha, x).value();
}

// ---------------------------------------------------------------------------
// Gegenbauer

/// Gegenbauer polynomial C_k^lambda(t) by its three-term recurrence.
inline double gegenbauer(int k, double lambda, double t) {
  if (!(lambda > -0.5)) throw domain_error("gegenbauer: lambda must exceed -1/2");
  if (k < 0) throw domain_error("gegenbauer: degree must be non-negative");
  if (!(std::abs(t) <= 1.0)) throw domain_error("gegenbauer: |t| must not exceed 1");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (int n = 1; n < k; ++n) {
    const double next = (2.0 * (n + lambda) * t * cur - (n + 2.0 * lambda - 1.0) * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Bessel J of real order nu >= 0

namespace detail {

inline void check_bessel_args(double nu, double x) {
  if (!(nu >= 0.0)) throw domain_error("bessel_j: order must be non-negative");
  if (!(x >= 0.0)) throw domain_error("bessel_j: argument must be non-negative");
}

}  // namespace detail

/// Power series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)) with the
/// leading factor kept in log form. Accurate while x^2/4 is not much larger
/// than nu + 1 (or x <~ 16 for small orders).
inline SignedLog bessel_j_series(double nu, double x) {
  detail::check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? SignedLog{0.0, 1} : SignedLog{};
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k * (nu + k) > -q) break;
  }
  if (sum == 0.0) return {};
  return {nu * std::log(0.5 * x) - gamma_ln(nu + 1.0) + std::log(std::abs(sum)), sum < 0 ? -1 : 1};
}

/// Hankel large-argument expansion. Returns nothing when the asymptotic series
/// cannot reach ~1e-12 before it starts to diverge, or when its terms grow large
/// enough to cost precision (x too small for this order).
inline std::optional<double> bessel_j_hankel(double nu, double x) {
  detail::check_bessel_args(nu, x);
  if (x <= 0.0) return std::nullopt;
  const double mu = 4.0 * nu * nu;
  double P = 1.0;
  double Q = 0.0;
  double term = 1.0;
  double last = 1.0;
  bool ok = false;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * x);
    const double mag = std::abs(term);
    if (mag > 10.0) break;
    if (mag < 1e-17) {
      ok = true;
      break;
    }
    if (mag > last && odd * odd > mu) {
      ok = last < 1e-12;
      break;
    }
    // a_k contributes to P for even k and Q for odd k with alternating signs
    switch (k % 4) {
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
      default: P += term; break;
    }
    last = mag;
  }
  if (!ok) return std::nullopt;
  const double chi = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (P * std::cos(chi) - Q * std::sin(chi));
}

/// Miller backward recurrence normalised by the Neumann sum
/// (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x), mu = frac(nu).
inline SignedLog bessel_j_miller(double nu, double x) {
  detail::check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? SignedLog{0.0, 1} : SignedLog{};
  const int m = static_cast<int>(std::floor(nu));
  const double mu = nu - m;
  const double top = std::max<double>(m, x);
  int N = static_cast<int>(top + 30.0 + 2.0 * std::sqrt(40.0 * top));
  if (N % 2) ++N;

  // weights of the Neumann sum at even offsets 2k; g = Gamma(mu+k)/k! walks down with k
  const double gamma_mu1 = std::exp(gamma_ln(mu + 1.0));
  double g = std::exp(gamma_ln(mu + N / 2) - gamma_ln(N / 2 + 1.0));
  auto accumulate = [&](int idx, double f, double& sum) {
    if (idx % 2) return;
    const int k = idx / 2;
    sum += (k == 0 ? gamma_mu1 : (mu + 2.0 * k) * g) * f;
    if (k >= 2) g *= k / (mu + k - 1.0);
  };

  double f_next = 0.0;   // order index N + 1
  double f_cur = 1e-30;  // order index N
  double cum = 0.0;      // log of accumulated rescaling
  double sum = 0.0;
  accumulate(N, f_cur, sum);
  double fm = (N == m) ? f_cur : 0.0;
  double fm_cum = 0.0;
  for (int k = N; k >= 1; --k) {
    const double f_prev = 2.0 * (mu + k) / x * f_cur - f_next;
    f_next = f_cur;
    f_cur = f_prev;  // now index k - 1
    const int idx = k - 1;
    accumulate(idx, f_cur, sum);
    if (idx == m) {
      fm = f_cur;
      fm_cum = cum;
    }
    if (std::abs(f_cur) > 1e200) {
      const double s = 1e-200;
      f_cur *= s;
      f_next *= s;
      sum *= s;
      cum += std::log(s);
    }
  }
  if (fm == 0.0) return {};
  // true f_m / true S = (fm e^{-fm_cum}) / (sum e^{-cum})
  const double log_ratio = std::log(std::abs(fm)) - std::log(std::abs(sum)) + (cum - fm_cum);
  const int sign = ((fm < 0) != (sum < 0)) ? -1 : 1;
  return {log_ratio + mu * std::log(0.5 * x), sign};
}

/// ln|J_nu(x)| and sign, choosing series, Hankel or Miller by region.
inline SignedLog log_abs_bessel_j(double nu, double x) {
  detail::check_bessel_args(nu, x);
  if (x <= 14.0 || x * x <= 2.0 * (nu + 1.0)) return bessel_j_series(nu, x);
  if (auto h = bessel_j_hankel(nu, x)) return SignedLog::from(*h);
  return bessel_j_miller(nu, x);
}

inline double bessel_j(double nu, double x) { return log_abs_bessel_j(nu, x).value(); }

/// First `count` positive zeros of J_nu, located by a sign-change scan with
/// step pi/8 (zeros are spaced by more than pi/8 for every order).
inline std::vector<double> bessel_j_zeros(double nu, int count) {
  std::vector<double> zeros;
  zeros.reserve(count);
  auto f = [nu](double x) { return static_cast<double>(log_abs_bessel_j(nu, x).sign); };
  auto g = [nu](double x) { return bessel_j(nu, x); };
  const double step = std::numbers::pi / 8.0;
  double a = std::max(nu, step);  // j_{nu,1} > nu
  double fa = f(a);
  while (static_cast<int>(zeros.size()) < count) {
    const double b = a + step;
    const double fb = f(b);
    if (fa != 0 && fb != 0 && fa != fb) {
      zeros.push_back(refine_root(g, a, b));
    } else if (fb == 0) {
      zeros.push_back(b);
    }
    a = b;
    fa = fb;
  }
  return zeros;
}

// ---------------------------------------------------------------------------
// Airy

namespace detail {

// Ai(0) and -Ai'(0)
inline constexpr long double airy_c1 = 0.355028053887817239260063186004183176L;
inline constexpr long double airy_c2 = 0.258819403792806798405183560189203963L;

inline double airy_ai_maclaurin(double y) {
  const long double z = y;
  const long double z3 = z * z * z;
  long double f = 1.0L, tf = 1.0L;
  long double g = z, tg = z;
  for (int k = 1; k < 200; ++k) {
    tf *= z3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= z3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-22L * std::abs(f) && std::abs(tg) < 1e-22L * (std::abs(g) + 1e-300L)) break;
  }
  return static_cast<double>(airy_c1 * f - airy_c2 * g);
}

// u_k coefficients of the Airy asymptotic expansions
inline double airy_u_next(double u_prev, int k) {
  return u_prev * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) / ((2.0 * k - 1.0) * 216.0 * k);
}

}  // namespace detail

/// Airy function Ai(y). Maclaurin series (extended precision) on
/// [-7.87, 6.5], decaying asymptotic series above, oscillatory below.
inline double airy_ai(double y) {
  using std::numbers::pi;
  if (y > 6.5) {
    const double zeta = 2.0 / 3.0 * y * std::sqrt(y);
    double sum = 1.0, u = 1.0, last = 1.0;
    for (int k = 1; k < 60; ++k) {
      u = detail::airy_u_next(u, k);
      const double t = u / std::pow(zeta, k);
      if (t > last) break;
      sum += (k % 2 ? -t : t);
      last = t;
      if (t < 1e-17) break;
    }
    return std::exp(-zeta) / (2.0 * std::sqrt(pi) * std::pow(y, 0.25)) * sum;
  }
  if (y >= -7.87) return detail::airy_ai_maclaurin(y);
  const double x = -y;
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double P = 1.0, Q = 0.0, u = 1.0, last = 1.0;
  for (int k = 1; k < 60; ++k) {
    u = detail::airy_u_next(u, k);
    const double t = u / std::pow(zeta, k);
    if (t > last) break;
    switch (k % 4) {
      case 1: Q += t; break;
      case 2: P -= t; break;
      case 3: Q -= t; break;
      default: P += t; break;
    }
    last = t;
    if (t < 1e-17) break;
  }
  const double phase = zeta - 0.25 * pi;
  return (std::cos(phase) * P + std::sin(phase) * Q) / (std::sqrt(pi) * std::pow(x, 0.25));
}

/// k-th zero of Ai (k >= 1), negative. Asymptotic estimate refined by root bracketing.
inline double airy_ai_zero(int k) {
  if (k < 1) throw domain_error("airy_ai_zero: index starts at 1");
  const double t = 3.0 * std::numbers::pi * (4.0 * k - 1.0) / 8.0;
  const double t2 = 1.0 / (t * t);
  const double guess =
      -std::pow(t, 2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * 77125.0 / 82944.0)));
  const double spacing = std::numbers::pi / std::sqrt(std::abs(guess));
  double half = 0.25 * spacing;
  for (int tries = 0; tries < 8; ++tries, half *= 1.5) {
    const double a = guess - half, b = guess + half;
    const double fa = airy_ai(a), fb = airy_ai(b);
    if ((fa < 0) != (fb < 0)) return refine_root(airy_ai, a, b, fa, fb);
  }
  throw domain_error("airy_ai_zero: failed to bracket zero");
}

}  // namespace rydberg
