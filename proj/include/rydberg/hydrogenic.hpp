#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "specfun.hpp"

namespace rydberg {

/// Bound state (n, l, mu_2, ..., mu_{D-1}) of the D-dimensional hydrogenic atom
/// with nuclear charge Z (atomic units). mu_{D-1} = m may be negative.
struct QuantumState {
  int D = 3;
  double Z = 1.0;
  int n = 1;
  int l = 0;
  std::vector<int> mu;

  double eta() const { return n + 0.5 * (D - 3); }
  double grand_l() const { return l + 0.5 * (D - 3); }
  double lambda_scale() const { return eta() / (2.0 * Z); }
  int n_r() const { return n - l - 1; }
  /// Laguerre parameter 2l + D - 2 of the radial polynomial
  double alpha() const { return 2.0 * l + D - 2.0; }

  /// Throws domain_error unless the state is physical. An empty mu chain is
  /// filled with zeros.
  void validate();
};

inline void QuantumState::validate() {
  if (D < 2) throw domain_error("unsupported dimension D=" + std::to_string(D) + " (need integer D >= 2)");
  if (!(Z > 0.0) || !std::isfinite(Z)) throw domain_error("nuclear charge Z must be positive");
  if (n < 1) throw domain_error("principal quantum number n must be >= 1");
  if (l < 0 || l > n - 1) throw domain_error("orbital quantum number must satisfy 0 <= l <= n-1");
  const std::size_t len = static_cast<std::size_t>(D - 2);
  if (mu.empty()) mu.assign(len, 0);
  if (mu.size() != len)
    throw domain_error("mu chain needs D-2 = " + std::to_string(len) + " entries, got " + std::to_string(mu.size()));
  int prev = l;
  for (std::size_t i = 0; i < len; ++i) {
    const int v = i + 1 == len ? std::abs(mu[i]) : mu[i];
    if (v < 0 || v > prev) throw domain_error("mu chain must satisfy l >= mu_2 >= ... >= |m|");
    prev = v;
  }
}

inline QuantumState make_state(int D, double Z, int n, int l, std::vector<int> mu = {}) {
  QuantumState s{D, Z, n, l, std::move(mu)};
  s.validate();
  return s;
}

inline double energy(const QuantumState& s) {
  const double eta = s.eta();
  return -s.Z * s.Z / (2.0 * eta * eta);
}

/// ln rho_{n,l}(r); rho is normalized so that its integral against r^{D-1} dr is one.
inline double radial_density_log(const QuantumState& s, double r) {
  if (!(r > 0.0)) throw domain_error("radial_density: r must be positive");
  const double lam = s.lambda_scale();
  const double eta = s.eta();
  const double x = r / lam;
  const SignedLog w = laguerre_weighted_log(s.n_r(), s.alpha(), x);
  return -s.D * std::log(lam) - std::log(2.0 * eta) + 2.0 * w.log_abs + (2.0 - s.D) * std::log(x);
}

inline double radial_density(const QuantumState& s, double r) {
  return std::exp(radial_density_log(s, r));
}

// ---------------------------------------------------------------------------
// Hyperspherical harmonics

/// Angular part of a state. Each axis theta_j (j = 1..D-2) carries the factor
/// C^{lambda_j}_{k_j}(cos theta_j) sin^{s_j} theta_j.
struct HarmonicSpec {
  int D = 3;
  int l = 0;
  std::vector<int> mu;

  static HarmonicSpec of(const QuantumState& s) { return {s.D, s.l, s.mu}; }

  int axes() const { return D - 2; }
  /// mu_j with mu_1 = l; the last entry enters through |m|
  int mu_at(int j) const {
    if (j == 1) return l;
    const int v = mu[j - 2];
    return j == D - 1 ? std::abs(v) : v;
  }
  double alpha_axis(int j) const { return 0.5 * (D - j - 1); }
  int degree(int j) const { return mu_at(j) - mu_at(j + 1); }
  double gegenbauer_param(int j) const { return alpha_axis(j) + mu_at(j + 1); }
  int sine_power(int j) const { return mu_at(j + 1); }

  void validate() {
    QuantumState s{D, 1.0, l + 1, l, mu};
    s.validate();
    mu = s.mu;
  }
};

/// theta -> sin^{2 alpha_j} theta, the measure factor of axis j on S^{D-1}
inline std::function<double(double)> solid_angle_weight(int D, int j) {
  if (j < 1 || j > D - 2) throw domain_error("solid_angle_weight: axis index out of range");
  const int power = D - j - 1;
  return [power](double theta) { return std::pow(std::sin(theta), power); };
}

/// ln of the normalization constant N^2 of the hyperspherical harmonic
inline double harmonic_norm_sq_log(HarmonicSpec spec) {
  spec.validate();
  double acc = -std::log(2.0 * std::numbers::pi);
  for (int j = 1; j <= spec.axes(); ++j) {
    const double a = spec.alpha_axis(j);
    const int mj = spec.mu_at(j), mj1 = spec.mu_at(j + 1);
    acc += std::log(a + mj) + gamma_ln(mj - mj1 + 1.0) + 2.0 * gamma_ln(a + mj1) - std::log(std::numbers::pi) -
           (1.0 - 2.0 * a - 2.0 * mj1) * std::numbers::ln2 - gamma_ln(2.0 * a + mj + mj1);
  }
  return acc;
}

inline double harmonic_norm_sq(const HarmonicSpec& spec) { return std::exp(harmonic_norm_sq_log(spec)); }

/// Gegenbauer-sine factor of axis j at angle theta
inline double harmonic_axis_factor(const HarmonicSpec& spec, int j, double theta) {
  const double t = std::clamp(std::cos(theta), -1.0, 1.0);
  return gegenbauer(spec.degree(j), spec.gegenbauer_param(j), t) * std::pow(std::sin(theta), spec.sine_power(j));
}

}  // namespace rydberg
