#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "rydberg/quadrature.hpp"
#include "rydberg/specfun.hpp"

using namespace rydberg;

namespace {

const double inf = std::numeric_limits<double>::infinity();

void expect_honest(const IntegrationResult& r, double truth) {
  EXPECT_LE(std::abs(r.value - truth), 10.0 * r.error_estimate + 1e-15 * std::abs(truth))
      << "value " << r.value << " truth " << truth << " estimate " << r.error_estimate;
}

OscillatorySpec j1_spec() {
  OscillatorySpec s;
  const std::vector<double> zeros = bessel_j_zeros(1.0, 200);
  s.integrand = [](double t) { return bessel_j(1.0, t); };
  s.zero_locator = [zeros](int k) { return zeros[k - 1]; };
  s.decay_exponent = -0.5;
  s.lobes = LobeSigns::alternating;
  return s;
}

OscillatorySpec sinc2_spec() {
  OscillatorySpec s;
  s.integrand = [](double t) {
    const double v = std::sin(t) / t;
    return v * v;
  };
  s.zero_locator = [](int k) { return k * std::numbers::pi; };
  s.decay_exponent = -2.0;
  return s;
}

}  // namespace

TEST(Adaptive, Linear) {
  const auto r = integrate_adaptive([](double x) { return x; }, 0.0, 1.0, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 0.5, 1e-14);
  expect_honest(r, 0.5);
}

TEST(Adaptive, Exponential) {
  const auto r = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, inf, 1e-12);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  expect_honest(r, 1.0);
}

TEST(Adaptive, GammaIdentity) {
  for (auto [s, p] : {std::pair{2.3, 1.7}, std::pair{0.5, 3.0}}) {
    const auto r = integrate_adaptive([&](double x) { return std::pow(x, s) * std::exp(-p * x); }, 0.0, inf, 1e-11);
    const double truth = std::tgamma(s + 1.0) / std::pow(p, s + 1.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value / truth, 1.0, 1e-11);
    expect_honest(r, truth);
  }
}

TEST(Adaptive, Additivity) {
  auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x) + std::sqrt(x); };
  const double tol = 1e-10;
  const double whole = integrate_adaptive(f, 0.0, 5.0, tol).value;
  for (double b : {0.3, 1.0, 2.7, 4.9}) {
    const double parts = integrate_adaptive(f, 0.0, b, tol).value + integrate_adaptive(f, b, 5.0, tol).value;
    EXPECT_NEAR(whole, parts, 2.0 * tol * std::abs(whole));
  }
}

TEST(Adaptive, BudgetExhaustionIsReported) {
  auto f = [](double x) { return std::sin(1.0 / (x + 1e-4)); };
  const std::array<double, 2> bp{0.0, 1.0};
  const auto r = integrate_adaptive(f, std::span<const double>(bp), AdaptiveOptions{1e-14, 0.0, 8});
  EXPECT_FALSE(r.converged);
  EXPECT_FALSE(r.warning.empty());
}

TEST(Adaptive, RejectsBadTolerance) {
  EXPECT_THROW(integrate_adaptive([](double x) { return x; }, 0.0, 1.0, 0.0), domain_error);
}

TEST(Oscillatory, BesselJ1IntegratesToOne) {
  const auto r = integrate_oscillatory_semiinfinite(j1_spec(), 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, 1.0, 1e-8);
  expect_honest(r, 1.0);
}

TEST(Oscillatory, BesselJ1AgreesWithDirectLobeSum) {
  // slow raw partial sums still bracket the accelerated value
  const auto r = integrate_oscillatory_semiinfinite(j1_spec(), 1e-10);
  const auto& s = r.partial_sums;
  const double lo = std::min(s[s.size() - 1], s[s.size() - 2]);
  const double hi = std::max(s[s.size() - 1], s[s.size() - 2]);
  EXPECT_GE(r.value, lo);
  EXPECT_LE(r.value, hi);
  EXPECT_NEAR(0.5 * (lo + hi), 1.0, 1e-2);
}

TEST(Oscillatory, SincSquared) {
  const auto r = integrate_oscillatory_semiinfinite(sinc2_spec(), 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.value, std::numbers::pi / 2.0, 1e-8);
  expect_honest(r, std::numbers::pi / 2.0);
}

TEST(Oscillatory, SlowDecayNearBoundary) {
  // int_0^inf sin^2 t / t^{1.1} dt with lobes decaying like k^{-1.1}
  OscillatorySpec s = sinc2_spec();
  s.integrand = [](double t) { return std::pow(std::sin(t), 2) / std::pow(t, 1.1); };
  s.decay_exponent = -1.1;
  const auto r = integrate_oscillatory_semiinfinite(s, 1e-7);
  // closed form: -Gamma(-0.1) cos(0.05 pi) 2^{0.1} / 2
  const double truth = -std::tgamma(-0.1) * std::cos(0.05 * std::numbers::pi) * std::pow(2.0, 0.1) / 2.0;
  EXPECT_NEAR(r.value / truth, 1.0, 1e-6);
  expect_honest(r, truth);
}

TEST(Oscillatory, DivergentDecayRejected) {
  OscillatorySpec s = sinc2_spec();
  s.decay_exponent = -0.5;
  try {
    integrate_oscillatory_semiinfinite(s, 1e-8);
    FAIL() << "expected divergence_error";
  } catch (const divergence_error& e) {
    EXPECT_EQ(e.endpoint(), Endpoint::infinity);
  }
  OscillatorySpec a = j1_spec();
  a.decay_exponent = 0.0;
  EXPECT_THROW(integrate_oscillatory_semiinfinite(a, 1e-8), divergence_error);
}
