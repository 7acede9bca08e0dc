#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rydberg/asymptotics.hpp"
#include "rydberg/norms.hpp"

using namespace rydberg;

TEST(Regime, ThreeDimensions) {
  EXPECT_EQ(classify_regime(3, 1.5).kind, RegimeKind::cosine);
  EXPECT_EQ(classify_regime(3, 2.0).kind, RegimeKind::cosine_airy);
  EXPECT_EQ(classify_regime(3, 3.0).kind, RegimeKind::bessel);
  EXPECT_EQ(classify_regime(3, 2.0 + 1e-13).kind, RegimeKind::cosine_airy);
  EXPECT_EQ(classify_regime(3, 2.0 + 1e-9).kind, RegimeKind::bessel);
}

TEST(Regime, TwoDimensions) {
  EXPECT_EQ(classify_regime(2, 1.0).kind, RegimeKind::cosine);
  EXPECT_EQ(classify_regime(2, 2.0).kind, RegimeKind::cosine_airy);
  EXPECT_EQ(classify_regime(2, 3.0).kind, RegimeKind::airy);
  const RegimeClass five = classify_regime(2, 5.0);
  EXPECT_EQ(five.kind, RegimeKind::bessel);
  EXPECT_TRUE(five.mixed);
  EXPECT_EQ(classify_regime(2, 6.0).kind, RegimeKind::bessel);
  EXPECT_FALSE(classify_regime(2, 6.0).mixed);
  EXPECT_TRUE(std::isnan(five.p_low));
}

TEST(Regime, HigherDimensions) {
  // D = 4: p_low = 3/2, p_high = 8/5
  EXPECT_EQ(classify_regime(4, 1.0).kind, RegimeKind::cosine);
  EXPECT_EQ(classify_regime(4, 1.5).kind, RegimeKind::cosine);
  EXPECT_DOUBLE_EQ(classify_regime(4, 1.5).beta, 0.0);
  EXPECT_EQ(classify_regime(4, 1.55).kind, RegimeKind::cosine);
  EXPECT_EQ(classify_regime(4, 1.6).kind, RegimeKind::cosine_bessel);
  EXPECT_EQ(classify_regime(4, 2.0).kind, RegimeKind::bessel);
  EXPECT_THROW(classify_regime(1.5, 1.0), domain_error);
  EXPECT_THROW(classify_regime(3, 0.0), domain_error);
}

TEST(Regime, FractionalDimension) {
  const double D = 2.5;
  const double pab = airy_bessel_threshold(D);
  EXPECT_NEAR(pab, 13.0 / 5.0, 1e-15);
  EXPECT_EQ(classify_regime(D, 2.3).kind, RegimeKind::airy);
  EXPECT_TRUE(classify_regime(D, pab).mixed);
  EXPECT_EQ(classify_regime(D, 3.0).kind, RegimeKind::bessel);
}

TEST(Regime, Boundaries) {
  EXPECT_EQ(regime_boundaries(3), std::vector<double>{2.0});
  EXPECT_EQ(regime_boundaries(2), (std::vector<double>{2.0, 5.0}));
  const auto b6 = regime_boundaries(6);
  EXPECT_NEAR(b6[0], 1.25, 1e-15);
  EXPECT_NEAR(b6[1], 4.0 / 3.0, 1e-15);
}

TEST(Exponent, ByRegime) {
  EXPECT_NEAR(n_exponent(classify_regime(3, 1.5)), 0.0, 1e-15);
  EXPECT_NEAR(n_exponent(classify_regime(3, 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(n_exponent(classify_regime(2, 3.0)), 1.0 - 5.0 / 3.0, 1e-15);
  EXPECT_NEAR(n_exponent(classify_regime(3, 2.0)), -1.0, 1e-15);
  EXPECT_NEAR(n_exponent(classify_regime(2, 2.0)), 0.0, 1e-15);
}

TEST(ConstantC, ClosedValues) {
  EXPECT_NEAR(constant_C(1.0, 1.0), 1.0, 1e-14);
  EXPECT_NEAR(constant_C(2.0, 1.0), 1.5, 1e-14);
}

TEST(ConstantC, PolesRaise) {
  EXPECT_THROW(constant_C(0.0, 2.0), regime_boundary_error);
  EXPECT_THROW(constant_C(-1.0, 1.0), regime_boundary_error);
}

TEST(ConstantC, ArcsineMoment) {
  // C / 2^{beta+1} = <|cos|^{2p}> int_0^1 x^beta (pi sqrt(x(1-x)))^{-p} dx
  for (auto [beta, p] : {std::pair{0.5, 1.5}, std::pair{1.0, 0.5}, std::pair{2.0, 1.2}}) {
    auto f = [&](double t) {
      // x = sin^2(t/2), sqrt(x(1-x)) = sin(t)/2
      const double x = std::pow(std::sin(0.5 * t), 2);
      return std::pow(x, beta) * std::pow(0.5 * std::numbers::pi * std::sin(t), -p) * 0.5 * std::sin(t);
    };
    auto c = [&](double t) { return std::pow(std::abs(std::cos(t)), 2.0 * p) / std::numbers::pi; };
    // t = pi - w^2 on the upper half removes the (pi - t)^{-p/2} endpoint singularity
    auto g = [&](double w) { return 2.0 * w * f(std::numbers::pi - w * w); };
    const double half = std::numbers::pi / 2.0;
    const double direct = (integrate_adaptive(f, 0.0, half, 1e-13).value +
                           integrate_adaptive(g, 0.0, std::sqrt(half), 1e-13).value) *
                          integrate_adaptive(c, 0.0, std::numbers::pi, 1e-12).value;
    EXPECT_NEAR(constant_C(beta, p) / std::pow(2.0, 1.0 + beta) / direct, 1.0, 1e-9) << beta << " " << p;
  }
}

TEST(AiryConstant, ValueAndLobeStability) {
  const auto a = airy_constant(3.0, 64, 1e-10);
  const auto b = airy_constant(3.0, 128, 1e-10);
  EXPECT_NEAR(a.value, 7.2071334615, 1e-8);
  EXPECT_NEAR(a.value / b.value, 1.0, 1e-9);
  EXPECT_THROW(airy_constant(2.0), domain_error);
}

TEST(AiryConstant, PowerIntegralAgainstDirect) {
  // zero-to-zero panels down to the 2000th zero plus the averaged tail 5/(8 pi^3 sqrt L)
  auto f = [](double s) { return std::pow(airy_ai(s), 6); };
  std::vector<double> bp;
  for (int k = 2000; k >= 1; --k) bp.push_back(airy_ai_zero(k));
  bp.push_back(0.0);
  bp.push_back(20.0);
  const double body = integrate_adaptive(f, std::span<const double>(bp), AdaptiveOptions{1e-12, 0.0, 40000}).value;
  const double tail = 5.0 / (8.0 * std::pow(std::numbers::pi, 3) * std::sqrt(-bp.front()));
  EXPECT_NEAR(airy_power_integral(3.0, 64, 1e-10).value / (body + tail), 1.0, 1e-5);
}

TEST(BesselConstant, ClosedForm) {
  EXPECT_NEAR(bessel_constant(0.5, -0.5, 2.0).value, 1.0 / std::numbers::pi, 1e-10);
  EXPECT_NEAR(constant_CB(1.0, 1.0, 6.0), 0.00115798020922, 1e-12);
}

TEST(BesselConstant, DivergenceDetected) {
  try {
    bessel_constant(1.0, 1.0, 3.0);
    FAIL();
  } catch (const divergence_error& e) {
    EXPECT_EQ(e.endpoint(), Endpoint::infinity);
  }
  try {
    bessel_constant(0.0, -1.5, 3.0);
    FAIL();
  } catch (const divergence_error& e) {
    EXPECT_EQ(e.endpoint(), Endpoint::origin);
  }
}

TEST(BesselConstant, HighDimensionStaysFinite) {
  const double lc = log_constant_CB(198.0, -199.0 * 4.0 + 199.0, 4.0);
  EXPECT_TRUE(std::isfinite(lc));
  EXPECT_LT(lc, -1000.0);
}

TEST(Leading, ExactP1Limit) {
  // N(D,1) = 2 n_r + alpha + 1 and C(1,1) = 1, so the ratio approaches 1 like 1/n
  for (int n : {50, 200}) {
    const QuantumState s = make_state(3, 1.0, n, 0);
    const double exact = hydrogenic_norm(s, 1.0).value;
    EXPECT_NEAR(exact, 2.0 * s.n_r() + s.alpha() + 1.0, 1e-9 * exact);
    const double lead = asymptotic_norm(s, 1.0).value(s.n_r());
    EXPECT_NEAR(exact / lead, 1.0, 2.0 / n);
  }
}

TEST(Leading, EstimateDomain) {
  const auto e = asymptotic_norm(3.0, 0, 2.0);
  EXPECT_TRUE(e.log_factor);
  EXPECT_TRUE(e.offset_unknown);
  EXPECT_THROW(e.value(1.0), domain_error);
  EXPECT_THROW(asymptotic_norm(3.0, 0, 1.5).value(0.0), domain_error);
}

TEST(Leading, MixedLineAddsBothTerms) {
  const auto mixed = asymptotic_norm(2.0, 0, 5.0);
  const double airy = std::exp(log_constant_CA(5.0) - 5.0 * std::log(std::numbers::pi) + mixed.n_exponent * std::log(4.0));
  EXPECT_NEAR(mixed.coefficient, airy + constant_CB(0.0, 1.0, 5.0), 1e-12 * mixed.coefficient);
}

TEST(Leading, ConvergesInPowerLawRegimes) {
  for (auto [D, p] : {std::pair{3, 1.5}, std::pair{3, 3.0}, std::pair{2, 3.0}}) {
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {50, 100, 200}) {
      const QuantumState s = make_state(D, 1.0, n, 0);
      const double ratio = hydrogenic_norm(s, p).value / asymptotic_norm(s, p).value(s.n_r());
      EXPECT_LT(std::abs(ratio - 1.0), prev) << D << " " << p << " " << n;
      prev = std::abs(ratio - 1.0);
    }
    EXPECT_LT(prev, 0.2);
  }
}
