#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pzeta/littlewood.hpp"
#include "pzeta/quadrature.hpp"
#include "pzeta/zero_finder.hpp"
#include "pzeta/zstats.hpp"

using namespace pzeta;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln2 = std::numbers::ln2;
constexpr double period2 = 2.0 * pi / ln2;  // period of F_2 in t

template <typename F>
double trapezoid(F&& f, double a, double b, long n) {
  const double h = (b - a) / static_cast<double>(n);
  long double acc = 0.5L * (f(a) + f(b));
  for (long i = 1; i < n; ++i) acc += f(a + h * static_cast<double>(i));
  return static_cast<double>(acc * h);
}

}  // namespace

TEST(Quadrature, PolynomialsAndSmoothFunctions) {
  auto p20 = [](double x) { return std::pow(x, 20); };
  EXPECT_NEAR(integrate_adaptive(p20, {0.0, 1.0}).value, 1.0 / 21.0, 1e-14);
  auto s = [](double x) { return std::sin(x); };
  EXPECT_NEAR(integrate_adaptive(s, {0.0, pi}, {1e-12}).value, 2.0, 1e-12);
  auto g = [](double x) { return std::exp(-x * x); };
  EXPECT_NEAR(integrate_adaptive(g, uniform_breakpoints(-10.0, 10.0, 1.0), {1e-13}).value, std::sqrt(pi), 1e-12);
}

TEST(Quadrature, EndpointLogSingularity) {
  auto f = [](double x) { return std::log(x); };
  const QuadratureResult r = integrate_adaptive(f, {0.0, 1.0}, {1e-9});
  EXPECT_NEAR(r.value, -1.0, 1e-8);
  EXPECT_GT(r.panels, 10u);
}

TEST(Quadrature, NonconvergentPanelCarriesLocation) {
  auto f = [](double x) { return 1.0 / x; };
  try {
    integrate_adaptive(f, {0.0, 1.0}, {1e-8, 2000, 1e-14});
    FAIL() << "expected nonconvergent-panel";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::nonconvergent_panel);
    EXPECT_NE(e.location().find("panel"), std::string::npos);
  }
}

TEST(Quadrature, Breakpoints) {
  const auto b = uniform_breakpoints(0.0, 10.0, 3.0);
  ASSERT_EQ(b.size(), 5u);
  EXPECT_EQ(b.front(), 0.0);
  EXPECT_EQ(b.back(), 10.0);
  EXPECT_THROW(integrate_adaptive([](double) { return 1.0; }, {1.0}), Error);
}

TEST(IntegrateLogAbs, SmoothLineTwoAgainstTrapezoid) {
  const PartialSum f(2);
  const double oracle = trapezoid([&](double t) { return std::log(std::abs(f.eval({2.0, t}))); }, 0.0, 10.0, 1000000);
  EXPECT_NEAR(integrate_log_abs(f, 2.0, 10.0, {}, 1e-11), oracle, 1e-8);
}

TEST(IntegrateLogAbs, PeriodAverageIsLogTwo) {
  const PartialSum f(2);
  // mean of log|1 + 2 e^{i theta}| is log 2
  EXPECT_NEAR(integrate_log_abs(f, -1.0, period2, {}, 1e-11), period2 * ln2, 1e-8);
  EXPECT_NEAR(integrate_log_abs(f, -1.0, 3.0 * period2, {}, 1e-11), 3.0 * period2 * ln2, 1e-8);
  const double oracle = trapezoid([&](double t) { return std::log(std::abs(f.eval({-1.0, t}))); }, 0.0, 10.0, 1000000);
  EXPECT_NEAR(integrate_log_abs(f, -1.0, 10.0, {}, 1e-11), oracle, 1e-8);
}

TEST(IntegrateLogAbs, ZeroOnTheLine) {
  const PartialSum f(2);
  const auto zeros = locate_strip_zeros(f, period2);
  const auto near = near_line_zeros(zeros, 0.0, period2);
  ASSERT_EQ(near.size(), 1u);
  // int_0^pi log|2 cos theta| d theta = 0
  EXPECT_NEAR(integrate_log_abs(f, 0.0, period2, near), 0.0, 1e-5);
}

TEST(IntegrateLogAbs, AdditiveInT) {
  const PartialSum f(7);
  auto g = [&](double t) { return f.eval_log_abs({-0.7, t}); };
  const double whole = integrate_log_abs(f, -0.7, 40.0, {}, 1e-10);
  const double first = integrate_log_abs(f, -0.7, 25.0, {}, 1e-10);
  const double rest = integrate_adaptive(g, uniform_breakpoints(25.0, 40.0, 1.0), {1e-10}).value;
  EXPECT_NEAR(whole, first + rest, 1e-8);
}

TEST(IntegrateLogAbs, ArithmeticGeometricMeanStep) {
  for (long x : {2L, 3L, 7L, 15L})
    for (double sigma : {0.5, 0.8, 1.5})
      for (double T : {30.0, 100.0}) {
        const PartialSum f(x);
        const auto zeros = locate_strip_zeros(f, T);
        const double mean_log = integrate_log_abs(f, sigma, T, near_line_zeros(zeros, sigma, T)) / T;
        const double mean_sq = mean_square_integral(f, sigma, T) / T;
        EXPECT_LE(mean_log, 0.5 * std::log(mean_sq)) << "X=" << x << " sigma=" << sigma << " T=" << T;
      }
}

TEST(NearLineZeros, SelectsAndMirrors) {
  std::vector<ZeroRecord> zs(3);
  zs[0].beta = 0.02, zs[0].gamma = 5.0;
  zs[1].beta = 0.3, zs[1].gamma = 6.0;
  zs[2].beta = -0.01, zs[2].gamma = 0.01;
  const auto near = near_line_zeros(zs, 0.0, 10.0);
  ASSERT_EQ(near.size(), 3u);
  EXPECT_EQ(near[0], ComplexPoint(0.02, 5.0));
  EXPECT_EQ(near[1], ComplexPoint(-0.01, 0.01));
  EXPECT_EQ(near[2], ComplexPoint(-0.01, -0.01));
}

TEST(ArgIntegral, RealAxisIsZero) {
  EXPECT_EQ(arg_integral_horizontal(PartialSum(9), 0.0, -9.0, 2.0), 0.0);
}

TEST(ArgIntegral, MatchesDenseUnwrappedPhase) {
  const PartialSum f(2);
  const double t = 10.0;
  const long n = 400000;
  const double h = 4.0 / static_cast<double>(n);
  // unwrap from sigma = 2 leftwards; on Re s = 2 the principal value is the lift
  std::vector<double> phase(static_cast<std::size_t>(n) + 1);
  std::complex<double> prev = f.eval({2.0, t});
  phase[static_cast<std::size_t>(n)] = std::arg(prev);
  for (long i = n - 1; i >= 0; --i) {
    const std::complex<double> cur = f.eval({-2.0 + h * static_cast<double>(i), t});
    phase[static_cast<std::size_t>(i)] = phase[static_cast<std::size_t>(i) + 1] + std::arg(cur / prev);
    prev = cur;
  }
  long double acc = 0.5L * (phase.front() + phase.back());
  for (long i = 1; i < n; ++i) acc += phase[static_cast<std::size_t>(i)];
  const double oracle = static_cast<double>(acc * h);
  EXPECT_NEAR(arg_integral_horizontal(f, t, -2.0, 2.0), oracle, 1e-8);
  EXPECT_NEAR(arg_integral_horizontal(f, t, 2.0, -2.0), -oracle, 1e-8);
}

TEST(ArgIntegral, DescartesBoundLimitsPhase) {
  for (long x : {2L, 3L, 4L})
    for (double t : {0.7, 1.0, 31.0, 77.0}) {
      if (top_edge_sign_change_bound(x, t) != 0) continue;
      const PartialSum f(x);
      const ComplexPoint anchor(2.0, t);
      const ArgTrace tr = track_argument_anchored(f, anchor, {-static_cast<double>(x), t}, std::arg(f.eval(anchor)));
      for (const auto& s : tr.samples) EXPECT_LE(std::abs(s.phase), 2 * pi) << "X=" << x << " t=" << t;
    }
}

TEST(Littlewood, TwoZerosLeftOfStrip) {
  const PartialSum f(2);
  const auto zeros = locate_strip_zeros(f, 20.0);
  const LittlewoodCheck c = littlewood_identity_check(f, -1.0, 20.0, zeros);
  EXPECT_NEAR(c.lhs, 4.0 * pi, 1e-9);
  EXPECT_NEAR(c.rhs(), 4.0 * pi, 1e-4);
}

TEST(Littlewood, NoZerosRightOfOne) {
  const PartialSum f(2);
  const auto zeros = locate_strip_zeros(f, 100.0);
  const LittlewoodCheck c = littlewood_identity_check(f, 1.0, 100.0, zeros);
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_NEAR(c.rhs(), 0.0, 1e-4);
}

TEST(Littlewood, LeftEdgeMinusXGivesShiftedAbscissaSum) {
  const PartialSum f(5);
  const double T = 60.0;
  const auto zeros = locate_strip_zeros(f, T);
  const LittlewoodCheck c = littlewood_identity_check(f, -5.0, T, zeros);
  EXPECT_NEAR(c.lhs, 2.0 * pi * sum_beta_plus_u(zeros, T, 5.0), 1e-9);
  EXPECT_NEAR(c.discrepancy, 0.0, 1e-3);
}

TEST(Littlewood, ZeroOnTheIntegrationLine) {
  const PartialSum f(2);
  const auto zeros = locate_strip_zeros(f, 30.0);
  const LittlewoodCheck c = littlewood_identity_check(f, 0.0, 30.0, zeros);
  EXPECT_NEAR(c.lhs, 0.0, 1e-12);
  EXPECT_NEAR(c.discrepancy, 0.0, 1e-3);
}

TEST(Littlewood, Preconditions) {
  const PartialSum f(3);
  EXPECT_THROW(littlewood_identity_check(f, 2.0, 10.0, {}), Error);
  EXPECT_THROW(littlewood_identity_check(f, 0.0, 0.0, {}), Error);
}

TEST(MeanSquare, MainTermRatios) {
  const PartialSum f2(2);
  EXPECT_NEAR(mean_square_integral(f2, 0.5, 1000.0) / 1000.0, 1.5, 0.02);
  const PartialSum f10(10);
  EXPECT_NEAR(mean_square_integral(f10, 0.5, 1e4) / f10.mean_square_main_term(0.5, 1e4), 1.0, 0.01);
  for (long x : {3L, 6L, 12L})
    for (double sigma : {0.0, 0.5, 1.0}) {
      const PartialSum f(x);
      const double T = 100.0 * static_cast<double>(x);
      const double ratio = mean_square_integral(f, sigma, T) / f.mean_square_main_term(sigma, T);
      EXPECT_NEAR(ratio, 1.0, 5.0 * static_cast<double>(x) / T);
    }
}
