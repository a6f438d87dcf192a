#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pzeta/strip_bounds.hpp"
#include "pzeta/zero_finder.hpp"

using namespace pzeta;

namespace {

// Sign scan at step 1e-3 followed by long double bisection, on the unscaled
// equation 1 + 2^-s + ... + (X-1)^-s - X^-s = 0.
long double alpha_scan(long x) {
  auto g = [x](long double s) {
    long double acc = 0;
    for (long n = 1; n < x; ++n) acc += std::pow(static_cast<long double>(n), -s);
    return acc - std::pow(static_cast<long double>(x), -s);
  };
  long double lo = -static_cast<long double>(x);
  const long double step = 1e-3L;
  while (g(lo + step) < 0) lo += step;
  long double hi = lo + step;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

long double beta_oracle(long x) {
  auto h = [x](long double s) {
    long double acc = 0;
    for (long n = 2; n <= x; ++n) acc += std::pow(static_cast<long double>(n), -s);
    return acc - 1;
  };
  long double lo = 0, hi = 2;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    (h(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace

TEST(AlphaBound, ClosedForms) {
  EXPECT_NEAR(alpha_bound(2), 0.0, 1e-12);
  EXPECT_NEAR(alpha_bound(3), -1.0, 1e-10);
}

TEST(AlphaBound, MatchesGridScanOracle) {
  for (long x : {4L, 10L, 25L, 60L}) {
    const double a = alpha_bound(x);
    EXPECT_GT(a, -static_cast<double>(x));
    EXPECT_LT(a, 0.0);
    EXPECT_NEAR(a, static_cast<double>(alpha_scan(x)), 1e-9) << "X=" << x;
  }
}

TEST(AlphaBound, AboveMinusX) {
  for (long x = 2; x <= 200; ++x) EXPECT_GT(alpha_bound(x), -static_cast<double>(x));
}

TEST(BetaBound, ClosedFormAndOracle) {
  EXPECT_NEAR(beta_bound(2), 0.0, 1e-12);
  EXPECT_NEAR(beta_bound(3), 0.7878, 1e-3);
  for (long x : {3L, 7L, 50L})
    EXPECT_NEAR(beta_bound(x), static_cast<double>(beta_oracle(x)), 1e-11) << "X=" << x;
}

TEST(BetaBound, MonotoneAndBelowSupremum) {
  double prev = -1.0;
  for (long x = 2; x <= 200; ++x) {
    const double b = beta_bound(x);
    EXPECT_GE(b, prev);
    EXPECT_LT(b, beta_supremum);
    prev = b;
  }
}

TEST(BetaBound, LargeXStaysBelowSupremum) { EXPECT_LT(beta_bound(1000000), beta_supremum); }

TEST(StripBounds, RejectsSmallX) {
  EXPECT_THROW(alpha_bound(1), Error);
  EXPECT_THROW(beta_bound(1), Error);
}

TEST(TuranLine, Values) {
  auto ref = [](double x) { return 1.0 + 2.0 * std::log(std::log(x)) / std::log(x); };
  EXPECT_NEAR(turan_line(16), ref(16.0), 1e-15);
  EXPECT_NEAR(turan_line(100), ref(100.0), 1e-15);
  EXPECT_NEAR(turan_line(100), 1.6635, 1e-3);
  EXPECT_THROW(turan_line(15), Error);
  double prev = turan_line(16);
  for (long x = 17; x <= 5000; ++x) {
    const double v = turan_line(x);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 1.0);
    prev = v;
  }
}

TEST(MontgomeryLine, Values) {
  const double ll100 = std::log(std::log(100.0)) / std::log(100.0);
  EXPECT_NEAR(montgomery_line(100, 0.28), 1.0 + 0.28 * ll100, 1e-15);
  EXPECT_NEAR(montgomery_line(16, 1.0), 1.0 + std::log(std::log(16.0)) / std::log(16.0), 1e-15);
  EXPECT_THROW(montgomery_line(100, 4.0 / std::numbers::pi - 1.0), Error);
}

TEST(StripBounds, LocatedZerosLieInsideStrip) {
  for (long x : {2L, 3L, 7L, 16L, 30L}) {
    const PartialSum f(x);
    const StripBounds b = strip_bounds(x);
    for (const auto& z : locate_strip_zeros(f, 200.0)) {
      EXPECT_GE(z.beta, b.alpha - 1e-8) << "X=" << x;
      EXPECT_LE(z.beta, b.beta + 1e-8) << "X=" << x;
      if (x >= 16) {
        EXPECT_LT(z.beta, turan_line(x)) << "X=" << x;
      }
    }
  }
}
