#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/multiprecision/cpp_int.hpp>

#include "pzeta/strip_bounds.hpp"
#include "pzeta/winding.hpp"
#include "pzeta/zero_finder.hpp"

using namespace pzeta;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double gamma0 = pi / std::numbers::ln2;  // first zero of F_2

// Unwrapped phase along a segment by dense uniform sampling.
double dense_net_change(const PartialSum& f, ComplexPoint a, ComplexPoint b, int n) {
  double total = 0.0;
  std::complex<double> prev = f.eval(a);
  for (int i = 1; i <= n; ++i) {
    const std::complex<double> cur = f.eval(a + (b - a) * (static_cast<double>(i) / n));
    total += std::arg(cur / prev);
    prev = cur;
  }
  return total;
}

}  // namespace

TEST(TrackArgument, LineTwoStaysInRightHalfPlane) {
  const PartialSum f(2);
  const ArgTrace tr = track_argument(f, {2.0, 0.0}, {2.0, 10.0});
  EXPECT_LE(std::abs(tr.net_change), pi);
  for (const auto& s : tr.samples) EXPECT_LT(std::abs(s.phase), pi / 2);
}

TEST(TrackArgument, RealAxisHasNoVariation) {
  for (long x = 2; x <= 40; ++x) {
    const PartialSum f(x);
    const ArgTrace tr = track_argument(f, {2.0, 0.0}, {-static_cast<double>(x), 0.0});
    EXPECT_EQ(tr.net_change, 0.0);
    EXPECT_EQ(tr.total_variation, 0.0);
  }
}

TEST(TrackArgument, MatchesDenseSampling) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> tt(1.0, 80.0);
  for (int i = 0; i < 20; ++i) {
    const long x = 2 + static_cast<long>(rng() % 15);
    const PartialSum f(x);
    const double t = tt(rng);
    const ComplexPoint a(2.0, t), b(-static_cast<double>(x), t);
    const double dense = dense_net_change(f, a, b, 200000);
    EXPECT_NEAR(track_argument(f, a, b).net_change, dense, 1e-9) << "X=" << x << " t=" << t;
  }
}

TEST(TrackArgument, PhaseAtInterpolatesLift) {
  const PartialSum f(7);
  const ComplexPoint a(2.0, 23.0), b(-7.0, 23.0);
  const ArgTrace tr = track_argument(f, a, b);
  double lift = tr.samples.front().phase;
  std::complex<double> prev = f.eval(a);
  const int n = 100000;
  for (int i = 1; i <= n; ++i) {
    const ComplexPoint s = a + (b - a) * (static_cast<double>(i) / n);
    const std::complex<double> cur = f.eval(s);
    lift += std::arg(cur / prev);
    prev = cur;
    if (i % 997 == 0) {
      EXPECT_NEAR(phase_at(f, tr, s), lift, 1e-9);
    }
  }
}

TEST(TrackArgument, ThroughZeroRaises) {
  const PartialSum f(2);
  try {
    track_argument(f, {-1.0, gamma0}, {1.0, gamma0});
    FAIL() << "expected zero-on-path";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_on_path);
  }
}

TEST(SplitTrace, PiecesAddUpAndShareTheCut) {
  const PartialSum f(11);
  const ComplexPoint a(-11.0, 37.5), b(2.0, 37.5);
  const ArgTrace whole = track_argument(f, a, b);
  for (double cut : {-9.3, -4.0, 0.123, 1.7}) {
    const auto [left, right] = split_trace(f, whole, {cut, 37.5});
    EXPECT_NEAR(left.net_change + right.net_change, whole.net_change, 1e-12);
    EXPECT_DOUBLE_EQ(left.samples.back().phase, right.samples.front().phase);
    const ArgTrace fresh = track_argument(f, {cut, 37.5}, b);
    EXPECT_NEAR(right.net_change, fresh.net_change, 1e-9);
  }
}

TEST(RectangleWinding, ClosedFormZerosOfF2) {
  const PartialSum f(2);
  EXPECT_EQ(rectangle_winding(f, {-1.0, 2.0, 3.0, 6.0}), 1);
  EXPECT_EQ(rectangle_winding(f, {-1.0, 2.0, 5.0, 12.0}), 0);
  EXPECT_EQ(rectangle_winding(f, {-1.0, 2.0, 0.1, 100.0}), 11);
  EXPECT_EQ(rectangle_winding(f, {0.5, 2.0, 0.1, 100.0}), 0);
}

TEST(RectangleWinding, CrossCheckWithZeroFinder) {
  const PartialSum f(3);
  const StripBounds b = strip_bounds(3);
  const Rectangle r{b.alpha - 0.1, b.beta + 0.1, 0.1, 30.0};
  EXPECT_EQ(rectangle_winding(f, r), zero_count(locate_zeros(f, r)));
}

TEST(RectangleWinding, MirroredRectanglesAgree) {
  for (long x : {3L, 6L, 13L}) {
    const PartialSum f(x);
    const StripBounds b = strip_bounds(x);
    const Rectangle up{b.alpha - 0.1, b.beta + 0.1, 0.3, 60.0};
    const Rectangle down{up.sigma_min, up.sigma_max, -60.0, -0.3};
    EXPECT_EQ(rectangle_winding(f, up), rectangle_winding(f, down));
  }
}

TEST(RectangleWinding, BoundaryZeroIsReportedThenSettled) {
  const PartialSum f(2);
  const Rectangle bottom_on_zero{-1.0, 2.0, gamma0, 6.0};
  try {
    rectangle_winding(f, bottom_on_zero);
    FAIL() << "expected boundary-zero";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::boundary_zero);
  }
  // A zero on the bottom edge is excluded, one on the top edge included.
  EXPECT_EQ(settle_boundary(f, bottom_on_zero).winding, 0);
  EXPECT_EQ(settle_boundary(f, {-1.0, 2.0, 1.0, gamma0}).winding, 1);
}

TEST(RectangleWinding, RejectsDegenerateRectangle) {
  EXPECT_THROW(rectangle_winding(PartialSum(3), {1.0, 1.0, 0.0, 1.0}), Error);
  EXPECT_THROW(rectangle_winding(PartialSum(3), {0.0, 1.0, 2.0, 1.0}), Error);
}

TEST(RectangleWinding, AdditiveUnderRandomPartitions) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int checked = 0;
  for (long x = 2; x <= 20; ++x) {
    const PartialSum f(x);
    const StripBounds b = strip_bounds(x);
    const Rectangle outer{b.alpha - 0.1, b.beta + 0.1, 0.5, 40.0};
    std::vector<double> sc{outer.sigma_min, outer.sigma_max}, tc{outer.t_min, outer.t_max};
    for (int k = 0; k < 2; ++k) sc.push_back(outer.sigma_min + outer.width() * u01(rng));
    for (int k = 0; k < 3; ++k) tc.push_back(outer.t_min + outer.height() * u01(rng));
    std::sort(sc.begin(), sc.end());
    std::sort(tc.begin(), tc.end());
    long sum = 0;
    for (std::size_t i = 0; i + 1 < sc.size(); ++i)
      for (std::size_t j = 0; j + 1 < tc.size(); ++j) {
        const long w = rectangle_winding(f, {sc[i], sc[i + 1], tc[j], tc[j + 1]});
        EXPECT_GE(w, 0);
        sum += w;
      }
    EXPECT_EQ(sum, rectangle_winding(f, outer)) << "X=" << x;
    ++checked;
  }
  EXPECT_EQ(checked, 19);
}

TEST(RectangleWinding, RefinementStability) {
  TrackOptions fine;
  fine.min_samples = 32;
  for (long x : {2L, 5L, 17L, 40L})
    for (double T : {50.0, 150.0, 400.0}) {
      const PartialSum f(x);
      EXPECT_EQ(count_up_to(f, T, static_cast<double>(x)), count_up_to(f, T, static_cast<double>(x), fine));
    }
}

TEST(CountUpTo, ClosedFormForF2) {
  const PartialSum f(2);
  const long n = count_up_to(f, 100.0, 2.0);
  EXPECT_EQ(n, 11);
  EXPECT_LT(std::abs(static_cast<double>(n) - 100.0 / (2 * pi) * std::numbers::ln2), 1.0);
  // odd multiples of pi/log 2 up to T
  for (double T : {4.0, 5.0, 13.0, 14.0, 60.0, 250.0})
    EXPECT_EQ(count_up_to(f, T, 2.0), static_cast<long>(std::floor((T / gamma0 + 1.0) / 2.0))) << "T=" << T;
}

TEST(CountUpTo, ZeroExactlyAtHeightTIsCounted) {
  EXPECT_EQ(count_up_to(PartialSum(2), 3.0 * gamma0, 2.0), 2);
}

TEST(CountUpTo, MatchesZeroFinderAndIsIndependentOfU) {
  const PartialSum f5(5);
  EXPECT_EQ(count_up_to(f5, 50.0, 5.0), zero_count(locate_strip_zeros(f5, 50.0)));
  for (long x : {3L, 8L, 21L}) {
    const PartialSum f(x);
    const double xd = static_cast<double>(x);
    EXPECT_EQ(count_up_to(f, 120.0, xd), count_up_to(f, 120.0, 1.5 * xd));
    EXPECT_EQ(count_up_to(f, 120.0, xd), count_up_to(f, 120.0, 2.0 * xd));
  }
}

TEST(CountUpTo, Preconditions) {
  const PartialSum f(5);
  EXPECT_THROW(count_up_to(f, 50.0, 4.0), Error);
  EXPECT_THROW(count_up_to(f, 50.0, 11.0), Error);
  EXPECT_THROW(count_up_to(f, 0.0, 5.0), Error);
}

TEST(TopEdgeSignChangeBound, Values) {
  for (double T : {0.5, 3.0, 77.7}) EXPECT_EQ(top_edge_sign_change_bound(2, T), 0);
  long changes = 0;
  double last = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const double v = std::sin(std::log(static_cast<double>(n)));
    if (last != 0.0 && (v > 0) != (last > 0)) ++changes;
    last = v;
  }
  EXPECT_EQ(top_edge_sign_change_bound(10, 1.0), changes);
}

TEST(TopEdgeSignChangeBound, BoundsTopEdgeArgumentChange) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> tt(1.0, 300.0);
  for (int i = 0; i < 50; ++i) {
    const long x = 2 + static_cast<long>(rng() % 40);
    const double T = tt(rng);
    const PartialSum f(x);
    const ArgTrace tr = track_argument(f, {-static_cast<double>(x), T}, {2.0, T});
    EXPECT_LE(std::abs(tr.net_change), pi * static_cast<double>(top_edge_sign_change_bound(x, T) + 2));
  }
}

TEST(LeftEdge, LastTermDominatesForUAtLeastX) {
  using boost::multiprecision::cpp_int;
  for (long x = 2; x <= 20; ++x) {
    for (long u = x; u <= 2 * x; ++u) {
      cpp_int rest = 0;
      for (long n = 1; n < x; ++n) rest += boost::multiprecision::pow(cpp_int(n), static_cast<unsigned>(u));
      EXPECT_GT(boost::multiprecision::pow(cpp_int(x), static_cast<unsigned>(u)), rest) << "X=" << x << " U=" << u;
    }
  }
}
