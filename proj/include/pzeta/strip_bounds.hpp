#pragma once

#include <cmath>
#include <numbers>

#include "pzeta/compensated.hpp"
#include "pzeta/error.hpp"

namespace pzeta {

// Published upper bound for the right edge of the zero strip, valid for every X.
inline constexpr double beta_supremum = 1.72865;

struct StripBounds {
  long x = 2;
  double alpha = 0.0;
  double beta = 0.0;
  double tol = 1e-12;
};

namespace detail {

// Bisection on an increasing function with f(lo) <= 0 <= f(hi).
template <typename F>
double bisect_increasing(F&& f, double lo, double hi, double tol) {
  if (f(lo) == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    if (v == 0.0) return mid;
    if (v < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace detail

// Root of 1 + 2^-s + ... + (X-1)^-s = X^-s. Evaluated after dividing by X^-s,
// i.e. sum_{n<X} (n/X)^-sigma - 1, which stays bounded on [-X, 0].
inline double alpha_bound(long x, double tol = 1e-12) {
  require(x >= 2, "X must be at least 2");
  require(tol > 0.0, "tol must be positive");
  const double dx = static_cast<double>(x);
  auto g = [&](double sigma) {
    CompensatedSum<double> acc(-1.0);
    for (long n = 1; n < x; ++n) acc.add(std::exp(-sigma * std::log(static_cast<double>(n) / dx)));
    return acc.get();
  };
  return detail::bisect_increasing(g, -dx, 0.0, tol);
}

// Root of 2^-s + ... + X^-s = 1; the left side decreases in sigma.
inline double beta_bound(long x, double tol = 1e-12) {
  require(x >= 2, "X must be at least 2");
  require(tol > 0.0, "tol must be positive");
  auto h = [&](double sigma) {
    CompensatedSum<double> acc(-1.0);
    for (long n = 2; n <= x; ++n) acc.add(std::exp(-sigma * std::log(static_cast<double>(n))));
    return -acc.get();
  };
  return detail::bisect_increasing(h, 0.0, beta_supremum, tol);
}

inline StripBounds strip_bounds(long x, double tol = 1e-12) {
  return {x, alpha_bound(x, tol), beta_bound(x, tol), tol};
}

// 1 + 2 loglog X / log X; no zeros to the right for X large (Turan).
inline double turan_line(long x) {
  require(x >= 16, "turan_line needs X >= 16");
  const double lx = std::log(static_cast<double>(x));
  return 1.0 + 2.0 * std::log(lx) / lx;
}

inline constexpr double montgomery_constant_floor = 4.0 / std::numbers::pi - 1.0;

// 1 + c loglog X / log X for c > 4/pi - 1. Reported only.
inline double montgomery_line(long x, double c) {
  require(c > montgomery_constant_floor, "montgomery_line needs c > 4/pi - 1");
  require(x >= 16, "montgomery_line needs X >= 16");
  const double lx = std::log(static_cast<double>(x));
  return 1.0 + c * std::log(lx) / lx;
}

}  // namespace pzeta
