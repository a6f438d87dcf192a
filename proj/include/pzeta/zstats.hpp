#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pzeta/arith.hpp"
#include "pzeta/compensated.hpp"
#include "pzeta/error.hpp"
#include "pzeta/zero_finder.hpp"

namespace pzeta {

// ---------------------------------------------------------------------------
// Sums over a zero list. Every sum runs over 0 < gamma <= T and counts
// multiplicity.

inline long count_up_to_height(const std::vector<ZeroRecord>& zeros, double T) {
  long n = 0;
  for (const auto& z : zeros)
    if (z.gamma > 0.0 && z.gamma <= T) n += z.multiplicity;
  return n;
}

// N_X(sigma, T): zeros with beta >= sigma.
inline long count_right_of(const std::vector<ZeroRecord>& zeros, double sigma, double T) {
  long n = 0;
  for (const auto& z : zeros)
    if (z.gamma > 0.0 && z.gamma <= T && z.beta >= sigma) n += z.multiplicity;
  return n;
}

// sum over beta > sigma of (beta - sigma).
inline double excess_sum(const std::vector<ZeroRecord>& zeros, double sigma, double T) {
  CompensatedSum<double> acc;
  for (const auto& z : zeros)
    if (z.gamma > 0.0 && z.gamma <= T && z.beta > sigma) acc.add(z.multiplicity * (z.beta - sigma));
  return acc.get();
}

inline double abscissa_sum(const std::vector<ZeroRecord>& zeros, double T) {
  CompensatedSum<double> acc;
  for (const auto& z : zeros)
    if (z.gamma > 0.0 && z.gamma <= T) acc.add(z.multiplicity * z.beta);
  return acc.get();
}

inline double sum_beta_plus_u(const std::vector<ZeroRecord>& zeros, double T, double U) {
  CompensatedSum<double> acc;
  for (const auto& z : zeros)
    if (z.gamma > 0.0 && z.gamma <= T) acc.add(z.multiplicity * (z.beta + U));
  return acc.get();
}

inline double average_abscissa(const std::vector<ZeroRecord>& zeros, double T) {
  const long n = count_up_to_height(zeros, T);
  if (n == 0) throw Error(ErrorCode::empty_input, "no zeros with 0 < gamma <= T");
  return abscissa_sum(zeros, T) / static_cast<double>(n);
}

// ---------------------------------------------------------------------------
// Main terms and explicit bounds.

inline double count_main_term(long x, double T) { return T / (2.0 * std::numbers::pi) * std::log(static_cast<double>(x)); }

// (T / 4 pi) loglog X, for 3 <= X <= T.
inline double theorem5_bound(long x, double T) {
  require(x >= 3, "needs X >= 3");
  require(static_cast<double>(x) <= T, "needs X <= T");
  return T / (4.0 * std::numbers::pi) * std::log(std::log(static_cast<double>(x)));
}

inline constexpr double min_sigma_gap = 1e-3;

// T loglog X / (4 pi (sigma - 1/2)), bounding N_X(sigma, T) for sigma > 1/2.
inline double theorem5_corollary_bound(long x, double T, double sigma) {
  require(sigma - 0.5 >= min_sigma_gap, "needs sigma - 1/2 >= 1e-3");
  require(x >= 3, "needs X >= 3");
  require(static_cast<double>(x) <= T, "needs X <= T");
  return T * std::log(std::log(static_cast<double>(x))) / (4.0 * std::numbers::pi * (sigma - 0.5));
}

// U (T / 2 pi) log X, main term of sum (beta + U).
inline double theorem6_main_term(long x, double T, double U) {
  require(x >= 2, "needs X >= 2");
  require(U >= static_cast<double>(x), "needs U >= X");
  require(T >= static_cast<double>(x), "needs T >= X");
  return U * count_main_term(x, T);
}

// (1/2 - sigma)(T / 2 pi) log X - (T / 4 pi) log(1 - 2 sigma), for sigma < 1/2.
inline double theorem7_bound(long x, double T, double sigma) {
  require(sigma < 0.5, "needs sigma < 1/2");
  require(x >= 2, "needs X >= 2");
  require(static_cast<double>(x) <= T, "needs X <= T");
  return (0.5 - sigma) * count_main_term(x, T) - T / (4.0 * std::numbers::pi) * std::log(1.0 - 2.0 * sigma);
}

// N_X(sigma, T) / (T X^{1 - 2 sigma} log^6 T). Report only.
inline double density_report(const std::vector<ZeroRecord>& zeros, long x, double T, double sigma) {
  require(T > 1.0, "needs T > 1");
  require(sigma >= 0.5 + 1.0 / std::log(T), "needs sigma >= 1/2 + 1/log T");
  const double denom = T * std::pow(static_cast<double>(x), 1.0 - 2.0 * sigma) * std::pow(std::log(T), 6);
  return static_cast<double>(count_right_of(zeros, sigma, T)) / denom;
}

// ---------------------------------------------------------------------------
// Mollifier coefficients a_X(n) = sum_{d | n, d <= Y, n/d <= X} mu(d).

struct MollifierCoeffs {
  long x = 2;
  long y = 2;
  std::vector<long> a;  // a[n] for 0 <= n <= XY, a[0] unused

  long at(long n) const {
    if (n < 1 || n > x * y) return 0;
    return a[static_cast<std::size_t>(n)];
  }
  long limit() const { return x * y; }
};

inline MollifierCoeffs mollifier_coeffs(long x, long y) {
  require(x >= 2 && y >= 2, "needs X, Y >= 2");
  MollifierCoeffs out{x, y, std::vector<long>(static_cast<std::size_t>(x * y) + 1, 0)};
  const std::vector<int> mu = mobius_table(static_cast<std::size_t>(y));
  for (long d = 1; d <= y; ++d) {
    const int m = mu[static_cast<std::size_t>(d)];
    if (m == 0) continue;
    for (long q = 1; q <= x; ++q) out.a[static_cast<std::size_t>(d * q)] += m;
  }
  return out;
}

// Smallest n with 1 < n < X and a_X(n) != 0, if any.
inline std::optional<long> first_nonvanishing_below_x(const MollifierCoeffs& c) {
  for (long n = 2; n < c.x; ++n)
    if (c.at(n) != 0) return n;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Aggregate report.

struct StatRow {
  double sigma = 0.0;
  long n_sigma = 0;
  double sum_excess = 0.0;
  std::optional<double> bound_value;
  std::string bound_name;
};

struct StatReport {
  long x = 2;
  double T = 0.0;
  long n_total = 0;
  std::vector<StatRow> rows;
  double avg_beta = 0.0;
  double sum_beta_plus_u = 0.0;
  double u = 0.0;
};

// The bound that applies to a row: theorem7_bound on the excess sum left of
// 1/2, theorem5_bound at 1/2, theorem5_corollary_bound on N_X(sigma, T) right of it.
inline void attach_bound(StatRow& row, long x, double T) {
  const double xd = static_cast<double>(x);
  if (row.sigma < 0.5) {
    if (xd <= T) {
      row.bound_value = theorem7_bound(x, T, row.sigma);
      row.bound_name = "theorem7";
      return;
    }
  } else if (row.sigma == 0.5) {
    if (x >= 3 && xd <= T) {
      row.bound_value = theorem5_bound(x, T);
      row.bound_name = "theorem5";
      return;
    }
  } else if (x >= 3 && xd <= T && row.sigma - 0.5 >= min_sigma_gap) {
    row.bound_value = theorem5_corollary_bound(x, T, row.sigma);
    row.bound_name = "theorem5_corollary";
    return;
  }
  row.bound_value.reset();
  row.bound_name = "n/a";
}

inline StatReport build_report(const std::vector<ZeroRecord>& zeros, long x, double T,
                               const std::vector<double>& sigmas, double U) {
  StatReport r;
  r.x = x;
  r.T = T;
  r.u = U;
  r.n_total = count_up_to_height(zeros, T);
  for (double sigma : sigmas) {
    StatRow row;
    row.sigma = sigma;
    row.n_sigma = count_right_of(zeros, sigma, T);
    row.sum_excess = excess_sum(zeros, sigma, T);
    attach_bound(row, x, T);
    r.rows.push_back(row);
  }
  r.avg_beta = r.n_total > 0 ? average_abscissa(zeros, T) : 0.0;
  r.sum_beta_plus_u = sum_beta_plus_u(zeros, T, U);
  return r;
}

// ---------------------------------------------------------------------------
// Report-and-fit: for bounds with an unspecified O-constant, the constant is
// the smallest K >= 0 with excess <= K * scale at every grid point.

struct FitPoint {
  long x = 2;
  double T = 0.0;
  double excess = 0.0;
  double scale = 1.0;
};

struct SlackFit {
  double constant = 0.0;  // fitted over the full grid
  double constant_base = 0.0;  // fitted over T <= t_split
  bool stable = true;  // constant did not grow when the T-range was extended
};

inline double fit_constant(const std::vector<FitPoint>& pts, double t_max) {
  double k = 0.0;
  for (const auto& p : pts)
    if (p.T <= t_max) k = std::max(k, p.excess / p.scale);
  return k;
}

inline SlackFit fit_slack(const std::vector<FitPoint>& pts, double t_split) {
  SlackFit fit;
  fit.constant = fit_constant(pts, std::numeric_limits<double>::infinity());
  fit.constant_base = fit_constant(pts, t_split);
  fit.stable = fit.constant <= fit.constant_base;
  return fit;
}

}  // namespace pzeta
