#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pzeta/littlewood.hpp"
#include "pzeta/parallel.hpp"
#include "pzeta/strip_bounds.hpp"
#include "pzeta/winding.hpp"
#include "pzeta/zero_finder.hpp"
#include "pzeta/zstats.hpp"

// End-to-end acceptance checks. Each returns a CriterionResult with the
// measured values in `detail`; tolerances and limits are fixed here.
namespace pzeta::verify {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

inline std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

template <typename Body>
CriterionResult timed(int id, std::string title, double limit_seconds, Body&& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.passed = body(r.detail);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "exception: " + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_seconds > 0.0) {
    r.detail += fmt("; %.2fs (limit %.0fs)", r.seconds, limit_seconds);
    if (r.seconds >= limit_seconds) r.passed = false;
  }
  return r;
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

}  // namespace detail

inline constexpr double half_period_x2 = std::numbers::pi / std::numbers::ln2;

// Zeros of 1 + 2^-s: beta = 0, gamma = (2k + 1) pi / log 2.
inline std::vector<double> closed_form_ordinates_x2(double T) {
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double g = (2.0 * static_cast<double>(k) + 1.0) * half_period_x2;
    if (g > T) break;
    out.push_back(g);
  }
  return out;
}

inline std::string serialize_zeros(const std::vector<ZeroRecord>& zeros) {
  std::string out;
  for (const auto& z : zeros) out += detail::fmt("%.17g %.17g %.17g %d\n", z.beta, z.gamma, z.residual, z.multiplicity);
  return out;
}

// 1. Closed-form zeros of F_2 up to T = 100.
inline CriterionResult criterion_closed_form(std::string* serialized = nullptr) {
  return detail::timed(1, "closed-form zeros of F_2 on (0,100]", 5.0, [&](std::string& d) {
    const PartialSum f(2);
    const auto zeros = locate_strip_zeros(f, 100.0);
    const auto expected = closed_form_ordinates_x2(100.0);
    double worst = 0.0;
    bool ok = zeros.size() == expected.size() && zero_count(zeros) == 11;
    for (std::size_t i = 0; ok && i < zeros.size(); ++i)
      worst = std::max({worst, std::abs(zeros[i].beta), std::abs(zeros[i].gamma - expected[i])});
    ok = ok && worst <= 1e-10;
    if (serialized) *serialized = serialize_zeros(zeros);
    d = detail::fmt("count=%ld (expected 11), max abs error %.3e (tol 1e-10)", zero_count(zeros), worst);
    return ok;
  });
}

// 2. Strip bounds.
inline CriterionResult criterion_strip_bounds() {
  return detail::timed(2, "strip bounds alpha/beta", 1.0, [](std::string& d) {
    const double a2 = alpha_bound(2), b2 = beta_bound(2), a3 = alpha_bound(3);
    bool monotone = true, below = true;
    double prev = -1.0, max_beta = 0.0;
    for (long x = 2; x <= 200; ++x) {
      const double b = beta_bound(x);
      monotone = monotone && b >= prev;
      below = below && b < beta_supremum;
      max_beta = std::max(max_beta, b);
      prev = b;
    }
    d = detail::fmt("alpha(2)=%.3e beta(2)=%.3e alpha(3)+1=%.3e, beta monotone=%d, max beta(2..200)=%.8f < 1.72865",
                    a2, b2, a3 + 1.0, monotone, max_beta);
    return std::abs(a2) <= 1e-12 && std::abs(b2) <= 1e-12 && std::abs(a3 + 1.0) <= 1e-10 && monotone && below;
  });
}

// 3. Winding number of strip x (0, T] equals the number of located zeros.
inline CriterionResult criterion_count_find() {
  return detail::timed(3, "winding == located zeros, X=2..30, T in {25,50,100}", 120.0, [](std::string& d) {
    struct Cell {
      long x;
      double T;
    };
    std::vector<Cell> cells;
    for (long x = 2; x <= 30; ++x)
      for (double T : {25.0, 50.0, 100.0}) cells.push_back({x, T});
    const auto mismatches = parallel_map(cells.size(), [&](std::size_t i) {
      const PartialSum f(cells[i].x);
      const Rectangle rect = strip_rectangle(cells[i].x, cells[i].T);
      const long winding = settle_boundary(f, rect).winding;
      const long found = zero_count(locate_zeros(f, rect));
      return winding == found ? std::string() : detail::fmt("X=%ld T=%g winding %ld vs %ld", cells[i].x, cells[i].T, winding, found);
    });
    std::vector<std::string> bad;
    for (const auto& m : mismatches)
      if (!m.empty()) bad.push_back(m);
    d = detail::fmt("%zu rectangles, %zu mismatches", cells.size(), bad.size());
    if (!bad.empty()) d += ": " + detail::join(bad);
    return bad.empty();
  });
}

// Zero lists for X = 2..50 up to T = 500, shared by criteria 4 and 7.
struct GridZeros {
  static constexpr long x_min = 2, x_max = 50;
  static constexpr double t_step = 50.0, t_max = 500.0;
  std::vector<std::vector<ZeroRecord>> zeros;  // index x - x_min

  const std::vector<ZeroRecord>& at(long x) const { return zeros[static_cast<std::size_t>(x - x_min)]; }

  static std::vector<double> heights() {
    std::vector<double> out;
    for (double T = t_step; T <= t_max; T += t_step) out.push_back(T);
    return out;
  }
};

inline GridZeros compute_grid_zeros() {
  GridZeros g;
  g.zeros = parallel_map(static_cast<std::size_t>(GridZeros::x_max - GridZeros::x_min + 1), [](std::size_t i) {
    const long x = GridZeros::x_min + static_cast<long>(i);
    return locate_strip_zeros(PartialSum(x), GridZeros::t_max);
  });
  return g;
}

struct EnvelopeFit {
  SlackFit fit;
  long per_x_increases = 0;  // X values whose own constant grew over the doubled range
};

inline EnvelopeFit theorem2_envelope() {
  std::vector<FitPoint> pts;
  const auto per_x = parallel_map(static_cast<std::size_t>(GridZeros::x_max - GridZeros::x_min + 1), [](std::size_t i) {
    const long x = GridZeros::x_min + static_cast<long>(i);
    const PartialSum f(x);
    std::vector<FitPoint> out;
    for (double T : GridZeros::heights()) {
      const long n = count_up_to(f, T, static_cast<double>(x));
      out.push_back({x, T, std::abs(static_cast<double>(n) - count_main_term(x, T)), static_cast<double>(x)});
    }
    return out;
  });
  EnvelopeFit env;
  for (const auto& v : per_x) {
    pts.insert(pts.end(), v.begin(), v.end());
    if (!fit_slack(v, GridZeros::t_max / 2).stable) ++env.per_x_increases;
  }
  env.fit = fit_slack(pts, GridZeros::t_max / 2);
  return env;
}

// 4. |N_X(T) - (T/2pi) log X| <= C X with C not growing over the doubled T-range.
inline CriterionResult criterion_theorem2_envelope(double* fitted_c = nullptr) {
  return detail::timed(4, "N_X(T) envelope C*X, X=2..50, T=50..500", 0.0, [&](std::string& d) {
    const EnvelopeFit env = theorem2_envelope();
    if (fitted_c) *fitted_c = env.fit.constant;
    d = detail::fmt("C=%.6f over T<=500, C=%.6f over T<=250, stable=%d (per-X constants that grew: %ld of 49)",
                    env.fit.constant, env.fit.constant_base, env.fit.stable, env.per_x_increases);
    return env.fit.stable;
  });
}

struct LittlewoodRow {
  long x;
  double T;
  double sigma0;
  LittlewoodCheck check;
};

inline std::vector<LittlewoodRow> littlewood_grid() {
  struct Job {
    long x;
    double T;
  };
  std::vector<Job> jobs;
  for (long x : {2L, 3L, 5L, 10L, 20L})
    for (double T : {20.0, 50.0}) jobs.push_back({x, T});
  const auto per_job = parallel_map(jobs.size(), [&](std::size_t i) {
    const PartialSum f(jobs[i].x);
    const auto zeros = locate_strip_zeros(f, jobs[i].T);
    std::vector<LittlewoodRow> rows;
    for (double s0 : {-2.0, -1.0, 0.0, 0.25})
      rows.push_back({jobs[i].x, jobs[i].T, s0, littlewood_identity_check(f, s0, jobs[i].T, zeros, 1e-9 * jobs[i].T)});
    return rows;
  });
  std::vector<LittlewoodRow> out;
  for (const auto& v : per_job) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline std::string serialize_littlewood(const std::vector<LittlewoodRow>& rows) {
  std::string out;
  for (const auto& r : rows)
    out += detail::fmt("%ld %.17g %.17g %.17g %.17g %.17g\n", r.x, r.T, r.sigma0, r.check.lhs, r.check.rhs(),
                       r.check.discrepancy);
  return out;
}

// 5. Littlewood's lemma closes to 1e-3.
inline CriterionResult criterion_littlewood(std::string* serialized = nullptr) {
  return detail::timed(5, "Littlewood identity |discrepancy| <= 1e-3", 300.0, [&](std::string& d) {
    const auto rows = littlewood_grid();
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.check.discrepancy));
    if (serialized) *serialized = serialize_littlewood(rows);
    d = detail::fmt("%zu checks, max |discrepancy| = %.3e (tol 1e-3)", rows.size(), worst);
    return rows.size() == 40 && worst <= 1e-3;
  });
}

// 6. Mean square on the half line against T * H_X.
inline CriterionResult criterion_mean_square() {
  return detail::timed(6, "mean square on Re s = 1/2 within 2% of T*H_X", 0.0, [](std::string& d) {
    bool ok = true;
    std::vector<std::string> parts;
    for (long x : {2L, 5L, 10L}) {
      const PartialSum f(x);
      const double T = 200.0 * static_cast<double>(x);
      const double ratio = mean_square_integral(f, 0.5, T) / f.mean_square_main_term(0.5, T);
      ok = ok && ratio >= 0.98 && ratio <= 1.02;
      parts.push_back(detail::fmt("X=%ld ratio %.6f", x, ratio));
    }
    d = detail::join(parts);
    return ok;
  });
}

struct TheoremFits {
  SlackFit theorem5, theorem6, theorem7;
  SlackFit theorem5_harmonic;  // same sum against (T/4pi) log H_X
  bool remark_ok = true;
  double remark_worst = 0.0;  // max |sum(beta+X) - X (T/2pi) log X| / (C X^2 + T)
  long theorem5_offenders = 0;  // X values whose own theorem5 constant grew
  std::string theorem5_worst_x;
};

inline TheoremFits theorem_fits(const GridZeros& g, double envelope_c) {
  std::vector<FitPoint> p5, p5h, p6, p7;
  TheoremFits out;
  for (long x = GridZeros::x_min; x <= GridZeros::x_max; ++x) {
    const auto& zs = g.at(x);
    const double xd = static_cast<double>(x);
    const double h = PartialSum(x).magnitude_scale(1.0);
    std::vector<FitPoint> p5x;
    for (double T : GridZeros::heights()) {
      if (x >= 3) {
        const double lhs = excess_sum(zs, 0.5, T);
        p5x.push_back({x, T, lhs - theorem5_bound(x, T), xd / std::log(xd)});
        p5h.push_back({x, T, lhs - T / (4.0 * std::numbers::pi) * std::log(h), xd / std::log(xd)});
      }
      for (double U : {xd, 2.0 * xd})
        p6.push_back({x, T, std::abs(sum_beta_plus_u(zs, T, U) - theorem6_main_term(x, T, U)), U * xd + T});
      for (double s : {-xd, -1.0, 0.0, 0.25})
        p7.push_back({x, T, excess_sum(zs, s, T) - theorem7_bound(x, T, s), (1.0 + std::abs(s)) * xd + T});
      // At sigma = -X every zero counts, so the excess sum is sum(beta + X);
      // it must match the theorem6 main term within the count envelope.
      const double lhs7 = excess_sum(zs, -xd, T);
      const double lhs6 = sum_beta_plus_u(zs, T, xd);
      const double dev = std::abs(lhs7 - theorem6_main_term(x, T, xd)) / (envelope_c * xd * xd + T);
      out.remark_worst = std::max(out.remark_worst, dev);
      out.remark_ok = out.remark_ok && std::abs(lhs7 - lhs6) <= 1e-9 * (1.0 + std::abs(lhs6)) && dev <= 1.0;
    }
    if (!p5x.empty() && !fit_slack(p5x, GridZeros::t_max / 2).stable) {
      ++out.theorem5_offenders;
      out.theorem5_worst_x += (out.theorem5_worst_x.empty() ? "" : ",") + std::to_string(x);
    }
    p5.insert(p5.end(), p5x.begin(), p5x.end());
  }
  const double split = GridZeros::t_max / 2;
  out.theorem5 = fit_slack(p5, split);
  out.theorem5_harmonic = fit_slack(p5h, split);
  out.theorem6 = fit_slack(p6, split);
  out.theorem7 = fit_slack(p7, split);
  return out;
}

// 7. Slack fits for the theorem5/6/7 bounds and the sigma = -X equality case.
inline CriterionResult criterion_theorem_fits(const GridZeros& g, double envelope_c) {
  return detail::timed(7, "theorem5/6/7 slack fits stable, equality case at sigma=-X", 0.0, [&](std::string& d) {
    const TheoremFits t = theorem_fits(g, envelope_c);
    d = detail::fmt(
        "thm5 K=%.4f (T<=250: %.4f) stable=%d [growing at X=%s; vs (T/4pi)log H_X: K=%.4f stable=%d]; "
        "thm6 K'=%.4f (%.4f) stable=%d; thm7 K''=%.4f (%.4f) stable=%d; sigma=-X max dev %.4f of C*X^2+T ok=%d",
        t.theorem5.constant, t.theorem5.constant_base, t.theorem5.stable,
        t.theorem5_worst_x.empty() ? "none" : t.theorem5_worst_x.c_str(), t.theorem5_harmonic.constant,
        t.theorem5_harmonic.stable, t.theorem6.constant, t.theorem6.constant_base, t.theorem6.stable,
        t.theorem7.constant, t.theorem7.constant_base, t.theorem7.stable, t.remark_worst, t.remark_ok);
    return t.theorem5.stable && t.theorem6.stable && t.theorem7.stable && t.remark_ok;
  });
}

// 8. Exact properties of the mollifier coefficients.
inline CriterionResult criterion_mollifier() {
  return detail::timed(8, "mollifier coefficients, all X,Y <= 100", 0.0, [](std::string& d) {
    const std::vector<long> divisors = divisor_count_table(100 * 100);
    long failures = 0, pairs = 0;
    for (long x = 2; x <= 100; ++x) {
      for (long y = 2; y <= 100; ++y) {
        ++pairs;
        const MollifierCoeffs c = mollifier_coeffs(x, y);
        bool ok = c.at(1) == 1 && c.at(x * y + 1) == 0;
        for (long n = 1; ok && n <= x * y; ++n) {
          ok = std::abs(c.at(n)) <= divisors[static_cast<std::size_t>(n)];
          if (n > 1 && n <= std::min(x, y)) ok = ok && c.at(n) == 0;
        }
        if (!ok) ++failures;
      }
    }
    d = detail::fmt("%ld (X,Y) pairs, %ld failures", pairs, failures);
    return failures == 0;
  });
}

// 9. Argument tracker: real axis, Descartes bound, additivity.
inline CriterionResult criterion_tracker() {
  return detail::timed(9, "argument tracker properties", 60.0, [](std::string& d) {
    std::vector<std::string> parts;
    bool ok = true;

    double worst_axis = 0.0;
    for (long x = 2; x <= 30; ++x) {
      const PartialSum f(x);
      const ArgTrace tr = track_argument(f, {2.0, 0.0}, {-static_cast<double>(x), 0.0});
      worst_axis = std::max({worst_axis, std::abs(tr.net_change), tr.total_variation});
    }
    ok = ok && worst_axis == 0.0;
    parts.push_back(detail::fmt("real-axis variation %.3g", worst_axis));

    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<long> pick_x(2, 50);
    std::uniform_real_distribution<double> pick_t(1.0, 500.0);
    int violations = 0, edges = 0;
    double tightest = 0.0;
    while (edges < 50) {
      const long x = pick_x(rng);
      const double T = pick_t(rng);
      const PartialSum f(x);
      ArgTrace tr;
      try {
        tr = track_argument(f, {2.0, T}, {-static_cast<double>(x), T});
      } catch (const Error& e) {
        if (e.code() == ErrorCode::zero_on_path) continue;
        throw;
      }
      ++edges;
      const double bound = std::numbers::pi * static_cast<double>(top_edge_sign_change_bound(x, T) + 2);
      tightest = std::max(tightest, std::abs(tr.net_change) / bound);
      if (std::abs(tr.net_change) > bound) ++violations;
    }
    ok = ok && violations == 0;
    parts.push_back(detail::fmt("Descartes bound: %d violations in 50 edges (max ratio %.3f)", violations, tightest));

    int partitions = 0, mismatches = 0;
    double worst_residue = 0.0;
    std::uniform_int_distribution<int> pick_cuts(1, 3);
    for (long x = 2; x <= 20; ++x) {
      const PartialSum f(x);
      const StripBounds sb = strip_bounds(x);
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      for (int rep = 0; rep < 3; ++rep) {
        const Rectangle outer{sb.alpha - 0.1, sb.beta + 0.1, 0.1 + 5.0 * u01(rng), 30.0 + 30.0 * u01(rng)};
        std::vector<double> sc{outer.sigma_min, outer.sigma_max}, tc{outer.t_min, outer.t_max};
        for (int k = pick_cuts(rng); k > 0; --k) sc.push_back(outer.sigma_min + outer.width() * u01(rng));
        for (int k = pick_cuts(rng); k > 0; --k) tc.push_back(outer.t_min + outer.height() * u01(rng));
        std::sort(sc.begin(), sc.end());
        std::sort(tc.begin(), tc.end());
        try {
          const BoundaryTraces b = trace_boundary(f, outer);
          const double outer_change = b.total_change();
          worst_residue = std::max(worst_residue, std::abs(outer_change / (2 * std::numbers::pi) -
                                                           std::round(outer_change / (2 * std::numbers::pi))));
          long sum = 0;
          for (std::size_t i = 0; i + 1 < sc.size(); ++i)
            for (std::size_t j = 0; j + 1 < tc.size(); ++j)
              sum += rectangle_winding(f, {sc[i], sc[i + 1], tc[j], tc[j + 1]});
          ++partitions;
          if (sum != winding_from_change(outer_change, outer)) ++mismatches;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::boundary_zero) throw;
        }
      }
    }
    ok = ok && mismatches == 0 && partitions > 0 && worst_residue <= winding_integrality_tol;
    parts.push_back(detail::fmt("additivity: %d partitions, %d mismatches, max residue %.2e", partitions, mismatches,
                                worst_residue));
    d = detail::join(parts);
    return ok;
  });
}

// 10. Criteria 1 and 5 reproduce byte for byte.
inline CriterionResult criterion_determinism() {
  return detail::timed(10, "criteria 1 and 5 byte-identical across runs", 0.0, [](std::string& d) {
    std::string a1, a5, b1, b5;
    criterion_closed_form(&a1);
    criterion_littlewood(&a5);
    criterion_closed_form(&b1);
    criterion_littlewood(&b5);
    const bool ok = !a1.empty() && !a5.empty() && a1 == b1 && a5 == b5;
    d = detail::fmt("criterion 1: %zu bytes identical=%d; criterion 5: %zu bytes identical=%d", a1.size(), a1 == b1,
                    a5.size(), a5 == b5);
    return ok;
  });
}

inline std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& on_result = {}) {
  std::vector<CriterionResult> out;
  auto push = [&](CriterionResult r) {
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  };
  push(criterion_closed_form());
  push(criterion_strip_bounds());
  push(criterion_count_find());
  double c = 0.0;
  push(criterion_theorem2_envelope(&c));
  push(criterion_littlewood());
  push(criterion_mean_square());
  const GridZeros g = compute_grid_zeros();
  push(criterion_theorem_fits(g, c));
  push(criterion_mollifier());
  push(criterion_tracker());
  push(criterion_determinism());
  return out;
}

inline std::string format_line(const CriterionResult& r) {
  return detail::fmt("[%s] %2d %s: ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str()) + r.detail;
}

}  // namespace pzeta::verify
