#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "pzeta/compensated.hpp"
#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/quadrature.hpp"
#include "pzeta/winding.hpp"
#include "pzeta/zero_finder.hpp"
#include "pzeta/zstats.hpp"

namespace pzeta {

// Zeros closer than this to the integration line get their log singularity
// subtracted and integrated in closed form.
inline constexpr double near_line_threshold = 0.05;

inline double default_quad_tol(double T) { return 1e-6 * T; }

// Zeros (and mirrored conjugates) within near_line_threshold of Re s = sigma0
// whose ordinates fall near [0, T].
inline std::vector<ComplexPoint> near_line_zeros(const std::vector<ZeroRecord>& zeros, double sigma0, double T) {
  std::vector<ComplexPoint> out;
  for (const auto& z : zeros) {
    if (std::abs(z.beta - sigma0) >= near_line_threshold) continue;
    for (int m = 0; m < z.multiplicity; ++m) {
      if (z.gamma >= -near_line_threshold && z.gamma <= T + near_line_threshold) out.emplace_back(z.beta, z.gamma);
      if (z.gamma <= near_line_threshold) out.emplace_back(z.beta, -z.gamma);
    }
  }
  return out;
}

namespace detail {

// Antiderivative of log|u + i delta| = log sqrt(u^2 + delta^2) in u.
inline double log_distance_antiderivative(double u, double delta) {
  const double d = std::abs(delta);
  if (d == 0.0) return u == 0.0 ? 0.0 : u * std::log(std::abs(u)) - u;
  return 0.5 * u * std::log(u * u + d * d) - u + d * std::atan(u / d);
}

}  // namespace detail

// int_0^T log|F_X(sigma0 + it)| dt. For each listed zero rho the term
// log|s - rho| is taken out of the integrand and added back exactly, and its
// ordinate becomes a breakpoint.
inline double integrate_log_abs(const PartialSum& f, double sigma0, double T,
                                std::span<const ComplexPoint> near_zeros, double quad_tol = 0.0) {
  require(T > 0.0, "T must be positive");
  const double tol = quad_tol > 0.0 ? quad_tol : default_quad_tol(T);
  // Uniform breakpoints that nearly coincide with a zero ordinate would leave
  // a sliver panel with nodes on the zero; the ordinate replaces them.
  const double merge = 1e-9 * (1.0 + T);
  std::vector<double> breaks;
  for (double b : uniform_breakpoints(0.0, T, 1.0)) {
    bool near = false;
    for (const auto& z : near_zeros) near = near || (std::abs(b - z.imag()) < merge && b > 0.0 && b < T);
    if (!near) breaks.push_back(b);
  }
  for (const auto& z : near_zeros)
    if (z.imag() > 0.0 && z.imag() < T) breaks.push_back(z.imag());

  auto integrand = [&](double t) {
    const ComplexPoint s(sigma0, t);
    // Within singular_radius of a listed zero, log|F(s)| - log|s - rho| is
    // log|F'(s)| up to O(|s - rho|), and F(s) itself is mostly rounding.
    constexpr double singular_radius = 1e-6;
    std::size_t closest = near_zeros.size();
    for (std::size_t i = 0; i < near_zeros.size(); ++i)
      if (std::abs(s - near_zeros[i]) < singular_radius) closest = i;
    double v = closest < near_zeros.size() ? std::log(std::abs(f.eval_derivative(s))) : f.eval_log_abs(s);
    for (std::size_t i = 0; i < near_zeros.size(); ++i)
      if (i != closest) v -= std::log(std::abs(s - near_zeros[i]));
    return v;
  };
  const QuadratureResult q = integrate_adaptive(integrand, std::move(breaks), {tol});

  CompensatedSum<double> total(q.value);
  for (const auto& z : near_zeros) {
    const double delta = sigma0 - z.real();
    total.add(detail::log_distance_antiderivative(T - z.imag(), delta) -
              detail::log_distance_antiderivative(-z.imag(), delta));
  }
  return total.get();
}

// int |F_X(sigma + it)|^2 dt over [0, T].
inline double mean_square_integral(const PartialSum& f, double sigma, double T, double quad_tol = 0.0) {
  require(T > 0.0, "T must be positive");
  const double tol = quad_tol > 0.0 ? quad_tol : 1e-10 * f.mean_square_main_term(sigma, T);
  auto integrand = [&](double t) { return std::norm(f.eval({sigma, t})); };
  return integrate_adaptive(integrand, uniform_breakpoints(0.0, T, 1.0), {tol}).value;
}

// int arg F_X(sigma + it) d sigma from sigma_from to sigma_to, with arg lifted
// continuously from the value 0 at sigma = 2 on the real axis: up the line
// Re s = 2 (where Re F_X > 0) and then horizontally.
inline double arg_integral_horizontal(const PartialSum& f, double t, double sigma_from, double sigma_to,
                                      double quad_tol = 1e-9, const TrackOptions& track = {}) {
  if (t == 0.0 || sigma_from == sigma_to) return 0.0;
  const double sign = sigma_from < sigma_to ? 1.0 : -1.0;
  const double a = std::min(sigma_from, sigma_to);
  const double b = std::max(sigma_from, sigma_to);
  const ComplexPoint anchor(2.0, t);
  const double anchor_phase = std::arg(f.eval(anchor));

  CompensatedSum<double> total;
  auto piece = [&](double lo, double hi) {
    if (hi <= lo) return;
    const double far = lo < 2.0 ? lo : hi;
    const ArgTrace trace = track_argument_anchored(f, anchor, {far, t}, anchor_phase, track);
    std::vector<double> breaks{lo, hi};
    for (const auto& smp : trace.samples) {
      const double s = smp.point.real();
      if (s > lo && s < hi) breaks.push_back(s);
    }
    auto integrand = [&](double sigma) { return phase_at(f, trace, {sigma, t}); };
    total.add(integrate_adaptive(integrand, std::move(breaks), {quad_tol}).value);
  };
  piece(a, std::min(b, 2.0));
  piece(std::max(a, 2.0), b);
  return sign * total.get();
}

struct LittlewoodCheck {
  double sigma0 = 0.0;
  double T = 0.0;
  double lhs = 0.0;  // 2 pi sum (beta - sigma0) over zeros with beta > sigma0, 0 < gamma <= T
  double rhs_log_integral = 0.0;  // int_0^T log|F_X(sigma0 + it)| dt
  double rhs_ref_integral = 0.0;  // int_0^T log|F_X(2 + it)| dt
  double rhs_arg_integrals = 0.0;  // int_{sigma0}^2 (arg F_X(sigma + iT) - arg F_X(sigma)) d sigma
  double discrepancy = 0.0;

  double rhs() const { return rhs_log_integral - rhs_ref_integral + rhs_arg_integrals; }
};

// Both sides of Littlewood's lemma for F_X on [sigma0, 2] x [0, T]: the zero
// sum on one side, boundary integrals of log|F_X| and arg F_X on the other.
inline LittlewoodCheck littlewood_identity_check(const PartialSum& f, double sigma0, double T,
                                                 const std::vector<ZeroRecord>& zeros, double quad_tol = 0.0) {
  require(sigma0 < 2.0, "sigma0 must lie left of the line Re s = 2");
  require(T > 0.0, "T must be positive");
  const double tol = quad_tol > 0.0 ? quad_tol : default_quad_tol(T);
  LittlewoodCheck c;
  c.sigma0 = sigma0;
  c.T = T;
  c.lhs = 2.0 * std::numbers::pi * excess_sum(zeros, sigma0, T);
  const std::vector<ComplexPoint> near = near_line_zeros(zeros, sigma0, T);
  c.rhs_log_integral = integrate_log_abs(f, sigma0, T, near, tol);
  c.rhs_ref_integral = integrate_log_abs(f, 2.0, T, {}, tol);
  c.rhs_arg_integrals = arg_integral_horizontal(f, T, sigma0, 2.0, tol) - arg_integral_horizontal(f, 0.0, sigma0, 2.0, tol);
  c.discrepancy = c.lhs - c.rhs();
  return c;
}

}  // namespace pzeta
