#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include "pzeta/compensated.hpp"
#include "pzeta/error.hpp"

namespace pzeta {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-8;
  std::size_t max_panels = 200000;
  // Panels narrower than this fraction of the whole range are not split again.
  double min_width_fraction = 1e-14;
};

namespace detail {

// 15-point Kronrod nodes with the embedded 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
Panel gauss_kronrod(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kronrod_weights[7];
  double gauss = fc * gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kronrod_nodes[static_cast<std::size_t>(j)];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kronrod_weights[static_cast<std::size_t>(j)] * sum;
    if (j % 2 == 1) gauss += gauss_weights[static_cast<std::size_t>(j / 2)] * sum;
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace detail

// Globally adaptive Gauss-Kronrod over the pieces between sorted breakpoints:
// the panel with the largest error estimate is bisected until the summed
// estimate drops below abs_tol. Deterministic for a fixed integrand.
template <typename F>
QuadratureResult integrate_adaptive(F&& f, std::vector<double> breakpoints, const QuadratureOptions& opts = {}) {
  require(breakpoints.size() >= 2, "quadrature needs at least two breakpoints");
  require(opts.abs_tol > 0.0, "quadrature tolerance must be positive");
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  const double range = breakpoints.back() - breakpoints.front();
  if (range == 0.0) return {};

  std::priority_queue<detail::Panel, std::vector<detail::Panel>, detail::PanelOrder> heap;
  CompensatedSum<double> total_err;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    detail::Panel p = detail::gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]);
    err += p.error;
    heap.push(p);
  }
  // The running error drifts under repeated add/subtract; resum it every 256 splits.
  std::size_t splits = 0;
  while (err > opts.abs_tol) {
    if (heap.size() >= opts.max_panels) {
      std::ostringstream os;
      os.precision(17);
      os << "panel [" << heap.top().a << "," << heap.top().b << "]";
      throw Error(ErrorCode::nonconvergent_panel, "panel budget exhausted", os.str());
    }
    detail::Panel worst = heap.top();
    if (worst.b - worst.a < opts.min_width_fraction * range) {
      std::ostringstream os;
      os.precision(17);
      os << "panel [" << worst.a << "," << worst.b << "] error " << worst.error;
      throw Error(ErrorCode::nonconvergent_panel, "error estimate not met at minimum panel width", os.str());
    }
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Panel left = detail::gauss_kronrod(f, worst.a, mid);
    const detail::Panel right = detail::gauss_kronrod(f, mid, worst.b);
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (++splits % 256 == 0) {
      auto copy = heap;
      double fresh = 0.0;
      while (!copy.empty()) {
        fresh += copy.top().error;
        copy.pop();
      }
      err = fresh;
    }
  }

  std::vector<detail::Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
  CompensatedSum<double> value;
  for (const auto& p : panels) {
    value.add(p.value);
    total_err.add(p.error);
  }
  return {value.get(), total_err.get(), panels.size()};
}

// Breakpoints a, a+h, ..., b with spacing at most `spacing`.
inline std::vector<double> uniform_breakpoints(double a, double b, double spacing) {
  require(spacing > 0.0, "breakpoint spacing must be positive");
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / spacing)));
  std::vector<double> out(n + 1);
  for (std::size_t i = 0; i <= n; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n);
  out.back() = b;
  return out;
}

}  // namespace pzeta
