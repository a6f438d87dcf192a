#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"
#include "pzeta/strip_bounds.hpp"
#include "pzeta/winding.hpp"

namespace pzeta {

// One zero rho = beta + i gamma of F_X. `residual` is |F_X(rho)| divided by
// sum_{n<=X} n^-beta, which keeps it meaningful far left where |F_X| is huge.
struct ZeroRecord {
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;
  int newton_iters = 0;
  Rectangle cell;
  int multiplicity = 1;

  ComplexPoint point() const { return {beta, gamma}; }
};

struct FinderOptions {
  double residual_tol = 1e-10;
  double min_cell = 1e-8;
  int max_newton_iters = 60;
  TrackOptions track;
};

inline double relative_residual(const PartialSum& f, ComplexPoint s) {
  const Evaluation e = f.evaluate(s, false);
  return std::abs(e.value) / e.scale;
}

// Damped Newton from `start`. The step is halved until |F_X| decreases. Once
// the residual is below tolerance, full steps continue while they still move
// the point and do not increase |F_X|.
inline ZeroRecord refine(const PartialSum& f, ComplexPoint start, double residual_tol = 1e-10,
                         int max_iters = 60) {
  require(residual_tol > 0.0, "residual_tol must be positive");
  ComplexPoint s = start;
  Evaluation e = f.evaluate(s, true);
  int iters = 0;
  auto step_of = [](const Evaluation& ev) { return ev.value / ev.derivative; };

  while (std::abs(e.value) / e.scale > residual_tol) {
    if (iters >= max_iters)
      throw Error(ErrorCode::no_convergence, "Newton did not converge", format_point(start));
    if (std::abs(e.derivative) == 0.0)
      throw Error(ErrorCode::no_convergence, "vanishing derivative", format_point(s));
    const std::complex<double> step = step_of(e);
    double lambda = 1.0;
    bool moved = false;
    for (int halvings = 0; halvings < 40; ++halvings, lambda *= 0.5) {
      const ComplexPoint cand = s - lambda * step;
      if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag())) continue;
      Evaluation ce;
      try {
        ce = f.evaluate(cand, true);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::overflow) throw;
        continue;
      }
      if (std::abs(ce.value) < std::abs(e.value)) {
        s = cand;
        e = ce;
        moved = true;
        break;
      }
    }
    ++iters;
    if (!moved) throw Error(ErrorCode::no_convergence, "damped Newton stalled", format_point(s));
  }

  while (iters < max_iters) {
    if (std::abs(e.derivative) == 0.0) break;
    const std::complex<double> step = step_of(e);
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(s))) break;
    const ComplexPoint cand = s - step;
    if (!std::isfinite(cand.real()) || !std::isfinite(cand.imag())) break;
    const Evaluation ce = f.evaluate(cand, true);
    if (std::abs(ce.value) > std::abs(e.value)) break;
    s = cand;
    e = ce;
    ++iters;
  }

  ZeroRecord rec;
  rec.beta = s.real();
  rec.gamma = s.imag();
  rec.residual = std::abs(e.value) / e.scale;
  rec.newton_iters = iters;
  rec.cell = Rectangle{s.real(), s.real(), s.imag(), s.imag()};
  return rec;
}

namespace detail {

struct Cell {
  Rectangle rect;
  BoundaryTraces edges;
  long winding = 0;
};

// Split positions tried in turn when a cut line passes through a zero.
inline constexpr std::array<double, 8> split_fractions{0.5, 0.5371, 0.4583, 0.5827, 0.4129, 0.6263, 0.3719, 0.6679};

class Subdivider {
 public:
  Subdivider(const PartialSum& f, const FinderOptions& opts) : f_(f), opts_(opts) {}

  void run(Cell root, std::vector<ZeroRecord>& out) {
    std::vector<Cell> stack;
    stack.push_back(std::move(root));
    while (!stack.empty()) {
      Cell cell = std::move(stack.back());
      stack.pop_back();
      if (cell.winding == 0) continue;
      const Rectangle& r = cell.rect;
      if (cell.winding == 1 && try_newton(cell, out)) continue;
      if (std::max(r.width(), r.height()) <= opts_.min_cell) {
        // Unresolved cluster: record once with its multiplicity.
        ZeroRecord rec = polish_center(r);
        rec.multiplicity = static_cast<int>(cell.winding);
        out.push_back(rec);
        continue;
      }
      for (Cell& child : split(cell)) stack.push_back(std::move(child));
    }
  }

 private:
  bool try_newton(const Cell& cell, std::vector<ZeroRecord>& out) const {
    const Rectangle& r = cell.rect;
    ZeroRecord rec;
    try {
      rec = refine(f_, r.center(), opts_.residual_tol, opts_.max_newton_iters);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::no_convergence || e.code() == ErrorCode::overflow) return false;
      throw;
    }
    const double slack = 1e-9 * std::max(r.width(), r.height());
    if (!r.contains(rec.point(), slack)) return false;
    rec.cell = r;
    out.push_back(rec);
    return true;
  }

  ZeroRecord polish_center(const Rectangle& r) const {
    ZeroRecord rec;
    try {
      rec = refine(f_, r.center(), opts_.residual_tol, opts_.max_newton_iters);
      if (!r.contains(rec.point(), std::max(r.width(), r.height()))) throw Error(ErrorCode::no_convergence, "");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::no_convergence && e.code() != ErrorCode::overflow) throw;
      const ComplexPoint c = r.center();
      rec.beta = c.real();
      rec.gamma = c.imag();
      rec.residual = relative_residual(f_, c);
      rec.newton_iters = opts_.max_newton_iters;
    }
    rec.cell = r;
    return rec;
  }

  // Cuts the cell into four (or two across the long side while it is more
  // than twice as long as wide) and checks that child windings add up.
  std::vector<Cell> split(const Cell& cell) const {
    const Rectangle& r = cell.rect;
    const bool cut_sigma = r.height() <= 2.0 * r.width();
    const bool cut_t = r.width() <= 2.0 * r.height();
    for (double fs : split_fractions) {
      for (double ft : split_fractions) {
        std::vector<Cell> children;
        try {
          children = split_at(cell, cut_sigma ? r.sigma_min + fs * r.width() : 0.0,
                              cut_t ? r.t_min + ft * r.height() : 0.0, cut_sigma, cut_t);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::zero_on_path || e.code() == ErrorCode::non_integral_winding) continue;
          throw;
        }
        long sum = 0;
        for (const Cell& c : children) sum += c.winding;
        if (sum == cell.winding) return children;
      }
    }
    throw Error(ErrorCode::non_integral_winding, "child windings never matched parent", format_rect(r));
  }

  std::vector<Cell> split_at(const Cell& cell, double sm, double tm, bool cut_sigma, bool cut_t) const {
    const Rectangle& r = cell.rect;
    const auto& e = cell.edges;
    const auto& o = opts_.track;
    std::vector<Cell> out;
    if (cut_sigma && cut_t) {
      ArgTrace h = track_argument(f_, {r.sigma_min, tm}, {r.sigma_max, tm}, o);
      ArgTrace v = track_argument(f_, {sm, r.t_min}, {sm, r.t_max}, o);
      auto [h_l, h_r] = split_trace(f_, h, {sm, tm}, o);
      auto [v_b, v_t] = split_trace(f_, v, {sm, tm}, o);
      auto [b_l, b_r] = split_trace(f_, e.bottom, {sm, r.t_min}, o);
      auto [t_l, t_r] = split_trace(f_, e.top, {sm, r.t_max}, o);
      auto [l_b, l_t] = split_trace(f_, e.left, {r.sigma_min, tm}, o);
      auto [r_b, r_t] = split_trace(f_, e.right, {r.sigma_max, tm}, o);
      out.push_back(make({r.sigma_min, sm, r.t_min, tm}, {b_l, v_b, h_l, l_b}));
      out.push_back(make({sm, r.sigma_max, r.t_min, tm}, {b_r, r_b, h_r, v_b}));
      out.push_back(make({r.sigma_min, sm, tm, r.t_max}, {h_l, v_t, t_l, l_t}));
      out.push_back(make({sm, r.sigma_max, tm, r.t_max}, {h_r, r_t, t_r, v_t}));
    } else if (cut_sigma) {
      ArgTrace v = track_argument(f_, {sm, r.t_min}, {sm, r.t_max}, o);
      auto [b_l, b_r] = split_trace(f_, e.bottom, {sm, r.t_min}, o);
      auto [t_l, t_r] = split_trace(f_, e.top, {sm, r.t_max}, o);
      out.push_back(make({r.sigma_min, sm, r.t_min, r.t_max}, {b_l, v, t_l, e.left}));
      out.push_back(make({sm, r.sigma_max, r.t_min, r.t_max}, {b_r, e.right, t_r, v}));
    } else {
      ArgTrace h = track_argument(f_, {r.sigma_min, tm}, {r.sigma_max, tm}, o);
      auto [l_b, l_t] = split_trace(f_, e.left, {r.sigma_min, tm}, o);
      auto [r_b, r_t] = split_trace(f_, e.right, {r.sigma_max, tm}, o);
      out.push_back(make({r.sigma_min, r.sigma_max, r.t_min, tm}, {e.bottom, r_b, h, l_b}));
      out.push_back(make({r.sigma_min, r.sigma_max, tm, r.t_max}, {h, r_t, e.top, l_t}));
    }
    return out;
  }

  static Cell make(const Rectangle& r, BoundaryTraces edges) {
    Cell c{r, std::move(edges), 0};
    c.winding = winding_from_change(c.edges.total_change(), r);
    return c;
  }

  const PartialSum& f_;
  FinderOptions opts_;
};

}  // namespace detail

// Every zero inside `rect` (boundary nudged per settle_boundary), sorted by
// (gamma, beta). Record multiplicities sum to the rectangle's winding number.
inline std::vector<ZeroRecord> locate_zeros(const PartialSum& f, const Rectangle& rect,
                                            const FinderOptions& opts = {}) {
  require(opts.residual_tol > 0.0, "residual_tol must be positive");
  const SettledRectangle settled = settle_boundary(f, rect, opts.track);
  std::vector<ZeroRecord> out;
  if (settled.winding == 0) return out;
  detail::Cell root{settled.rect, trace_boundary(f, settled.rect, opts.track), settled.winding};
  detail::Subdivider(f, opts).run(std::move(root), out);
  std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
    return a.gamma != b.gamma ? a.gamma < b.gamma : a.beta < b.beta;
  });
  return out;
}

inline constexpr double strip_margin = 0.1;

// [alpha - 0.1, beta + 0.1] x [1e-6, T]: the search region holding every zero
// with 0 < gamma <= T.
inline Rectangle strip_rectangle(long x, double T) {
  require(T > count_bottom_edge, "T must exceed 1e-6");
  const StripBounds b = strip_bounds(x);
  return {b.alpha - strip_margin, b.beta + strip_margin, count_bottom_edge, T};
}

inline std::vector<ZeroRecord> locate_strip_zeros(const PartialSum& f, double T, const FinderOptions& opts = {}) {
  return locate_zeros(f, strip_rectangle(f.x(), T), opts);
}

// Count with multiplicity.
inline long zero_count(const std::vector<ZeroRecord>& zeros) {
  long n = 0;
  for (const auto& z : zeros) n += z.multiplicity;
  return n;
}

}  // namespace pzeta
