#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pzeta/dirichlet.hpp"
#include "pzeta/error.hpp"

namespace pzeta {

struct Rectangle {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;

  double width() const { return sigma_max - sigma_min; }
  double height() const { return t_max - t_min; }
  ComplexPoint center() const { return {0.5 * (sigma_min + sigma_max), 0.5 * (t_min + t_max)}; }

  bool contains(ComplexPoint s, double slack = 0.0) const {
    return s.real() >= sigma_min - slack && s.real() <= sigma_max + slack && s.imag() >= t_min - slack &&
           s.imag() <= t_max + slack;
  }

  void validate() const {
    require(std::isfinite(sigma_min) && std::isfinite(sigma_max) && std::isfinite(t_min) && std::isfinite(t_max),
            "rectangle corners must be finite");
    require(sigma_min < sigma_max, "rectangle needs sigma_min < sigma_max");
    require(t_min < t_max, "rectangle needs t_min < t_max");
  }

  friend bool operator==(const Rectangle&, const Rectangle&) = default;
};

inline std::string format_rect(const Rectangle& r) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << r.sigma_min << "," << r.sigma_max << "]x[" << r.t_min << "," << r.t_max << "]";
  return os.str();
}

struct ArgSample {
  double param = 0.0;  // arclength from the start of the path
  ComplexPoint point;
  double phase = 0.0;  // continuous lift of arg F_X
  std::complex<double> unit;  // F_X / |F_X|
  double log_rate = 0.0;  // |F_X' / F_X|
};

struct ArgTrace {
  ComplexPoint from;
  ComplexPoint to;
  std::vector<ArgSample> samples;
  double total_variation = 0.0;
  double net_change = 0.0;

  double length() const { return std::abs(to - from); }
};

struct TrackOptions {
  int min_samples = 16;
  // Largest accepted principal phase step between neighbours.
  double max_phase_step = std::numbers::pi / 2;
  // Largest accepted step length times |F'/F| at either end, in radians.
  double max_rate_step = 1.0;
  // Segments shorter than this (relative to 1 + |s|) that still need refining
  // mean the path runs through a zero.
  double min_segment = 1e-13;
};

namespace detail {

inline double principal_diff(std::complex<double> unit_from, std::complex<double> unit_to) {
  return std::arg(unit_to * std::conj(unit_from));
}

class Tracker {
 public:
  Tracker(const PartialSum& f, const TrackOptions& opts) : f_(f), opts_(opts) {}

  ArgSample sample(ComplexPoint s, double param) const {
    const Evaluation e = f_.evaluate(s, true);
    const double mag = std::abs(e.value);
    if (f_.is_negligible(mag, e.scale) || mag == 0.0)
      throw Error(ErrorCode::zero_on_path, "|F_X| below eval_tol on path", format_point(s));
    ArgSample out;
    out.param = param;
    out.point = s;
    out.unit = e.value / mag;
    out.log_rate = std::abs(e.derivative) / mag;
    return out;
  }

  // Appends samples strictly after `a` up to and including `b`, lifting phases from a.
  void refine_between(const ArgSample& a, const ArgSample& b, std::vector<ArgSample>& out) const {
    std::vector<ArgSample> pending{b};
    ArgSample left = a;
    while (!pending.empty()) {
      const ArgSample& right = pending.back();
      if (needs_split(left, right)) {
        const double len = std::abs(right.point - left.point);
        if (len < opts_.min_segment * (1.0 + std::abs(left.point)))
          throw Error(ErrorCode::zero_on_path, "argument step unresolved at minimum segment length",
                      format_point(left.point));
        const ComplexPoint mid = 0.5 * (left.point + right.point);
        ArgSample m = sample(mid, 0.5 * (left.param + right.param));
        pending.push_back(m);
        continue;
      }
      ArgSample accepted = right;
      pending.pop_back();
      accepted.phase = left.phase + principal_diff(left.unit, accepted.unit);
      out.push_back(accepted);
      left = accepted;
    }
  }

  ArgTrace track(ComplexPoint from, ComplexPoint to, double anchor_phase, bool anchor_given) const {
    ArgTrace trace;
    trace.from = from;
    trace.to = to;
    const double length = std::abs(to - from);
    const int n = std::max(1, opts_.min_samples);
    ArgSample first = sample(from, 0.0);
    first.phase = anchor_given ? anchor_phase : std::arg(first.unit);
    trace.samples.push_back(first);
    for (int k = 1; k <= n; ++k) {
      const double frac = static_cast<double>(k) / n;
      const ComplexPoint s = k == n ? to : from + frac * (to - from);
      const ArgSample next = sample(s, frac * length);
      const ArgSample prev = trace.samples.back();
      refine_between(prev, next, trace.samples);
    }
    finish(trace);
    return trace;
  }

  static void finish(ArgTrace& trace) {
    double tv = 0.0;
    for (std::size_t i = 1; i < trace.samples.size(); ++i)
      tv += std::abs(trace.samples[i].phase - trace.samples[i - 1].phase);
    trace.total_variation = tv;
    trace.net_change = trace.samples.back().phase - trace.samples.front().phase;
  }

 private:
  bool needs_split(const ArgSample& a, const ArgSample& b) const {
    if (std::abs(principal_diff(a.unit, b.unit)) > opts_.max_phase_step) return true;
    const double len = std::abs(b.point - a.point);
    return len * std::max(a.log_rate, b.log_rate) > opts_.max_rate_step;
  }

  const PartialSum& f_;
  TrackOptions opts_;
};

}  // namespace detail

// Lifts arg F_X continuously along the straight segment from -> to.
// The first sample carries the principal argument unless an anchor is given.
inline ArgTrace track_argument(const PartialSum& f, ComplexPoint from, ComplexPoint to,
                               const TrackOptions& opts = {}) {
  return detail::Tracker(f, opts).track(from, to, 0.0, false);
}

inline ArgTrace track_argument_anchored(const PartialSum& f, ComplexPoint from, ComplexPoint to,
                                        double anchor_phase, const TrackOptions& opts = {}) {
  return detail::Tracker(f, opts).track(from, to, anchor_phase, true);
}

// Lifted phase at a point of the traced segment, continued from the nearest
// sample at or before it.
inline double phase_at(const PartialSum& f, const ArgTrace& trace, ComplexPoint s) {
  const double param = std::abs(s - trace.from);
  const auto& smp = trace.samples;
  std::size_t lo = 0, hi = smp.size() - 1;
  if (param <= smp.front().param) {
    lo = 0;
  } else if (param >= smp.back().param) {
    lo = hi;
  } else {
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (smp[mid].param <= param)
        lo = mid;
      else
        hi = mid;
    }
  }
  const std::complex<double> v = f.eval(s);
  const double mag = std::abs(v);
  if (mag == 0.0) throw Error(ErrorCode::zero_on_path, "F_X vanishes on traced path", format_point(s));
  return smp[lo].phase + detail::principal_diff(smp[lo].unit, v / mag);
}

// Splits a trace at an interior point into two traces that share that sample.
inline std::pair<ArgTrace, ArgTrace> split_trace(const PartialSum& f, const ArgTrace& trace, ComplexPoint at,
                                                 const TrackOptions& opts = {}) {
  detail::Tracker tracker(f, opts);
  const double param = std::abs(at - trace.from);
  const auto& smp = trace.samples;
  std::size_t k = 0;
  while (k + 1 < smp.size() && smp[k + 1].param <= param) ++k;
  const auto k_end = smp.begin() + static_cast<std::ptrdiff_t>(k) + 1;

  ArgTrace left{trace.from, at, {smp.begin(), k_end}, 0.0, 0.0};
  ArgTrace right{at, trace.to, {}, 0.0, 0.0};
  if (smp[k].param == param || k + 1 == smp.size()) {
    right.samples.assign(smp.begin() + static_cast<std::ptrdiff_t>(k), smp.end());
  } else {
    tracker.refine_between(smp[k], tracker.sample(at, param), left.samples);
    right.samples.push_back(left.samples.back());
    tracker.refine_between(right.samples.back(), smp[k + 1], right.samples);
    // Later samples were already refined against each other; carry the lift over.
    const double shift = right.samples.back().phase - smp[k + 1].phase;
    for (auto it = k_end + 1; it != smp.end(); ++it) {
      right.samples.push_back(*it);
      right.samples.back().phase += shift;
    }
  }
  const double offset = right.samples.front().param;
  for (auto& s : right.samples) s.param -= offset;
  detail::Tracker::finish(left);
  detail::Tracker::finish(right);
  return {std::move(left), std::move(right)};
}

// Traces of the four sides in canonical direction: bottom and top run left to
// right, left and right run upwards.
struct BoundaryTraces {
  ArgTrace bottom, right, top, left;

  double total_change() const {
    return bottom.net_change + right.net_change - top.net_change - left.net_change;
  }
};

inline BoundaryTraces trace_boundary(const PartialSum& f, const Rectangle& r, const TrackOptions& opts = {}) {
  const ComplexPoint sw(r.sigma_min, r.t_min), se(r.sigma_max, r.t_min);
  const ComplexPoint ne(r.sigma_max, r.t_max), nw(r.sigma_min, r.t_max);
  try {
    return {track_argument(f, sw, se, opts), track_argument(f, se, ne, opts), track_argument(f, nw, ne, opts),
            track_argument(f, sw, nw, opts)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::zero_on_path)
      throw Error(ErrorCode::boundary_zero, "zero on rectangle boundary " + format_rect(r), e.location());
    throw;
  }
}

inline constexpr double winding_integrality_tol = 0.01;

inline long winding_from_change(double total_change, const Rectangle& r) {
  const double w = total_change / (2.0 * std::numbers::pi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > winding_integrality_tol || rounded < 0.0) {
    std::ostringstream os;
    os.precision(17);
    os << "winding " << w << " over " << format_rect(r);
    throw Error(ErrorCode::non_integral_winding, os.str(), format_rect(r));
  }
  return static_cast<long>(rounded);
}

// Number of zeros of F_X inside the rectangle by the argument principle.
inline long rectangle_winding(const PartialSum& f, const Rectangle& r, const TrackOptions& opts = {}) {
  r.validate();
  return winding_from_change(trace_boundary(f, r, opts).total_change(), r);
}

struct SettledRectangle {
  Rectangle rect;
  long winding = 0;
};

// Winding after nudging the boundary off any zero: top and bottom move up (so
// zeros at t_max are counted and zeros at t_min are not), the sides move out.
// eps = 1e-6 (1 + |t|), doubled on each of up to 5 retries.
inline SettledRectangle settle_boundary(const PartialSum& f, const Rectangle& r, const TrackOptions& opts = {}) {
  r.validate();
  Rectangle cur = r;
  double scale = 1e-6;
  for (int attempt = 0;; ++attempt) {
    try {
      return {cur, rectangle_winding(f, cur, opts)};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::boundary_zero || attempt >= 5) throw;
    }
    cur.t_max = r.t_max + scale * (1.0 + std::abs(r.t_max));
    cur.t_min = r.t_min + scale * (1.0 + std::abs(r.t_min));
    cur.sigma_min = r.sigma_min - scale;
    cur.sigma_max = r.sigma_max + scale;
    scale *= 2.0;
  }
}

inline constexpr double count_bottom_edge = 1e-6;

// N_X(T) over [-U, 2] x [1e-6, T]; a zero at height T is included.
inline long count_up_to(const PartialSum& f, double T, double U, const TrackOptions& opts = {}) {
  const double x = static_cast<double>(f.x());
  require(T > count_bottom_edge, "T must exceed the bottom edge 1e-6");
  require(U >= x, "U must be at least X");
  require(U <= 2.0 * x, "U above 2X leaves the evaluable range");
  double eps = 1e-6 * (1.0 + T);
  Rectangle r{-U, 2.0, count_bottom_edge, T};
  for (int attempt = 0;; ++attempt) {
    try {
      return rectangle_winding(f, r, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::boundary_zero || attempt >= 5) throw;
    }
    r.t_max = T + eps;
    eps *= 2.0;
  }
}

// Sign changes in (sin(T log n))_{n=2..X}, exact zeros skipped.
inline long top_edge_sign_change_bound(long x, double T) {
  require(T > 0.0, "T must be positive");
  require(x >= 2, "X must be at least 2");
  long changes = 0;
  int last = 0;
  for (long n = 2; n <= x; ++n) {
    const double v = std::sin(T * std::log(static_cast<double>(n)));
    const int sign = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

}  // namespace pzeta
