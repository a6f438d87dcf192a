#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pzeta/compensated.hpp"
#include "pzeta/error.hpp"

namespace pzeta {

// s = sigma + i t
using ComplexPoint = std::complex<double>;

inline std::string format_point(ComplexPoint s) {
  std::ostringstream os;
  os.precision(17);
  os << s.real() << (s.imag() < 0 ? "-" : "+") << std::abs(s.imag()) << "i";
  return os.str();
}

struct Evaluation {
  std::complex<double> value;
  std::complex<double> derivative;
  // sum of term magnitudes, sum_{n<=X} n^-sigma; always >= 1
  double scale = 1.0;
};

// The partial sum F_X(s) = sum_{n<=X} n^-s together with its working
// tolerance. Copies share one immutable table of log n.
class PartialSum {
 public:
  static constexpr double default_eval_tol = 1e-12;

  explicit PartialSum(long x, double eval_tol = default_eval_tol)
      : x_(x), eval_tol_(eval_tol) {
    require(x >= 2, "X must be at least 2");
    require(eval_tol > 0.0 && eval_tol <= 1e-6, "eval_tol must lie in (0, 1e-6]");
    auto logs = std::make_shared<std::vector<double>>(static_cast<std::size_t>(x));
    for (long n = 1; n <= x; ++n) (*logs)[static_cast<std::size_t>(n - 1)] = std::log(static_cast<double>(n));
    logs_ = std::move(logs);
  }

  long x() const noexcept { return x_; }
  double eval_tol() const noexcept { return eval_tol_; }
  // log n for n = 1..X at index n-1
  std::span<const double> logs() const noexcept { return *logs_; }

  std::complex<double> eval(ComplexPoint s) const { return evaluate(s, false).value; }

  std::complex<double> eval_derivative(ComplexPoint s) const { return evaluate(s, true).derivative; }

  Evaluation evaluate(ComplexPoint s, bool with_derivative = true) const {
    check_range(s);
    const double sigma = s.real();
    const double t = s.imag();
    CompensatedComplexSum<double> value;
    CompensatedComplexSum<double> deriv;
    CompensatedSum<double> scale;
    for (double log_n : *logs_) {
      const double mag = std::exp(-sigma * log_n);
      const double phase = t * log_n;
      const std::complex<double> term(mag * std::cos(phase), -mag * std::sin(phase));
      value.add(term);
      scale.add(mag);
      if (with_derivative) deriv.add(-log_n * term);
    }
    Evaluation out{value.get(), deriv.get(), scale.get()};
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()) || !std::isfinite(out.scale) ||
        !std::isfinite(out.derivative.real()) || !std::isfinite(out.derivative.imag()))
      throw Error(ErrorCode::overflow, "F_X magnitude exceeds double range", format_point(s));
    return out;
  }

  // Signals at_zero when |F_X(s)| is below eval_tol relative to the term scale.
  double eval_log_abs(ComplexPoint s) const {
    const Evaluation e = evaluate(s, false);
    const double mag = std::abs(e.value);
    if (is_negligible(mag, e.scale))
      throw Error(ErrorCode::at_zero, "|F_X(s)| below eval_tol", format_point(s));
    return std::log(mag);
  }

  // sum_{n<=X} n^-sigma
  double magnitude_scale(double sigma) const {
    CompensatedSum<double> acc;
    for (double log_n : *logs_) acc.add(std::exp(-sigma * log_n));
    return acc.get();
  }

  bool is_negligible(double magnitude, double scale) const { return magnitude < eval_tol_ * scale; }

  // T * sum_{n<=X} n^{-2 sigma}: main term of the mean square on Re s = sigma.
  double mean_square_main_term(double sigma, double T) const {
    require(T > 0.0, "T must be positive");
    return T * magnitude_scale(2.0 * sigma);
  }

 private:
  void check_range(ComplexPoint s) const {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
      throw Error(ErrorCode::precondition, "point must be finite", format_point(s));
    if (s.real() < -2.0 * static_cast<double>(x_))
      throw Error(ErrorCode::overflow, "sigma below -2X", format_point(s));
  }

  long x_;
  double eval_tol_;
  std::shared_ptr<const std::vector<double>> logs_;
};

}  // namespace pzeta
