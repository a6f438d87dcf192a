#pragma once

#include <cmath>
#include <complex>

namespace pzeta {

// Neumaier's variant of Kahan summation. Order of add() calls fixes the
// result bit for bit, so callers keep a deterministic order.
template <typename Real>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real init) : sum_(init) {}

  void add(Real value) {
    Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value))
      c_ += (sum_ - t) + value;
    else
      c_ += (value - t) + sum_;
    sum_ = t;
  }

  CompensatedSum& operator+=(Real value) {
    add(value);
    return *this;
  }

  Real get() const { return sum_ + c_; }

 private:
  Real sum_ = 0;
  Real c_ = 0;
};

template <typename Real>
class CompensatedComplexSum {
 public:
  void add(const std::complex<Real>& z) {
    re_.add(z.real());
    im_.add(z.imag());
  }

  CompensatedComplexSum& operator+=(const std::complex<Real>& z) {
    add(z);
    return *this;
  }

  std::complex<Real> get() const { return {re_.get(), im_.get()}; }

 private:
  CompensatedSum<Real> re_;
  CompensatedSum<Real> im_;
};

}  // namespace pzeta
