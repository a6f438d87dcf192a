#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pzeta {

enum class ErrorCode {
  precondition,
  overflow,
  at_zero,
  zero_on_path,
  boundary_zero,
  non_integral_winding,
  cluster_unresolved,
  no_convergence,
  nonconvergent_panel,
  empty_input,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::precondition: return "precondition";
    case ErrorCode::overflow: return "overflow";
    case ErrorCode::at_zero: return "at-zero";
    case ErrorCode::zero_on_path: return "zero-on-path";
    case ErrorCode::boundary_zero: return "boundary-zero";
    case ErrorCode::non_integral_winding: return "non-integral-winding";
    case ErrorCode::cluster_unresolved: return "cluster-unresolved";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::nonconvergent_panel: return "nonconvergent-panel";
    case ErrorCode::empty_input: return "empty-input";
  }
  return "unknown";
}

// Precondition failures are validation errors; everything else is numerical.
constexpr bool is_validation(ErrorCode code) {
  return code == ErrorCode::precondition || code == ErrorCode::empty_input;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string location = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        location_(std::move(location)) {}

  ErrorCode code() const noexcept { return code_; }
  // Where the failure happened (point, cell or panel), empty if not applicable.
  const std::string& location() const noexcept { return location_; }

 private:
  ErrorCode code_;
  std::string location_;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw Error(ErrorCode::precondition, what);
}

}  // namespace pzeta
