#pragma once

#include <stdexcept>
#include <string>

namespace bicomm {

enum class ErrorCode {
  invalid_argument = 1,
  dimension_mismatch,
  domain_violation,
  not_converged,
  io,
  config,
};

/// Base exception for every failure raised by the core library. The C API
/// maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by iterative solvers that exhaust their iteration budget. Carries
/// the best estimate reached and the last gap between successive iterates.
class NotConverged : public Error {
 public:
  NotConverged(const std::string& what, double estimate, double gap)
      : Error(ErrorCode::not_converged, what), estimate_(estimate), gap_(gap) {}

  double estimate() const noexcept { return estimate_; }
  double gap() const noexcept { return gap_; }

 private:
  double estimate_;
  double gap_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bicomm
