#ifndef SEMLAB_ERRORS_HPP
#define SEMLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace semlab {

// Error categories mirrored one-to-one by the sl_status codes of the C API.
enum class ErrorCode {
  invalid_argument,
  io,
  parse,
  empty_forbidden_region,
  full_forbidden_region,
  degenerate_curve,
  margin_violation,
  non_positive_factor,
  resolution,
  convergence_failure,
  solver_budget,
  curve_leaves_forbidden,
  region_not_forbidden,
  zero_trace,
  strip_exceeded,
  contour_zero,
  diagonal_singularity,
  non_positive_kernel,
  branch_violation,
  taylor_divergence,
  quadrature_divergence,
  geometry_violation,
  forbidden_violation,
  null_radial_value,
  insufficient_data,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
  throw Error(code, what);
}

inline void require(bool ok, ErrorCode code, const std::string &what) {
  if (!ok) fail(code, what);
}

const char *error_code_name(ErrorCode code);

}  // namespace semlab

#endif
