#include "errors.hpp"

namespace semlab {

const char *error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::io: return "IoError";
    case ErrorCode::parse: return "ParseError";
    case ErrorCode::empty_forbidden_region: return "EmptyForbiddenRegion";
    case ErrorCode::full_forbidden_region: return "FullForbiddenRegion";
    case ErrorCode::degenerate_curve: return "DegenerateCurve";
    case ErrorCode::margin_violation: return "MarginViolation";
    case ErrorCode::non_positive_factor: return "NonPositiveFactor";
    case ErrorCode::resolution: return "ResolutionError";
    case ErrorCode::convergence_failure: return "ConvergenceFailure";
    case ErrorCode::solver_budget: return "SolverBudget";
    case ErrorCode::curve_leaves_forbidden: return "CurveLeavesForbidden";
    case ErrorCode::region_not_forbidden: return "RegionNotForbidden";
    case ErrorCode::zero_trace: return "ZeroTrace";
    case ErrorCode::strip_exceeded: return "StripExceeded";
    case ErrorCode::contour_zero: return "ContourZero";
    case ErrorCode::diagonal_singularity: return "DiagonalSingularity";
    case ErrorCode::non_positive_kernel: return "NonPositiveKernel";
    case ErrorCode::branch_violation: return "BranchViolation";
    case ErrorCode::taylor_divergence: return "TaylorDivergence";
    case ErrorCode::quadrature_divergence: return "QuadratureDivergence";
    case ErrorCode::geometry_violation: return "GeometryViolation";
    case ErrorCode::forbidden_violation: return "ForbiddenViolation";
    case ErrorCode::null_radial_value: return "NullRadialValue";
    case ErrorCode::insufficient_data: return "InsufficientData";
    case ErrorCode::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace semlab
