#ifndef LINECURVE_ERRORS_HPP
#define LINECURVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace linecurve {

enum class ErrorCode {
  PoleExcluded,
  ChartOverflow,
  NotOnCone,
  NonConvex,
  NotOrthonormal,
  DegenerateMetric,
  UmbilicPoint,
  SamplingTooCoarse,
  UmbilicOnCurve,
  AmbiguousSide,
  DegenerateSurface,
  NoIntersection,
  TangentialContact,
  CorrectorDiverged,
  OpenCurveBudgetExceeded,
  NoBranch,
  NotConstantAngle,
  SchemaError,
};

const char* error_code_name(ErrorCode code);

/// All library failures are reported through this exception type; the code
/// distinguishes the contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace linecurve

#endif
