#include "linecurve/errors.hpp"

#include <cstdlib>
#include <cstring>

#include "linecurve/hooks.hpp"

namespace linecurve {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::PoleExcluded: return "PoleExcluded";
    case ErrorCode::ChartOverflow: return "ChartOverflow";
    case ErrorCode::NotOnCone: return "NotOnCone";
    case ErrorCode::NonConvex: return "NonConvex";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::UmbilicPoint: return "UmbilicPoint";
    case ErrorCode::SamplingTooCoarse: return "SamplingTooCoarse";
    case ErrorCode::UmbilicOnCurve: return "UmbilicOnCurve";
    case ErrorCode::AmbiguousSide: return "AmbiguousSide";
    case ErrorCode::DegenerateSurface: return "DegenerateSurface";
    case ErrorCode::NoIntersection: return "NoIntersection";
    case ErrorCode::TangentialContact: return "TangentialContact";
    case ErrorCode::CorrectorDiverged: return "CorrectorDiverged";
    case ErrorCode::OpenCurveBudgetExceeded: return "OpenCurveBudgetExceeded";
    case ErrorCode::NoBranch: return "NoBranch";
    case ErrorCode::NotConstantAngle: return "NotConstantAngle";
    case ErrorCode::SchemaError: return "SchemaError";
  }
  return "Unknown";
}

}  // namespace linecurve

namespace linecurve::detail {

Hooks& hooks() {
  static Hooks h;
  return h;
}

void load_hooks_from_env() {
  Hooks& h = hooks();
  h.flip_section_convention = false;
  h.flip_cone_line_sign = false;
  const char* flip = std::getenv("LINECURVE_DEBUG_FLIP");
  if (flip == nullptr) return;
  if (std::strcmp(flip, "pot1") == 0) h.flip_section_convention = true;
  if (std::strcmp(flip, "cone_sign") == 0) h.flip_cone_line_sign = true;
}

}  // namespace linecurve::detail
