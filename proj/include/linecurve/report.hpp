#ifndef LINECURVE_REPORT_HPP
#define LINECURVE_REPORT_HPP

#include <string>

#include "json.hpp"
#include "linecurve/surface.hpp"
#include "linecurve/types.hpp"

// Deterministic report assembly: strict surface-config parsing, tolerance
// plumbing with environment overrides, and byte-stable JSON/CSV emission
// (shortest round-trip decimals, LF line endings).

namespace linecurve::report {

inline constexpr const char kToolName[] = "linecurve";
inline constexpr const char kToolVersion[] = "0.1.0";

/// Pass/fail thresholds echoed into every report. Each field can be
/// overridden by LINECURVE_TOL_<FIELD-IN-UPPER-CASE>, e.g.
/// LINECURVE_TOL_DEFECT_FINAL=1e-5.
struct Tolerances {
  double constant_angle = 1e-7;
  double closure_gap = 1e-8;
  double defect_final = 1e-6;
  double sigma_kappa = 1e-6;
  double derivative_identity = 1e-5;
  double derivation_step = 1e-4;
  double angle_derivative = 1e-4;
  double torsion = 1e-8;
  double line_defect = 1e-6;
  double umbilic_residual = 1e-9;

  static Tolerances from_env();
};
nlohmann::ordered_json tolerances_json(const Tolerances& tol);

/// A parsed surface configuration: the canonicalized document, its content
/// digest, and the surface it defines (already convexity-checked).
struct LoadedConfig {
  nlohmann::ordered_json config;
  std::string digest;
  surface::SupportSurface surface;
};

/// Strict parse of the JSON text: unknown fields rejected, every number
/// finite. Throws SchemaError on malformed input, NonConvex if the surface
/// fails the convexity screen.
LoadedConfig parse_surface_config(const std::string& json_text);
LoadedConfig load_surface_config(const std::string& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Write-temp-rename so readers never observe a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

struct SurfaceInfoResult {
  nlohmann::ordered_json report;
  std::string census_csv;  // empty when the census is degenerate
  bool has_census = false;
};
SurfaceInfoResult surface_info(const LoadedConfig& cfg, int grid_n,
                               const Tolerances& tol);

struct IntersectOptions {
  bool have_seed = false;
  Complex xi1, xi2;   // chart guess used when have_seed
  double step = 1e-2;
};
struct IntersectResult {
  nlohmann::ordered_json report;
  std::string curve_csv;
};
/// Traces the intersection, runs the full check stack, and emits the curve
/// CSV plus the verification report. Throws NoIntersection or
/// TangentialContact with no output.
IntersectResult intersect(const LoadedConfig& cfg1, const LoadedConfig& cfg2,
                          const IntersectOptions& opt, const Tolerances& tol);

}  // namespace linecurve::report

#endif
