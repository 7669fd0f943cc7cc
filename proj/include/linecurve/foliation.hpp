#ifndef LINECURVE_FOLIATION_HPP
#define LINECURVE_FOLIATION_HPP

#include <span>
#include <vector>

#include "linecurve/surface.hpp"

// Principal line fields from the shear sigma, continuous angle tracking,
// winding numbers, umbilic localization and half-integer indices.

namespace linecurve::foliation {

struct UmbilicPoint {
  Vec3 direction;      // unit normal direction of the umbilic point
  Complex xi;          // chart coordinate (saturates near the excluded pole)
  double residual;     // |sigma| at the refined point
  double raw_winding;  // before snapping
  double index;        // snapped half-integer
};

/// Unit tangent along the more-curved principal direction (the lambda
/// eigendirection), defined up to sign. The chart angle is arg(conj(sigma))/2,
/// pushed through the differential of surface_point; the branch is frozen by
/// the oracle-calibration fixture in the test suite.
Vec3 principal_direction(const surface::SupportSurface& s, Complex xi);

struct AngleTrack {
  std::vector<double> angles;  // unwrapped arg(sigma) samples
  double winding;              // (total change of arg sigma) / (4 pi)
};

/// Unwraps arg(sigma) along a closed sampling loop (last sample connects to
/// the first) and reports the line-field winding.
AngleTrack track_line_field_angle(std::span<const Complex> sigmas);

struct UmbilicSearchOptions {
  int grid_n = 120;               // cells per axis, per chart
  double detect_rel = 0.1;        // |sigma|/psi local-minimum threshold
  double circle_radius = 1e-2;    // index-extraction circle in the chart
  int circle_samples = 256;
  double dedup_distance = 1e-4;
};

/// Census of the zeros of sigma over both hemispheres. Throws
/// DegenerateSurface for sphere-like inputs.
std::vector<UmbilicPoint> find_umbilics(
    const surface::SupportSurface& s, const UmbilicSearchOptions& opt = {});

struct PhiTrack {
  std::vector<double> phi;  // unwrapped angle from principal direction to tangent
  double raw_winding;       // (phi_end - phi_start) / pi before snapping
  int n;                    // snapped integer winding
  bool orientable;          // n even; cross-checked by double-cover continuation
};

/// Continuous tracking of the angle between a mod-pi line field and the
/// mod-2pi curve tangent along a closed curve. All spans have equal length
/// (the closing sample is not repeated).
PhiTrack phi_winding(std::span<const Vec3> tangents,
                     std::span<const Vec3> principals,
                     std::span<const Vec3> normals);

/// True when the line field admits a continuous orientation along the loop.
bool double_cover_orientable(std::span<const Vec3> principals);

struct DiscSplit {
  double index_minus;        // total umbilic index on the D^- side
  double index_plus;         // total umbilic index on the D^+ side
  std::vector<int> side;     // per census entry: -1 for D^-, +1 for D^+
};

/// Splits the umbilic census of s by the closed curve (chart samples), with
/// the D^- side labelled by the projected other-surface normal rule: the
/// outward conormal of D^- at the curve equals that projection.
DiscSplit disc_index_split(const surface::SupportSurface& s,
                           std::span<const Complex> curve_xis,
                           std::span<const Vec3> other_normals,
                           const std::vector<UmbilicPoint>& census);

}  // namespace linecurve::foliation

#endif
