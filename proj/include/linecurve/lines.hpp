#ifndef LINECURVE_LINES_HPP
#define LINECURVE_LINES_HPP

#include "linecurve/types.hpp"

// Complex-coordinate model of the space of oriented lines of Euclidean
// 3-space. The direction sphere carries the stereographic coordinate xi
// (chart excludes the direction (0,0,-1)); an oriented line is the pair
// (xi, eta) with eta the perpendicular fiber coordinate.
//
// Convention set (kept mutually consistent, enforced by the convention
// audit in the test suite):
//   x1 + i x2 = 2 xi / (1 + xi xibar),  x3 = (1 - xi xibar) / (1 + xi xibar)
//   point on line:  z = 2 (eta - xi^2 etabar) / W^2 + 2 xi r / W
//                   t = -2 (xi etabar + xibar eta) / W^2 + (1 - xi xibar) r / W
//   incidence:      eta = (z - 2 t xi - zbar xi^2) / 2
// with W = 1 + xi xibar.

namespace linecurve::lines {

/// 1 + |xi|^2, the ubiquitous chart weight.
inline double chart_weight(Complex xi) { return 1.0 + std::norm(xi); }

/// Unit direction vector of the chart coordinate xi. xi = 0 maps to (0,0,1).
Vec3 xi_to_direction(Complex xi);

/// Chart inverse; throws PoleExcluded near (0,0,-1).
Complex direction_to_xi(const Vec3& v);

/// Derivative of xi_to_direction with respect to xi (complex 3-vector).
CVec3 direction_deriv_xi(Complex xi);

/// Angle in [0, pi] between the directions of xi1 and xi2.
double angle_between(Complex xi1, Complex xi2);

/// Direction at angle cfg.alpha from xi1, at position A1 on the cone circle:
/// xi2 = (xi1 + eps e^{iA1}) / (1 - xibar1 eps e^{iA1}).
Complex cone_direction(Complex xi1, const AngleConfig& cfg, double A1);

/// Inverse of cone_direction in the circle parameter. Requires xi2 to lie on
/// the alpha-cone of xi1 within tol_angle; returns A1 in [0, 2pi).
double cone_param_A1(Complex xi1, Complex xi2, const AngleConfig& cfg,
                     double tol_angle = 1e-8);

/// The angle A2 of the inverted parameterization
/// xi1 = (xi2 + eps e^{iA2}) / (1 - xibar2 eps e^{iA2}), in [0, 2pi).
double cone_param_A2(Complex xi1, const AngleConfig& cfg, double A1);

/// Point at parameter r along the line.
SurfacePoint point_on_line(const OrientedLine& line, double r);

/// The oriented line through p with direction coordinate xi.
OrientedLine line_through_point(const SurfacePoint& p, Complex xi);

/// Signed parameter r at which the line is closest to p (exact when p lies
/// on the line). Distance from p to the line is also returned.
struct LineFoot {
  double r;
  double distance;
};
LineFoot closest_param(const OrientedLine& line, const SurfacePoint& p);

/// Line meeting `base` at its parameter r1, at angle cfg.alpha, at cone
/// position A1. The image over a normal congruence is the hypersurface of
/// constant-angle lines.
OrientedLine cone_line(const OrientedLine& base, double r1,
                       const AngleConfig& cfg, double A1);

}  // namespace linecurve::lines

#endif
