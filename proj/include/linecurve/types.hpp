#ifndef LINECURVE_TYPES_HPP
#define LINECURVE_TYPES_HPP

#include <Eigen/Dense>
#include <complex>

namespace linecurve {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using Mat3 = Eigen::Matrix3d;

constexpr double kChartLimit = 1e6;

/// Oriented line in the (xi, eta) chart: xi is the stereographic direction
/// coordinate, eta the perpendicular fiber coordinate.
struct OrientedLine {
  Complex xi;
  Complex eta;
};

/// Point of Euclidean 3-space written as (z = x1 + i x2, t = x3).
struct SurfacePoint {
  Complex z;
  double t;

  Vec3 vec() const { return Vec3(z.real(), z.imag(), t); }
  static SurfacePoint from_vec(const Vec3& v) {
    return SurfacePoint{Complex(v.x(), v.y()), v.z()};
  }
};

/// Intersection angle alpha in (0, pi) together with epsilon = tan(alpha/2).
struct AngleConfig {
  double alpha;
  double epsilon;

  static AngleConfig from_alpha(double alpha);
  static AngleConfig from_epsilon(double epsilon);
};

}  // namespace linecurve

#endif
