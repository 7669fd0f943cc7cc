#include "linecurve/lines.hpp"

#include <cmath>

#include "linecurve/errors.hpp"
#include "linecurve/hooks.hpp"

namespace linecurve::lines {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_2pi(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0) w += kTwoPi;
  return w;
}
}  // namespace

Vec3 xi_to_direction(Complex xi) {
  const double w = chart_weight(xi);
  return Vec3(2.0 * xi.real() / w, 2.0 * xi.imag() / w,
              (1.0 - std::norm(xi)) / w);
}

Complex direction_to_xi(const Vec3& v) {
  const double denom = 1.0 + v.z();
  // |v - (0,0,-1)|^2 = 2 (1 + z) for unit v.
  if (denom <= 0.5e-16) {
    fail(ErrorCode::PoleExcluded,
         "direction_to_xi: direction at the excluded pole (0,0,-1)");
  }
  return Complex(v.x() / denom, v.y() / denom);
}

CVec3 direction_deriv_xi(Complex xi) {
  const double w = chart_weight(xi);
  const Complex xb = std::conj(xi);
  const Complex i(0.0, 1.0);
  const double s = 1.0 / (w * w);
  return CVec3(s * (1.0 - xb * xb), s * (-i) * (1.0 + xb * xb),
               s * (-2.0 * xb));
}

double angle_between(Complex xi1, Complex xi2) {
  // tan(theta/2) = |xi2 - xi1| / |1 + conj(xi1) xi2|
  return 2.0 * std::atan2(std::abs(xi2 - xi1),
                          std::abs(1.0 + std::conj(xi1) * xi2));
}

}  // namespace linecurve::lines

namespace linecurve {

AngleConfig AngleConfig::from_alpha(double alpha) {
  return AngleConfig{alpha, std::tan(alpha / 2.0)};
}

AngleConfig AngleConfig::from_epsilon(double epsilon) {
  return AngleConfig{2.0 * std::atan(epsilon), epsilon};
}

}  // namespace linecurve

namespace linecurve::lines {

Complex cone_direction(Complex xi1, const AngleConfig& cfg, double A1) {
  const Complex u = cfg.epsilon * std::polar(1.0, A1);
  const Complex denom = 1.0 - std::conj(xi1) * u;
  if (std::abs(denom) <= 1e-12) {
    fail(ErrorCode::ChartOverflow,
         "cone_direction: result at the excluded pole; rotate frame");
  }
  return (xi1 + u) / denom;
}

double cone_param_A1(Complex xi1, Complex xi2, const AngleConfig& cfg,
                     double tol_angle) {
  const Complex w =
      (xi2 - xi1) / (cfg.epsilon * (1.0 + std::conj(xi1) * xi2));
  if (std::abs(std::abs(w) - 1.0) > tol_angle) {
    fail(ErrorCode::NotOnCone,
         "cone_param_A1: xi2 does not lie on the alpha-cone of xi1");
  }
  return wrap_2pi(std::arg(w));
}

double cone_param_A2(Complex xi1, const AngleConfig& cfg, double A1) {
  const Complex e = std::polar(1.0, A1);
  const Complex denom = 1.0 / e - cfg.epsilon * std::conj(xi1);
  if (std::abs(denom) <= 1e-12) {
    fail(ErrorCode::ChartOverflow,
         "cone_param_A2: degenerate inversion; rotate frame");
  }
  const Complex w = -(e - cfg.epsilon * xi1) / denom / e;
  return wrap_2pi(std::arg(w));
}

SurfacePoint point_on_line(const OrientedLine& line, double r) {
  const Complex xi = line.xi;
  const Complex eta = line.eta;
  const double w = chart_weight(xi);
  const double w2 = w * w;
  const Complex z =
      2.0 * (eta - xi * xi * std::conj(eta)) / w2 + 2.0 * xi * r / w;
  const double t = (-2.0 * (xi * std::conj(eta) + std::conj(xi) * eta) / w2 +
                    Complex((1.0 - std::norm(xi)) * r / w))
                       .real();
  return SurfacePoint{z, t};
}

OrientedLine line_through_point(const SurfacePoint& p, Complex xi) {
  const Complex eta =
      0.5 * (p.z - 2.0 * p.t * xi - std::conj(p.z) * xi * xi);
  return OrientedLine{xi, eta};
}

LineFoot closest_param(const OrientedLine& line, const SurfacePoint& p) {
  const Vec3 dir = xi_to_direction(line.xi);
  const Vec3 base = point_on_line(line, 0.0).vec();
  const double r = dir.dot(p.vec() - base);
  const double dist = (base + r * dir - p.vec()).norm();
  return LineFoot{r, dist};
}

OrientedLine cone_line(const OrientedLine& base, double r1,
                       const AngleConfig& cfg, double A1) {
  const Complex e = std::polar(1.0, A1);
  const Complex denom = 1.0 - std::conj(base.xi) * cfg.epsilon * e;
  if (std::abs(denom) <= 1e-12) {
    fail(ErrorCode::ChartOverflow,
         "cone_line: result at the excluded pole; rotate frame");
  }
  const double r_sign = detail::hooks().flip_cone_line_sign ? -1.0 : 1.0;
  const Complex xi = (base.xi + cfg.epsilon * e) / denom;
  const Complex eta =
      (base.eta - cfg.epsilon * cfg.epsilon * e * e * std::conj(base.eta) -
       r_sign * cfg.epsilon * chart_weight(base.xi) * e * r1) /
      (denom * denom);
  return OrientedLine{xi, eta};
}

}  // namespace linecurve::lines
