#ifndef LINECURVE_SURFACE_HPP
#define LINECURVE_SURFACE_HPP

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "linecurve/types.hpp"

// Closed convex surfaces represented by their support function on the
// direction sphere, the Lagrangian section eta(xi) of the normal congruence,
// and the curvature data (sigma, psi, kappa) it induces.

namespace linecurve::surface {

struct SphereSpec {
  Vec3 center = Vec3::Zero();
  double radius = 1.0;
};

struct EllipsoidSpec {
  Vec3 semiaxes = Vec3::Ones();
  Mat3 rotation = Mat3::Identity();
  Vec3 center = Vec3::Zero();
};

struct HarmonicTerm {
  int l = 0;
  int m = 0;
  double coeff = 0.0;
};

// base_radius plus a combination of real spherical harmonics (degree <= 6).
struct HarmonicSpec {
  double base_radius = 1.0;
  std::vector<HarmonicTerm> terms;
};

struct AnalyticEngine {};

// Central differences on the chart plane, step step_scale * (1 + |xi|^2),
// one level of Richardson extrapolation.
struct FiniteDifferenceEngine {
  double step_scale = 1e-4;
};

using SurfaceSpec = std::variant<SphereSpec, EllipsoidSpec, HarmonicSpec>;
using DerivativeEngine = std::variant<AnalyticEngine, FiniteDifferenceEngine>;

/// Support value and chart derivatives at a direction coordinate.
struct SupportJet {
  double r = 0.0;
  Complex r_xi;
  Complex r_xibar;
  Complex r_xixi;
  double r_xixibar = 0.0;
  Complex r_xibarxibar;
};

struct CurvatureData {
  double r = 0.0;
  Complex eta;
  Complex sigma;  // shear; zero exactly at umbilic points
  double psi = 0.0;
  double kappa = 0.0;  // psi^2 - |sigma|^2
};

struct PrincipalData {
  double R_big = 0.0;
  double R_small = 0.0;
  double lambda = 0.0;  // curvature of the smaller radius (more curved direction)
  double mu = 0.0;
};

class SupportSurface {
 public:
  SupportSurface(SurfaceSpec spec, DerivativeEngine engine = AnalyticEngine{});

  static SupportSurface sphere(const Vec3& center, double radius,
                               DerivativeEngine engine = AnalyticEngine{});
  static SupportSurface ellipsoid(const Vec3& semiaxes,
                                  const Mat3& rotation = Mat3::Identity(),
                                  const Vec3& center = Vec3::Zero(),
                                  DerivativeEngine engine = AnalyticEngine{});
  static SupportSurface harmonic(double base_radius,
                                 std::vector<HarmonicTerm> terms,
                                 DerivativeEngine engine = AnalyticEngine{});

  const SurfaceSpec& spec() const { return spec_; }
  const DerivativeEngine& engine() const { return engine_; }
  const Mat3& frame() const { return frame_; }
  bool is_round_sphere() const;

  /// Ambient support value h(n) for |n| = 1.
  double value(const Vec3& n) const;
  /// Value, gradient and Hessian of the smooth ambient extension of h.
  void ambient_jet(const Vec3& n, double& h, Vec3& g, Mat3& H) const;

 private:
  SurfaceSpec spec_;
  DerivativeEngine engine_;
  Mat3 frame_ = Mat3::Identity();  // applied rotation: h(n) = h0(frame^T n)
  struct HarmonicJets;
  std::shared_ptr<const HarmonicJets> harmonic_jets_;

  friend SupportSurface rotate_frame(const SupportSurface&, const Mat3&);
};

SupportJet support_jet(const SupportSurface& s, Complex xi);

/// Fiber coordinate of the Lagrangian section of the normal congruence.
Complex section_eta(const SupportSurface& s, Complex xi);

CurvatureData curvature_data(const SupportSurface& s, Complex xi);

PrincipalData principal_data(const CurvatureData& cd);

/// Point of the surface whose outward normal has direction coordinate xi.
SurfacePoint surface_point(const SupportSurface& s, Complex xi);

/// Defect of the Lagrangian (closedness) identity for an arbitrary fiber map,
/// evaluated by central differences with the given chart step scale.
double lagrangian_defect(const std::function<Complex(Complex)>& eta_fn,
                         Complex xi, double step_scale = 1e-4);

double lagrangian_residual(const SupportSurface& s, Complex xi);

/// Radii of curvature and principal directions from finite-difference
/// fundamental forms of surface_point; independent of sigma and psi.
struct ShapeOracleResult {
  double radii[2];  // sorted descending
  Vec3 directions[2];
};
ShapeOracleResult shape_operator_oracle(const SupportSurface& s, Complex xi);

struct ConvexityResult {
  bool convex = false;
  double margin = 0.0;       // min over the grid of (psi - |sigma|)
  double min_support = 0.0;  // min over the grid of r
};
ConvexityResult convexity_check(const SupportSurface& s, int grid_n);

/// The surface rigidly rotated by Q about the origin.
SupportSurface rotate_frame(const SupportSurface& s, const Mat3& Q);

/// Near-uniform unit directions (spherical Fibonacci lattice).
std::vector<Vec3> fibonacci_directions(int n);

/// First chart derivatives of surface_point with respect to (Re xi, Im xi),
/// by central differences.
void point_chart_derivs(const SupportSurface& s, Complex xi, Vec3& p, Vec3& pa,
                        Vec3& pb);

}  // namespace linecurve::surface

#endif
