#ifndef LINECURVE_TRACE_HPP
#define LINECURVE_TRACE_HPP

#include <span>
#include <vector>

#include "linecurve/surface.hpp"

// Numerical continuation of the intersection curve of two convex surfaces,
// carried out on the point-equality system P1(n1) = P2(n2) over pairs of unit
// normals, with per-sample geometric enrichment: the crossing angle, the cone
// parameters A1 and A2, the unit-parameter branch angle beta, the angles
// phi to the principal foliations, and the geodesic torsions.

namespace linecurve::trace {

struct Seed {
  Vec3 n1, n2;       // unit normals of the common point on each surface
  Complex xi1, xi2;  // chart coordinates of the normals
  Vec3 point;
};

struct SeedOptions {
  int scan_n = 4000;           // direction-lattice resolution of the scan
  int polish_starts = 8;       // best scan cells polished before giving up
  double residual_tol = 1e-10;
  // |n1 x n2| below this is tangential contact; matches the lateral
  // resolution sqrt(residual_tol * curvature radius) of the polish
  double parallel_tol = 1e-4;
};

/// Coarse scan plus damped least-squares polish. Throws NoIntersection or
/// TangentialContact.
Seed find_seed(const surface::SupportSurface& s1,
               const surface::SupportSurface& s2, const SeedOptions& opt = {});

/// Polish a user-provided chart guess to a seed; same error contract.
Seed polish_seed(const surface::SupportSurface& s1,
                 const surface::SupportSurface& s2, Complex xi1, Complex xi2,
                 const SeedOptions& opt = {});

struct IntersectionSample {
  double u = 0.0;  // trace parameter (accumulated continuation steps)
  double s = 0.0;  // arclength
  Vec3 point = Vec3::Zero();
  Vec3 n1 = Vec3::Zero(), n2 = Vec3::Zero();  // unit surface normals
  Complex xi1, xi2;
  Vec3 tangent = Vec3::Zero();  // unit curve tangent, from the continuation
  double alpha = 0.0;
  double A1 = 0.0, A2 = 0.0;  // unwrapped cone parameters
  double beta = 0.0;          // filled by beta_profile
  double phi1 = 0.0, phi2 = 0.0;      // filled by phi_profiles
  double tau_g1 = 0.0, tau_g2 = 0.0;  // filled by torsion_profiles
  Complex sigma1, sigma2;
  double psi1 = 0.0, psi2 = 0.0, kappa1 = 0.0, kappa2 = 0.0;
};

struct TracedIntersection {
  std::vector<IntersectionSample> samples;  // closing sample not repeated
  bool closed = false;
  double closure_gap = 0.0;
  double closing_u = 0.0;  // trace-parameter gap from the last sample to the seed
  double total_length = 0.0;
  bool umbilic1 = false, umbilic2 = false;  // umbilic point met along the curve
};

struct TraceOptions {
  double step = 1e-2;          // chart-scale continuation step (also the cap)
  double min_step = 1e-6;
  double corrector_tol = 1e-12;
  int max_corrector_iters = 25;
  int max_steps = 100000;      // budget before OpenCurveBudgetExceeded
  int direction = +1;          // +1 or -1: initial orientation of the tangent
};

TracedIntersection trace_curve(const surface::SupportSurface& s1,
                               const surface::SupportSurface& s2,
                               const Seed& seed, const TraceOptions& opt = {});

struct AngleProfile {
  std::vector<double> alpha;
  double max_deviation = 0.0;
  bool constant_angle = false;  // deviation at or below 1e-7
};
AngleProfile angle_profile(const TracedIntersection& curve);

/// Branch angle of the unit parameterization; fills sample.beta. Requires a
/// constant-angle curve without umbilic points of the first surface.
std::vector<double> beta_profile(TracedIntersection& curve);

struct PhiProfiles {
  bool valid1 = false, valid2 = false;
  std::vector<double> phi1, phi2;  // unwrapped; empty when invalid
  int n = 0, m = 0;                // windings, meaningful for closed curves
};
/// Angle from the more-curved principal direction to the curve tangent, per
/// surface; fills sample.phi1/phi2 and reports windings for closed curves.
PhiProfiles phi_profiles(TracedIntersection& curve,
                         const surface::SupportSurface& s1,
                         const surface::SupportSurface& s2);

struct TorsionProfiles {
  std::vector<double> tau1, tau2;        // Darboux-frame values (to samples)
  std::vector<double> euler1, euler2;    // Euler-form values where defined
  double cross_gap1 = 0.0, cross_gap2 = 0.0;  // max |Darboux - Euler|
};
TorsionProfiles torsion_profiles(TracedIntersection& curve,
                                 const surface::SupportSurface& s1,
                                 const surface::SupportSurface& s2);

/// Derivative weights for arbitrarily spaced nodes (Fornberg's recursion):
/// returns w such that f'(z) ~ sum w[k] f(x[k]).
std::vector<double> fd_weights(double z, std::span<const double> x);

/// Cyclic five-point first derivative of values sampled at arclengths s on a
/// closed loop of the given total length (or one-sided at open-curve ends).
std::vector<double> loop_derivative(std::span<const double> values,
                                    std::span<const double> s, bool closed,
                                    double total_length);

}  // namespace linecurve::trace

#endif
