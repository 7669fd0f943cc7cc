#include "linecurve/selftest.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "linecurve/errors.hpp"
#include "linecurve/hooks.hpp"
#include "linecurve/lines.hpp"
#include "linecurve/surface.hpp"

namespace linecurve::selftest {

namespace {

using surface::SupportSurface;

struct Audit {
  const char* name;
  // Returns the worst residual; the audit passes when it is <= threshold.
  std::function<double()> worst;
  double threshold;
};

// Translated sphere: the fiber-derivative convention of the section is the
// one that keeps a sphere shear-free regardless of its center, and the
// emitted point must lie on the emitted line.
double audit_section_convention() {
  const Vec3 center(0.0, 0.0, 2.0);
  const double radius = 1.0;
  auto s = SupportSurface::sphere(center, radius);
  double worst = 0.0;
  for (const Vec3& dir : surface::fibonacci_directions(300)) {
    Complex xi;
    try {
      xi = lines::direction_to_xi(dir);
    } catch (const Error&) {
      continue;  // chart pole
    }
    auto cd = surface::curvature_data(s, xi);
    worst = std::max(worst, std::abs(cd.sigma));
    // Incidence against the closed-form sphere point, independent of the
    // section machinery under audit.
    OrientedLine line{xi, cd.eta};
    Vec3 exact = center + radius * dir;
    auto foot = lines::closest_param(line, SurfacePoint::from_vec(exact));
    worst = std::max(worst, foot.distance);
  }
  return worst;
}

// Cone-circle laws: the dressed direction sits at the configured angle, the
// inverted parameterization returns to the start, and the dressed line still
// meets the base point.
double audit_cone_laws() {
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.1, 3.0);
  std::uniform_real_distribution<double> circle(0.0, 2.0 * M_PI);
  auto s = SupportSurface::sphere({0.1, -0.2, 0.3}, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Complex xi1(coord(rng), coord(rng));
    auto cfg = AngleConfig::from_alpha(angle(rng));
    double a1 = circle(rng);
    Complex xi2 = lines::cone_direction(xi1, cfg, a1);
    worst = std::max(worst,
                     std::abs(lines::angle_between(xi1, xi2) - cfg.alpha));
    double a2 = lines::cone_param_A2(xi1, cfg, a1);
    Complex back = lines::cone_direction(xi2, cfg, a2);
    worst = std::max(worst, std::abs(back - xi1));

    // Dressed line through the support point of the base congruence.
    auto jet = surface::support_jet(s, xi1);
    OrientedLine base{xi1, surface::section_eta(s, xi1)};
    OrientedLine dressed = lines::cone_line(base, jet.r, cfg, a1);
    auto foot = lines::closest_param(dressed, surface::surface_point(s, xi1));
    worst = std::max(worst, foot.distance);
  }
  return worst;
}

// Curvature invariants against the eigen-decomposed shape operator.
double audit_oracle_agreement() {
  auto s = SupportSurface::ellipsoid({1.0, 1.2, 1.5});
  double worst = 0.0;
  for (const Vec3& dir : surface::fibonacci_directions(300)) {
    Complex xi;
    try {
      xi = lines::direction_to_xi(dir);
    } catch (const Error&) {
      continue;
    }
    auto cd = surface::curvature_data(s, xi);
    auto oracle = surface::shape_operator_oracle(s, xi);
    worst = std::max(
        worst, std::abs(cd.psi + std::abs(cd.sigma) - oracle.radii[0]) /
                   oracle.radii[0]);
    worst = std::max(
        worst, std::abs(cd.psi - std::abs(cd.sigma) - oracle.radii[1]) /
                   oracle.radii[1]);
  }
  return worst;
}

// The section of a support surface satisfies the closedness identity; a
// deliberately non-closed fiber map must show the documented 0.5 defect.
double audit_lagrangian() {
  double worst = 0.0;
  auto probe = [&](const SupportSurface& s) {
    for (const Vec3& dir : surface::fibonacci_directions(120)) {
      Complex xi;
      try {
        xi = lines::direction_to_xi(dir);
      } catch (const Error&) {
        continue;
      }
      worst = std::max(worst, surface::lagrangian_residual(s, xi));
    }
  };
  probe(SupportSurface::sphere({0.3, -0.2, 0.5}, 1.0));
  probe(SupportSurface::ellipsoid({1.0, 1.2, 1.5}));
  probe(SupportSurface::harmonic(1.0, {{3, 1, 0.02}, {5, -2, 0.01}}));
  double control = surface::lagrangian_defect(
      [](Complex) { return Complex(0.0, 1.0); }, Complex(1.0, 0.0));
  worst = std::max(worst, std::abs(control - 0.5));
  return worst;
}

}  // namespace

Result run() {
  detail::load_hooks_from_env();
  const Audit audits[] = {
      {"section-convention audit (translated sphere)",
       audit_section_convention, 1e-9},
      {"cone-circle laws (angle, inversion, incidence)", audit_cone_laws,
       1e-10},
      {"shape-operator oracle agreement", audit_oracle_agreement, 1e-6},
      {"closedness identity + negative control", audit_lagrangian, 1e-8},
  };
  Result out;
  out.ok = true;
  std::ostringstream table;
  for (const Audit& audit : audits) {
    double worst;
    bool pass;
    try {
      worst = audit.worst();
      pass = worst <= audit.threshold;
    } catch (const std::exception&) {
      worst = std::nan("");
      pass = false;
    }
    out.ok = out.ok && pass;
    table << (pass ? "PASS " : "FAIL ") << audit.name << " (worst residual "
          << worst << ", threshold " << audit.threshold << ")\n";
  }
  out.table = table.str();
  return out;
}

}  // namespace linecurve::selftest
