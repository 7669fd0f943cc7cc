#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"

#include "linecurve/errors.hpp"
#include "linecurve/foliation.hpp"
#include "linecurve/lines.hpp"
#include "linecurve/surface.hpp"

using namespace linecurve;
using surface::SupportSurface;
namespace fol = linecurve::foliation;

namespace {

constexpr double kPi = std::numbers::pi;

// Samples of a chart-circle curve on a surface: positions as directions,
// 3d tangents, surface normals, and the more-curved principal field.
struct CurveSamples {
  std::vector<Complex> xis;
  std::vector<Vec3> tangents;
  std::vector<Vec3> normals;
  std::vector<Vec3> principals;
};

CurveSamples sample_chart_circle(const SupportSurface& s, Complex center,
                                 double radius, int n,
                                 bool with_principals = true) {
  CurveSamples out;
  for (int k = 0; k < n; ++k) {
    double u = 2.0 * kPi * k / n;
    Complex xi = center + radius * std::polar(1.0, u);
    Complex dxi = radius * Complex(0, 1) * std::polar(1.0, u);
    Vec3 p, pa, pb;
    surface::point_chart_derivs(s, xi, p, pa, pb);
    Vec3 t = dxi.real() * pa + dxi.imag() * pb;
    out.xis.push_back(xi);
    out.tangents.push_back(t.normalized());
    out.normals.push_back(lines::xi_to_direction(xi));
    if (with_principals)
      out.principals.push_back(fol::principal_direction(s, xi));
  }
  return out;
}

}  // namespace

TEST_CASE("principal direction matches the shape operator oracle") {
  auto s = SupportSurface::ellipsoid({1.0, 1.3, 1.7});
  std::mt19937 rng(51402);
  std::uniform_real_distribution<double> box(-1.0, 1.0);
  int tested = 0;
  for (int k = 0; k < 300; ++k) {
    Complex xi(box(rng), box(rng));
    auto oracle = surface::shape_operator_oracle(s, xi);
    Vec3 e;
    try {
      e = fol::principal_direction(s, xi);
    } catch (const Error&) {
      continue;  // sampled an umbilic neighborhood
    }
    ++tested;
    // directions[1] belongs to the smaller radius, the more curved family
    CHECK(std::abs(e.dot(oracle.directions[1])) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(e.dot(oracle.directions[0])) < 1e-5);
    CHECK(std::abs(e.dot(lines::xi_to_direction(xi))) < 1e-7);
  }
  CHECK(tested > 250);
}

TEST_CASE("principal direction rejects umbilic points") {
  auto s = SupportSurface::ellipsoid({1.0, 1.0, 1.4});
  CHECK_THROWS_AS((void)fol::principal_direction(s, Complex(0, 0)), Error);
  try {
    (void)fol::principal_direction(s, Complex(0, 0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UmbilicPoint);
  }
}

TEST_CASE("angle tracking winds with arg(sigma)") {
  auto loop = [](double rate, int n) {
    std::vector<Complex> sig(n);
    for (int k = 0; k < n; ++k)
      sig[k] = std::polar(1.0, rate * 2.0 * kPi * k / n);
    return sig;
  };
  CHECK(fol::track_line_field_angle(loop(0.0, 32)).winding ==
        doctest::Approx(0.0));
  CHECK(fol::track_line_field_angle(loop(1.0, 32)).winding ==
        doctest::Approx(0.5));
  CHECK(fol::track_line_field_angle(loop(2.0, 64)).winding ==
        doctest::Approx(1.0));
  CHECK(fol::track_line_field_angle(loop(-1.0, 32)).winding ==
        doctest::Approx(-0.5));

  // a step of pi/2 or more in arg(sigma) is rejected, not silently wrapped
  CHECK_THROWS_AS((void)fol::track_line_field_angle(loop(8.0, 16)), Error);
  std::vector<Complex> with_zero = loop(1.0, 32);
  with_zero[5] = Complex(0, 0);
  CHECK_THROWS_AS((void)fol::track_line_field_angle(with_zero), Error);
}

TEST_CASE("spheroid census: two polar umbilic points of index one") {
  auto s = SupportSurface::ellipsoid({1.0, 1.0, 1.4});
  auto census = fol::find_umbilics(s);
  REQUIRE(census.size() == 2);
  CHECK((census[0].direction - Vec3(0, 0, 1)).norm() < 1e-5);
  CHECK((census[1].direction - Vec3(0, 0, -1)).norm() < 1e-5);
  double total = 0.0;
  for (auto& u : census) {
    CHECK(u.index == doctest::Approx(1.0));
    CHECK(std::abs(u.raw_winding - u.index) < 1e-3);
    CHECK(u.residual < 1e-9);
    total += u.index;
  }
  CHECK(total == doctest::Approx(2.0));
  // the south point sits at the chart pole; its reported coordinate blows up
  CHECK(std::abs(census[1].xi) > 1e5);
  CHECK(std::abs(census[0].xi) < 1e-5);
}

TEST_CASE("triaxial census: four half-index umbilic points in a symmetry plane") {
  auto s = SupportSurface::ellipsoid({1.0, 1.2, 1.5});
  auto census = fol::find_umbilics(s);
  REQUIRE(census.size() == 4);
  double total = 0.0;
  for (auto& u : census) {
    CHECK(std::abs(u.direction.y()) < 1e-6);  // middle-axis plane
    CHECK(u.index == doctest::Approx(0.5));
    CHECK(std::abs(u.raw_winding - u.index) < 1e-3);
    total += u.index;
  }
  CHECK(total == doctest::Approx(2.0));
  // closed form for the umbilic normal of an axis-aligned ellipsoid: the
  // point is (a sqrt((a^2-b^2)/(a^2-c^2)), 0, c sqrt((b^2-c^2)/(a^2-c^2)))
  // and the normal there is parallel to (x/a^2, 0, z/c^2)
  double a = 1.0, b = 1.2, c = 1.5;
  double px = a * std::sqrt((a * a - b * b) / (a * a - c * c));
  double pz = c * std::sqrt((b * b - c * c) / (a * a - c * c));
  Vec3 normal = Vec3(px / (a * a), 0, pz / (c * c)).normalized();
  CHECK(std::abs(std::abs(census[0].direction.z()) - normal.z()) < 1e-6);
  CHECK(std::abs(std::abs(census[0].direction.x()) - normal.x()) < 1e-6);
}

TEST_CASE("census totals two for a generic bumpy surface") {
  auto s = SupportSurface::harmonic(
      1.0, {{3, 1, 0.02}, {2, -1, 0.03}, {4, 2, 0.015}});
  auto census = fol::find_umbilics(s);
  CHECK(census.size() >= 2);
  double total = 0.0;
  for (auto& u : census) total += u.index;
  CHECK(total == doctest::Approx(2.0));
}

TEST_CASE("sphere input is rejected as degenerate") {
  auto s = SupportSurface::sphere({0.2, -0.1, 0.3}, 1.1);
  try {
    (void)fol::find_umbilics(s);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateSurface);
  }
}

TEST_CASE("tangent winding against synthetic line fields") {
  const int n = 64;
  std::vector<Vec3> tangents(n), normals(n), principals(n);
  for (int k = 0; k < n; ++k) {
    double u = 2.0 * kPi * k / n;
    normals[k] = Vec3(0, 0, 1);
    tangents[k] = Vec3(-std::sin(u), std::cos(u), 0);
  }

  // constant field: the tangent turns once, the angle gains 2 pi
  for (int k = 0; k < n; ++k) principals[k] = Vec3(1, 0, 0);
  auto t1 = fol::phi_winding(tangents, principals, normals);
  CHECK(t1.n == 2);
  CHECK(t1.orientable);

  // half-rate field: the angle gains pi and the field comes back reversed
  for (int k = 0; k < n; ++k) {
    double u = 2.0 * kPi * k / n;
    principals[k] = Vec3(std::cos(u / 2), std::sin(u / 2), 0);
  }
  auto t2 = fol::phi_winding(tangents, principals, normals);
  CHECK(t2.n == 1);
  CHECK_FALSE(t2.orientable);
  CHECK_FALSE(fol::double_cover_orientable(principals));

  // field along the tangent: the angle never moves
  auto t3 = fol::phi_winding(tangents, tangents, normals);
  CHECK(t3.n == 0);
  CHECK(t3.orientable);
}

TEST_CASE("winding of the principal field along spheroid circles") {
  auto s = SupportSurface::ellipsoid({1.0, 1.0, 1.4});

  // a parallel encloses one index-one point; the angle winding vanishes
  auto parallel = sample_chart_circle(s, Complex(0, 0), 1.0, 400);
  // the equator is a curvature line of the more-curved family here, so the
  // angle stays at zero mod pi along it
  auto tp = fol::phi_winding(parallel.tangents, parallel.principals,
                             parallel.normals);
  CHECK(tp.n == 0);
  CHECK(tp.orientable);
  for (double phi : tp.phi)
    CHECK(std::abs(std::remainder(phi, kPi)) < 1e-6);

  // a small loop enclosing no umbilic point winds by two
  auto loop = sample_chart_circle(s, Complex(1.2, 0), 0.3, 400);
  auto tl = fol::phi_winding(loop.tangents, loop.principals, loop.normals);
  CHECK(std::abs(tl.n) == 2);
  CHECK(tl.orientable);
}

TEST_CASE("disc split by the projected-normal rule") {
  auto s = SupportSurface::ellipsoid({1.0, 1.0, 1.4});
  auto census = fol::find_umbilics(s);
  REQUIRE(census.size() == 2);
  auto curve = sample_chart_circle(s, Complex(0, 0), 1.0, 256);

  // other-surface normal tilted toward +z: its tangential projection points
  // at the north side, so the minus disc is the south one
  std::vector<Vec3> tilted_up(curve.normals.size());
  for (size_t k = 0; k < tilted_up.size(); ++k)
    tilted_up[k] = (curve.normals[k] + 0.4 * Vec3::UnitZ()).normalized();
  auto up = fol::disc_index_split(s, curve.xis, tilted_up, census);
  CHECK(up.index_minus == doctest::Approx(1.0));
  CHECK(up.index_plus == doctest::Approx(1.0));
  CHECK(up.side[0] == 1);   // census is sorted north first
  CHECK(up.side[1] == -1);

  std::vector<Vec3> tilted_down(curve.normals.size());
  for (size_t k = 0; k < tilted_down.size(); ++k)
    tilted_down[k] = (curve.normals[k] - 0.4 * Vec3::UnitZ()).normalized();
  auto down = fol::disc_index_split(s, curve.xis, tilted_down, census);
  CHECK(down.side[0] == -1);
  CHECK(down.side[1] == 1);

  // a loop that keeps both points on one side
  auto loop = sample_chart_circle(s, Complex(1.2, 0), 0.3, 256);
  std::vector<Vec3> other(loop.normals.size());
  for (size_t k = 0; k < other.size(); ++k)
    other[k] = (loop.normals[k] + 0.4 * Vec3::UnitZ()).normalized();
  auto lopsided = fol::disc_index_split(s, loop.xis, other, census);
  CHECK(lopsided.index_minus + lopsided.index_plus == doctest::Approx(2.0));
  CHECK((lopsided.index_minus == 0.0 || lopsided.index_plus == 0.0));
}

TEST_CASE("disc split degeneracies are rejected") {
  auto s = SupportSurface::ellipsoid({1.0, 1.0, 1.4});
  auto census = fol::find_umbilics(s);
  auto curve = sample_chart_circle(s, Complex(0, 0), 1.0, 64);

  // tangential contact: the projected normal vanishes
  try {
    (void)fol::disc_index_split(s, curve.xis, curve.normals, census);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousSide);
  }

  // a curve through an umbilic point cannot be classified
  auto through = sample_chart_circle(s, Complex(0.5, 0), 0.5, 64, false);
  std::vector<Vec3> other(through.normals.size());
  for (size_t k = 0; k < other.size(); ++k)
    other[k] = (through.normals[k] + 0.4 * Vec3::UnitZ()).normalized();
  try {
    (void)fol::disc_index_split(s, through.xis, other, census);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousSide);
  }
}
