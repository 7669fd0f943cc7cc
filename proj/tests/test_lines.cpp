#include "doctest.h"

#include <cmath>
#include <random>

#include "linecurve/errors.hpp"
#include "linecurve/lines.hpp"

using namespace linecurve;
using namespace linecurve::lines;

namespace {

std::mt19937 rng(20240811);

Complex random_xi(double scale = 1.5) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Complex(u(rng), u(rng));
}

Vec3 random_direction() {
  std::normal_distribution<double> g;
  Vec3 v(g(rng), g(rng), g(rng));
  return v.normalized();
}

}  // namespace

TEST_CASE("xi_to_direction chart examples") {
  CHECK((xi_to_direction(0.0) - Vec3(0, 0, 1)).norm() == doctest::Approx(0).epsilon(1e-14));
  CHECK((xi_to_direction(1.0) - Vec3(1, 0, 0)).norm() == doctest::Approx(0).epsilon(1e-14));
  CHECK((xi_to_direction(Complex(0, 1)) - Vec3(0, 1, 0)).norm() ==
        doctest::Approx(0).epsilon(1e-14));
  for (int k = 0; k < 1000; ++k) {
    CHECK(std::abs(xi_to_direction(random_xi(5.0)).norm() - 1.0) <= 1e-14);
  }
}

TEST_CASE("direction_to_xi inverts the chart") {
  CHECK(std::abs(direction_to_xi(Vec3(0, 0, 1))) <= 1e-15);
  CHECK(std::abs(direction_to_xi(Vec3(1, 0, 0)) - 1.0) <= 1e-15);
  for (int k = 0; k < 10000; ++k) {
    const Vec3 v = random_direction();
    if (v.z() < -1.0 + 1e-12) continue;
    CHECK((xi_to_direction(direction_to_xi(v)) - v).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(direction_to_xi(Vec3(0, 0, -1)), Error);
}

TEST_CASE("angle_between matches the dot-product formula") {
  CHECK(angle_between(0.0, 1.0) == doctest::Approx(M_PI / 2).epsilon(1e-14));
  const Complex xi = random_xi();
  CHECK(angle_between(xi, xi) == 0.0);
  // Lemma 1 circle through xi1 = 0.
  const double alpha = 1.0, A = 0.7;
  CHECK(angle_between(0.0, std::tan(alpha / 2) * std::polar(1.0, A)) ==
        doctest::Approx(alpha).epsilon(1e-14));
  for (int k = 0; k < 1000; ++k) {
    const Complex a = random_xi(), b = random_xi();
    const double dot = xi_to_direction(a).dot(xi_to_direction(b));
    CHECK(std::abs(std::cos(angle_between(a, b)) - dot) <= 1e-12);
  }
}

TEST_CASE("cone_direction angle law") {
  const AngleConfig right = AngleConfig::from_epsilon(1.0);
  CHECK(std::abs(cone_direction(0.0, right, 0.0) - 1.0) <= 1e-15);

  std::uniform_real_distribution<double> ua(0.1, 3.0);
  std::uniform_real_distribution<double> uA(0.0, 2 * M_PI);
  for (int k = 0; k < 10000; ++k) {
    const Complex xi1 = random_xi();
    const AngleConfig cfg = AngleConfig::from_alpha(ua(rng));
    const double A1 = uA(rng);
    const Complex xi2 = cone_direction(xi1, cfg, A1);
    CHECK(std::abs(angle_between(xi1, xi2) - cfg.alpha) <= 1e-12);
    CHECK(std::abs(angle_between(xi1, xi2) - 2 * std::atan(cfg.epsilon)) <= 1e-12);
  }
  // xi1 = 0 case: the circle is eps e^{iA}.
  const AngleConfig cfg = AngleConfig::from_alpha(0.8);
  CHECK(std::abs(cone_direction(0.0, cfg, 1.1) -
                 cfg.epsilon * std::polar(1.0, 1.1)) <= 1e-15);
}

TEST_CASE("cone_param_A1 inverts cone_direction") {
  const AngleConfig cfg = AngleConfig::from_alpha(0.9);
  CHECK(cone_param_A1(0.0, cfg.epsilon * std::polar(1.0, 0.3), cfg) ==
        doctest::Approx(0.3).epsilon(1e-12));

  std::uniform_real_distribution<double> ua(0.1, 3.0);
  std::uniform_real_distribution<double> uA(0.0, 2 * M_PI);
  for (int k = 0; k < 10000; ++k) {
    const Complex xi1 = random_xi();
    const AngleConfig c = AngleConfig::from_alpha(ua(rng));
    const double A1 = uA(rng);
    const Complex xi2 = cone_direction(xi1, c, A1);
    const double back = cone_param_A1(xi1, xi2, c);
    CHECK(std::abs(cone_direction(xi1, c, back) - xi2) <= 1e-12);
  }

  // Off-cone input is rejected.
  CHECK_THROWS_AS(cone_param_A1(0.0, 2.0 * cfg.epsilon, cfg), Error);
}

TEST_CASE("cone_param_A2 satisfies the inverted parameterization") {
  // xi1 = 0: A2 = A1 + pi.
  const AngleConfig cfg = AngleConfig::from_alpha(1.2);
  const double A2 = cone_param_A2(0.0, cfg, 0.4);
  CHECK(A2 == doctest::Approx(0.4 + M_PI).epsilon(1e-12));

  std::uniform_real_distribution<double> ua(0.1, 3.0);
  std::uniform_real_distribution<double> uA(0.0, 2 * M_PI);
  for (int k = 0; k < 10000; ++k) {
    const Complex xi1 = random_xi();
    const AngleConfig c = AngleConfig::from_alpha(ua(rng));
    const double A1 = uA(rng);
    const Complex xi2 = cone_direction(xi1, c, A1);
    const double a2 = cone_param_A2(xi1, c, A1);
    const Complex u = c.epsilon * std::polar(1.0, a2);
    const Complex back = (xi2 + u) / (1.0 - std::conj(xi2) * u);
    CHECK(std::abs(back - xi1) <= 1e-10);
  }

  // Continuity toward the eps -> 0 limit of the xi1 = 0 case.
  const Complex xi1 = random_xi();
  double prev = cone_param_A2(xi1, AngleConfig::from_epsilon(1e-3), 0.9);
  const double a2_small = cone_param_A2(xi1, AngleConfig::from_epsilon(1e-6), 0.9);
  CHECK(std::abs(a2_small - (0.9 + M_PI)) < 1e-3);
  CHECK(std::abs(prev - (0.9 + M_PI)) < 1e-2);
}

TEST_CASE("point_on_line direct substitutions") {
  const SurfacePoint p1 = point_on_line({0.0, 0.0}, 5.0);
  CHECK(std::abs(p1.z) <= 1e-15);
  CHECK(p1.t == doctest::Approx(5.0));

  const SurfacePoint p2 = point_on_line({0.0, 1.0}, 0.0);
  CHECK(std::abs(p2.z - 2.0) <= 1e-15);
  CHECK(std::abs(p2.t) <= 1e-15);

  // Normal line of the sphere centered (0,0,2) passes through the center.
  const Complex xi(0.5, 0.5);
  const double r = 2.0 * (1.0 - std::norm(xi)) / (1.0 + std::norm(xi));
  const SurfacePoint p3 = point_on_line({xi, -2.0 * xi}, r);
  CHECK(std::abs(p3.z) <= 1e-14);
  CHECK(p3.t == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("point_on_line traces a straight line with direction xi") {
  for (int k = 0; k < 10000; ++k) {
    const Complex xi = random_xi();
    const OrientedLine line{xi, Complex(random_xi().real(), random_xi().imag())};
    const Vec3 a = point_on_line(line, -1.0).vec();
    const Vec3 b = point_on_line(line, 0.0).vec();
    const Vec3 c = point_on_line(line, 1.0).vec();
    CHECK(((c - b) - (b - a)).norm() <= 1e-12);
    CHECK(((b - a).normalized() - xi_to_direction(xi)).norm() <= 1e-10);
  }
}

TEST_CASE("line_through_point incidence closure") {
  // Lines through the origin have eta = 0.
  CHECK(std::abs(line_through_point({0.0, 0.0}, random_xi()).eta) <= 1e-15);
  // p = (0,0,d): eta = -d xi.
  const Complex xi(0.3, -0.2);
  CHECK(std::abs(line_through_point({0.0, 1.7}, xi).eta + 1.7 * xi) <= 1e-15);

  for (int k = 0; k < 10000; ++k) {
    const OrientedLine line{random_xi(), 2.0 * random_xi()};
    std::uniform_real_distribution<double> ur(-3.0, 3.0);
    const double r = ur(rng);
    const SurfacePoint p = point_on_line(line, r);
    const OrientedLine back = line_through_point(p, line.xi);
    CHECK(std::abs(back.eta - line.eta) <= 1e-10);
    CHECK(closest_param(back, p).distance <= 1e-10);
  }
}

TEST_CASE("cone_line master property: incidence plus angle") {
  const AngleConfig cfg = AngleConfig::from_alpha(0.8);
  const OrientedLine o1 = cone_line({0.0, 0.0}, 0.0, cfg, 0.45);
  CHECK(std::abs(o1.xi - cfg.epsilon * std::polar(1.0, 0.45)) <= 1e-15);
  CHECK(std::abs(o1.eta) <= 1e-15);

  const OrientedLine o2 = cone_line({0.0, 0.0}, 1.0, cfg, 0.45);
  CHECK(std::abs(o2.eta + cfg.epsilon * std::polar(1.0, 0.45)) <= 1e-14);
  CHECK(closest_param(o2, SurfacePoint{0.0, 1.0}).distance <= 1e-12);

  std::uniform_real_distribution<double> ua(0.1, 3.0);
  std::uniform_real_distribution<double> uA(0.0, 2 * M_PI);
  std::uniform_real_distribution<double> ur(-2.0, 2.0);
  for (int k = 0; k < 10000; ++k) {
    const OrientedLine base{random_xi(), 2.0 * random_xi()};
    const AngleConfig c = AngleConfig::from_alpha(ua(rng));
    const double A1 = uA(rng), r1 = ur(rng);
    const OrientedLine got = cone_line(base, r1, c, A1);
    const SurfacePoint meet = point_on_line(base, r1);
    CHECK(closest_param(got, meet).distance <= 1e-10);
    CHECK(std::abs(angle_between(base.xi, got.xi) - c.alpha) <= 1e-10);
  }
}
