#include "linecurve/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "linecurve/errors.hpp"
#include "linecurve/lines.hpp"

namespace linecurve::foliation {

using surface::SupportSurface;

namespace {

constexpr double kPi = std::numbers::pi;

// Chart coordinate of a unit direction, saturating instead of throwing at the
// excluded pole so census rows always carry a finite coordinate.
Complex direction_to_xi_clamped(const Vec3& v) {
  double denom = 1.0 + v.z();
  if (denom < 1e-12)
    return std::polar(1e6, std::atan2(v.y(), v.x()));
  Complex xi(v.x() / denom, v.y() / denom);
  double m = std::abs(xi);
  if (m > 1e6) xi *= 1e6 / m;
  return xi;
}

// Winding number of a closed chart polyline around q.
int chart_winding(std::span<const Complex> pts, Complex q) {
  double total = 0.0;
  for (size_t k = 0; k < pts.size(); ++k) {
    Complex a = pts[k] - q;
    Complex b = pts[(k + 1) % pts.size()] - q;
    total += std::arg(b / a);
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace

Vec3 principal_direction(const SupportSurface& s, Complex xi) {
  auto cd = surface::curvature_data(s, xi);
  if (std::abs(cd.sigma) < 1e-6 * cd.psi)
    fail(ErrorCode::UmbilicPoint, "principal direction undefined: |sigma| ~ 0");
  double theta = 0.5 * std::arg(std::conj(cd.sigma));
  Vec3 p, pa, pb;
  surface::point_chart_derivs(s, xi, p, pa, pb);
  Vec3 v = std::cos(theta) * pa + std::sin(theta) * pb;
  double n = v.norm();
  if (n < 1e-14)
    fail(ErrorCode::DegenerateMetric, "vanishing chart differential");
  return v / n;
}

AngleTrack track_line_field_angle(std::span<const Complex> sigmas) {
  if (sigmas.size() < 4)
    fail(ErrorCode::SamplingTooCoarse, "need at least 4 samples");
  AngleTrack out;
  out.angles.resize(sigmas.size());
  out.angles[0] = std::arg(sigmas[0]);
  auto step = [](Complex a, Complex b) {
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
      fail(ErrorCode::UmbilicPoint, "sigma vanishes on the sampling loop");
    double d = std::arg(b / a);
    if (std::abs(d) >= kPi / 2.0)
      fail(ErrorCode::SamplingTooCoarse, "arg(sigma) step of pi/2 or more");
    return d;
  };
  for (size_t k = 1; k < sigmas.size(); ++k)
    out.angles[k] = out.angles[k - 1] + step(sigmas[k - 1], sigmas[k]);
  double closure = out.angles.back() + step(sigmas.back(), sigmas.front());
  out.winding = (closure - out.angles.front()) / (4.0 * kPi);
  return out;
}

namespace {

struct Candidate {
  Complex xi;      // in its scan chart
  int chart;       // 0 base, 1 rotated
  double residual;
};

double sigma_ratio(const SupportSurface& s, Complex xi) {
  auto cd = surface::curvature_data(s, xi);
  return std::abs(cd.sigma) / cd.psi;
}

// Damped Newton on (Re sigma, Im sigma) with finite-difference Jacobian.
bool refine_zero(const SupportSurface& s, Complex& xi, double& residual) {
  for (int it = 0; it < 60; ++it) {
    auto cd = surface::curvature_data(s, xi);
    double res = std::abs(cd.sigma);
    residual = res;
    if (res <= 1e-12 * (1.0 + cd.psi)) return true;
    double h = 1e-6 * (1.0 + std::abs(xi));
    Complex sa_p = surface::curvature_data(s, xi + h).sigma;
    Complex sa_m = surface::curvature_data(s, xi - h).sigma;
    Complex sb_p = surface::curvature_data(s, xi + Complex(0, h)).sigma;
    Complex sb_m = surface::curvature_data(s, xi - Complex(0, h)).sigma;
    Eigen::Matrix2d J;
    J << (sa_p.real() - sa_m.real()) / (2 * h),
        (sb_p.real() - sb_m.real()) / (2 * h),
        (sa_p.imag() - sa_m.imag()) / (2 * h),
        (sb_p.imag() - sb_m.imag()) / (2 * h);
    Eigen::Vector2d f(cd.sigma.real(), cd.sigma.imag());
    Eigen::Vector2d d = J.fullPivLu().solve(f);
    if (!d.allFinite()) return false;
    double damp = 1.0;
    bool moved = false;
    for (int half = 0; half < 30; ++half) {
      Complex trial = xi - damp * Complex(d(0), d(1));
      double tr;
      try {
        tr = std::abs(surface::curvature_data(s, trial).sigma);
      } catch (const Error&) {
        damp *= 0.5;
        continue;
      }
      if (tr < res) {
        xi = trial;
        moved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!moved) return residual <= 1e-9;
  }
  return false;
}

}  // namespace

std::vector<UmbilicPoint> find_umbilics(const SupportSurface& s,
                                        const UmbilicSearchOptions& opt) {
  if (s.is_round_sphere())
    fail(ErrorCode::DegenerateSurface, "sigma vanishes identically on a sphere");

  Mat3 flip = Mat3::Identity();
  flip(1, 1) = -1.0;
  flip(2, 2) = -1.0;
  SupportSurface charts[2] = {s, surface::rotate_frame(s, flip)};

  std::vector<Candidate> cands;
  int degenerate_cells = 0;
  int total_cells = 0;
  const int n = opt.grid_n;
  const double lim = 1.03;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::vector<double>> ratio(n, std::vector<double>(n, -1.0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double a = -lim + 2.0 * lim * (i + 0.5) / n;
        double b = -lim + 2.0 * lim * (j + 0.5) / n;
        Complex xi(a, b);
        if (std::abs(xi) > lim) continue;
        ++total_cells;
        try {
          ratio[i][j] = sigma_ratio(charts[c], xi);
        } catch (const Error&) {
          continue;
        }
        if (ratio[i][j] < 1e-9) ++degenerate_cells;
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = ratio[i][j];
        if (v < 0.0 || v >= opt.detect_rel) continue;
        bool is_min = true;
        for (int di = -1; di <= 1 && is_min; ++di)
          for (int dj = -1; dj <= 1; ++dj) {
            int ii = i + di, jj = j + dj;
            if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
            double w = ratio[ii][jj];
            if (w >= 0.0 && w < v) {
              is_min = false;
              break;
            }
          }
        if (!is_min) continue;
        double a = -lim + 2.0 * lim * (i + 0.5) / n;
        double b = -lim + 2.0 * lim * (j + 0.5) / n;
        cands.push_back({Complex(a, b), c, v});
      }
    }
  }
  if (degenerate_cells > total_cells / 100)
    fail(ErrorCode::DegenerateSurface,
         "sigma vanishes on more than 1% of the scan grid");

  std::vector<UmbilicPoint> out;
  std::vector<int> chart_of;
  std::vector<Complex> scan_xi;
  for (auto& cand : cands) {
    Complex xi = cand.xi;
    double residual = 0.0;
    if (!refine_zero(charts[cand.chart], xi, residual)) continue;
    double psi = surface::curvature_data(charts[cand.chart], xi).psi;
    if (residual > 1e-9 * psi) continue;
    Vec3 v = lines::xi_to_direction(xi);
    if (cand.chart == 1) v = flip * v;
    bool dup = false;
    for (auto& u : out) {
      if ((u.direction - v).norm() < opt.dedup_distance) {
        dup = true;
        if (residual < u.residual) u.residual = residual;
        break;
      }
    }
    if (dup) continue;
    UmbilicPoint u;
    u.direction = v;
    u.xi = direction_to_xi_clamped(v);
    u.residual = residual;
    out.push_back(u);
    chart_of.push_back(cand.chart);
    scan_xi.push_back(xi);
  }

  // Half-integer index from the winding of arg(sigma) around a small circle,
  // traversed clockwise in the chart where the zero was refined.
  for (size_t k = 0; k < out.size(); ++k) {
    std::vector<Complex> sig(opt.circle_samples);
    for (int m = 0; m < opt.circle_samples; ++m) {
      double th = -2.0 * kPi * m / opt.circle_samples;
      Complex p = scan_xi[k] + opt.circle_radius * std::polar(1.0, th);
      sig[m] = surface::curvature_data(charts[chart_of[k]], p).sigma;
    }
    auto track = track_line_field_angle(sig);
    out[k].raw_winding = track.winding;
    out[k].index = 0.5 * std::round(2.0 * track.winding);
  }

  std::sort(out.begin(), out.end(), [](const UmbilicPoint& a,
                                       const UmbilicPoint& b) {
    if (std::abs(a.direction.z() - b.direction.z()) > 1e-9)
      return a.direction.z() > b.direction.z();
    return std::atan2(a.direction.y(), a.direction.x()) <
           std::atan2(b.direction.y(), b.direction.x());
  });
  return out;
}

bool double_cover_orientable(std::span<const Vec3> principals) {
  if (principals.empty()) return true;
  Vec3 prev = principals[0];
  for (size_t k = 1; k < principals.size(); ++k) {
    Vec3 e = principals[k];
    if (e.dot(prev) < 0.0) e = -e;
    prev = e;
  }
  return prev.dot(principals[0]) >= 0.0;
}

PhiTrack phi_winding(std::span<const Vec3> tangents,
                     std::span<const Vec3> principals,
                     std::span<const Vec3> normals) {
  size_t n = tangents.size();
  if (n < 8 || principals.size() != n || normals.size() != n)
    fail(ErrorCode::SamplingTooCoarse, "need matching samples, at least 8");
  auto raw_angle = [&](size_t k) {
    Vec3 b = normals[k].cross(principals[k]);
    return std::atan2(tangents[k].dot(b), tangents[k].dot(principals[k]));
  };
  PhiTrack out;
  out.phi.resize(n);
  out.phi[0] = raw_angle(0);
  auto lift = [&](double prev, double raw) {
    double phi = raw + kPi * std::round((prev - raw) / kPi);
    if (std::abs(phi - prev) > kPi / 3.0)
      fail(ErrorCode::SamplingTooCoarse, "angle step above pi/3");
    return phi;
  };
  for (size_t k = 1; k < n; ++k) out.phi[k] = lift(out.phi[k - 1], raw_angle(k));
  double closure = lift(out.phi[n - 1], raw_angle(0));
  out.raw_winding = (closure - out.phi[0]) / kPi;
  out.n = static_cast<int>(std::lround(out.raw_winding));
  out.orientable = double_cover_orientable(principals);
  return out;
}

DiscSplit disc_index_split(const SupportSurface& s,
                           std::span<const Complex> curve_xis,
                           std::span<const Vec3> other_normals,
                           const std::vector<UmbilicPoint>& census) {
  size_t n = curve_xis.size();
  if (n < 8 || other_normals.size() != n)
    fail(ErrorCode::SamplingTooCoarse, "need matching samples, at least 8");

  std::vector<Vec3> dirs(n);
  for (size_t k = 0; k < n; ++k) dirs[k] = lines::xi_to_direction(curve_xis[k]);

  // A probe direction slightly to one side of the curve on the direction
  // sphere; that side is tagged A until the conormal rule names it.
  Vec3 tau = (dirs[1] - dirs[0]).normalized();
  Vec3 left = dirs[0].cross(tau).normalized();
  double delta = std::min(0.05, 2.0 * (dirs[1] - dirs[0]).norm());
  Vec3 probe = (dirs[0] + delta * left).normalized();

  // Chart centered at the probe; retried with a tilt if a curve sample lands
  // at the excluded antipode.
  std::vector<Complex> chart_curve(n);
  Mat3 qref;
  bool ok = false;
  for (double tilt : {0.0, 0.3, 0.6, 0.9}) {
    Mat3 extra =
        Eigen::AngleAxisd(tilt, Vec3::UnitX()).toRotationMatrix();
    qref = extra * Eigen::Quaterniond::FromTwoVectors(probe, Vec3::UnitZ())
                       .toRotationMatrix();
    ok = true;
    for (size_t k = 0; k < n; ++k) {
      Vec3 v = qref * dirs[k];
      if (1.0 + v.z() < 1e-8) {
        ok = false;
        break;
      }
      chart_curve[k] = lines::direction_to_xi(v);
    }
    if (ok) break;
  }
  if (!ok)
    fail(ErrorCode::AmbiguousSide, "curve meets every candidate chart pole");

  int w_probe = chart_winding(chart_curve, lines::direction_to_xi(qref * probe));

  // Conormal rule: the outward conormal of the minus disc is the other
  // surface's normal projected onto this surface's tangent plane.
  Vec3 nu = dirs[0];
  Vec3 w = other_normals[0] - other_normals[0].dot(nu) * nu;
  if (w.norm() < 1e-8)
    fail(ErrorCode::AmbiguousSide, "projected normal vanishes at the curve");
  w.normalize();
  Vec3 p0 = surface::surface_point(s, curve_xis[0]).vec();
  Vec3 pa = surface::surface_point(s, lines::direction_to_xi(probe)).vec();
  bool probe_is_minus = (pa - p0).dot(w) < 0.0;

  DiscSplit out;
  out.index_minus = 0.0;
  out.index_plus = 0.0;
  out.side.resize(census.size());
  for (size_t k = 0; k < census.size(); ++k) {
    Vec3 v = qref * census[k].direction;
    if (1.0 + v.z() < 1e-8)
      fail(ErrorCode::AmbiguousSide, "umbilic at the classification pole");
    Complex q = lines::direction_to_xi(v);
    double mind = 1e300;
    for (auto& c : chart_curve) mind = std::min(mind, std::abs(q - c));
    if (mind < 1e-4)
      fail(ErrorCode::AmbiguousSide, "umbilic within tolerance of the curve");
    bool side_a = chart_winding(chart_curve, q) == w_probe;
    bool minus = (side_a == probe_is_minus);
    out.side[k] = minus ? -1 : 1;
    (minus ? out.index_minus : out.index_plus) += census[k].index;
  }
  return out;
}

}  // namespace linecurve::foliation
