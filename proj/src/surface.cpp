#include "linecurve/surface.hpp"

#include <cmath>

#include "harmonics.hpp"
#include "linecurve/errors.hpp"
#include "linecurve/hooks.hpp"
#include "linecurve/lines.hpp"

namespace linecurve::surface {

using lines::chart_weight;
using lines::xi_to_direction;

struct SupportSurface::HarmonicJets {
  std::vector<detail::PolyJet> jets;
};

namespace {

void check_chart(Complex xi) {
  if (std::abs(xi) > kChartLimit) {
    fail(ErrorCode::ChartOverflow, "support_jet: |xi| beyond chart limit");
  }
}

void check_spec(const SurfaceSpec& spec) {
  if (const auto* sp = std::get_if<SphereSpec>(&spec)) {
    if (!(sp->radius > 0)) fail(ErrorCode::SchemaError, "sphere radius must be > 0");
  } else if (const auto* el = std::get_if<EllipsoidSpec>(&spec)) {
    if (!(el->semiaxes.minCoeff() > 0)) {
      fail(ErrorCode::SchemaError, "ellipsoid semiaxes must be > 0");
    }
    Mat3 qtq = el->rotation.transpose() * el->rotation;
    if ((qtq - Mat3::Identity()).norm() > 1e-10 || el->rotation.determinant() < 0) {
      fail(ErrorCode::NotOrthonormal, "ellipsoid rotation must be a proper rotation");
    }
  } else if (const auto* ha = std::get_if<HarmonicSpec>(&spec)) {
    if (!(ha->base_radius > 0)) {
      fail(ErrorCode::SchemaError, "harmonic base radius must be > 0");
    }
    for (const auto& t : ha->terms) {
      if (t.l < 0 || t.l > 6 || std::abs(t.m) > t.l) {
        fail(ErrorCode::SchemaError, "harmonic term needs 0 <= l <= 6, |m| <= l");
      }
    }
  }
}

}  // namespace

SupportSurface::SupportSurface(SurfaceSpec spec, DerivativeEngine engine)
    : spec_(std::move(spec)), engine_(engine) {
  check_spec(spec_);
  if (const auto* ha = std::get_if<HarmonicSpec>(&spec_)) {
    auto jets = std::make_shared<HarmonicJets>();
    for (const auto& t : ha->terms) {
      jets->jets.push_back(
          detail::PolyJet::from(detail::real_spherical_harmonic(t.l, t.m)));
    }
    harmonic_jets_ = jets;
  }
}

SupportSurface SupportSurface::sphere(const Vec3& center, double radius,
                                      DerivativeEngine engine) {
  return SupportSurface(SphereSpec{center, radius}, engine);
}

SupportSurface SupportSurface::ellipsoid(const Vec3& semiaxes,
                                         const Mat3& rotation,
                                         const Vec3& center,
                                         DerivativeEngine engine) {
  return SupportSurface(EllipsoidSpec{semiaxes, rotation, center}, engine);
}

SupportSurface SupportSurface::harmonic(double base_radius,
                                        std::vector<HarmonicTerm> terms,
                                        DerivativeEngine engine) {
  return SupportSurface(HarmonicSpec{base_radius, std::move(terms)}, engine);
}

bool SupportSurface::is_round_sphere() const {
  if (std::holds_alternative<SphereSpec>(spec_)) return true;
  if (const auto* ha = std::get_if<HarmonicSpec>(&spec_)) return ha->terms.empty();
  return false;
}

void SupportSurface::ambient_jet(const Vec3& n_world, double& h, Vec3& g,
                                 Mat3& H) const {
  const Vec3 n = frame_.transpose() * n_world;
  double h0;
  Vec3 g0;
  Mat3 H0;
  if (const auto* sp = std::get_if<SphereSpec>(&spec_)) {
    h0 = sp->radius + sp->center.dot(n);
    g0 = sp->center;
    H0.setZero();
  } else if (const auto* el = std::get_if<EllipsoidSpec>(&spec_)) {
    const Vec3 s2 = el->semiaxes.array().square();
    const Mat3 M = el->rotation * s2.asDiagonal() * el->rotation.transpose();
    const Vec3 Mn = M * n;
    const double q = std::sqrt(n.dot(Mn));
    h0 = q + el->center.dot(n);
    g0 = Mn / q + el->center;
    H0 = M / q - (Mn * Mn.transpose()) / (q * q * q);
  } else {
    const auto& ha = std::get<HarmonicSpec>(spec_);
    h0 = ha.base_radius;
    g0.setZero();
    H0.setZero();
    for (size_t k = 0; k < ha.terms.size(); ++k) {
      const auto& jet = harmonic_jets_->jets[k];
      const double c = ha.terms[k].coeff;
      h0 += c * jet.eval(n);
      g0 += c * jet.grad_at(n);
      H0 += c * jet.hess_at(n);
    }
  }
  h = h0;
  g = frame_ * g0;
  H = frame_ * H0 * frame_.transpose();
}

double SupportSurface::value(const Vec3& n) const {
  double h;
  Vec3 g;
  Mat3 H;
  ambient_jet(n, h, g, H);
  return h;
}

namespace {

SupportJet analytic_jet(const SupportSurface& s, Complex xi) {
  double h;
  Vec3 g;
  Mat3 H;
  s.ambient_jet(xi_to_direction(xi), h, g, H);

  const double w = chart_weight(xi);
  const CVec3 xd = lines::direction_deriv_xi(xi);
  const CVec3 xdb = xd.conjugate();
  const CVec3 x = xi_to_direction(xi).cast<Complex>();
  const Complex gc(0, 0);

  auto cdot = [](const CVec3& a, const Vec3& b) {
    return a.x() * b.x() + a.y() * b.y() + a.z() * b.z();
  };
  auto bilin = [](const CVec3& a, const Mat3& M, const CVec3& b) {
    Complex sum = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sum += a(i) * M(i, j) * b(j);
    return sum;
  };

  // Chart identities: X_xixi = -(2 xibar / W) X_xi, X_xixibar = -(2 / W^2) X.
  SupportJet jet;
  jet.r = h;
  jet.r_xi = cdot(xd, g);
  jet.r_xibar = std::conj(jet.r_xi);
  jet.r_xixi = bilin(xd, H, xd) - (2.0 * std::conj(xi) / w) * jet.r_xi;
  jet.r_xibarxibar = std::conj(jet.r_xixi);
  const Complex mixed = bilin(xd, H, xdb) + cdot((-2.0 / (w * w)) * x, g);
  jet.r_xixibar = mixed.real();
  (void)gc;
  return jet;
}

SupportJet fd_jet(const SupportSurface& s, Complex xi, double step_scale) {
  auto f = [&s](Complex q) { return s.value(xi_to_direction(q)); };
  const double h0 = step_scale * (1.0 + std::norm(xi));

  struct RealDerivs {
    double fa, fb, faa, fbb, fab;
  };
  auto derivs_at = [&](double h) {
    RealDerivs d;
    const Complex i(0, 1);
    const double fpa = f(xi + h), fma = f(xi - h);
    const double fpb = f(xi + i * h), fmb = f(xi - i * h);
    const double f0 = f(xi);
    d.fa = (fpa - fma) / (2 * h);
    d.fb = (fpb - fmb) / (2 * h);
    d.faa = (fpa - 2 * f0 + fma) / (h * h);
    d.fbb = (fpb - 2 * f0 + fmb) / (h * h);
    const double fpp = f(xi + h + i * h), fpm = f(xi + h - i * h);
    const double fmp = f(xi - h + i * h), fmm = f(xi - h - i * h);
    d.fab = (fpp - fpm - fmp + fmm) / (4 * h * h);
    return d;
  };

  const RealDerivs c = derivs_at(h0);
  const RealDerivs fine = derivs_at(h0 / 2);
  auto rich = [](double coarse, double f2) { return (4.0 * f2 - coarse) / 3.0; };
  const double fa = rich(c.fa, fine.fa), fb = rich(c.fb, fine.fb);
  const double faa = rich(c.faa, fine.faa), fbb = rich(c.fbb, fine.fbb);
  const double fab = rich(c.fab, fine.fab);

  SupportJet jet;
  jet.r = f(xi);
  jet.r_xi = 0.5 * Complex(fa, -fb);
  jet.r_xibar = std::conj(jet.r_xi);
  jet.r_xixi = 0.25 * Complex(faa - fbb, -2.0 * fab);
  jet.r_xibarxibar = std::conj(jet.r_xixi);
  jet.r_xixibar = 0.25 * (faa + fbb);
  return jet;
}

}  // namespace

SupportJet support_jet(const SupportSurface& s, Complex xi) {
  check_chart(xi);
  if (const auto* fd = std::get_if<FiniteDifferenceEngine>(&s.engine())) {
    return fd_jet(s, xi, fd->step_scale);
  }
  return analytic_jet(s, xi);
}

Complex section_eta(const SupportSurface& s, Complex xi) {
  const SupportJet jet = support_jet(s, xi);
  const double w = chart_weight(xi);
  const Complex d =
      linecurve::detail::hooks().flip_section_convention ? jet.r_xi : jet.r_xibar;
  return 0.5 * w * w * d;
}

namespace {

CurvatureData curvature_raw(const SupportSurface& s, Complex xi) {
  const SupportJet jet = support_jet(s, xi);
  const double w = chart_weight(xi);
  CurvatureData cd;
  cd.r = jet.r;
  const Complex d =
      linecurve::detail::hooks().flip_section_convention ? jet.r_xi : jet.r_xibar;
  cd.eta = 0.5 * w * w * d;
  // sigma = -d(etabar)/dxi, psi = r + W^2 d(eta / W^2)/dxi for the section.
  cd.sigma = -(w * std::conj(xi) * jet.r_xi + 0.5 * w * w * jet.r_xixi);
  cd.psi = jet.r + 0.5 * w * w * jet.r_xixibar;
  cd.kappa = cd.psi * cd.psi - std::norm(cd.sigma);
  return cd;
}

}  // namespace

CurvatureData curvature_data(const SupportSurface& s, Complex xi) {
  CurvatureData cd = curvature_raw(s, xi);
  if (!(cd.psi > std::abs(cd.sigma)) || !(cd.kappa > 0)) {
    fail(ErrorCode::NonConvex, "curvature_data: psi <= |sigma| (not convex here)");
  }
  return cd;
}

PrincipalData principal_data(const CurvatureData& cd) {
  const double as = std::abs(cd.sigma);
  if (!(cd.psi > as)) {
    fail(ErrorCode::NonConvex, "principal_data: psi <= |sigma|");
  }
  PrincipalData pd;
  pd.R_big = cd.psi + as;
  pd.R_small = cd.psi - as;
  pd.lambda = 1.0 / pd.R_small;
  pd.mu = 1.0 / pd.R_big;
  return pd;
}

SurfacePoint surface_point(const SupportSurface& s, Complex xi) {
  const SupportJet jet = support_jet(s, xi);
  const double w = chart_weight(xi);
  const Complex d =
      linecurve::detail::hooks().flip_section_convention ? jet.r_xi : jet.r_xibar;
  const Complex eta = 0.5 * w * w * d;
  return lines::point_on_line(OrientedLine{xi, eta}, jet.r);
}

double lagrangian_defect(const std::function<Complex(Complex)>& eta_fn,
                         Complex xi, double step_scale) {
  auto g = [&](Complex q) { return eta_fn(q) / (chart_weight(q) * chart_weight(q)); };
  const double h = step_scale * (1.0 + std::norm(xi));
  const Complex i(0, 1);
  auto dxi_at = [&](double hh) {
    const Complex ga = (g(xi + hh) - g(xi - hh)) / (2.0 * hh);
    const Complex gb = (g(xi + i * hh) - g(xi - i * hh)) / (2.0 * hh);
    return 0.5 * (ga - i * gb);
  };
  const Complex d = (4.0 * dxi_at(h / 2) - dxi_at(h)) / 3.0;
  // d/dxibar of the conjugate is the conjugate of d/dxi.
  return std::abs(d - std::conj(d));
}

double lagrangian_residual(const SupportSurface& s, Complex xi) {
  double step = 1e-4;
  if (const auto* fd = std::get_if<FiniteDifferenceEngine>(&s.engine())) {
    step = fd->step_scale;
  }
  return lagrangian_defect([&s](Complex q) { return section_eta(s, q); }, xi,
                           step);
}

void point_chart_derivs(const SupportSurface& s, Complex xi, Vec3& p, Vec3& pa,
                        Vec3& pb) {
  const double h = 1e-5 * (1.0 + std::norm(xi));
  const Complex i(0, 1);
  p = surface_point(s, xi).vec();
  auto P = [&](Complex q) { return surface_point(s, q).vec(); };
  auto d1 = [&](Complex dir, double hh) {
    return ((P(xi + hh * dir) - P(xi - hh * dir)) / (2 * hh)).eval();
  };
  pa = (4.0 * d1(1.0, h / 2) - d1(1.0, h)) / 3.0;
  pb = (4.0 * d1(i, h / 2) - d1(i, h)) / 3.0;
}

ShapeOracleResult shape_operator_oracle(const SupportSurface& s, Complex xi) {
  check_chart(xi);
  const double h = 2e-4 * (1.0 + std::norm(xi));
  const Complex i(0, 1);
  auto P = [&](Complex q) { return surface_point(s, q).vec(); };

  const Vec3 p0 = P(xi);
  auto second = [&](double hh, Vec3& paa, Vec3& pbb, Vec3& pab, Vec3& pa,
                    Vec3& pb) {
    const Vec3 fpa = P(xi + hh), fma = P(xi - hh);
    const Vec3 fpb = P(xi + i * hh), fmb = P(xi - i * hh);
    pa = (fpa - fma) / (2 * hh);
    pb = (fpb - fmb) / (2 * hh);
    paa = (fpa - 2 * p0 + fma) / (hh * hh);
    pbb = (fpb - 2 * p0 + fmb) / (hh * hh);
    const Vec3 fpp = P(xi + hh + i * hh), fpm = P(xi + hh - i * hh);
    const Vec3 fmp = P(xi - hh + i * hh), fmm = P(xi - hh - i * hh);
    pab = (fpp - fpm - fmp + fmm) / (4 * hh * hh);
  };

  Vec3 paa1, pbb1, pab1, pa1, pb1, paa2, pbb2, pab2, pa2, pb2;
  second(h, paa1, pbb1, pab1, pa1, pb1);
  second(h / 2, paa2, pbb2, pab2, pa2, pb2);
  auto rich = [](const Vec3& c, const Vec3& f) { return ((4.0 * f - c) / 3.0).eval(); };
  const Vec3 pa = rich(pa1, pa2), pb = rich(pb1, pb2);
  const Vec3 paa = rich(paa1, paa2), pbb = rich(pbb1, pbb2), pab = rich(pab1, pab2);

  const Vec3 nu = xi_to_direction(xi);  // outward normal
  Eigen::Matrix2d I, II;
  I << pa.dot(pa), pa.dot(pb), pa.dot(pb), pb.dot(pb);
  II << paa.dot(nu), pab.dot(nu), pab.dot(nu), pbb.dot(nu);
  const double scale = I.trace();
  if (!(I.determinant() > 1e-12 * scale * scale)) {
    fail(ErrorCode::DegenerateMetric, "shape_operator_oracle: degenerate metric");
  }

  // Normal curvature with the outward normal is -II/I; radii are reciprocals.
  // Generalized symmetric eigenproblem (-II) v = k I v via Cholesky reduction.
  const Eigen::Matrix2d A = -II;
  const Eigen::LLT<Eigen::Matrix2d> llt(I);
  const Eigen::Matrix2d L = llt.matrixL();
  const Eigen::Matrix2d Li = L.inverse();
  const Eigen::Matrix2d B = Li * A * Li.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(B);
  const Eigen::Vector2d k = es.eigenvalues();  // ascending curvatures
  Eigen::Matrix2d evec = Li.transpose() * es.eigenvectors();

  ShapeOracleResult out;
  // Smallest curvature = largest radius first.
  for (int j = 0; j < 2; ++j) {
    const double curv = k(j);
    out.radii[j] = 1.0 / curv;
    const Eigen::Vector2d v = evec.col(j);
    Vec3 dir = v.x() * pa + v.y() * pb;
    dir -= dir.dot(nu) * nu;
    out.directions[j] = dir.normalized();
  }
  return out;
}

ConvexityResult convexity_check(const SupportSurface& s, int grid_n) {
  if (grid_n < 100) grid_n = 100;
  const Mat3 flip = (Mat3() << 1, 0, 0, 0, -1, 0, 0, 0, -1).finished();
  const SupportSurface flipped = rotate_frame(s, flip);
  ConvexityResult out;
  out.margin = std::numeric_limits<double>::infinity();
  out.min_support = std::numeric_limits<double>::infinity();
  for (const Vec3& n : fibonacci_directions(grid_n)) {
    CurvatureData cd;
    if (n.z() > -0.2) {
      cd = curvature_raw(s, lines::direction_to_xi(n));
    } else {
      cd = curvature_raw(flipped, lines::direction_to_xi(flip * n));
    }
    out.margin = std::min(out.margin, cd.psi - std::abs(cd.sigma));
    out.min_support = std::min(out.min_support, cd.r);
  }
  // Curvature criterion only: min_support merely records where the origin
  // sits relative to the body and does not affect convexity.
  out.convex = out.margin > 0;
  return out;
}

SupportSurface rotate_frame(const SupportSurface& s, const Mat3& Q) {
  if ((Q.transpose() * Q - Mat3::Identity()).norm() > 1e-12 ||
      Q.determinant() < 0) {
    fail(ErrorCode::NotOrthonormal, "rotate_frame: Q must be a proper rotation");
  }
  SupportSurface out = s;
  out.frame_ = Q * s.frame_;
  return out;
}

std::vector<Vec3> fibonacci_directions(int n) {
  std::vector<Vec3> dirs;
  dirs.reserve(n);
  const double ga = M_PI * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = ga * k;
    dirs.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return dirs;
}

}  // namespace linecurve::surface
