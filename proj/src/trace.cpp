#include "linecurve/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "linecurve/errors.hpp"
#include "linecurve/foliation.hpp"
#include "linecurve/lines.hpp"

namespace linecurve::trace {

using surface::SupportSurface;

namespace {

constexpr double kPi = std::numbers::pi;

Complex xi_of_direction(const Vec3& v) {
  double denom = std::max(1.0 + v.z(), 1e-12);
  return Complex(v.x() / denom, v.y() / denom);
}

// Surface point with outward normal n, straight from the support function:
// P = h n + tangential gradient of h.
Vec3 normal_point(const SupportSurface& s, const Vec3& n) {
  double h;
  Vec3 g;
  Mat3 hess;
  s.ambient_jet(n, h, g, hess);
  return h * n + (g - n.dot(g) * n);
}

void tangent_basis(const Vec3& n, Vec3& e1, Vec3& e2) {
  Vec3 a = std::abs(n.x()) < 0.7 ? Vec3::UnitX() : Vec3::UnitY();
  e1 = (a - n.dot(a) * n).normalized();
  e2 = n.cross(e1);
}

// Local chart of the two-normal state around (n1, n2): four real coordinates
// in the tangent planes, renormalized back to the sphere.
struct State {
  Vec3 n1, n2;
  Vec3 e11, e12, e21, e22;

  static State at(const Vec3& n1, const Vec3& n2) {
    State st;
    st.n1 = n1;
    st.n2 = n2;
    tangent_basis(n1, st.e11, st.e12);
    tangent_basis(n2, st.e21, st.e22);
    return st;
  }
  Vec3 dir1(const Eigen::Vector4d& x) const {
    return (n1 + x(0) * e11 + x(1) * e12).normalized();
  }
  Vec3 dir2(const Eigen::Vector4d& x) const {
    return (n2 + x(2) * e21 + x(3) * e22).normalized();
  }
};

Vec3 mismatch(const SupportSurface& s1, const SupportSurface& s2,
              const State& st, const Eigen::Vector4d& x) {
  return normal_point(s1, st.dir1(x)) - normal_point(s2, st.dir2(x));
}

Eigen::Matrix<double, 3, 4> mismatch_jacobian(const SupportSurface& s1,
                                              const SupportSurface& s2,
                                              const State& st,
                                              const Eigen::Vector4d& x) {
  Eigen::Matrix<double, 3, 4> jac;
  const double h = 1e-7;
  for (int c = 0; c < 4; ++c) {
    Eigen::Vector4d xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    jac.col(c) = (mismatch(s1, s2, st, xp) - mismatch(s1, s2, st, xm)) / (2 * h);
  }
  return jac;
}

// Damped Gauss-Newton (minimum-norm steps) from a normal pair toward a common
// point. Returns the final residual.
double polish_pair(const SupportSurface& s1, const SupportSurface& s2, Vec3& n1,
                   Vec3& n2, double tol) {
  double res = 0.0;
  for (int it = 0; it < 120; ++it) {
    State st = State::at(n1, n2);
    Eigen::Vector4d x = Eigen::Vector4d::Zero();
    Vec3 f = mismatch(s1, s2, st, x);
    res = f.norm();
    if (res <= tol) return res;
    auto jac = mismatch_jacobian(s1, s2, st, x);
    Eigen::Matrix3d jjt = jac * jac.transpose();
    jjt += 1e-14 * Eigen::Matrix3d::Identity();
    Eigen::Vector4d step = -jac.transpose() * jjt.ldlt().solve(f);
    if (!step.allFinite()) return res;
    double damp = 1.0;
    bool moved = false;
    for (int half = 0; half < 25; ++half) {
      Eigen::Vector4d trial = damp * step;
      double tr = mismatch(s1, s2, st, trial).norm();
      if (tr < res) {
        n1 = st.dir1(trial);
        n2 = st.dir2(trial);
        moved = true;
        break;
      }
      damp *= 0.5;
    }
    if (!moved) return res;
  }
  return res;
}

Seed make_seed(const SupportSurface& s1, const Vec3& n1, const Vec3& n2,
               double parallel_tol) {
  if (n1.cross(n2).norm() < parallel_tol)
    fail(ErrorCode::TangentialContact, "surface normals parallel at contact");
  Seed seed;
  seed.n1 = n1;
  seed.n2 = n2;
  seed.xi1 = xi_of_direction(n1);
  seed.xi2 = xi_of_direction(n2);
  seed.point = normal_point(s1, n1);
  return seed;
}

}  // namespace

Seed find_seed(const SupportSurface& s1, const SupportSurface& s2,
               const SeedOptions& opt) {
  auto dirs = surface::fibonacci_directions(opt.scan_n);
  std::vector<Vec3> p1(dirs.size());
  std::vector<double> h2(dirs.size());
  for (size_t k = 0; k < dirs.size(); ++k) {
    p1[k] = normal_point(s1, dirs[k]);
    h2[k] = s2.value(dirs[k]);
  }
  // Signed clearance of p1[k] from the second body: positive strictly inside.
  // The minimizing direction doubles as the second normal of the start pair.
  struct Cell {
    double score;
    size_t i, j;
  };
  std::vector<Cell> cells(dirs.size());
  for (size_t k = 0; k < dirs.size(); ++k) {
    double best = 1e300;
    size_t arg = 0;
    for (size_t m = 0; m < dirs.size(); ++m) {
      double v = h2[m] - p1[k].dot(dirs[m]);
      if (v < best) {
        best = v;
        arg = m;
      }
    }
    cells[k] = {std::abs(best), k, arg};
  }
  std::sort(cells.begin(), cells.end(),
            [](const Cell& a, const Cell& b) { return a.score < b.score; });

  double best_res = 1e300;
  double best_cross = 1.0;
  for (int c = 0; c < opt.polish_starts && c < (int)cells.size(); ++c) {
    Vec3 n1 = dirs[cells[c].i];
    Vec3 n2 = dirs[cells[c].j];
    double res = polish_pair(s1, s2, n1, n2, opt.residual_tol);
    if (res <= opt.residual_tol) return make_seed(s1, n1, n2, opt.parallel_tol);
    if (res < best_res) {
      best_res = res;
      best_cross = n1.cross(n2).norm();
    }
  }
  // a polish stalling just short of contact with aligning normals is the
  // signature of a tangency, not of disjoint bodies
  if (best_res < 1e-4 && best_cross < 1e-2)
    fail(ErrorCode::TangentialContact, "polish stalled at a tangency");
  fail(ErrorCode::NoIntersection, "no common point found by scan and polish");
}

Seed polish_seed(const SupportSurface& s1, const SupportSurface& s2,
                 Complex xi1, Complex xi2, const SeedOptions& opt) {
  Vec3 n1 = lines::xi_to_direction(xi1);
  Vec3 n2 = lines::xi_to_direction(xi2);
  double res = polish_pair(s1, s2, n1, n2, opt.residual_tol);
  if (res > opt.residual_tol)
    fail(ErrorCode::NoIntersection, "seed polish stalled above tolerance");
  return make_seed(s1, n1, n2, opt.parallel_tol);
}

namespace {

// Null-space tangent of the 3x4 system, with the 3-space image direction.
void continuation_tangent(const SupportSurface& s1, const SupportSurface& s2,
                          const State& st, Eigen::Vector4d& t4, Vec3& t3) {
  auto jac = mismatch_jacobian(s1, s2, st, Eigen::Vector4d::Zero());
  Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(
      jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
  t4 = svd.matrixV().col(3);
  double nrm = t4.norm();
  if (svd.singularValues()(2) < 1e-10)
    fail(ErrorCode::TangentialContact, "rank-deficient continuation system");
  t4 /= nrm;
  t3 = t4(0) * (jac.col(0)) + t4(1) * (jac.col(1));
  double n3 = t3.norm();
  if (n3 < 1e-12)
    fail(ErrorCode::TangentialContact, "stationary curve point");
  t3 /= n3;
}

// Newton correction onto the curve within the hyperplane t4.x = target.
bool correct(const SupportSurface& s1, const SupportSurface& s2,
             const State& st, const Eigen::Vector4d& t4, double target,
             Eigen::Vector4d& x, double tol, int max_iters) {
  for (int it = 0; it < max_iters; ++it) {
    Vec3 f = mismatch(s1, s2, st, x);
    double c = t4.dot(x) - target;
    if (f.norm() <= tol && std::abs(c) <= tol) return true;
    auto jac = mismatch_jacobian(s1, s2, st, x);
    Eigen::Matrix4d a;
    a.topRows<3>() = jac;
    a.row(3) = t4.transpose();
    Eigen::Vector4d rhs;
    rhs << f, c;
    Eigen::Vector4d step = a.fullPivLu().solve(rhs);
    if (!step.allFinite()) return false;
    x -= step;
    if (step.norm() > 10.0) return false;
  }
  return false;
}

double unwrap_near(double prev, double raw, double period) {
  return raw + period * std::round((prev - raw) / period);
}

// Composite cubic-Hermite arclength of one segment with unit end tangents.
double segment_length(const Vec3& p0, const Vec3& t0, const Vec3& p1,
                      const Vec3& t1) {
  static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                               0.5384693101056831, 0.9061798459386640};
  static const double gw[5] = {0.2369268850561891, 0.4786286704993665,
                               0.5688888888888889, 0.4786286704993665,
                               0.2369268850561891};
  double d = (p1 - p0).norm();
  if (d == 0.0) return 0.0;
  Vec3 m0 = t0 * d, m1 = t1 * d;
  double len = 0.0;
  for (int q = 0; q < 5; ++q) {
    double t = 0.5 * (gx[q] + 1.0);
    double h00 = 6 * t * t - 6 * t;
    double h10 = 3 * t * t - 4 * t + 1;
    double h01 = -6 * t * t + 6 * t;
    double h11 = 3 * t * t - 2 * t;
    Vec3 dv = h00 * p0 + h10 * m0 + h01 * p1 + h11 * m1;
    len += 0.5 * gw[q] * dv.norm();
  }
  return len;
}

}  // namespace

TracedIntersection trace_curve(const SupportSurface& s1,
                               const SupportSurface& s2, const Seed& seed,
                               const TraceOptions& opt) {
  TracedIntersection out;
  Vec3 n1 = seed.n1, n2 = seed.n2;
  {
    double res = polish_pair(s1, s2, n1, n2, opt.corrector_tol);
    if (res > 1e-9) fail(ErrorCode::CorrectorDiverged, "invalid seed");
  }
  const Vec3 seed_n1 = n1, seed_n2 = n2;

  double h = opt.step;
  Vec3 prev_t3 = Vec3::Zero();
  bool first = true;
  double u = 0.0;

  auto push_sample = [&](const Vec3& m1, const Vec3& m2, const Vec3& t3,
                         double uu) {
    IntersectionSample smp;
    smp.u = uu;
    smp.n1 = m1;
    smp.n2 = m2;
    smp.point = normal_point(s1, m1);
    // the tangent is perpendicular to both normals; the cross product gives
    // it to machine precision, the continuation tangent only fixes the sign
    Vec3 cr = m1.cross(m2);
    smp.tangent = cr.norm() > 1e-10 ? Vec3(cr.normalized()) : t3;
    if (smp.tangent.dot(t3) < 0) smp.tangent = -smp.tangent;
    out.samples.push_back(smp);
  };

  for (int step_count = 0;; ++step_count) {
    if (step_count >= opt.max_steps)
      fail(ErrorCode::OpenCurveBudgetExceeded, "continuation budget exhausted");
    State st = State::at(n1, n2);
    Eigen::Vector4d t4;
    Vec3 t3;
    continuation_tangent(s1, s2, st, t4, t3);
    if (first) {
      // canonical start orientation: along nu1 x nu2, flipped on request
      double along = t3.dot(n1.cross(n2));
      if (along * opt.direction < 0) {
        t4 = -t4;
        t3 = -t3;
      }
      first = false;
    } else if (t3.dot(prev_t3) < 0) {
      t4 = -t4;
      t3 = -t3;
    }
    push_sample(n1, n2, t3, u);
    prev_t3 = t3;

    // closure: once near the seed again, correct onto its transversal plane
    double dist_seed =
        std::sqrt((n1 - seed_n1).squaredNorm() + (n2 - seed_n2).squaredNorm());
    if (step_count >= 10 && dist_seed < opt.step) {
      Vec3 m1 = n1, m2 = n2;
      double du = 0.0;
      bool landed = false;
      for (int refine = 0; refine < 4; ++refine) {
        State stc = State::at(m1, m2);
        Eigen::Vector4d tc;
        Vec3 t3c;
        continuation_tangent(s1, s2, stc, tc, t3c);
        Eigen::Vector4d x;
        x << stc.e11.dot(seed_n1 - m1), stc.e12.dot(seed_n1 - m1),
            stc.e21.dot(seed_n2 - m2), stc.e22.dot(seed_n2 - m2);
        double target = tc.dot(x);
        if (!correct(s1, s2, stc, tc, target, x, opt.corrector_tol,
                     opt.max_corrector_iters)) {
          landed = false;
          break;
        }
        if (refine == 0) du = std::abs(target);
        m1 = stc.dir1(x);
        m2 = stc.dir2(x);
        landed = true;
        if ((m1 - seed_n1).norm() + (m2 - seed_n2).norm() < 1e-13) break;
      }
      if (landed) {
        out.closure_gap =
            (normal_point(s1, m1) - normal_point(s1, seed_n1)).norm();
        out.closing_u = du;
        out.closed = true;
        break;
      }
    }

    // predictor-corrector with step halving
    bool advanced = false;
    while (h >= opt.min_step) {
      Eigen::Vector4d x = h * t4;
      if (correct(s1, s2, st, t4, h, x, opt.corrector_tol,
                  opt.max_corrector_iters)) {
        n1 = st.dir1(x);
        n2 = st.dir2(x);
        u += h;
        advanced = true;
        if (h < opt.step) h = std::min(opt.step, 1.5 * h);
        break;
      }
      h *= 0.5;
    }
    if (!advanced)
      fail(ErrorCode::CorrectorDiverged, "corrector failed at minimum step");
  }

  // arclength and enrichment
  size_t n = out.samples.size();
  double s = 0.0;
  for (size_t k = 0; k < n; ++k) {
    if (k > 0)
      s += segment_length(out.samples[k - 1].point, out.samples[k - 1].tangent,
                          out.samples[k].point, out.samples[k].tangent);
    out.samples[k].s = s;
  }
  out.total_length = s;
  if (out.closed)
    out.total_length += segment_length(out.samples[n - 1].point,
                                       out.samples[n - 1].tangent,
                                       out.samples[0].point,
                                       out.samples[0].tangent);

  double prev_a1 = 0.0, prev_a2 = 0.0;
  for (size_t k = 0; k < n; ++k) {
    auto& smp = out.samples[k];
    smp.xi1 = xi_of_direction(smp.n1);
    smp.xi2 = xi_of_direction(smp.n2);
    smp.alpha = lines::angle_between(smp.xi1, smp.xi2);
    auto cfg = AngleConfig::from_alpha(smp.alpha);
    double a1 = lines::cone_param_A1(smp.xi1, smp.xi2, cfg);
    double a2 = lines::cone_param_A2(smp.xi1, cfg, a1);
    smp.A1 = k == 0 ? a1 : unwrap_near(prev_a1, a1, 2.0 * kPi);
    smp.A2 = k == 0 ? a2 : unwrap_near(prev_a2, a2, 2.0 * kPi);
    prev_a1 = smp.A1;
    prev_a2 = smp.A2;
    auto c1 = surface::curvature_data(s1, smp.xi1);
    auto c2 = surface::curvature_data(s2, smp.xi2);
    smp.sigma1 = c1.sigma;
    smp.psi1 = c1.psi;
    smp.kappa1 = c1.kappa;
    smp.sigma2 = c2.sigma;
    smp.psi2 = c2.psi;
    smp.kappa2 = c2.kappa;
    if (std::abs(c1.sigma) < 1e-6 * c1.psi) out.umbilic1 = true;
    if (std::abs(c2.sigma) < 1e-6 * c2.psi) out.umbilic2 = true;
  }
  return out;
}

AngleProfile angle_profile(const TracedIntersection& curve) {
  AngleProfile out;
  double lo = 1e300, hi = -1e300;
  for (auto& smp : curve.samples) {
    out.alpha.push_back(smp.alpha);
    lo = std::min(lo, smp.alpha);
    hi = std::max(hi, smp.alpha);
  }
  out.max_deviation = curve.samples.empty() ? 0.0 : hi - lo;
  out.constant_angle = out.max_deviation <= 1e-7;
  return out;
}

std::vector<double> fd_weights(double z, std::span<const double> x) {
  // B. Fornberg's recursion for first-derivative weights at z
  size_t n = x.size();
  std::vector<std::vector<double>> c(n, std::vector<double>(2, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (size_t i = 1; i < n; ++i) {
    double c2 = 1.0;
    double c5 = c4;
    c4 = x[i] - z;
    for (size_t j = 0; j < i; ++j) {
      double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        c[i][1] = c1 * (c[i - 1][0] - c5 * c[i - 1][1]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      c[j][1] = (c4 * c[j][1] - c[j][0]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (size_t i = 0; i < n; ++i) w[i] = c[i][1];
  return w;
}

std::vector<double> loop_derivative(std::span<const double> values,
                                    std::span<const double> s, bool closed,
                                    double total_length) {
  size_t n = values.size();
  if (n < 7) fail(ErrorCode::SamplingTooCoarse, "need at least 7 samples");
  std::vector<double> out(n);
  for (size_t k = 0; k < n; ++k) {
    long lo = (long)k - 3, hi = (long)k + 3;
    if (!closed) {
      lo = std::clamp<long>(lo, 0, (long)n - 7);
      hi = lo + 6;
    }
    double xs[7], fs[7];
    for (long i = lo; i <= hi; ++i) {
      long idx = ((i % (long)n) + n) % (long)n;
      double shift = 0.0;
      if (closed) {
        if (i < 0) shift = -total_length;
        if (i >= (long)n) shift = total_length;
      }
      xs[i - lo] = s[idx] + shift;
      fs[i - lo] = values[idx];
    }
    auto w = fd_weights(s[k], std::span<const double>(xs, 7));
    double d = 0.0;
    for (int i = 0; i < 7; ++i) d += w[i] * fs[i];
    out[k] = d;
  }
  return out;
}

namespace {

// Derivative of a complex-valued sample sequence against the trace parameter.
std::vector<Complex> complex_derivative(const TracedIntersection& curve,
                                        auto&& get) {
  size_t n = curve.samples.size();
  std::vector<double> re(n), im(n), uu(n);
  for (size_t k = 0; k < n; ++k) {
    Complex v = get(curve.samples[k]);
    re[k] = v.real();
    im[k] = v.imag();
    uu[k] = curve.samples[k].u;
  }
  double period =
      curve.closed ? curve.samples.back().u + curve.closing_u : 0.0;
  auto dre = loop_derivative(re, uu, curve.closed, period);
  auto dim = loop_derivative(im, uu, curve.closed, period);
  std::vector<Complex> out(n);
  for (size_t k = 0; k < n; ++k) out[k] = Complex(dre[k], dim[k]);
  return out;
}

}  // namespace

std::vector<double> beta_profile(TracedIntersection& curve) {
  if (curve.umbilic1)
    fail(ErrorCode::UmbilicOnCurve, "first surface umbilic along the curve");
  if (!angle_profile(curve).constant_angle)
    fail(ErrorCode::NotConstantAngle, "branch angle needs a constant angle");
  auto dxi1 = complex_derivative(curve, [](const IntersectionSample& s) {
    return s.xi1;
  });
  std::vector<double> betas;
  double prev = 0.0;
  for (size_t k = 0; k < curve.samples.size(); ++k) {
    auto& smp = curve.samples[k];
    Complex c = dxi1[k];
    if (std::abs(c) < 1e-12)
      fail(ErrorCode::NoBranch, "stationary chart velocity");
    // gamma with psi e^{i gamma} + conj(sigma) e^{-i gamma} a positive
    // multiple of the chart velocity
    double delta = std::arg(c);
    double vs = std::arg(std::conj(smp.sigma1));
    double mag = std::abs(smp.sigma1);
    double num = smp.psi1 * std::sin(delta) - mag * std::sin(vs - delta);
    double den = smp.psi1 * std::cos(delta) - mag * std::cos(vs - delta);
    double gamma = std::atan2(num, den);
    Complex v = smp.psi1 * std::polar(1.0, gamma) +
                std::conj(smp.sigma1) * std::polar(1.0, -gamma);
    if ((v * std::conj(c)).real() < 0.0) {
      gamma += kPi;
      v = -v;
    }
    double cross = std::abs((v * std::conj(c)).imag()) /
                   (std::abs(v) * std::abs(c));
    if (cross > 1e-8)
      fail(ErrorCode::NoBranch, "no branch matches the chart velocity");
    double beta = gamma - smp.A1;
    if (k > 0) beta = unwrap_near(prev, beta, 2.0 * kPi);
    prev = beta;
    smp.beta = beta;
    betas.push_back(beta);
  }
  return betas;
}

PhiProfiles phi_profiles(TracedIntersection& curve, const SupportSurface& s1,
                         const SupportSurface& s2) {
  PhiProfiles out;
  size_t n = curve.samples.size();
  auto fill = [&](const SupportSurface& s, bool umbilic, bool second) -> bool {
    if (umbilic) return false;
    std::vector<Vec3> tangents(n), principals(n), normals(n);
    for (size_t k = 0; k < n; ++k) {
      auto& smp = curve.samples[k];
      tangents[k] = smp.tangent;
      normals[k] = second ? smp.n2 : smp.n1;
      principals[k] =
          foliation::principal_direction(s, second ? smp.xi2 : smp.xi1);
    }
    std::vector<double> phi(n);
    if (curve.closed) {
      auto track = foliation::phi_winding(tangents, principals, normals);
      phi = track.phi;
      (second ? out.m : out.n) = track.n;
    } else {
      phi[0] = std::atan2(tangents[0].dot(normals[0].cross(principals[0])),
                          tangents[0].dot(principals[0]));
      for (size_t k = 1; k < n; ++k) {
        double raw = std::atan2(tangents[k].dot(normals[k].cross(principals[k])),
                                tangents[k].dot(principals[k]));
        phi[k] = unwrap_near(phi[k - 1], raw, kPi);
      }
    }
    for (size_t k = 0; k < n; ++k)
      (second ? curve.samples[k].phi2 : curve.samples[k].phi1) = phi[k];
    (second ? out.phi2 : out.phi1) = std::move(phi);
    return true;
  };
  out.valid1 = fill(s1, curve.umbilic1, false);
  out.valid2 = fill(s2, curve.umbilic2, true);
  if (!out.valid1 && !out.valid2)
    fail(ErrorCode::UmbilicOnCurve, "both surfaces umbilic along the curve");
  return out;
}

TorsionProfiles torsion_profiles(TracedIntersection& curve,
                                 const SupportSurface&,
                                 const SupportSurface&) {
  TorsionProfiles out;
  size_t n = curve.samples.size();
  if (n < 5) fail(ErrorCode::SamplingTooCoarse, "need at least 5 samples");
  std::vector<double> ss(n);
  for (size_t k = 0; k < n; ++k) ss[k] = curve.samples[k].s;

  auto darboux = [&](bool second) {
    std::vector<double> comp[3];
    for (int c = 0; c < 3; ++c) {
      comp[c].resize(n);
      for (size_t k = 0; k < n; ++k)
        comp[c][k] =
            (second ? curve.samples[k].n2 : curve.samples[k].n1)(c);
    }
    std::vector<double> d[3];
    for (int c = 0; c < 3; ++c)
      d[c] = loop_derivative(comp[c], ss, curve.closed, curve.total_length);
    std::vector<double> tau(n);
    for (size_t k = 0; k < n; ++k) {
      Vec3 dnu(d[0][k], d[1][k], d[2][k]);
      const Vec3& nu = second ? curve.samples[k].n2 : curve.samples[k].n1;
      tau[k] = -dnu.dot(nu.cross(curve.samples[k].tangent));
      (second ? curve.samples[k].tau_g2 : curve.samples[k].tau_g1) = tau[k];
    }
    return tau;
  };
  out.tau1 = darboux(false);
  out.tau2 = darboux(true);

  // Euler form (lambda - mu) sin(phi) cos(phi) where the foliation is defined
  auto euler = [&](bool second, bool umbilic, const std::vector<double>& dar,
                   double& gap) {
    std::vector<double> vals;
    if (umbilic) return vals;
    bool have_phi = true;
    for (size_t k = 0; k < n && have_phi; ++k) {
      auto& smp = curve.samples[k];
      double phi = second ? smp.phi2 : smp.phi1;
      double psi = second ? smp.psi2 : smp.psi1;
      double kap = second ? smp.kappa2 : smp.kappa1;
      double mag = std::abs(second ? smp.sigma2 : smp.sigma1);
      double r_small = psi - mag, r_big = psi + mag;
      if (kap <= 0.0) {
        have_phi = false;
        break;
      }
      double lam = 1.0 / r_small, mu = 1.0 / r_big;
      vals.push_back((lam - mu) * std::sin(phi) * std::cos(phi));
    }
    if (!have_phi) {
      vals.clear();
      return vals;
    }
    gap = 0.0;
    for (size_t k = 0; k < vals.size(); ++k)
      gap = std::max(gap, std::abs(vals[k] - dar[k]));
    return vals;
  };
  out.euler1 = euler(false, curve.umbilic1, out.tau1, out.cross_gap1);
  out.euler2 = euler(true, curve.umbilic2, out.tau2, out.cross_gap2);
  return out;
}

}  // namespace linecurve::trace
