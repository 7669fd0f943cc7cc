#include "harmonics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "linecurve/errors.hpp"

namespace linecurve::surface::detail {

namespace {

// Complex-coefficient workhorse for the solid-harmonic recursion.
struct CPoly {
  struct Term {
    int i, j, k;
    Complex c;
  };
  std::vector<Term> terms;

  void compress() {
    std::map<std::tuple<int, int, int>, Complex> acc;
    for (const auto& t : terms) acc[{t.i, t.j, t.k}] += t.c;
    terms.clear();
    for (const auto& [key, c] : acc) {
      if (std::abs(c) > 1e-300) {
        terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
      }
    }
  }

  CPoly operator*(const CPoly& o) const {
    CPoly out;
    for (const auto& a : terms)
      for (const auto& b : o.terms)
        out.terms.push_back({a.i + b.i, a.j + b.j, a.k + b.k, a.c * b.c});
    out.compress();
    return out;
  }

  CPoly operator+(const CPoly& o) const {
    CPoly out;
    out.terms = terms;
    out.terms.insert(out.terms.end(), o.terms.begin(), o.terms.end());
    out.compress();
    return out;
  }

  CPoly scaled(Complex s) const {
    CPoly out = *this;
    for (auto& t : out.terms) t.c *= s;
    return out;
  }
};

CPoly cpoly_const(Complex c) { return CPoly{{{0, 0, 0, c}}}; }
CPoly cpoly_axis(int axis, Complex c) {
  CPoly p;
  p.terms.push_back({axis == 0 ? 1 : 0, axis == 1 ? 1 : 0, axis == 2 ? 1 : 0, c});
  return p;
}

// Unnormalized complex solid harmonic r^l P_l^m(cos theta) e^{im phi},
// m >= 0, as a polynomial in (x, y, z).
CPoly solid_harmonic(int l, int m) {
  // C_{m,m} = (2m-1)!! (x + i y)^m
  CPoly cmm = cpoly_const(1.0);
  const CPoly xy = cpoly_axis(0, 1.0) + cpoly_axis(1, Complex(0.0, 1.0));
  for (int k = 1; k <= m; ++k) cmm = (cmm * xy).scaled(2.0 * k - 1.0);
  if (l == m) return cmm;

  const CPoly z = cpoly_axis(2, 1.0);
  CPoly prev = cmm;                              // C_{m,m}
  CPoly cur = (z * cmm).scaled(2.0 * m + 1.0);   // C_{m+1,m}
  if (l == m + 1) return cur;

  CPoly r2 = cpoly_const(0.0);
  for (int a = 0; a < 3; ++a) r2 = r2 + cpoly_axis(a, 1.0) * cpoly_axis(a, 1.0);

  for (int ll = m + 2; ll <= l; ++ll) {
    // (l - m) C_{l,m} = (2l-1) z C_{l-1,m} - (l-1+m) r^2 C_{l-2,m}
    CPoly next = ((z * cur).scaled(2.0 * ll - 1.0) +
                  (r2 * prev).scaled(-(ll - 1.0 + m)))
                     .scaled(1.0 / (ll - m));
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

Poly3 Poly3::operator+(const Poly3& o) const {
  Poly3 out;
  out.terms_ = terms_;
  out.terms_.insert(out.terms_.end(), o.terms_.begin(), o.terms_.end());
  out.compress();
  return out;
}

Poly3 Poly3::operator*(const Poly3& o) const {
  Poly3 out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      out.terms_.push_back({a.i + b.i, a.j + b.j, a.k + b.k, a.c * b.c});
  out.compress();
  return out;
}

Poly3 Poly3::scaled(double s) const {
  Poly3 out = *this;
  for (auto& t : out.terms_) t.c *= s;
  return out;
}

Poly3 Poly3::derivative(int axis) const {
  Poly3 out;
  for (const auto& t : terms_) {
    Term d = t;
    int* e = axis == 0 ? &d.i : axis == 1 ? &d.j : &d.k;
    if (*e == 0) continue;
    d.c *= *e;
    *e -= 1;
    out.terms_.push_back(d);
  }
  return out;
}

double Poly3::eval(const Vec3& p) const {
  double sum = 0.0;
  for (const auto& t : terms_) {
    sum += t.c * std::pow(p.x(), t.i) * std::pow(p.y(), t.j) *
           std::pow(p.z(), t.k);
  }
  return sum;
}

void Poly3::compress() {
  std::map<std::tuple<int, int, int>, double> acc;
  for (const auto& t : terms_) acc[{t.i, t.j, t.k}] += t.c;
  terms_.clear();
  for (const auto& [key, c] : acc) {
    if (std::abs(c) > 1e-300) {
      terms_.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
    }
  }
}

Poly3 real_spherical_harmonic(int l, int m) {
  if (l < 0 || l > 6 || std::abs(m) > l) {
    fail(ErrorCode::SchemaError, "real_spherical_harmonic: need 0 <= l <= 6, |m| <= l");
  }
  const int am = std::abs(m);
  double lgr = 0.0;  // log((l-|m|)! / (l+|m|)!)
  for (int k = l - am + 1; k <= l + am; ++k) lgr -= std::log(double(k));
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * M_PI) * std::exp(lgr)) *
                      (m != 0 ? std::sqrt(2.0) : 1.0);

  const CPoly c = solid_harmonic(l, am);
  Poly3 out;
  std::vector<Poly3::Term> terms;
  for (const auto& t : c.terms) {
    const double part = (m >= 0) ? t.c.real() : t.c.imag();
    if (part != 0.0) terms.push_back({t.i, t.j, t.k, norm * part});
  }
  out = Poly3(std::move(terms));
  out.compress();
  return out;
}

PolyJet PolyJet::from(const Poly3& p) {
  PolyJet jet;
  jet.value = p;
  for (int a = 0; a < 3; ++a) jet.grad[a] = p.derivative(a);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) jet.hess[a][b] = jet.grad[a].derivative(b);
  return jet;
}

Vec3 PolyJet::grad_at(const Vec3& n) const {
  return Vec3(grad[0].eval(n), grad[1].eval(n), grad[2].eval(n));
}

Mat3 PolyJet::hess_at(const Vec3& n) const {
  Mat3 h;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) h(a, b) = hess[a][b].eval(n);
  return h;
}

}  // namespace linecurve::surface::detail
