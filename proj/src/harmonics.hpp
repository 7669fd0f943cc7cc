#ifndef LINECURVE_HARMONICS_HPP
#define LINECURVE_HARMONICS_HPP

#include <vector>

#include "linecurve/types.hpp"

namespace linecurve::surface::detail {

// Trivariate polynomial with real coefficients, dense in the monomial list.
// Used for the homogeneous harmonic polynomials that extend real spherical
// harmonics off the unit sphere.
class Poly3 {
 public:
  struct Term {
    int i, j, k;
    double c;
  };

  Poly3() = default;
  explicit Poly3(std::vector<Term> terms) : terms_(std::move(terms)) {}

  static Poly3 constant(double c) { return Poly3({{0, 0, 0, c}}); }

  Poly3 operator+(const Poly3& o) const;
  Poly3 operator*(const Poly3& o) const;
  Poly3 scaled(double s) const;
  Poly3 derivative(int axis) const;

  double eval(const Vec3& p) const;
  void compress();

  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

// Real spherical harmonic Y_{l,m} (orthonormal on the sphere, no
// Condon-Shortley phase in the real combination) as a homogeneous harmonic
// polynomial of degree l. Requires 0 <= l <= 6, |m| <= l.
Poly3 real_spherical_harmonic(int l, int m);

// Polynomial with precomputed gradient and Hessian polynomials.
struct PolyJet {
  Poly3 value;
  Poly3 grad[3];
  Poly3 hess[3][3];

  static PolyJet from(const Poly3& p);
  double eval(const Vec3& n) const { return value.eval(n); }
  Vec3 grad_at(const Vec3& n) const;
  Mat3 hess_at(const Vec3& n) const;
};

}  // namespace linecurve::surface::detail

#endif
