#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ffparity/poly.hpp"
#include "ffparity/xpoly.hpp"

namespace ffp {

/// Discriminant -16(4A^3 + 27B^2).
RatFunc discriminant(const RatFunc& A, const RatFunc& B);
/// 6912 A^3 / (4A^3 + 27B^2); DomainError when the curve is singular.
RatFunc j_invariant(const RatFunc& A, const RatFunc& B);
/// Coefficient of x^(p-1) in (x^3 + Ax + B)^((p-1)/2) by the multinomial sum.
RatFunc hasse_invariant(const RatFunc& A, const RatFunc& B);

/// y^2 = x^3 + Ax + B over F_q(t), stored as an integral model.
///
/// Rational inputs are cleared to polynomials by (A, B) -> (u^4 A, u^6 B) with
/// u the lcm of the denominators; `scale()` returns that u.
class Curve {
 public:
  /// Throws SingularCurveError when the discriminant vanishes and
  /// IsotrivialCurveError when j is constant.
  Curve(const RatFunc& A, const RatFunc& B);
  /// Curve file: `q = ...`, `A = ...`, `B = ...` lines; `#` starts a comment.
  static Curve parse(std::string_view text);

  const FieldPtr& field() const { return A_.field(); }
  const Poly& A() const { return A_; }
  const Poly& B() const { return B_; }
  const Poly& scale() const { return u_; }

  Poly discriminant() const;
  RatFunc j_invariant() const;
  Poly hasse_invariant() const;
  /// The curve E' with coefficients A^p, B^p.
  Curve frobenius_twist() const;

  /// `q=<q>;A=<A>;B=<B>`, unique for the integral model.
  std::string canonical() const;
  /// Curve-file text that parses back to this model.
  std::string to_file() const;

 private:
  Poly A_, B_, u_;
};

/// The reduced division polynomial g_m: psi_m = g_m for odd m and y * g_m for
/// even m, with y^2 replaced by x^3 + Ax + B.
struct DivisionPolynomial {
  XPoly g;
  bool has_y_factor;
};
DivisionPolynomial division_polynomial(const Curve& E, unsigned m);

/// The polynomial whose roots are the x-coordinates of the nonzero points in
/// the kernel of Verschiebung E' -> E, leading coefficient the Hasse invariant.
/// `psi_constant` is the leading coefficient c of psi_p(E') = c * g^p with g
/// monic; c = unit * alpha^k with unit in F_p^*.
struct KernelPolynomial {
  std::vector<RatFunc> coeffs;  // in x, low to high
  RatFunc psi_constant;
  int k;
  Fq unit;
  std::size_t degree() const { return coeffs.size() - 1; }
};
/// Throws InternalError when psi_p(E') lacks the p-th-power structure.
KernelPolynomial verschiebung_kernel_poly(const Curve& E);

std::string to_string(const KernelPolynomial& f);

}  // namespace ffp
