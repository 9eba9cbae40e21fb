#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ffparity/poly.hpp"

namespace ffp {

/// Polynomial in x with coefficients in F_q[t], low to high, no trailing zeros.
class XPoly {
 public:
  explicit XPoly(FieldPtr F) : F_(std::move(F)) {}
  XPoly(FieldPtr F, std::vector<Poly> coeffs);
  static XPoly constant(const Poly& c);
  static XPoly x(const FieldPtr& F);

  const FieldPtr& field() const { return F_; }
  const std::vector<Poly>& coeffs() const { return c_; }
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  bool is_zero() const { return c_.empty(); }
  Poly coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Poly(F_); }
  Poly lead() const { return c_.empty() ? Poly(F_) : c_.back(); }

  friend XPoly operator+(const XPoly& a, const XPoly& b);
  friend XPoly operator-(const XPoly& a, const XPoly& b);
  friend XPoly operator*(const XPoly& a, const XPoly& b);
  XPoly scaled(const Poly& c) const;
  XPoly scaled(Fq c) const;
  friend bool operator==(const XPoly& a, const XPoly& b) { return a.F_ == b.F_ && a.c_ == b.c_; }

  /// Specialize t := c, giving a polynomial over F_q in x.
  Poly at_t(Fq c) const;

 private:
  void trim();
  FieldPtr F_;
  std::vector<Poly> c_;
};

/// Pseudo-remainder: lc(g)^k f mod g computed without leaving F_q[t][x].
XPoly pseudo_remainder(XPoly f, const XPoly& g);

}  // namespace ffp
