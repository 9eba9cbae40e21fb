#include "ffparity/xpoly.hpp"

#include "ffparity/errors.hpp"

namespace ffp {

XPoly::XPoly(FieldPtr F, std::vector<Poly> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != F_) throw DomainError("XPoly coefficient over a different field");
  trim();
}

XPoly XPoly::constant(const Poly& c) { return XPoly(c.field(), {c}); }

XPoly XPoly::x(const FieldPtr& F) { return XPoly(F, {Poly(F), Poly::constant(F, F->one())}); }

void XPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

XPoly operator+(const XPoly& a, const XPoly& b) {
  std::vector<Poly> r(std::max(a.c_.size(), b.c_.size()), Poly(a.F_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
  return XPoly(a.F_, std::move(r));
}

XPoly operator-(const XPoly& a, const XPoly& b) {
  std::vector<Poly> r(std::max(a.c_.size(), b.c_.size()), Poly(a.F_));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
  return XPoly(a.F_, std::move(r));
}

XPoly operator*(const XPoly& a, const XPoly& b) {
  if (a.is_zero() || b.is_zero()) return XPoly(a.F_);
  std::vector<Poly> r(a.c_.size() + b.c_.size() - 1, Poly(a.F_));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return XPoly(a.F_, std::move(r));
}

XPoly XPoly::scaled(const Poly& c) const {
  std::vector<Poly> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x * c);
  return XPoly(F_, std::move(r));
}

XPoly XPoly::scaled(Fq c) const {
  std::vector<Poly> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x.scaled(c));
  return XPoly(F_, std::move(r));
}

Poly XPoly::at_t(Fq c) const {
  std::vector<Fq> r;
  r.reserve(c_.size());
  for (const auto& x : c_) r.push_back(x.eval(c));
  return Poly(F_, std::move(r));
}

XPoly pseudo_remainder(XPoly f, const XPoly& g) {
  if (g.is_zero()) throw DomainError("pseudo-remainder by zero");
  const std::size_t dg = *g.degree();
  const Poly lg = g.lead();
  while (!f.is_zero() && *f.degree() >= dg) {
    const std::size_t shift = *f.degree() - dg;
    std::vector<Poly> mono(shift + 1, Poly(f.field()));
    mono[shift] = f.lead();
    f = f.scaled(lg) - XPoly(f.field(), std::move(mono)) * g;
  }
  return f;
}

}  // namespace ffp
