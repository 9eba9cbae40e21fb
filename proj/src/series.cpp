#include "ffparity/series.hpp"

#include <algorithm>

#include "ffparity/errors.hpp"

namespace ffp::fseries {

namespace {
Fq at(const Coeffs& a, std::size_t i) { return i < a.size() ? a[i] : Fq{0}; }
}  // namespace

Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.add(at(a, i), at(b, i));
  return r;
}

Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.sub(at(a, i), at(b, i));
  return r;
}

Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n) {
  Coeffs r(n, F.zero());
  const std::size_t na = std::min(a.size(), n);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i].v == 0) continue;
    const std::size_t nb = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < nb; ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return r;
}

Coeffs scale(const Field& F, const Coeffs& a, Fq c, std::size_t n) {
  Coeffs r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = F.mul(at(a, i), c);
  return r;
}

Coeffs inverse(const Field& F, const Coeffs& a, std::size_t n) {
  if (a.empty() || a[0].v == 0) throw DomainError("series inverse needs a unit constant term");
  const Fq inv0 = F.inv(a[0]);
  Coeffs r(n, F.zero());
  if (n == 0) return r;
  r[0] = inv0;
  for (std::size_t k = 1; k < n; ++k) {
    Fq s = F.zero();
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s = F.add(s, F.mul(a[j], r[k - j]));
    r[k] = F.neg(F.mul(s, inv0));
  }
  return r;
}

Coeffs eval_poly(const Field& F, const std::vector<Fq>& poly, const Coeffs& x, std::size_t n) {
  Coeffs r(n, F.zero());
  for (std::size_t i = poly.size(); i-- > 0;) {
    r = mul(F, r, x, n);
    if (n) r[0] = F.add(r[0], poly[i]);
  }
  return r;
}

std::size_t order(const Coeffs& a, std::size_t n) {
  for (std::size_t i = 0; i < std::min(n, a.size()); ++i)
    if (a[i].v != 0) return i;
  return n;
}

}  // namespace ffp::fseries
