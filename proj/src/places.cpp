#include "ffparity/places.hpp"

#include <algorithm>

#include "ffparity/errors.hpp"
#include "ffparity/series.hpp"

namespace ffp {

Place Place::infinity(const FieldPtr& F) {
  auto d = std::make_shared<Data>();
  d->base = F;
  d->degree = 1;
  d->residue = F;
  d->embedding = std::make_unique<Embedding>(F, F);
  return Place(std::shared_ptr<const Data>(std::move(d)));
}

Place::Place(const Poly& pi) {
  if (pi.is_constant() || pi.lead() != pi.field()->one() || !is_irreducible(pi))
    throw DomainError("place polynomial must be monic irreducible: " + ffp::to_string(pi));
  auto d = std::make_shared<Data>();
  const FieldPtr& F = pi.field();
  d->base = F;
  d->pi = pi;
  d->degree = static_cast<unsigned>(*pi.degree());
  d->residue = Field::get(F->p(), F->e() * d->degree);
  d->embedding = std::make_unique<Embedding>(F, d->residue);
  auto r = find_root(d->embedding->map(pi));
  if (!r) throw InternalError("place polynomial has no root in its residue field");
  d->theta = *r;
  d_ = std::move(d);
}

Place Place::parse(const FieldPtr& F, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s == "inf") return infinity(F);
  Poly pi = parse_poly(F, s);
  try {
    return Place(pi);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

const Poly& Place::poly() const {
  if (!d_->pi) throw DomainError("the infinite place has no polynomial");
  return *d_->pi;
}

Fq Place::reduce(const Poly& f) const {
  if (f.field() != base()) throw DomainError("polynomial over a different field than the place");
  return embedding().map(f).eval(theta());
}

std::string Place::to_string() const { return is_infinity() ? "inf" : ffp::to_string(poly()); }

bool operator==(const Place& a, const Place& b) {
  if (a.base() != b.base() || a.is_infinity() != b.is_infinity()) return false;
  return a.is_infinity() || a.poly() == b.poly();
}

bool operator<(const Place& a, const Place& b) {
  if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
  if (a.is_infinity()) return false;
  return a.poly() < b.poly();
}

std::int64_t valuation(const Poly& f, const Place& v) {
  if (f.is_zero()) return kInfiniteValuation;
  if (v.is_infinity()) return -static_cast<std::int64_t>(*f.degree());
  return multiplicity(f, v.poly());
}

std::int64_t valuation(const RatFunc& f, const Place& v) {
  if (f.is_zero()) return kInfiniteValuation;
  return valuation(f.num(), v) - valuation(f.den(), v);
}

Fq residue(const RatFunc& f, const Place& v) {
  const auto val = valuation(f, v);
  const Field& R = *v.residue_field();
  if (val < 0) throw DomainError("residue at a pole (valuation " + std::to_string(val) + ")");
  if (val > 0) return R.zero();
  if (v.is_infinity()) return R.div(f.num().lead(), f.den().lead());
  return R.div(v.reduce(f.num()), v.reduce(f.den()));
}

Fq LocalExpansion::at(std::int64_t k) const {
  if (is_zero() || k < valuation) return Fq{0};
  const auto i = static_cast<std::size_t>(k - valuation);
  if (i >= coeffs.size()) throw DomainError("local expansion coefficient beyond stored precision");
  return coeffs[i];
}

std::vector<Fq> uniformizer_section(const Place& v, std::size_t n) {
  const Field& R = *v.residue_field();
  const auto pi = v.embedding().map(v.poly()).coeffs();
  const auto dpi = v.embedding().map(v.poly().derivative()).coeffs();
  std::vector<Fq> T(n, R.zero());
  if (n == 0) return T;
  T[0] = v.theta();
  // Newton iteration on pi(T) = s doubles the correct prefix each round
  for (std::size_t prec = 1; prec < n;) {
    prec = std::min(n, 2 * prec);
    auto val = fseries::eval_poly(R, pi, T, prec);
    if (prec > 1) val[1] = R.sub(val[1], R.one());
    auto der = fseries::eval_poly(R, dpi, T, prec);
    auto step = fseries::mul(R, val, fseries::inverse(R, der, prec), prec);
    for (std::size_t i = 0; i < prec; ++i) T[i] = R.sub(T[i], step[i]);
  }
  return T;
}

LocalExpansion local_expand(const RatFunc& f, const Place& v, std::size_t M) {
  if (M == 0) throw DomainError("local expansion needs precision M >= 1");
  if (f.is_zero()) return {v, kInfiniteValuation, {}};
  const Field& R = *v.residue_field();
  if (v.is_infinity()) {
    std::vector<Fq> n = f.num().coeffs(), d = f.den().coeffs();
    std::reverse(n.begin(), n.end());
    std::reverse(d.begin(), d.end());
    auto c = fseries::mul(R, n, fseries::inverse(R, d, M), M);
    const auto val = static_cast<std::int64_t>(*f.den().degree()) - static_cast<std::int64_t>(*f.num().degree());
    return {v, val, std::move(c)};
  }
  const Poly& pi = v.poly();
  const int vn = multiplicity(f.num(), pi), vd = multiplicity(f.den(), pi);
  const Poly n1 = f.num() / pi.pow(vn), d1 = f.den() / pi.pow(vd);
  const auto T = uniformizer_section(v, M);
  auto ns = fseries::eval_poly(R, v.embedding().map(n1).coeffs(), T, M);
  auto ds = fseries::eval_poly(R, v.embedding().map(d1).coeffs(), T, M);
  auto c = fseries::mul(R, ns, fseries::inverse(R, ds, M), M);
  return {v, static_cast<std::int64_t>(vn) - vd, std::move(c)};
}

std::vector<std::pair<Place, std::int64_t>> divisor(const RatFunc& f) {
  if (f.is_zero()) throw DomainError("divisor of the zero function");
  std::vector<std::pair<Place, std::int64_t>> out;
  for (const auto& [g, m] : factor(f.num())) out.emplace_back(Place(g), m);
  for (const auto& [g, m] : factor(f.den())) out.emplace_back(Place(g), -m);
  const auto vinf = valuation(f, Place::infinity(f.field()));
  if (vinf != 0) out.emplace_back(Place::infinity(f.field()), vinf);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool product_formula_check(const RatFunc& f) {
  if (f.is_zero()) throw DomainError("product formula for the zero function");
  std::int64_t total = 0;
  for (const auto& [v, _] : divisor(f)) total += valuation(f, v) * static_cast<std::int64_t>(v.degree());
  return total == 0;
}

}  // namespace ffp
