#include "ffparity/lfunction.hpp"

#include <algorithm>
#include <numeric>

#include "ffparity/errors.hpp"
#include "ffparity/pointcount.hpp"

namespace ffp {

namespace {

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// S <- S / P in Z[[T]] truncated to S.size(); P[0] = 1
void divide_series(IntPoly& S, const IntPoly& P) {
  for (std::size_t n = 0; n < S.size(); ++n)
    for (std::size_t j = 1; j < P.size() && j <= n; ++j)
      if (P[j] != 0) S[n] -= P[j] * S[n - j];
}

BigInt ipow(std::uint64_t q, std::int64_t n) {
  BigInt r = 1;
  for (std::int64_t i = 0; i < n; ++i) r *= q;
  return r;
}

IntPoly good_factor(std::int64_t a, std::uint64_t qv, unsigned d) {
  IntPoly f(2 * d + 1, 0);
  f[0] = 1;
  f[d] = -a;
  f[2 * d] = qv;
  return f;
}

bool within_hasse(std::int64_t a, std::uint64_t qv) {
  return static_cast<unsigned __int128>(static_cast<__int128>(a) * a) <= 4 * static_cast<unsigned __int128>(qv);
}

}  // namespace

std::int64_t frobenius_trace(const Curve& E, const Place& v) {
  const LocalMinimalModel m = minimal_model_at(E, v, 1);
  if (m.val_disc != 0) throw DomainError("Frobenius trace at a bad place " + v.to_string());
  const std::uint64_t N = count_points(*v.residue_field(), m.A[0], m.B[0]);
  return static_cast<std::int64_t>(v.residue_size() + 1) - static_cast<std::int64_t>(N);
}

IntPoly local_euler_factor(const Curve& E, const LocalAnalysis& a) {
  const unsigned d = a.place.degree();
  if (a.kodaira == Kodaira::Good) return good_factor(frobenius_trace(E, a.place), a.place.residue_size(), d);
  if (a.is_additive()) return {1};
  IntPoly f(d + 1, 0);
  f[0] = 1;
  f[d] = a.is_split() ? -1 : 1;
  return f;
}

IntPoly local_euler_factor(const Curve& E, const Place& v) { return local_euler_factor(E, analyze_place(E, v)); }

LPolynomial global_L(const Curve& E) { return global_L(E, analyze_all(E)); }

LPolynomial global_L(const Curve& E, const std::vector<LocalAnalysis>& places) {
  const FieldPtr& F = E.field();
  const std::uint64_t q = F->q();
  const std::int64_t deg_n = conductor(places).degree;
  if (deg_n < 4)
    throw DomainError("conductor degree " + std::to_string(deg_n) + " < 4: the L-function would have negative degree");
  const std::int64_t D = deg_n - 4;
  const auto top = static_cast<unsigned>(D + 2);
  {
    unsigned __int128 size = 1;
    for (unsigned i = 0; i < top; ++i) {
      size *= q;
      if (size > kEulerProductFieldLimit)
        throw ResourceError("the Euler product to degree " + std::to_string(top) + " needs F_{q^" +
                            std::to_string(top) + "}, above the enumeration limit");
    }
  }

  LPolynomial L{q, {}, D, 0, {}, false, false, true, 0};
  IntPoly S(top + 1, 0);
  S[0] = 1;

  for (const auto& a : places) {
    if (a.place.degree() > top) continue;
    IntPoly f = local_euler_factor(E, a);
    if (a.kodaira == Kodaira::Good && !within_hasse(-static_cast<std::int64_t>(f[a.place.degree()]), a.place.residue_size()))
      L.hasse_bound = false;
    divide_series(S, f);
    ++L.places_counted;
  }

  const Poly disc = E.discriminant();
  const Poly alpha = E.hasse_invariant();
  for (unsigned d = 1; d <= top; ++d) {
    const FieldPtr Kd = Field::get(F->p(), F->e() * d);
    const Field& K = *Kd;
    const Embedding emb(F, Kd);
    auto embed = [&](const Poly& f) {
      std::vector<Fq> c;
      for (Fq x : f.coeffs()) c.push_back(emb(x));
      return c;
    };
    const auto cA = embed(E.A()), cB = embed(E.B()), cD = embed(disc), cH = embed(alpha);
    auto eval = [&](const std::vector<Fq>& c, Fq x) {
      Fq r{0};
      for (std::size_t i = c.size(); i-- > 0;) r = K.add(K.mul(r, x), c[i]);
      return r;
    };
    const std::uint64_t Q = K.q();
    const PointCounter count(K);
    // theta = 0 and theta = g^k with k least in its orbit k q^i mod (Q - 1)
    for (std::uint64_t code = 0; code < Q; ++code) {
      Fq theta{0};
      if (code > 0) {
        const std::uint64_t k = code - 1, n = Q - 1;
        std::uint64_t c = k;
        bool least = true;
        unsigned deg = 0;
        for (unsigned i = 1; i <= d; ++i) {
          c = static_cast<std::uint64_t>(static_cast<unsigned __int128>(c) * q % n);
          if (c == k) {
            deg = i;
            break;
          }
          if (c < k) {
            least = false;
            break;
          }
        }
        if (!least || deg != d) continue;
        theta = K.exp(k);
      } else if (d != 1) {
        continue;
      }
      // places dividing Delta or alpha are in `places`
      if (eval(cD, theta).v == 0 || eval(cH, theta).v == 0) continue;
      const std::uint64_t N = count(eval(cA, theta), eval(cB, theta));
      const std::int64_t a = static_cast<std::int64_t>(Q + 1) - static_cast<std::int64_t>(N);
      if (!within_hasse(a, Q)) L.hasse_bound = false;
      divide_series(S, good_factor(a, Q, d));
      ++L.places_counted;
    }
  }

  L.coeffs.assign(S.begin(), S.begin() + D + 1);
  L.guard.assign(S.begin() + D + 1, S.end());
  L.guard_vanishes = std::all_of(L.guard.begin(), L.guard.end(), [](const BigInt& x) { return x == 0; });
  const BigInt qD = ipow(q, D);
  if (L.coeffs[static_cast<std::size_t>(D)] == qD) L.sign = 1;
  if (L.coeffs[static_cast<std::size_t>(D)] == -qD) L.sign = -1;
  L.functional_equation = L.sign != 0;
  // c_{D-i} q^i = w q^{D-i} c_i
  for (std::int64_t i = 0; i <= D && L.functional_equation; ++i)
    if (L.coeffs[static_cast<std::size_t>(D - i)] * ipow(q, i) !=
        L.sign * ipow(q, D - i) * L.coeffs[static_cast<std::size_t>(i)])
      L.functional_equation = false;
  return L;
}

int divisor_multiplicity(const IntPoly& L0, const IntPoly& P) {
  IntPoly L = L0;
  trim(L);
  int m = 0;
  while (!L.empty() && L.size() >= P.size()) {
    IntPoly Q(L.begin(), L.begin() + static_cast<std::ptrdiff_t>(L.size() - P.size() + 1));
    divide_series(Q, P);
    if (mul(Q, P) != L) break;
    trim(Q);
    L = Q;
    ++m;
  }
  return m;
}

IntPoly central_factor(std::uint64_t q, unsigned d) {
  // cyclotomic polynomials by exact division of x^n - 1
  std::vector<IntPoly> phi(d + 1);
  for (unsigned n = 1; n <= d; ++n) {
    if (d % n) continue;
    IntPoly f(n + 1, 0);
    f[0] = -1;
    f[n] = 1;
    for (unsigned e = 1; e < n; ++e) {
      if (n % e) continue;
      // f / phi[e], both monic
      const IntPoly& g = phi[e];
      IntPoly quo(f.size() - g.size() + 1, 0);
      for (std::size_t k = quo.size(); k-- > 0;) {
        quo[k] = f[k + g.size() - 1];
        for (std::size_t j = 0; j < g.size(); ++j) f[k + j] -= quo[k] * g[j];
      }
      f = quo;
    }
    phi[n] = f;
  }
  IntPoly r(phi[d].rbegin(), phi[d].rend());
  BigInt qi = 1;
  for (auto& c : r) {
    c *= qi;
    qi *= q;
  }
  return r;
}

std::int64_t analytic_rank(const LPolynomial& L, unsigned n) {
  std::int64_t r = 0;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d) continue;
    unsigned phi = 0;
    for (unsigned k = 1; k <= d; ++k) phi += std::gcd(k, d) == 1;
    r += static_cast<std::int64_t>(phi) * divisor_multiplicity(L.coeffs, central_factor(L.q, d));
  }
  return r;
}

bool ParityReport::all_pass() const {
  for (const auto& [k, v] : verdicts)
    if (v && !*v) return false;
  for (const auto& [k, v] : consistency)
    if (!v) return false;
  return true;
}

ParityReport parity_verdicts(const Curve& E) {
  const auto places = analyze_all(E);
  return parity_verdicts(E, places, global_L(E, places));
}

ParityReport parity_verdicts(const Curve& E, const std::vector<LocalAnalysis>& places, const LPolynomial& L) {
  ParityReport r{};
  r.w_global = 1;
  r.w_fe = L.sign;
  r.r_an = analytic_rank(L, 1);
  r.r_an_K2 = analytic_rank(L, 2);
  r.semistable = std::none_of(places.begin(), places.end(), [](const auto& a) { return a.is_additive(); });
  r.deg_n = conductor(places).degree;
  r.local_identity = true;
  int sigma = 1, symbol = 1;
  std::int64_t zv = 0;
  for (const auto& a : places) {
    r.w_global *= a.root_number;
    r.s_split += a.is_split();
    if (a.sigma && a.norm_symbol && a.root_number != *a.sigma * *a.norm_symbol) r.local_identity = false;
    if (a.sigma) sigma *= *a.sigma;
    if (a.norm_symbol) symbol *= *a.norm_symbol;
    if (a.zv_exponent) zv += *a.zv_exponent;
  }
  if (r.semistable) {
    r.sigma_product = sigma;
    r.norm_symbol_product = symbol;
    r.zv_exponent = zv;
  }
  const TamagawaRatio tr = tamagawa_ratio_parity(E, places);
  r.tamagawa_ord_p = tr.ord_p;
  r.split_tamagawa_scaling = tr.split_places_scale_by_p;

  auto parity_sign = [](std::int64_t n) { return n % 2 == 0 ? 1 : -1; };
  auto even = [](std::int64_t n) { return n % 2 == 0; };
  r.verdicts['a'] = r.w_global == r.w_fe;
  r.verdicts['b'] = parity_sign(r.r_an) == r.w_global;
  r.verdicts['c'] = r.semistable ? std::optional<bool>(r.w_global == sigma && sigma == parity_sign(r.s_split))
                                 : std::nullopt;
  r.verdicts['d'] = r.semistable ? std::optional<bool>(even(zv) == even(r.r_an)) : std::nullopt;
  r.verdicts['e'] = even(tr.ord_p) == even(r.s_split);
  r.verdicts['f'] = even(r.deg_n) == even(r.r_an_K2);

  r.consistency["guard"] = L.guard_vanishes;
  r.consistency["functional_equation"] = L.functional_equation;
  r.consistency["hasse_bound"] = L.hasse_bound;
  r.consistency["degree"] = L.degree == r.deg_n - 4;
  r.consistency["local_identity"] = r.local_identity;
  r.consistency["split_tamagawa_scaling"] = r.split_tamagawa_scaling;
  if (r.semistable) r.consistency["norm_symbol_product"] = symbol == 1;
  return r;
}

EllReport ell_parity_hypotheses(std::uint64_t q, std::uint64_t ell, const LPolynomial& L) {
  if (ell % 2 == 0 || !is_prime(ell)) throw DomainError("ell must be an odd prime");
  if (q % ell == 0) throw DomainError("ell must differ from the characteristic");
  EllReport r{};
  r.ell = ell;
  r.a = multiplicative_order(q % ell, ell);
  r.a_even = r.a % 2 == 0;
  r.growth = analytic_rank(L, 2) - analytic_rank(L, 1);
  r.growth_at_most_one = r.growth <= 1;
  r.hypotheses_hold = r.a_even && r.growth_at_most_one;
  return r;
}

}  // namespace ffp
