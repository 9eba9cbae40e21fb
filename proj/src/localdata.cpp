#include "ffparity/localdata.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ffparity/errors.hpp"
#include "ffparity/series.hpp"

namespace ffp {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<Fq> window(const Poly& f, const Place& v, std::int64_t vf, std::int64_t shift, std::size_t n) {
  std::vector<Fq> out(n, Fq{0});
  const std::int64_t len = shift + static_cast<std::int64_t>(n) - vf;
  if (len <= 0) return out;
  auto e = local_expand(RatFunc(f), v, static_cast<std::size_t>(len));
  for (std::size_t j = 0; j < n; ++j) out[j] = e.at(shift + static_cast<std::int64_t>(j));
  return out;
}

// y^2 = x^3 + a2 x^2 + a4 x + a6 over O_v / m^n, translated by x -> x + c.
struct Cubic {
  const Field& K;
  std::size_t n;
  std::vector<Fq> a2, a4, a6;

  void translate(const std::vector<Fq>& c) {
    using namespace fseries;
    auto c2 = mul(K, c, c, n);
    auto c3 = mul(K, c2, c, n);
    a6 = add(K, add(K, a6, mul(K, c, a4, n), n), add(K, mul(K, c2, a2, n), c3, n), n);
    a4 = add(K, add(K, a4, scale(K, mul(K, a2, c, n), K.from_int(2), n), n), scale(K, c2, K.from_int(3), n), n);
    a2 = add(K, a2, scale(K, c, K.from_int(3), n), n);
  }
  void translate(Fq c, std::size_t power) {
    std::vector<Fq> s(n, Fq{0});
    if (power < n) s[power] = c;
    translate(s);
  }
};

// Tamagawa number of an I_n* fibre by the quadratic subprocedure of Tate's
// algorithm. Requires v(A) = 2, v(B) = 3 on the minimal model.
std::uint64_t tamagawa_Ins(const Field& K, const LocalMinimalModel& m, int n) {
  const std::size_t P = m.A.size();
  Cubic c{K, P, std::vector<Fq>(P, Fq{0}), m.A, m.B};
  const Fq A2 = m.A[2], B3 = m.B[3];
  if (A2.v == 0) throw InternalError("I_n* fibre with v(A) > 2");
  // double root of T^3 + A2 T + B3
  const Fq rho = K.div(K.mul(K.from_int(-3), B3), K.mul(K.from_int(2), A2));
  c.translate(rho, 1);
  for (int j = 1; j <= n + 2; ++j) {
    const std::size_t m2 = static_cast<std::size_t>((j + 1) / 2);
    if (j % 2 == 1) {
      const std::size_t idx = 2 * m2 + 2;
      if (idx >= P) break;
      const Fq a = c.a6[idx];
      if (a.v != 0) {
        if (j != n) throw InternalError("I_n* subprocedure stopped at n = " + std::to_string(j));
        return K.legendre(a) == 1 ? 4 : 2;
      }
    } else {
      const std::size_t mm = static_cast<std::size_t>(j / 2);
      if (2 * mm + 3 >= P) break;
      const Fq qa = c.a2[1], qb = c.a4[mm + 2], qc = c.a6[2 * mm + 3];
      const Fq disc = K.sub(K.mul(qb, qb), K.mul(K.from_int(4), K.mul(qa, qc)));
      if (disc.v != 0) {
        if (j != n) throw InternalError("I_n* subprocedure stopped at n = " + std::to_string(j));
        return K.legendre(disc) == 1 ? 4 : 2;
      }
      const Fq beta = K.div(K.neg(qb), K.mul(K.from_int(2), qa));
      c.translate(beta, mm + 1);
    }
  }
  throw InternalError("I_n* subprocedure did not terminate within the working precision");
}

}  // namespace

LocalMinimalModel minimal_model_at(const Curve& E, const Place& v, std::size_t precision) {
  const std::int64_t vA = valuation(E.A(), v), vB = valuation(E.B(), v);
  const std::int64_t k = std::min(floor_div(vA, 4), floor_div(vB, 6));
  const std::int64_t vD = valuation(E.discriminant(), v) - 12 * k;
  return {k, vA - 4 * k, vB - 6 * k, vD, window(E.A(), v, vA, 4 * k, precision),
          window(E.B(), v, vB, 6 * k, precision)};
}

std::string kodaira_symbol(Kodaira k, int n) {
  switch (k) {
    case Kodaira::Good: return "good";
    case Kodaira::In: return "I" + std::to_string(n);
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::I0s: return "I0*";
    case Kodaira::Ins: return "I" + std::to_string(n) + "*";
    case Kodaira::IVs: return "IV*";
    case Kodaira::IIIs: return "III*";
    case Kodaira::IIs: return "II*";
  }
  return "?";
}

std::string LocalAnalysis::split_string() const {
  if (reduction == Reduction::SplitMultiplicative) return "split";
  if (reduction == Reduction::NonsplitMultiplicative) return "nonsplit";
  return "n/a";
}

LocalAnalysis analyze_place(const Curve& E, const Place& v) {
  const FieldPtr& F = E.field();
  const Field& K = *v.residue_field();
  const auto p = static_cast<std::int64_t>(F->p());
  const std::int64_t vD = minimal_model_at(E, v, 0).val_disc;
  const LocalMinimalModel m = minimal_model_at(E, v, static_cast<std::size_t>(std::max<std::int64_t>(vD, 0) + 8));
  const std::int64_t deg_v = v.degree();
  const std::int64_t e = F->e();

  LocalAnalysis a{v, m.k, m.val_disc, Kodaira::Good, 0, Reduction::Good, 1, 0, 1, std::nullopt, std::nullopt,
                  std::nullopt, valuation(E.hasse_invariant(), v) - (p - 1) * m.k, std::nullopt, ""};
  auto chi = [&](std::int64_t x) { return K.legendre(K.from_int(x)); };

  if (m.val_disc == 0) {
    a.zv_exponent = e * deg_v * a.hasse_val;
    a.sigma = a.norm_symbol = (*a.zv_exponent % 2 == 0) ? 1 : -1;
    return a;
  }
  if (m.val_disc < 0) throw InternalError("negative discriminant valuation on the minimal model");

  if (m.val_A == 0) {
    const int n = static_cast<int>(m.val_disc);
    // node at r = -3B/(2A); tangent slopes +-sqrt(3r)
    const Fq r = K.div(K.mul(K.from_int(-3), m.B[0]), K.mul(K.from_int(2), m.A[0]));
    const bool split = K.legendre(K.mul(K.from_int(3), r)) == 1;
    a.kodaira = Kodaira::In;
    a.kodaira_n = n;
    a.reduction = split ? Reduction::SplitMultiplicative : Reduction::NonsplitMultiplicative;
    a.tamagawa = split ? static_cast<std::uint64_t>(n) : (n % 2 == 0 ? 2 : 1);
    a.conductor_exp = 1;
    a.root_number = split ? -1 : 1;
    a.tate_param_val = n;
    a.zv_exponent = split ? -1 : 0;
    a.sigma = split ? -1 : 1;
    a.norm_symbol = 1;
    return a;
  }

  a.conductor_exp = 2;
  if (m.val_A == 2 && m.val_B == 3 && m.val_disc > 6) {
    const int n = static_cast<int>(m.val_disc - 6);
    a.kodaira = Kodaira::Ins;
    a.kodaira_n = n;
    a.reduction = Reduction::AdditivePotMultiplicative;
    a.tamagawa = tamagawa_Ins(K, m, n);
    a.root_number = chi(-1);
    a.zv_exponent = 0;
    a.sigma = 1;
    a.norm_symbol = chi(-1);
    return a;
  }

  a.reduction = Reduction::AdditivePotGood;
  a.unknown_reason = "additive potentially good reduction";
  switch (m.val_disc) {
    case 2: a.kodaira = Kodaira::II; a.tamagawa = 1; break;
    case 3: a.kodaira = Kodaira::III; a.tamagawa = 2; break;
    case 4:
      a.kodaira = Kodaira::IV;
      a.tamagawa = K.legendre(m.B[2]) == 1 ? 3 : 1;
      break;
    case 6: {
      a.kodaira = Kodaira::I0s;
      a.tamagawa = 1 + roots(Poly(v.residue_field(), {m.B[3], m.A[2], Fq{0}, Fq{1}})).size();
      break;
    }
    case 8:
      a.kodaira = Kodaira::IVs;
      a.tamagawa = K.legendre(m.B[4]) == 1 ? 3 : 1;
      break;
    case 9: a.kodaira = Kodaira::IIIs; a.tamagawa = 2; break;
    case 10: a.kodaira = Kodaira::IIs; a.tamagawa = 1; break;
    default:
      throw InternalError("unexpected discriminant valuation " + std::to_string(m.val_disc) + " at " + v.to_string());
  }
  const std::int64_t ram = 12 / std::gcd<std::int64_t>(m.val_disc, 12);
  switch (ram) {
    case 2:
    case 6: a.root_number = chi(-1); break;
    case 3: a.root_number = chi(-3); break;
    case 4: a.root_number = chi(-2); break;
    default: a.root_number = 1; break;
  }
  return a;
}

std::vector<Place> special_places(const Curve& E) {
  std::vector<Poly> polys;
  for (const auto& f : factor(E.discriminant())) polys.push_back(f.poly);
  for (const auto& f : factor(E.hasse_invariant())) polys.push_back(f.poly);
  std::sort(polys.begin(), polys.end());
  polys.erase(std::unique(polys.begin(), polys.end()), polys.end());
  std::vector<Place> out(polys.begin(), polys.end());
  out.push_back(Place::infinity(E.field()));
  return out;
}

std::vector<LocalAnalysis> analyze_all(const Curve& E) {
  std::vector<LocalAnalysis> out;
  for (const auto& v : special_places(E)) out.push_back(analyze_place(E, v));
  return out;
}

int local_root_number(const Curve& E, const Place& v) { return analyze_place(E, v).root_number; }

Conductor conductor(const std::vector<LocalAnalysis>& places) {
  Conductor c{{}, 0};
  for (const auto& a : places) {
    if (a.conductor_exp == 0) continue;
    c.exponents.emplace_back(a.place, a.conductor_exp);
    c.degree += a.conductor_exp * static_cast<std::int64_t>(a.place.degree());
  }
  return c;
}

Conductor conductor(const Curve& E) { return conductor(analyze_all(E)); }

CorrectedTamagawa corrected_tamagawa_product(const std::vector<LocalAnalysis>& places) {
  CorrectedTamagawa C{1, 0};
  for (const auto& a : places) {
    if (C.c_product > std::numeric_limits<std::uint64_t>::max() / a.tamagawa)
      throw ResourceError("Tamagawa product overflows 64 bits");
    C.c_product *= a.tamagawa;
    C.q_exponent += a.scale_val * static_cast<std::int64_t>(a.place.degree());
  }
  return C;
}

CorrectedTamagawa corrected_tamagawa_product(const Curve& E) { return corrected_tamagawa_product(analyze_all(E)); }

TamagawaRatio tamagawa_ratio_parity(const Curve& E) { return tamagawa_ratio_parity(E, analyze_all(E)); }

TamagawaRatio tamagawa_ratio_parity(const Curve& E, const std::vector<LocalAnalysis>& mine) {
  const std::uint64_t p = E.field()->p();
  const Curve Et = E.frobenius_twist();
  TamagawaRatio r{0, 0, true};
  auto ord_p = [&](std::uint64_t c) {
    std::int64_t k = 0;
    while (c % p == 0) {
      c /= p;
      ++k;
    }
    return k;
  };
  // Tamagawa numbers of E and E' are 1 outside the places dividing Delta(E') = Delta(E)^p
  for (const auto& a : mine) {
    const LocalAnalysis b = analyze_place(Et, a.place);
    r.ord_p += ord_p(a.tamagawa) - ord_p(b.tamagawa);
    if (a.is_split()) {
      ++r.s_split;
      if (!b.is_split() || b.tamagawa != p * a.tamagawa) r.split_places_scale_by_p = false;
    }
  }
  return r;
}

}  // namespace ffp
