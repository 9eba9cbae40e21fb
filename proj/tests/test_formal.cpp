#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "ffparity/errors.hpp"
#include "ffparity/formal.hpp"
#include "ffparity/prng.hpp"
#include "ffparity/series.hpp"
#include "test_util.hpp"

using namespace ffp;
using namespace ffp::testing;

namespace {

// Laurent series sum c[i] z^(val + i) over F_q[t] with relative precision c.size().
struct Laurent {
  std::int64_t val;
  std::vector<Poly> c;
  std::int64_t abs_prec() const { return val + static_cast<std::int64_t>(c.size()); }
};

Laurent normalize(Laurent a) {
  while (!a.c.empty() && a.c.front().is_zero()) {
    a.c.erase(a.c.begin());
    ++a.val;
  }
  return a;
}

Laurent lmul(const Laurent& a, const Laurent& b) {
  const std::size_t n = std::min(a.c.size(), b.c.size());
  const FieldPtr& F = a.c[0].field();
  std::vector<Poly> r(n, Poly(F));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a.c[i] * b.c[j];
  return {a.val + b.val, r};
}

Laurent linv(const Laurent& a) {
  const FieldPtr& F = a.c[0].field();
  REQUIRE(a.c[0].is_constant());
  const Fq inv0 = F->inv(a.c[0].lead());
  std::vector<Poly> r(a.c.size(), Poly(F));
  r[0] = Poly::constant(F, inv0);
  for (std::size_t k = 1; k < a.c.size(); ++k) {
    Poly s(F);
    for (std::size_t j = 1; j <= k; ++j) s += a.c[j] * r[k - j];
    r[k] = (-s).scaled(inv0);
  }
  return {-a.val, r};
}

Laurent ladd(const Laurent& a, const Laurent& b, bool subtract = false) {
  const std::int64_t lo = std::min(a.val, b.val), hi = std::min(a.abs_prec(), b.abs_prec());
  const FieldPtr& F = a.c[0].field();
  std::vector<Poly> r(static_cast<std::size_t>(hi - lo), Poly(F));
  for (std::int64_t e = lo; e < hi; ++e) {
    Poly x = e >= a.val ? a.c[static_cast<std::size_t>(e - a.val)] : Poly(F);
    Poly y = e >= b.val ? b.c[static_cast<std::size_t>(e - b.val)] : Poly(F);
    r[static_cast<std::size_t>(e - lo)] = subtract ? x - y : x + y;
  }
  return normalize({lo, r});
}

Laurent lscale(const Laurent& a, const Poly& s) {
  Laurent r = a;
  for (auto& x : r.c) x = x * s;
  return normalize(r);
}

Laurent lconst(const Poly& c, std::size_t n) {
  std::vector<Poly> r(n, Poly(c.field()));
  r[0] = c;
  return {0, r};
}

struct AffinePoint {
  Laurent x, y;
};

// (x(z), y(z)) from an independently iterated w-series.
AffinePoint generic_point(const Curve& E, std::size_t N) {
  const FieldPtr& F = E.field();
  std::vector<Poly> w(N, Poly(F));
  auto mul = [&](const std::vector<Poly>& a, const std::vector<Poly>& b) {
    std::vector<Poly> r(N, Poly(F));
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; i + j < N; ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  for (std::size_t it = 0; it < N; ++it) {
    auto w2 = mul(w, w);
    auto w3 = mul(w2, w);
    std::vector<Poly> next(N, Poly(F));
    next[3] = Poly::constant(F, F->one());
    for (std::size_t i = 0; i + 1 < N; ++i) next[i + 1] += E.A() * w2[i];
    for (std::size_t i = 0; i < N; ++i) next[i] += E.B() * w3[i];
    w = next;
  }
  Laurent wl = normalize({0, w});
  Laurent winv = linv(wl);
  Laurent z{1, std::vector<Poly>(winv.c.size(), Poly(F))};
  z.c[0] = Poly::constant(F, F->one());
  return {lmul(z, winv), lscale(winv, Poly::constant(F, F->from_int(-1)))};
}

AffinePoint chord(const Curve& E, const AffinePoint& P, const AffinePoint& Q, bool tangent) {
  const FieldPtr& F = E.field();
  auto c = [&](std::int64_t n) { return Poly::constant(F, F->from_int(n)); };
  const std::size_t n = P.x.c.size();
  Laurent lambda = tangent
                       ? lmul(ladd(lscale(lmul(P.x, P.x), c(3)), lconst(E.A(), n + 8)), linv(lscale(P.y, c(2))))
                       : lmul(ladd(Q.y, P.y, true), linv(ladd(Q.x, P.x, true)));
  Laurent x3 = ladd(ladd(lmul(lambda, lambda), P.x, true), Q.x, true);
  Laurent y3 = ladd(lmul(lambda, ladd(P.x, x3, true)), P.y, true);
  return {x3, y3};
}

Laurent z_of(const AffinePoint& P) {
  return lscale(lmul(P.x, linv(P.y)), Poly::constant(P.x.c[0].field(), P.x.c[0].field()->from_int(-1)));
}

}  // namespace

TEST_CASE("formal group law basics") {
  auto F = Field::get(5, 1);
  Curve E(R(F, "t"), R(F, "1"));
  auto L = formal_group_law(E, 8);
  CHECK(L.coeff(1, 0) == parse_poly(F, "1"));
  CHECK(L.coeff(0, 1) == parse_poly(F, "1"));
  CHECK(L.coeff(1, 1).is_zero());
  CHECK(L.coeff(2, 0).is_zero());
  CHECK(L.coeff(0, 2).is_zero());
  for (std::size_t i = 2; i < 8; ++i) CHECK(L.coeff(i, 0).is_zero());
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; i + j < 8; ++j) CHECK(L.coeff(i, j) == L.coeff(j, i));
  CHECK_THROWS_AS(formal_group_law(E, 2), DomainError);
}

TEST_CASE("w-series leading terms") {
  for (auto q : {5u, 7u, 11u}) {
    auto F = Field::of_order(q);
    SplitMix64 rng(q);
    Curve E = random_curve(F, rng);
    auto w = weierstrass_w(E, 14);
    CHECK(w[3] == parse_poly(F, "1"));
    CHECK(w[7] == E.A());
    CHECK(w[9] == E.B());
    CHECK(w[11] == (E.A() * E.A()).scaled(F->from_int(2)));
    CHECK(w[13] == (E.A() * E.B()).scaled(F->from_int(5)));
    for (std::size_t n : {0, 1, 2, 4, 5, 6, 8, 10, 12}) CHECK(w[n].is_zero());
  }
}

TEST_CASE("multiplication series against chord-tangent arithmetic on Laurent series") {
  for (auto q : {5u, 7u, 13u}) {
    auto F = Field::of_order(q);
    SplitMix64 rng(q * 19);
    for (int trial = 0; trial < 3; ++trial) {
      Curve E = random_curve(F, rng, 3, 4);
      const std::size_t N = 12;
      AffinePoint P = generic_point(E, N + 6);
      AffinePoint P2 = chord(E, P, P, true);
      AffinePoint P3 = chord(E, P, P2, false);
      Laurent z2 = z_of(P2), z3 = z_of(P3);
      auto m2 = multiplication_series(E, 2, N);
      auto m3 = multiplication_series(E, 3, N);
      REQUIRE(z2.val == 1);
      REQUIRE(z3.val == 1);
      for (std::int64_t k = 1; k < std::min<std::int64_t>(static_cast<std::int64_t>(N), z2.abs_prec()); ++k)
        CHECK(m2[static_cast<std::size_t>(k)] == z2.c[static_cast<std::size_t>(k - 1)]);
      for (std::int64_t k = 1; k < std::min<std::int64_t>(static_cast<std::int64_t>(N), z3.abs_prec()); ++k)
        CHECK(m3[static_cast<std::size_t>(k)] == z3.c[static_cast<std::size_t>(k - 1)]);
      auto L = formal_group_law(E, N);
      // F(z, z) = [2](z)
      for (std::size_t k = 0; k < N; ++k) {
        Poly s(F);
        for (std::size_t i = 0; i <= k; ++i) s += L.coeff(i, k - i);
        CHECK(s == m2[k]);
      }
    }
  }
}

TEST_CASE("multiplication series basics") {
  auto F = Field::get(7, 1);
  SplitMix64 rng(4);
  Curve E = random_curve(F, rng);
  auto m1 = multiplication_series(E, 1, 10);
  CHECK(m1[1] == parse_poly(F, "1"));
  for (std::size_t k = 2; k < 10; ++k) CHECK(m1[k].is_zero());
  auto m2 = multiplication_series(E, 2, 10);
  CHECK(m2[1] == parse_poly(F, "2"));
  auto m7 = multiplication_series(E, 7, 10);
  for (std::size_t k = 0; k < 7; ++k) CHECK(m7[k].is_zero());
  CHECK(m7[7] == E.hasse_invariant());
  CHECK_THROWS_AS(multiplication_series(E, 0, 5), DomainError);
}

TEST_CASE("coefficient of t^p in [p] is the Hasse invariant") {
  int checked = 0;
  for (auto [q, count] : {std::pair{5u, 50}, {7u, 20}}) {
    auto F = Field::of_order(q);
    SplitMix64 rng(q * 1000 + 1);
    for (int i = 0; i < count; ++i) {
      Curve E = random_curve(F, rng);
      auto s = multiplication_series(E, q, q + 1);
      CHECK(s[q] == E.hasse_invariant());
      for (std::size_t k = 0; k < q; ++k) CHECK(s[k].is_zero());
      ++checked;
    }
  }
  CHECK(checked == 70);
}

TEST_CASE("associativity of the formal group law to precision 8") {
  int checked = 0;
  for (auto q : {5u, 7u}) {
    auto F = Field::of_order(q);
    SplitMix64 rng(q * 31);
    for (int i = 0; i < 5; ++i) {
      Curve E = random_curve(F, rng);
      CHECK(associative(E, 8));
      ++checked;
    }
  }
  CHECK(checked == 10);
}

TEST_CASE("Verschiebung series of the p = 5 family") {
  auto F = Field::get(5, 1);
  for (int w : {1, 2}) {
    Curve E(R(F, "T^" + std::to_string(w)), R(F, "1"));
    auto V = verschiebung_series(E, 8);
    CHECK(V.coeffs[1] == parse_poly(F, "2*t^" + std::to_string(w)));
    CHECK(V.coeffs[0].is_zero());
    const std::string lead = w == 1 ? "(2*T) * t^1" : "(2*T^" + std::to_string(w) + ") * t^1";
    CHECK(format_series(V.coeffs).rfind(lead, 0) == 0);
  }
}

TEST_CASE("Verschiebung series: p-th power and [p]_E routes") {
  for (auto q : {5u, 7u, 25u}) {
    auto F = Field::of_order(q);
    const std::size_t p = F->p();
    SplitMix64 rng(q * 7 + 3);
    for (int i = 0; i < 3; ++i) {
      Curve E = random_curve(F, rng, 3, 4);
      const std::size_t N = p + 1;
      auto V = verschiebung_series(E, N);
      CHECK(V.coeffs[1] == E.hasse_invariant());
      // V_1(z)^p by repeated multiplication equals [p]_{E'}(z)
      const std::size_t M = p * (N - 1) + 1;
      std::vector<Poly> pw(M, Poly(F));
      pw[0] = Poly::constant(F, F->one());
      for (std::size_t r = 0; r < p; ++r) {
        std::vector<Poly> next(M, Poly(F));
        for (std::size_t a = 0; a < M; ++a)
          for (std::size_t b = 0; b < N && a + b < M; ++b) next[a + b] += pw[a] * V.coeffs[b];
        pw = next;
      }
      auto pe = multiplication_series(E.frobenius_twist(), p, M);
      CHECK(pw == pe);
      // [p]_E(z) = V_1(z^p)
      auto pE = multiplication_series(E, p, M);
      for (std::size_t k = 0; k < M; ++k) {
        if (k % p) {
          CHECK(pE[k].is_zero());
        } else {
          CHECK(pE[k] == V.coeffs[k / p]);
        }
      }
    }
  }
}

TEST_CASE("local Verschiebung routes agree") {
  auto F = Field::get(5, 1);
  SplitMix64 rng(99);
  int checked = 0;
  while (checked < 6) {
    Curve E = random_curve(F, rng, 3, 4);
    for (const char* pl : {"t", "t+1", "t^2+2", "inf"}) {
      Place v = Place::parse(F, pl);
      try {
        auto a = local_verschiebung(E, v, 5, true);
        auto b = local_verschiebung(E, v, 5, false);
        CHECK(a == b);
        ++checked;
      } catch (const DomainError&) {
      }
    }
  }
}

TEST_CASE("z_V examples") {
  auto F = Field::get(5, 1);
  Curve E(R(F, "T"), R(F, "1"));
  Place t = Place::parse(F, "t");
  auto z = z_V_numeric(E, t, 5);
  CHECK(z.hasse_val == 1);
  CHECK(zv_string(z) == "5");
  CHECK(zv_exponent(z, 5) == 1);
  auto z6 = z_V_numeric(E, t, 6);
  CHECK(zv_string(z6) == "5");
  Place one = Place::parse(F, "t+1");
  auto zo = z_V_numeric(E, one, 4);
  CHECK(zo.hasse_val == 0);
  CHECK(zv_string(zo) == "1");
  CHECK_THROWS_AS(z_V_numeric(E, t, 9), ResourceError);
  CHECK_THROWS_AS(z_V_numeric(E, t, 4), DomainError);
  // t^3 + 3 vanishes at t = 3, where the discriminant of y^2 = x^3 + tx + 1 vanishes
  CHECK_THROWS_AS(z_V_numeric(E, Place::parse(F, "t+2"), 4), DomainError);
}

TEST_CASE("z_V equals q_v^v(alpha) at good places") {
  auto F = Field::get(5, 1);
  SplitMix64 rng(2024);
  int ordinary = 0, supersingular = 0;
  for (int w : {1, 2}) {
    Curve E(R(F, "T^" + std::to_string(w)), R(F, "1"));
    auto z = z_V_numeric(E, Place::parse(F, "t"), static_cast<std::size_t>(2 * w + 3));
    CHECK(zv_exponent(z, 5) == w);
    ++supersingular;
  }
  while (ordinary + supersingular < 24) {
    Curve E = random_curve(F, rng, 3, 4);
    for (const char* pl : {"t", "t+1", "t+3", "inf", "t^2+2"}) {
      Place v = Place::parse(F, pl);
      if (valuation(E.discriminant(), v) != 0 && !v.is_infinity()) continue;
      std::int64_t hv;
      try {
        hv = z_V_count(E, v, 2).hasse_val;
      } catch (const DomainError&) {
        continue;
      }
      const std::size_t M = static_cast<std::size_t>(2 * hv + 3);
      if (v.degree() * M > 8) continue;
      auto z = z_V_numeric(E, v, M);
      CHECK(zv_exponent(z, 5) == static_cast<std::int64_t>(v.degree()) * hv);
      (hv == 0 ? ordinary : supersingular) += 1;
    }
  }
  CHECK(ordinary > 0);
  CHECK(supersingular > 2);
}

TEST_CASE("V_1 is injective on m^N for N > v(alpha)") {
  auto F = Field::get(5, 1);
  Curve E(R(F, "T^2"), R(F, "1"));
  Place v = Place::parse(F, "t");
  const std::size_t a = 2, M = 6, L = M + a;
  auto beta = local_verschiebung(E, v, L);
  const Field& K = *v.residue_field();
  for (std::size_t N = a + 1; N < M; ++N) {
    // t ranges over m^N / m^M; V_1(t) must avoid m^(M+a) unless t = 0
    std::size_t digits = M - N;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < digits; ++i) total *= 5;
    std::uint64_t zeros = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<Fq> t(L, Fq{0});
      std::uint64_t x = code;
      for (std::size_t j = N; j < M; ++j) {
        t[j] = Fq{x % 5};
        x /= 5;
      }
      std::vector<Fq> r(L, Fq{0}), tp(L, Fq{0});
      tp[0] = Fq{1};
      for (std::size_t i = 1; i < L; ++i) {
        tp = fseries::mul(K, tp, t, L);
        r = fseries::add(K, r, fseries::mul(K, beta[i], tp, L), L);
      }
      if (std::all_of(r.begin(), r.end(), [](Fq c) { return c.v == 0; })) ++zeros;
    }
    CHECK(zeros == 1);
  }
}
