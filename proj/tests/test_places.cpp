#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ffparity/errors.hpp"
#include "ffparity/places.hpp"
#include "ffparity/prng.hpp"
#include "ffparity/series.hpp"

using namespace ffp;

namespace {

RatFunc R(const FieldPtr& F, const char* s) { return parse_ratfunc(F, s); }

Poly random_poly(const FieldPtr& F, SplitMix64& rng, unsigned max_deg) {
  std::vector<Fq> c(rng.below(max_deg + 1) + 1);
  for (auto& x : c) x = Fq{rng.below(F->q())};
  return Poly(F, std::move(c));
}

RatFunc random_ratfunc(const FieldPtr& F, SplitMix64& rng) {
  while (true) {
    Poly a = random_poly(F, rng, 6), b = random_poly(F, rng, 6);
    if (!a.is_zero() && !b.is_zero()) return RatFunc(a, b);
  }
}

// Series coefficients of the expansion as a vector indexed from exponent `from`.
std::vector<Fq> window(const LocalExpansion& e, std::int64_t from, std::size_t n) {
  std::vector<Fq> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(e.at(from + static_cast<std::int64_t>(i)));
  return out;
}

}  // namespace

TEST_CASE("valuation examples") {
  auto F = Field::get(5, 1);
  RatFunc f = R(F, "t^3/(t-1)");
  CHECK(valuation(f, Place::parse(F, "t")) == 3);
  CHECK(valuation(f, Place::infinity(F)) == -2);
  CHECK(valuation(f, Place::parse(F, "t - 1")) == -1);
  CHECK(valuation(R(F, "1"), Place::parse(F, "t^2 + 2")) == 0);
  CHECK(valuation(RatFunc(F), Place::infinity(F)) == kInfiniteValuation);
}

TEST_CASE("residue examples") {
  auto F = Field::get(5, 1);
  CHECK(residue(R(F, "t+1"), Place::parse(F, "t")) == Fq{1});
  CHECK(residue(R(F, "(t^2+1)/(t^2)"), Place::infinity(F)) == Fq{1});
  Place v2 = Place::parse(F, "t^2 + 2");
  CHECK(v2.residue_size() == 25);
  CHECK(residue(R(F, "3"), v2) == v2.embedding()(Fq{3}));
  CHECK(residue(R(F, "t^2"), v2) == F->from_int(-2));
  CHECK_THROWS_AS(residue(R(F, "1/t"), Place::parse(F, "t")), DomainError);
}

TEST_CASE("local expansion examples") {
  auto F = Field::get(5, 1);
  auto e1 = local_expand(R(F, "1/(1-t)"), Place::parse(F, "t"), 3);
  CHECK(e1.valuation == 0);
  CHECK(e1.coeffs == std::vector<Fq>{Fq{1}, Fq{1}, Fq{1}});
  auto e2 = local_expand(R(F, "t"), Place::infinity(F), 2);
  CHECK(e2.valuation == -1);
  CHECK(e2.coeffs == std::vector<Fq>{Fq{1}, Fq{0}});
  auto e3 = local_expand(R(F, "(t+1)/(t-1)^2"), Place::parse(F, "t-1"), 2);
  CHECK(e3.valuation == -2);
  CHECK(e3.coeffs == std::vector<Fq>{Fq{2}, Fq{1}});
}

TEST_CASE("degree-one expansions re-sum to f modulo m^(v+M)") {
  for (auto q : {5u, 7u, 25u}) {
    auto F = Field::of_order(q);
    SplitMix64 rng(q);
    for (int i = 0; i < 100; ++i) {
      RatFunc f = random_ratfunc(F, rng);
      const std::size_t M = 6;
      Place v = rng.below(4) == 0 ? Place::infinity(F)
                                  : Place(parse_poly(F, "t") - Poly::constant(F, Fq{rng.below(q)}));
      auto e = local_expand(f, v, M);
      CHECK(e.valuation == valuation(f, v));
      CHECK(e.coeffs.front().v != 0);
      // the uniformizer as an element of K
      RatFunc s = v.is_infinity() ? R(F, "1/t") : RatFunc(v.poly());
      RatFunc sum(F);
      for (std::size_t k = 0; k < M; ++k)
        sum = sum + RatFunc(Poly::constant(F, e.coeffs[k])) * s.pow(e.valuation + static_cast<std::int64_t>(k));
      RatFunc diff = f - sum;
      CHECK(valuation(diff, v) >= e.valuation + static_cast<std::int64_t>(M));
    }
  }
}

TEST_CASE("expansion at higher-degree places is a ring homomorphism") {
  auto F = Field::get(5, 1);
  SplitMix64 rng(17);
  for (const char* pi : {"t^2 + 2", "t^3 + 3*t + 2", "t^4 + 2"}) {
    Place v = Place::parse(F, pi);
    const Field& K = *v.residue_field();
    const std::size_t n = 8;
    // pi itself expands to s
    auto es = local_expand(RatFunc(v.poly()), v, n);
    CHECK(es.valuation == 1);
    CHECK(es.coeffs[0] == K.one());
    for (std::size_t k = 1; k < n; ++k) CHECK(es.coeffs[k].v == 0);
    for (int i = 0; i < 30; ++i) {
      Poly a = random_poly(F, rng, 7), b = random_poly(F, rng, 7);
      if (a.is_zero() || b.is_zero() || multiplicity(a, v.poly()) || multiplicity(b, v.poly())) continue;
      auto ea = local_expand(RatFunc(a), v, n), eb = local_expand(RatFunc(b), v, n);
      auto eab = local_expand(RatFunc(a * b), v, n);
      CHECK(eab.coeffs == fseries::mul(K, ea.coeffs, eb.coeffs, n));
      auto esum = local_expand(RatFunc(a + b), v, n);
      if (!esum.is_zero() && esum.valuation == 0)
        CHECK(esum.coeffs == fseries::add(K, ea.coeffs, eb.coeffs, n));
      auto eq = local_expand(RatFunc(a, b), v, n);
      CHECK(fseries::mul(K, eq.coeffs, eb.coeffs, n) == ea.coeffs);
      CHECK(ea.coeffs[0] == v.reduce(a));
    }
  }
}

TEST_CASE("valuation axioms") {
  auto F = Field::get(7, 1);
  SplitMix64 rng(5);
  std::vector<Place> places{Place::infinity(F), Place::parse(F, "t"), Place::parse(F, "t+3"),
                            Place::parse(F, "t^2+1")};
  for (int i = 0; i < 200; ++i) {
    RatFunc f = random_ratfunc(F, rng), g = random_ratfunc(F, rng);
    for (const auto& v : places) {
      CHECK(valuation(f * g, v) == valuation(f, v) + valuation(g, v));
      RatFunc h = f + g;
      if (h.is_zero()) continue;
      const auto vf = valuation(f, v), vg = valuation(g, v);
      CHECK(valuation(h, v) >= std::min(vf, vg));
      if (vf != vg) CHECK(valuation(h, v) == std::min(vf, vg));
    }
  }
}

TEST_CASE("product formula") {
  auto F = Field::get(5, 1);
  CHECK(product_formula_check(R(F, "t^3/(t-1)")));
  auto div = divisor(R(F, "t^3/(t-1)"));
  REQUIRE(div.size() == 3);
  CHECK(div[2].first.is_infinity());
  CHECK(div[2].second == -2);
  CHECK(product_formula_check(R(F, "t^3 + t + 1")));
  for (auto q : {5u, 7u, 25u}) {
    auto K = Field::of_order(q);
    SplitMix64 rng(1000 + q);
    int passed = 0;
    for (int i = 0; i < 1000; ++i) passed += product_formula_check(random_ratfunc(K, rng));
    CHECK(passed == 1000);
  }
}

TEST_CASE("place parsing and ordering") {
  auto F = Field::get(5, 1);
  CHECK(Place::parse(F, "inf").is_infinity());
  CHECK(Place::parse(F, "t^2+2").to_string() == "t^2 + 2");
  CHECK_THROWS_AS(Place::parse(F, "t^2-1"), ParseError);
  CHECK_THROWS_AS(Place::parse(F, "2*t"), ParseError);
  CHECK(Place::parse(F, "t") < Place::infinity(F));
  CHECK(Place::parse(F, "t+4") < Place::parse(F, "t^2+2"));
  auto v = Place::parse(F, "t^3 + 3*t + 2");
  CHECK(v.degree() == 3);
  CHECK(v.residue_size() == 125);
  CHECK(v.embedding().map(v.poly()).eval(v.theta()).v == 0);
  CHECK(window(local_expand(RatFunc(v.poly()), v, 3), 0, 3)[1] == Fq{1});
}
