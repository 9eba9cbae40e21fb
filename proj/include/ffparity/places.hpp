#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ffparity/field.hpp"
#include "ffparity/poly.hpp"

namespace ffp {

/// Valuation of the zero function.
inline constexpr std::int64_t kInfiniteValuation = std::numeric_limits<std::int64_t>::max();

/// A closed point of P^1 over F_q: a monic irreducible polynomial or infinity.
///
/// The residue field of a place of degree d is Field::get(p, e*d). F_q sits
/// inside it through `embedding()`, and t reduces to `theta()`, a fixed root of
/// the place polynomial. At infinity the residue field is F_q itself and the
/// uniformizer is s = 1/t.
class Place {
 public:
  static Place infinity(const FieldPtr& F);
  /// Throws DomainError unless pi is monic irreducible.
  explicit Place(const Poly& pi);
  static Place parse(const FieldPtr& F, std::string_view text);

  bool is_infinity() const { return !d_->pi.has_value(); }
  const Poly& poly() const;
  unsigned degree() const { return d_->degree; }
  const FieldPtr& base() const { return d_->base; }
  const FieldPtr& residue_field() const { return d_->residue; }
  std::uint64_t residue_size() const { return d_->residue->q(); }
  const Embedding& embedding() const { return *d_->embedding; }
  Fq theta() const { return d_->theta; }
  /// Image of a polynomial in the residue field (finite places only).
  Fq reduce(const Poly& f) const;

  std::string to_string() const;
  friend bool operator==(const Place& a, const Place& b);
  /// Finite places by polynomial order, infinity last.
  friend bool operator<(const Place& a, const Place& b);

 private:
  struct Data {
    FieldPtr base;
    std::optional<Poly> pi;
    unsigned degree = 1;
    FieldPtr residue;
    std::unique_ptr<Embedding> embedding;
    Fq theta;
  };
  explicit Place(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

std::int64_t valuation(const Poly& f, const Place& v);
std::int64_t valuation(const RatFunc& f, const Place& v);

/// Image of f in the residue field; DomainError when f has a pole at v.
Fq residue(const RatFunc& f, const Place& v);

/// Laurent expansion sum_i coeffs[i] * s^(valuation + i) in the uniformizer s
/// (pi at finite places, 1/t at infinity), with residue-field coefficients.
struct LocalExpansion {
  Place place;
  std::int64_t valuation;
  std::vector<Fq> coeffs;
  bool is_zero() const { return valuation == kInfiniteValuation; }
  /// Coefficient of s^k (zero outside the stored window below it).
  Fq at(std::int64_t k) const;
};

/// M coefficients starting at the leading term.
LocalExpansion local_expand(const RatFunc& f, const Place& v, std::size_t M);

/// The expansion of t in the uniformizer at a finite place: a power series
/// T(s) with T(0) = theta and pi(T(s)) = s, to n coefficients.
std::vector<Fq> uniformizer_section(const Place& v, std::size_t n);

/// The places where f has nonzero valuation, with those valuations.
std::vector<std::pair<Place, std::int64_t>> divisor(const RatFunc& f);

/// sum_v v(f) deg(v) == 0 over all places (f nonzero).
bool product_formula_check(const RatFunc& f);

/// Default expansion precision 2(p + 2).
inline std::size_t default_precision(const Field& F) { return 2 * (F.p() + 2); }

}  // namespace ffp
