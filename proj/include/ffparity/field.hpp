#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ffp {

/// An element of F_q stored as the integer sum_i c_i p^i of its power-basis
/// coordinates. Prime-field elements therefore share their encoding across
/// every extension of F_p.
struct Fq {
  std::uint64_t v = 0;
  friend bool operator==(Fq, Fq) = default;
  friend auto operator<=>(Fq, Fq) = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The finite field F_q, q = p^e with p > 3 prime.
///
/// Fields are interned: `Field::get(p, e)` always returns the same instance, so
/// pointer equality is field equality. The modulus is the lexicographically
/// least monic primitive polynomial of degree e over F_p (for e = 1, x - g with
/// g the least primitive root), which makes x itself the generator `g` used by
/// the text syntax.
///
/// Fields with q <= kTableLimit carry exp/log/Zech tables and every operation
/// is a table lookup. Larger fields (only ever needed as residue fields of
/// high-degree places) use a plain irreducible modulus and coordinate
/// arithmetic; they have no distinguished generator.
class Field {
 public:
  static constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 23;

  static FieldPtr get(std::uint64_t p, unsigned e);
  /// Field of order q; throws ParseError unless q is a power of a prime > 3.
  static FieldPtr of_order(std::uint64_t q);

  std::uint64_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint64_t q() const { return q_; }
  /// Monic modulus over F_p, coefficients low to high (size e + 1).
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool has_tables() const { return !exp_.empty(); }

  Fq zero() const { return {0}; }
  Fq one() const { return {1}; }
  Fq from_int(std::int64_t n) const;
  Fq generator() const;
  Fq from_coords(std::span<const std::uint64_t> c) const;
  std::vector<std::uint64_t> coords(Fq a) const;
  bool in_prime_field(Fq a) const { return a.v < p_; }

  Fq add(Fq a, Fq b) const {
    if (e_ == 1) {
      std::uint64_t s = a.v + b.v;
      return {s >= p_ ? s - p_ : s};
    }
    if (a.v == 0) return b;
    if (b.v == 0) return a;
    if (has_tables()) {
      std::uint64_t la = log_[a.v], lb = log_[b.v];
      std::uint64_t d = lb >= la ? lb - la : lb + order_ - la;
      std::uint32_t z = zech_[d];
      if (z == kNoZech) return {0};
      std::uint64_t k = la + z;
      return {exp_[k >= order_ ? k - order_ : k]};
    }
    return add_slow(a, b);
  }
  Fq neg(Fq a) const {
    if (a.v == 0) return a;
    if (e_ == 1) return {p_ - a.v};
    if (has_tables()) {
      // -1 = g^((q-1)/2)
      std::uint64_t k = log_[a.v] + order_ / 2;
      return {exp_[k >= order_ ? k - order_ : k]};
    }
    return neg_slow(a);
  }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq mul(Fq a, Fq b) const {
    if (e_ == 1) return {(a.v * b.v) % p_};
    if (a.v == 0 || b.v == 0) return {0};
    if (has_tables()) {
      std::uint64_t k = std::uint64_t{log_[a.v]} + log_[b.v];
      return {exp_[k >= order_ ? k - order_ : k]};
    }
    return mul_slow(a, b);
  }
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::uint64_t n) const;
  /// +1 for nonzero squares, -1 for non-squares, 0 for zero.
  int legendre(Fq a) const;
  std::optional<Fq> sqrt(Fq a) const;
  Fq frobenius(Fq a) const { return pow(a, p_); }
  /// The unique b with b^p = a.
  Fq inv_frobenius(Fq a) const;

  /// Discrete log to base generator(); table fields only, a != 0.
  std::uint64_t log(Fq a) const;
  Fq exp(std::uint64_t k) const;
  /// Entry d is log(1 + g^d), or kNoZech when 1 + g^d = 0. Empty without tables.
  std::span<const std::uint32_t> zech_table() const { return zech_; }
  static constexpr std::uint32_t kNoZech = 0xffffffffu;

  /// Integers for prime-field elements, `g^j` otherwise.
  std::string to_string(Fq a) const;
  /// Accepts an integer (reduced mod p), `g`, or `g^j`.
  Fq parse(std::string_view text) const;

  Field(std::uint64_t p, unsigned e);  // use get()

 private:
  Fq add_slow(Fq a, Fq b) const;
  Fq neg_slow(Fq a) const;
  Fq mul_slow(Fq a, Fq b) const;

  std::uint64_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::uint64_t order_;  // q - 1
  std::vector<std::uint64_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> zech_;
};

bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order (trial division).
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);
/// Multiplicative order of a modulo n (gcd(a, n) = 1 required).
std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n);

}  // namespace ffp
