#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffparity/field.hpp"

namespace ffp {

/// Univariate polynomial over F_q, coefficients low to high, no trailing zeros.
class Poly {
 public:
  explicit Poly(FieldPtr F) : F_(std::move(F)) {}
  Poly(FieldPtr F, std::vector<Fq> coeffs);
  static Poly constant(FieldPtr F, Fq c);
  static Poly monomial(FieldPtr F, Fq c, std::size_t k);
  /// The polynomial variable t.
  static Poly var(FieldPtr F);

  const FieldPtr& field() const { return F_; }
  const std::vector<Fq>& coeffs() const { return c_; }
  /// nullopt encodes the degree -infinity of the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == F_->one(); }
  Fq lead() const { return c_.empty() ? F_->zero() : c_.back(); }
  Fq coeff(std::size_t k) const { return k < c_.size() ? c_[k] : F_->zero(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(Fq c) const;
  /// Multiply by t^k.
  Poly shifted(std::size_t k) const;

  Poly monic() const;
  Poly derivative() const;
  Fq eval(Fq x) const;
  Poly compose(const Poly& g) const;
  Poly pow(std::uint64_t n) const;
  /// Coefficient reversal t^deg * f(1/t) padded to `width` (>= deg).
  Poly reversed(std::size_t width) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.F_ == b.F_ && a.c_ == b.c_; }
  /// Deterministic total order: by degree, then coefficients from the top.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  void trim();
  void check_field(const Poly& o) const;

  FieldPtr F_;
  std::vector<Fq> c_;
};

/// Quotient and remainder; throws DomainError when dividing by zero.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly powmod(Poly base, std::uint64_t n, const Poly& mod);
/// Multiplicity of the irreducible `pi` in f (f nonzero).
int multiplicity(const Poly& f, const Poly& pi);
/// Coefficientwise p-th root; nullopt unless f is a p-th power in F_q[t].
std::optional<Poly> pth_root(const Poly& f);

/// Element of F_q(t) in canonical form: gcd(num, den) = 1 and den monic.
class RatFunc {
 public:
  explicit RatFunc(const FieldPtr& F) : num_(F), den_(Poly::constant(F, F->one())) {}
  RatFunc(Poly num);  // NOLINT(google-explicit-constructor)
  RatFunc(Poly num, Poly den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator-() const { return RatFunc(-num_, den_, Canonical{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc inverse() const;
  RatFunc pow(std::int64_t n) const;
  Fq eval(Fq x) const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  struct Canonical {};
  RatFunc(Poly num, Poly den, Canonical) : num_(std::move(num)), den_(std::move(den)) {}
  Poly num_;
  Poly den_;
};

/// f(g) for rational functions.
RatFunc compose(const RatFunc& f, const RatFunc& g);
/// Coefficientwise p-th root in K = F_q(t); nullopt unless f lies in K^p.
std::optional<RatFunc> pth_root(const RatFunc& f);

struct Factor {
  Poly poly;  // monic irreducible
  int mult;
};
/// Factorization into monic irreducibles (leading constant dropped), sorted by
/// the deterministic Poly order. Squarefree decomposition, distinct-degree and
/// Cantor-Zassenhaus equal-degree splitting.
std::vector<Factor> factor(const Poly& f);
bool is_irreducible(const Poly& f);
/// All monic irreducibles of degree d, ordered by their coefficient code.
std::vector<Poly> monic_irreducibles(const FieldPtr& F, unsigned d);
/// Number of monic irreducibles of degree d by the Moebius formula.
std::uint64_t count_monic_irreducibles(std::uint64_t q, unsigned d);
/// Some root of f in its own coefficient field, if any.
std::optional<Fq> find_root(const Poly& f);
/// All roots of f in its coefficient field (with multiplicity collapsed).
std::vector<Fq> roots(const Poly& f);

/// The embedding of F_q into an extension F_{q^d} that sends the generator of
/// F_q to a fixed root of its modulus.
class Embedding {
 public:
  Embedding(FieldPtr base, FieldPtr ext);
  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  Fq operator()(Fq a) const { return identity_ ? a : image_[a.v]; }
  std::optional<Fq> preimage(Fq b) const;
  Poly map(const Poly& f) const;

 private:
  FieldPtr base_;
  FieldPtr ext_;
  bool identity_ = false;
  std::vector<Fq> image_;
  std::unordered_map<std::uint64_t, Fq> back_;
};

/// Polynomial text syntax: terms `c*t^k` joined by + or -, where c is an
/// integer or a generator power `g^j`. Whitespace is ignored; `T` is accepted
/// as a synonym for `t`.
std::string to_string(const Poly& f, std::string_view var = "t");
Poly parse_poly(const FieldPtr& F, std::string_view text);
/// Either a polynomial or `(num)/(den)`.
std::string to_string(const RatFunc& f, std::string_view var = "t");
RatFunc parse_ratfunc(const FieldPtr& F, std::string_view text);

}  // namespace ffp
