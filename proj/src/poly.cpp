#include "ffparity/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "ffparity/errors.hpp"
#include "ffparity/prng.hpp"

namespace ffp {

Poly::Poly(FieldPtr F, std::vector<Fq> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldPtr F, Fq c) { return Poly(std::move(F), std::vector<Fq>{c}); }

Poly Poly::monomial(FieldPtr F, Fq c, std::size_t k) {
  if (c == F->zero()) return Poly(std::move(F));
  std::vector<Fq> v(k + 1, F->zero());
  v[k] = c;
  return Poly(std::move(F), std::move(v));
}

Poly Poly::var(FieldPtr F) {
  const Fq one = F->one();
  return monomial(std::move(F), one, 1);
}

void Poly::trim() {
  while (!c_.empty() && c_.back().v == 0) c_.pop_back();
}

void Poly::check_field(const Poly& o) const {
  if (F_ != o.F_) throw DomainError("polynomials over different fields");
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = F_->neg(x);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_field(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->add(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_field(o);
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F_->zero());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = F_->sub(c_[i], o.c_[i]);
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_field(b);
  if (a.c_.empty() || b.c_.empty()) return Poly(a.F_);
  const Field& F = *a.F_;
  const std::size_t n = a.c_.size() + b.c_.size() - 1;
  if (F.e() == 1 && F.p() < (1u << 20) && n < (1u << 20)) {
    // products fit in 40 bits, so a full convolution cannot overflow 64 bits
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      const std::uint64_t x = a.c_[i].v;
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += x * b.c_[j].v;
    }
    std::vector<Fq> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = Fq{acc[k] % F.p()};
    return Poly(a.F_, std::move(r));
  }
  std::vector<Fq> r(n, F.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].v == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a.c_[i], b.c_[j]));
  }
  return Poly(a.F_, std::move(r));
}

Poly Poly::scaled(Fq c) const {
  Poly r = *this;
  for (auto& x : r.c_) x = F_->mul(x, c);
  r.trim();
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (c_.empty() || k == 0) return *this;
  std::vector<Fq> v(k, F_->zero());
  v.insert(v.end(), c_.begin(), c_.end());
  return Poly(F_, std::move(v));
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  return scaled(F_->inv(lead()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(F_);
  std::vector<Fq> v(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    v[i - 1] = F_->mul(c_[i], F_->from_int(static_cast<std::int64_t>(i % F_->p())));
  return Poly(F_, std::move(v));
}

Fq Poly::eval(Fq x) const {
  Fq r = F_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) r = F_->add(F_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::compose(const Poly& g) const {
  check_field(g);
  Poly r(F_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * g + constant(F_, c_[i]);
  return r;
}

Poly Poly::pow(std::uint64_t n) const {
  Poly r = constant(F_, F_->one()), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Poly Poly::reversed(std::size_t width) const {
  if (c_.size() > width + 1) throw DomainError("reversal width smaller than degree");
  std::vector<Fq> v(width + 1, F_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) v[width - i] = c_[i];
  return Poly(F_, std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
  if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
  for (std::size_t i = a.c_.size(); i-- > 0;)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.field() != b.field()) throw DomainError("polynomials over different fields");
  const Field& F = *a.field();
  const std::size_t db = *b.degree();
  if (a.is_zero() || *a.degree() < db) return {Poly(a.field()), a};
  std::vector<Fq> r = a.coeffs();
  std::vector<Fq> q(r.size() - db, F.zero());
  const Fq inv_lead = F.inv(b.lead());
  for (std::size_t k = r.size(); k-- > db;) {
    const Fq c = F.mul(r[k], inv_lead);
    q[k - db] = c;
    if (c.v == 0) continue;
    for (std::size_t i = 0; i <= db; ++i) r[k - db + i] = F.sub(r[k - db + i], F.mul(c, b.coeffs()[i]));
  }
  r.resize(db);
  return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly powmod(Poly base, std::uint64_t n, const Poly& mod) {
  Poly r = Poly::constant(base.field(), base.field()->one()) % mod;
  base = base % mod;
  while (n) {
    if (n & 1) r = (r * base) % mod;
    n >>= 1;
    if (n) base = (base * base) % mod;
  }
  return r;
}

int multiplicity(const Poly& f, const Poly& pi) {
  if (f.is_zero()) throw DomainError("multiplicity in the zero polynomial");
  int m = 0;
  Poly g = f;
  while (true) {
    auto [q, r] = divmod(g, pi);
    if (!r.is_zero()) return m;
    g = std::move(q);
    ++m;
  }
}

std::optional<Poly> pth_root(const Poly& f) {
  const Field& F = *f.field();
  const auto p = F.p();
  std::vector<Fq> v;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i % p != 0) {
      if (f.coeffs()[i].v != 0) return std::nullopt;
      continue;
    }
    v.push_back(F.inv_frobenius(f.coeffs()[i]));
  }
  return Poly(f.field(), std::move(v));
}

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field()->one())) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  if (num_.field() != den_.field()) throw DomainError("rational function over mixed fields");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), num_.field()->one());
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  const Fq c = num_.field()->inv(den_.lead());
  num_ = num_.scaled(c);
  den_ = den_.scaled(c);
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_polynomial() && b.is_polynomial()) return RatFunc(a.num_ * b.num_);
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero rational function");
  return RatFunc(den_, num_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

RatFunc RatFunc::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  return RatFunc(num_.pow(static_cast<std::uint64_t>(n)), den_.pow(static_cast<std::uint64_t>(n)));
}

Fq RatFunc::eval(Fq x) const {
  const Fq d = den_.eval(x);
  if (d.v == 0) throw DomainError("rational function has a pole at the evaluation point");
  return field()->div(num_.eval(x), d);
}

RatFunc compose(const RatFunc& f, const RatFunc& g) {
  auto horner = [&](const Poly& h) {
    RatFunc r(f.field());
    for (std::size_t i = h.coeffs().size(); i-- > 0;)
      r = r * g + RatFunc(Poly::constant(f.field(), h.coeffs()[i]));
    return r;
  };
  return horner(f.num()) / horner(f.den());
}

std::optional<RatFunc> pth_root(const RatFunc& f) {
  auto n = pth_root(f.num());
  auto d = pth_root(f.den());
  if (!n || !d) return std::nullopt;
  return RatFunc(*n, *d);
}

namespace {

std::vector<Factor> squarefree_decomposition(const Poly& f) {
  const FieldPtr& F = f.field();
  std::vector<Factor> out;
  Poly c = gcd(f, f.derivative());
  Poly w = f / c;
  int i = 1;
  while (!w.is_constant()) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (!z.is_constant()) out.push_back({z.monic(), i});
    ++i;
    w = y;
    c = c / y;
  }
  if (!c.is_constant()) {
    auto root = pth_root(c.monic());
    if (!root) throw InternalError("squarefree decomposition: residual part is not a p-th power");
    const int p = static_cast<int>(F->p());
    for (auto& [g, m] : squarefree_decomposition(*root)) out.push_back({g, m * p});
  }
  return out;
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly f) {
  const FieldPtr& F = f.field();
  std::vector<std::pair<Poly, unsigned>> out;
  const Poly t = Poly::var(F);
  Poly h = t % f;
  for (unsigned i = 1; f.degree().value_or(0) >= 2 * i; ++i) {
    h = powmod(h, F->q(), f);
    Poly g = gcd(h - t, f);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (!f.is_constant()) out.emplace_back(f.monic(), static_cast<unsigned>(*f.degree()));
  return out;
}

void equal_degree(const Poly& g, unsigned d, SplitMix64& rng, std::vector<Poly>& out) {
  const FieldPtr& F = g.field();
  const std::size_t n = *g.degree();
  if (n == d) {
    out.push_back(g.monic());
    return;
  }
  const Poly one = Poly::constant(F, F->one());
  while (true) {
    std::vector<Fq> a(n);
    for (auto& x : a) x = Fq{rng.below(F->q())};
    Poly ap(F, std::move(a));
    if (ap.is_constant()) continue;
    Poly c = powmod(ap, (F->q() - 1) / 2, g);
    Poly prod = c;
    for (unsigned i = 1; i < d; ++i) {
      c = powmod(c, F->q(), g);
      prod = (prod * c) % g;
    }
    Poly h = gcd(prod - one, g);
    const auto dh = h.degree().value_or(0);
    if (dh > 0 && dh < n) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Factor> factor(const Poly& f) {
  if (f.is_zero()) throw DomainError("factorization of the zero polynomial");
  std::vector<Factor> out;
  if (f.is_constant()) return out;
  SplitMix64 rng(0x5eedf00dULL);
  for (auto& [sq, mult] : squarefree_decomposition(f.monic())) {
    for (auto& [g, d] : distinct_degree(sq)) {
      std::vector<Poly> parts;
      equal_degree(g, d, rng, parts);
      for (auto& part : parts) out.push_back({part, mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const Factor& a, const Factor& b) { return a.poly < b.poly; });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.is_constant()) return false;
  const std::size_t n = *f.degree();
  if (n == 1) return true;
  const FieldPtr& F = f.field();
  const Poly t = Poly::var(F);
  Poly h = t % f;
  for (std::size_t i = 1; i <= n / 2; ++i) {
    h = powmod(h, F->q(), f);
    if (!gcd(h - t, f).is_one()) return false;
  }
  return true;
}

std::vector<Poly> monic_irreducibles(const FieldPtr& F, unsigned d) {
  if (d == 0) throw DomainError("degree must be positive");
  const std::uint64_t q = F->q();
  unsigned __int128 total = 1;
  for (unsigned i = 0; i < d; ++i) total *= q;
  if (total > 20'000'000) throw ResourceError("monic_irreducibles: q^d too large to enumerate");
  std::vector<Poly> out;
  for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(total); ++code) {
    std::vector<Fq> c(d + 1);
    std::uint64_t x = code;
    for (unsigned i = 0; i < d; ++i) {
      c[i] = Fq{x % q};
      x /= q;
    }
    c[d] = F->one();
    Poly f(F, std::move(c));
    if (is_irreducible(f)) out.push_back(std::move(f));
  }
  return out;
}

std::uint64_t count_monic_irreducibles(std::uint64_t q, unsigned d) {
  auto mobius = [](unsigned n) {
    int m = 1;
    for (unsigned k = 2; k * k <= n; ++k) {
      if (n % k) continue;
      n /= k;
      if (n % k == 0) return 0;
      m = -m;
    }
    if (n > 1) m = -m;
    return m;
  };
  __int128 sum = 0;
  for (unsigned k = 1; k <= d; ++k) {
    if (d % k) continue;
    __int128 pw = 1;
    for (unsigned i = 0; i < d / k; ++i) pw *= q;
    sum += mobius(k) * pw;
  }
  return static_cast<std::uint64_t>(sum / d);
}

std::vector<Fq> roots(const Poly& f) {
  if (f.is_zero()) throw DomainError("roots of the zero polynomial");
  if (f.is_constant()) return {};
  const FieldPtr& F = f.field();
  const Poly t = Poly::var(F);
  Poly g = gcd(powmod(t, F->q(), f) - t, f);
  std::vector<Fq> out;
  if (g.is_constant()) return out;
  std::vector<Poly> lin;
  SplitMix64 rng(0x600df00dULL);
  equal_degree(g, 1, rng, lin);
  for (auto& l : lin) out.push_back(F->neg(l.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Fq> find_root(const Poly& f) {
  auto r = roots(f);
  if (r.empty()) return std::nullopt;
  return r.front();
}

Embedding::Embedding(FieldPtr base, FieldPtr ext) : base_(std::move(base)), ext_(std::move(ext)) {
  if (base_->p() != ext_->p() || ext_->e() % base_->e() != 0)
    throw DomainError("no embedding F_" + std::to_string(base_->q()) + " -> F_" + std::to_string(ext_->q()));
  if (base_->e() == 1 || base_ == ext_) {
    identity_ = true;
    return;
  }
  if (!base_->has_tables()) throw ResourceError("embedding requires a tabulated base field");
  std::vector<Fq> mc;
  for (auto c : base_->modulus()) mc.push_back(Fq{c});
  auto r = find_root(Poly(ext_, mc));
  if (!r) throw InternalError("base modulus has no root in the extension");
  image_.assign(base_->q(), ext_->zero());
  Fq x = ext_->one();
  for (std::uint64_t l = 0; l + 1 < base_->q(); ++l) {
    image_[base_->exp(l).v] = x;
    x = ext_->mul(x, *r);
  }
  for (std::uint64_t a = 0; a < base_->q(); ++a) back_.emplace(image_[a].v, Fq{a});
}

std::optional<Fq> Embedding::preimage(Fq b) const {
  if (identity_) {
    if (base_ == ext_ || ext_->in_prime_field(b)) return b;
    return std::nullopt;
  }
  auto it = back_.find(b.v);
  if (it == back_.end()) return std::nullopt;
  return it->second;
}

Poly Embedding::map(const Poly& f) const {
  std::vector<Fq> c;
  c.reserve(f.coeffs().size());
  for (auto x : f.coeffs()) c.push_back((*this)(x));
  return Poly(ext_, std::move(c));
}

// ---------------------------------------------------------------- text syntax

std::string to_string(const Poly& f, std::string_view var) {
  if (f.is_zero()) return "0";
  const Field& F = *f.field();
  std::string out;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    const Fq c = f.coeffs()[k];
    if (c.v == 0) continue;
    if (!out.empty()) out += " + ";
    const bool unit = c == F.one();
    if (k == 0 || !unit) out += F.to_string(c);
    if (k > 0) {
      if (!unit) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

namespace {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (['*'] factor)*
// factor := atom ['^' uint]
// atom   := uint | 'g' | 't' | 'T' | '(' expr ')'
class PolyParser {
 public:
  PolyParser(const FieldPtr& F, std::string_view text) : F_(F) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  Poly parse() {
    if (s_.empty()) throw ParseError("empty polynomial");
    Poly r = expr();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  bool peek(char ch) const { return pos_ < s_.size() && s_[pos_] == ch; }

  bool starts_atom() const {
    if (pos_ >= s_.size()) return false;
    const char ch = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == 'g' || ch == 't' || ch == 'T' || ch == '(';
  }

  std::uint64_t parse_uint() {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc() || ptr == s_.data() + pos_) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  Poly expr() {
    Poly acc(F_);
    bool first = true;
    while (true) {
      bool negative = false;
      if (peek('+') || peek('-')) {
        negative = peek('-');
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negative ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_atom()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    const bool is_generator = peek('g');
    Poly base = atom();
    if (!peek('^')) return base;
    ++pos_;
    const auto k = parse_uint();
    if (is_generator) return Poly::constant(F_, F_->pow(F_->generator(), k));
    if (k > 1'000'000) fail("exponent too large");
    return base.pow(k);
  }

  Poly atom() {
    if (pos_ >= s_.size()) fail("expected a factor");
    const char ch = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) return Poly::constant(F_, Fq{parse_uint() % F_->p()});
    if (ch == 'g') {
      ++pos_;
      return Poly::constant(F_, F_->generator());
    }
    if (ch == 't' || ch == 'T') {
      ++pos_;
      return Poly::var(F_);
    }
    if (ch == '(') {
      ++pos_;
      Poly inner = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return inner;
    }
    fail(std::string("unexpected character '") + ch + "'");
  }

  const FieldPtr& F_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const FieldPtr& F, std::string_view text) { return PolyParser(F, text).parse(); }

std::string to_string(const RatFunc& f, std::string_view var) {
  if (f.is_polynomial()) return to_string(f.num(), var);
  return "(" + to_string(f.num(), var) + ")/(" + to_string(f.den(), var) + ")";
}

RatFunc parse_ratfunc(const FieldPtr& F, std::string_view text) {
  std::size_t slash = std::string_view::npos;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string_view::npos) throw ParseError("more than one '/' in rational function");
      slash = i;
    }
  }
  if (slash == std::string_view::npos) return RatFunc(parse_poly(F, text));
  Poly num = parse_poly(F, text.substr(0, slash));
  Poly den = parse_poly(F, text.substr(slash + 1));
  if (den.is_zero()) throw ParseError("rational function with zero denominator");
  return RatFunc(std::move(num), std::move(den));
}

}  // namespace ffp
