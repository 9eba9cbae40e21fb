#include "ffparity/field.hpp"

#include <cctype>
#include <charconv>
#include <map>
#include <mutex>
#include <utility>

#include "ffparity/errors.hpp"

namespace ffp {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t n, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (n) {
    if (n & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    n >>= 1;
  }
  return r;
}

// Dense polynomials over F_p, low to high, used only while choosing moduli
// and for coordinate arithmetic in table-free fields.
using Vec = std::vector<std::uint64_t>;

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Vec vec_mod(Vec a, const Vec& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lead_inv = powmod(m.back(), p - 2, p);
  while (a.size() > dm) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(c, m[i], p)) % p;
    trim(a);
  }
  return a;
}

Vec vec_mulmod(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  return vec_mod(std::move(r), m, p);
}

Vec vec_powmod(Vec base, std::uint64_t n, const Vec& m, std::uint64_t p) {
  Vec r{1};
  base = vec_mod(std::move(base), m, p);
  while (n) {
    if (n & 1) r = vec_mulmod(r, base, m, p);
    base = vec_mulmod(base, base, m, p);
    n >>= 1;
  }
  return r;
}

Vec vec_gcd(Vec a, Vec b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = vec_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or irreducibility test for a monic polynomial of degree e over F_p.
bool vec_irreducible(const Vec& f, std::uint64_t p) {
  const std::size_t e = f.size() - 1;
  if (e == 1) return true;
  if (f[0] == 0) return false;
  Vec xp{0, 1};
  for (std::size_t i = 1; i <= e / 2; ++i) {
    xp = vec_powmod(xp, p, f, p);
    Vec d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    Vec g = vec_gcd(f, d, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint64_t least_primitive_root(std::uint64_t p) {
  const auto primes = prime_divisors(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (auto r : primes)
      if (powmod(g, (p - 1) / r, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // p = 2, excluded upstream
}

Vec candidate(std::uint64_t code, std::uint64_t p, unsigned e) {
  Vec f(e + 1, 0);
  for (unsigned i = 0; i < e; ++i) {
    f[i] = code % p;
    code /= p;
  }
  f[e] = 1;
  return f;
}

}  // namespace

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  a %= n;
  std::uint64_t x = a, k = 1;
  while (x != 1) {
    x = mulmod(x, a, n);
    ++k;
    if (k > n) throw DomainError("multiplicative_order: element is not a unit");
  }
  return k;
}

Field::Field(std::uint64_t p, unsigned e) : p_(p), e_(e) {
  if (p <= 3 || !is_prime(p) || p >= (std::uint64_t{1} << 31))
    throw ParseError("field characteristic must be a prime > 3 (got " + std::to_string(p) + ")");
  if (e == 0) throw ParseError("extension degree must be >= 1");
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q >= (static_cast<unsigned __int128>(1) << 63))
      throw ResourceError("field order p^e exceeds 2^63");
  }
  q_ = static_cast<std::uint64_t>(q);
  order_ = q_ - 1;
  const bool tables = q_ <= kTableLimit;

  if (e == 1) {
    const std::uint64_t g = least_primitive_root(p);
    modulus_ = {p - g, 1};
    if (tables) {
      exp_.resize(order_);
      log_.assign(q_, 0);
      std::uint64_t x = 1;
      for (std::uint64_t k = 0; k < order_; ++k) {
        exp_[k] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(k);
        x = x * g % p;
      }
      zech_.resize(order_);
      for (std::uint64_t d = 0; d < order_; ++d) {
        const std::uint64_t shifted = (exp_[d] + 1) % p;
        zech_[d] = shifted == 0 ? kNoZech : log_[shifted];
      }
    }
    return;
  }

  const auto order_primes = tables ? prime_divisors(order_) : std::vector<std::uint64_t>{};
  for (std::uint64_t code = 1; code < q_; ++code) {
    Vec f = candidate(code, p, e);
    if (!vec_irreducible(f, p)) continue;
    if (tables) {
      bool primitive = true;
      for (auto r : order_primes) {
        Vec t = vec_powmod(Vec{0, 1}, order_ / r, f, p);
        if (t.size() == 1 && t[0] == 1) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
    }
    modulus_ = std::move(f);
    break;
  }
  if (modulus_.empty()) throw InternalError("no modulus found");
  if (!tables) return;

  exp_.resize(order_);
  log_.assign(q_, 0);
  std::vector<std::uint64_t> c(e, 0);
  c[0] = 1;
  for (std::uint64_t k = 0; k < order_; ++k) {
    std::uint64_t enc = 0;
    for (unsigned i = e; i-- > 0;) enc = enc * p + c[i];
    exp_[k] = static_cast<std::uint32_t>(enc);
    log_[enc] = static_cast<std::uint32_t>(k);
    // multiply by x modulo the modulus
    const std::uint64_t top = c[e - 1];
    for (unsigned i = e - 1; i > 0; --i) c[i] = c[i - 1];
    c[0] = 0;
    if (top)
      for (unsigned i = 0; i < e; ++i) c[i] = (c[i] + (p - top) * modulus_[i]) % p;
  }
  zech_.resize(order_);
  for (std::uint64_t d = 0; d < order_; ++d) {
    const std::uint64_t enc = exp_[d];
    const std::uint64_t c0 = enc % p;
    const std::uint64_t shifted = enc - c0 + (c0 + 1) % p;
    zech_[d] = shifted == 0 ? kNoZech : log_[shifted];
  }
}

FieldPtr Field::get(std::uint64_t p, unsigned e) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, unsigned>, FieldPtr> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, e);
  auto it = registry.find(key);
  if (it != registry.end()) return it->second;
  auto f = std::make_shared<const Field>(p, e);
  registry.emplace(key, f);
  return f;
}

FieldPtr Field::of_order(std::uint64_t q) {
  if (q < 5) throw ParseError("field order must be a power of a prime > 3");
  const auto primes = prime_divisors(q);
  if (primes.size() != 1) throw ParseError("field order " + std::to_string(q) + " is not a prime power");
  const std::uint64_t p = primes[0];
  unsigned e = 0;
  while (q > 1) {
    q /= p;
    ++e;
  }
  return get(p, e);
}

Fq Field::from_int(std::int64_t n) const {
  const auto pp = static_cast<std::int64_t>(p_);
  std::int64_t r = n % pp;
  if (r < 0) r += pp;
  return {static_cast<std::uint64_t>(r)};
}

Fq Field::generator() const {
  if (!has_tables()) throw ResourceError("field of order " + std::to_string(q_) + " has no tabulated generator");
  return {exp_[1 % order_]};
}

Fq Field::from_coords(std::span<const std::uint64_t> c) const {
  std::uint64_t enc = 0;
  for (std::size_t i = std::min<std::size_t>(c.size(), e_); i-- > 0;) enc = enc * p_ + c[i] % p_;
  return {enc};
}

std::vector<std::uint64_t> Field::coords(Fq a) const {
  std::vector<std::uint64_t> c(e_);
  for (unsigned i = 0; i < e_; ++i) {
    c[i] = a.v % p_;
    a.v /= p_;
  }
  return c;
}

Fq Field::add_slow(Fq a, Fq b) const {
  auto ca = coords(a), cb = coords(b);
  for (unsigned i = 0; i < e_; ++i) ca[i] = (ca[i] + cb[i]) % p_;
  return from_coords(ca);
}

Fq Field::neg_slow(Fq a) const {
  auto c = coords(a);
  for (auto& x : c) x = x ? p_ - x : 0;
  return from_coords(c);
}

Fq Field::mul_slow(Fq a, Fq b) const {
  Vec r = vec_mulmod(coords(a), coords(b), modulus_, p_);
  return from_coords(r);
}

Fq Field::inv(Fq a) const {
  if (a.v == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  if (has_tables()) {
    const std::uint64_t l = log_[a.v];
    return {exp_[l == 0 ? 0 : order_ - l]};
  }
  return pow(a, q_ - 2);
}

Fq Field::pow(Fq a, std::uint64_t n) const {
  if (n == 0) return one();
  if (a.v == 0) return zero();
  if (has_tables()) {
    const auto k = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(log_[a.v]) * (n % order_) % order_);
    return {exp_[k]};
  }
  Fq r = one();
  while (n) {
    if (n & 1) r = mul(r, a);
    a = mul(a, a);
    n >>= 1;
  }
  return r;
}

int Field::legendre(Fq a) const {
  if (a.v == 0) return 0;
  if (has_tables()) return (log_[a.v] & 1u) ? -1 : 1;
  return pow(a, order_ / 2) == one() ? 1 : -1;
}

std::optional<Fq> Field::sqrt(Fq a) const {
  if (a.v == 0) return a;
  if (legendre(a) != 1) return std::nullopt;
  if (has_tables()) return Fq{exp_[log_[a.v] / 2]};
  // Tonelli-Shanks
  std::uint64_t s = 0, m = order_;
  while ((m & 1) == 0) {
    m >>= 1;
    ++s;
  }
  Fq z{2};
  while (legendre(z) != -1) z.v = z.v + 1;
  Fq c = pow(z, m), t = pow(a, m), r = pow(a, (m + 1) / 2);
  std::uint64_t k = s;
  while (t != one()) {
    std::uint64_t i = 0;
    Fq tt = t;
    while (tt != one()) {
      tt = mul(tt, tt);
      ++i;
    }
    Fq b = c;
    for (std::uint64_t j = 0; j + i + 1 < k; ++j) b = mul(b, b);
    r = mul(r, b);
    c = mul(b, b);
    t = mul(t, c);
    k = i;
  }
  return r;
}

Fq Field::inv_frobenius(Fq a) const {
  if (e_ == 1 || a.v == 0) return a;
  std::uint64_t n = 1;
  for (unsigned i = 1; i < e_; ++i) n *= p_;
  return pow(a, n);
}

std::uint64_t Field::log(Fq a) const {
  if (!has_tables()) throw ResourceError("discrete log needs a tabulated field");
  if (a.v == 0) throw DomainError("log of zero");
  return log_[a.v];
}

Fq Field::exp(std::uint64_t k) const {
  if (!has_tables()) throw ResourceError("exp needs a tabulated field");
  return {exp_[k % order_]};
}

std::string Field::to_string(Fq a) const {
  if (in_prime_field(a)) return std::to_string(a.v);
  if (has_tables()) {
    const auto l = log_[a.v];
    return l == 1 ? std::string("g") : "g^" + std::to_string(l);
  }
  std::string s = "[";
  auto c = coords(a);
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

Fq Field::parse(std::string_view text) const {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty field element");
  auto parse_uint = [&](std::string_view digits) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw ParseError("bad integer '" + std::string(digits) + "'");
    return v;
  };
  if (s[0] == 'g') {
    if (s.size() == 1) return generator();
    if (s[1] != '^' || s.size() < 3) throw ParseError("bad generator power '" + s + "'");
    return exp(parse_uint(std::string_view(s).substr(2)) % order_);
  }
  bool negative = false;
  std::string_view body = s;
  if (body[0] == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const Fq v{parse_uint(body) % p_};
  return negative ? neg(v) : v;
}

}  // namespace ffp
