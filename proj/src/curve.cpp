#include "ffparity/curve.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "ffparity/errors.hpp"

namespace ffp {

namespace {

RatFunc cst(const FieldPtr& F, std::int64_t n) { return RatFunc(Poly::constant(F, F->from_int(n))); }

Poly lcm(const Poly& a, const Poly& b) { return (a * b / gcd(a, b)).monic(); }

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

RatFunc discriminant(const RatFunc& A, const RatFunc& B) {
  const FieldPtr& F = A.field();
  return cst(F, -16) * (cst(F, 4) * A.pow(3) + cst(F, 27) * B.pow(2));
}

RatFunc j_invariant(const RatFunc& A, const RatFunc& B) {
  const FieldPtr& F = A.field();
  RatFunc d = cst(F, 4) * A.pow(3) + cst(F, 27) * B.pow(2);
  if (d.is_zero()) throw SingularCurveError("j-invariant of a singular curve");
  return cst(F, 6912) * A.pow(3) / d;
}

RatFunc hasse_invariant(const RatFunc& A, const RatFunc& B) {
  const FieldPtr& F = A.field();
  const std::int64_t p = static_cast<std::int64_t>(F->p());
  const std::int64_t n = (p - 1) / 2;
  std::vector<Fq> fact(static_cast<std::size_t>(n + 1), F->one());
  for (std::int64_t i = 1; i <= n; ++i)
    fact[static_cast<std::size_t>(i)] = F->mul(fact[static_cast<std::size_t>(i - 1)], F->from_int(i));
  RatFunc sum(F);
  for (std::int64_t a = 0; a <= n; ++a) {
    const std::int64_t b = p - 1 - 3 * a, c = n - a - b;
    if (b < 0 || c < 0) continue;
    Fq coeff = F->div(fact[static_cast<std::size_t>(n)],
                      F->mul(fact[static_cast<std::size_t>(a)],
                             F->mul(fact[static_cast<std::size_t>(b)], fact[static_cast<std::size_t>(c)])));
    sum = sum + RatFunc(Poly::constant(F, coeff)) * A.pow(b) * B.pow(c);
  }
  return sum;
}

Curve::Curve(const RatFunc& A, const RatFunc& B) : A_(A.field()), B_(A.field()), u_(A.field()) {
  if (A.field() != B.field()) throw DomainError("curve coefficients over different fields");
  u_ = lcm(A.den(), B.den());
  const RatFunc u(u_);
  A_ = (u.pow(4) * A).num();
  B_ = (u.pow(6) * B).num();
  if (ffp::discriminant(RatFunc(A_), RatFunc(B_)).is_zero())
    throw SingularCurveError("singular curve: 4A^3 + 27B^2 = 0");
  if (A_.is_zero() || B_.is_zero() || ffp::j_invariant(RatFunc(A_), RatFunc(B_)).is_constant())
    throw IsotrivialCurveError("isotrivial curve: the j-invariant is constant");
}

Curve Curve::parse(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(std::string_view(t).substr(0, eq));
    std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key != "q" && key != "A" && key != "B")
      throw ParseError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ParseError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  for (const char* k : {"q", "A", "B"})
    if (!kv.count(k)) throw ParseError(std::string("curve file is missing '") + k + "'");
  std::uint64_t q = 0;
  try {
    std::size_t used = 0;
    q = std::stoull(kv["q"], &used);
    if (used != kv["q"].size()) throw ParseError("bad q");
  } catch (const std::logic_error&) {
    throw ParseError("q must be an integer, got '" + kv["q"] + "'");
  }
  FieldPtr F = Field::of_order(q);
  return Curve(parse_ratfunc(F, kv["A"]), parse_ratfunc(F, kv["B"]));
}

Poly Curve::discriminant() const { return ffp::discriminant(RatFunc(A_), RatFunc(B_)).num(); }

RatFunc Curve::j_invariant() const { return ffp::j_invariant(RatFunc(A_), RatFunc(B_)); }

Poly Curve::hasse_invariant() const { return ffp::hasse_invariant(RatFunc(A_), RatFunc(B_)).num(); }

Curve Curve::frobenius_twist() const {
  const auto p = field()->p();
  return Curve(RatFunc(A_.pow(p)), RatFunc(B_.pow(p)));
}

std::string Curve::canonical() const {
  return "q=" + std::to_string(field()->q()) + ";A=" + ffp::to_string(A_) + ";B=" + ffp::to_string(B_);
}

std::string Curve::to_file() const {
  return "q = " + std::to_string(field()->q()) + "\nA = " + ffp::to_string(A_) + "\nB = " + ffp::to_string(B_) +
         "\n";
}

DivisionPolynomial division_polynomial(const Curve& E, unsigned m) {
  if (m == 0) throw DomainError("division polynomial index must be positive");
  const FieldPtr& F = E.field();
  auto c = [&](std::int64_t n) { return Poly::constant(F, F->from_int(n)); };
  const Poly& A = E.A();
  const Poly& B = E.B();
  const Poly zero(F);
  // F(x) = x^3 + Ax + B
  const XPoly cubic(F, {B, A, zero, c(1)});
  const XPoly cubic2 = cubic * cubic;
  std::vector<XPoly> g;
  g.push_back(XPoly(F));
  g.push_back(XPoly::constant(c(1)));
  g.push_back(XPoly::constant(c(2)));
  g.push_back(XPoly(F, {-(A * A), B.scaled(F->from_int(12)), A.scaled(F->from_int(6)), zero, c(3)}));
  g.push_back(XPoly(F, {(B * B).scaled(F->from_int(-8)) - A.pow(3), (A * B).scaled(F->from_int(-4)),
                        (A * A).scaled(F->from_int(-5)), B.scaled(F->from_int(20)), A.scaled(F->from_int(5)), zero,
                        c(1)})
                  .scaled(F->from_int(4)));
  const Fq half = F->inv(F->from_int(2));
  for (unsigned n = 5; n <= m; ++n) {
    const unsigned k = n / 2;
    if (n % 2 == 1) {
      XPoly lhs = g[k + 2] * g[k] * g[k] * g[k];
      XPoly rhs = g[k - 1] * g[k + 1] * g[k + 1] * g[k + 1];
      if (k % 2 == 0)
        lhs = lhs * cubic2;
      else
        rhs = rhs * cubic2;
      g.push_back(lhs - rhs);
    } else {
      XPoly inner = g[k + 2] * g[k - 1] * g[k - 1] - g[k - 2] * g[k + 1] * g[k + 1];
      g.push_back((g[k] * inner).scaled(half));
    }
  }
  return {g[m], m % 2 == 0};
}

KernelPolynomial verschiebung_kernel_poly(const Curve& E) {
  const FieldPtr& F = E.field();
  const unsigned p = static_cast<unsigned>(F->p());
  const Curve Et = E.frobenius_twist();
  const XPoly psi = division_polynomial(Et, p).g;
  const std::size_t half = (p - 1) / 2;
  const std::size_t top = p * half;
  if (psi.degree() != top)
    throw InternalError("psi_p(E') has x-degree " + std::to_string(psi.degree().value_or(0)) + ", expected " +
                        std::to_string(top));
  for (std::size_t i = 0; i <= top; ++i)
    if (i % p != 0 && !psi.coeff(i).is_zero())
      throw InternalError("psi_p(E') has a term x^" + std::to_string(i) + " outside x^p-powers");

  const RatFunc c(psi.coeff(top));
  const RatFunc alpha(E.hasse_invariant());
  if (alpha.is_zero()) throw InternalError("Hasse invariant vanishes identically");

  KernelPolynomial out{{}, c, -1, F->zero()};
  std::vector<int> candidates{static_cast<int>(p)};
  for (int k = 0; k <= static_cast<int>(3 * p); ++k) candidates.push_back(k);
  for (int k : candidates) {
    RatFunc r = c / alpha.pow(k);
    if (r.is_constant() && !r.is_zero() && F->in_prime_field(r.num().lead())) {
      out.k = k;
      out.unit = r.num().lead();
      break;
    }
  }
  if (out.k < 0) throw InternalError("psi_p(E') leading coefficient is not a unit times a power of alpha");

  for (std::size_t j = 0; j <= half; ++j) {
    auto root = pth_root(RatFunc(psi.coeff(p * j)) / c);
    if (!root) throw InternalError("psi_p(E') / c is not a p-th power");
    out.coeffs.push_back(alpha * *root);
  }
  return out;
}

std::string to_string(const KernelPolynomial& f) {
  std::string out;
  for (std::size_t k = f.coeffs.size(); k-- > 0;) {
    if (f.coeffs[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(f.coeffs[k]) + ")";
    if (k > 0) out += k == 1 ? "*x" : "*x^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

}  // namespace ffp
