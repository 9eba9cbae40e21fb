#include "ffparity/formal.hpp"
#include "ffparity/localdata.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "ffparity/errors.hpp"
#include "ffparity/series.hpp"

namespace ffp {

namespace {

// Coefficient rings for the formal-group recursion: F_q[t] for the global
// series and O_v / m_v^n (truncated local expansions) for place-wise work.
struct PolyRing {
  using T = Poly;
  FieldPtr F;
  T zero() const { return Poly(F); }
  T from_int(std::int64_t n) const { return Poly::constant(F, F->from_int(n)); }
  T add(const T& a, const T& b) const { return a + b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T mul(const T& a, const T& b) const { return a * b; }
  bool is_zero(const T& a) const { return a.is_zero(); }
};

struct TruncRing {
  using T = std::vector<Fq>;
  FieldPtr K;
  std::size_t n;
  T zero() const { return T(n, Fq{0}); }
  T from_int(std::int64_t m) const {
    T r = zero();
    if (n) r[0] = K->from_int(m);
    return r;
  }
  T add(const T& a, const T& b) const { return fseries::add(*K, a, b, n); }
  T sub(const T& a, const T& b) const { return fseries::sub(*K, a, b, n); }
  T mul(const T& a, const T& b) const { return fseries::mul(*K, a, b, n); }
  bool is_zero(const T& a) const {
    return std::all_of(a.begin(), a.end(), [](Fq x) { return x.v == 0; });
  }
};

// Power series in 1..3 variables truncated to total degree < N, stored densely
// with flat index sum_k e_k N^k.
template <class Ring>
class MSeries {
 public:
  using T = typename Ring::T;

  MSeries(const Ring& R, unsigned nvars, std::size_t N) : R_(&R), nv_(nvars), N_(N) {
    std::size_t size = 1;
    for (unsigned k = 0; k < nv_; ++k) size *= N_;
    c_.assign(size, R.zero());
    for (std::size_t idx = 0; idx < size; ++idx)
      if (total_degree(idx) < N_) monomials_.push_back(idx);
  }

  static MSeries var(const Ring& R, unsigned nvars, std::size_t N, unsigned k) {
    MSeries s(R, nvars, N);
    std::size_t idx = 1;
    for (unsigned i = 0; i < k; ++i) idx *= N;
    if (N > 1) s.c_[idx] = R.from_int(1);
    return s;
  }

  static MSeries constant(const Ring& R, unsigned nvars, std::size_t N, const T& c) {
    MSeries s(R, nvars, N);
    s.c_[0] = c;
    return s;
  }

  std::size_t total_degree(std::size_t idx) const {
    std::size_t d = 0;
    for (unsigned k = 0; k < nv_; ++k) {
      d += idx % N_;
      idx /= N_;
    }
    return d;
  }

  const T& operator[](std::size_t idx) const { return c_[idx]; }
  T& operator[](std::size_t idx) { return c_[idx]; }
  std::size_t size() const { return c_.size(); }

  MSeries operator+(const MSeries& o) const {
    MSeries r = *this;
    for (auto idx : monomials_) r.c_[idx] = R_->add(c_[idx], o.c_[idx]);
    return r;
  }
  MSeries operator-(const MSeries& o) const {
    MSeries r = *this;
    for (auto idx : monomials_) r.c_[idx] = R_->sub(c_[idx], o.c_[idx]);
    return r;
  }
  MSeries operator*(const MSeries& o) const {
    MSeries r(*R_, nv_, N_);
    std::vector<std::pair<std::size_t, std::size_t>> a, b;  // (index, degree) of nonzero terms
    for (auto idx : monomials_) {
      if (!R_->is_zero(c_[idx])) a.emplace_back(idx, total_degree(idx));
      if (!R_->is_zero(o.c_[idx])) b.emplace_back(idx, total_degree(idx));
    }
    for (const auto& [i, di] : a)
      for (const auto& [j, dj] : b)
        if (di + dj < N_) r.c_[i + j] = R_->add(r.c_[i + j], R_->mul(c_[i], o.c_[j]));
    return r;
  }
  MSeries scaled(const T& s) const {
    MSeries r(*R_, nv_, N_);
    for (auto idx : monomials_)
      if (!R_->is_zero(c_[idx])) r.c_[idx] = R_->mul(c_[idx], s);
    return r;
  }
  bool operator==(const MSeries& o) const { return c_ == o.c_; }
  bool is_zero() const {
    return std::all_of(monomials_.begin(), monomials_.end(), [&](std::size_t i) { return R_->is_zero(c_[i]); });
  }

  /// 1 / (1 + x) for x without constant term.
  MSeries one_plus_inverse() const {
    MSeries term = constant(*R_, nv_, N_, R_->from_int(1));
    MSeries sum = term;
    MSeries negx = scaled(R_->from_int(-1));
    for (std::size_t k = 1; k < N_; ++k) {
      term = term * negx;
      if (term.is_zero()) break;
      sum = sum + term;
    }
    return sum;
  }

 private:
  const Ring* R_;
  unsigned nv_;
  std::size_t N_;
  std::vector<T> c_;
  std::vector<std::size_t> monomials_;
};

template <class Ring>
class FormalGroup {
 public:
  using T = typename Ring::T;
  using S = MSeries<Ring>;

  FormalGroup(const Ring& R, T A, T B, std::size_t N) : R_(R), A_(std::move(A)), B_(std::move(B)), N_(N) {
    // fixed point of w = z^3 + A z w^2 + B w^3; each pass fixes at least one more coefficient
    const S z = S::var(R_, 1, N_, 0);
    const S z3 = z * z * z;
    S w(R_, 1, N_);
    for (std::size_t it = 0; it < N_; ++it) {
      S w2 = w * w;
      S next = z3 + (z * w2).scaled(A_) + (w2 * w).scaled(B_);
      if (next == w) break;
      w = std::move(next);
    }
    for (std::size_t n = 0; n < N_; ++n) w_.push_back(w[n]);
  }

  const std::vector<T>& w() const { return w_; }

  // F(a, b) for series a, b without constant terms.
  S add(const S& a, const S& b) const {
    const unsigned nv = nvars(a);
    S one = S::constant(R_, nv, N_, R_.from_int(1));
    S h = one, apow = one, bpow = one;
    S lambda(R_, nv, N_), wa(R_, nv, N_);
    for (std::size_t n = 1; n < N_; ++n) {
      // h = sum_{i+j=n-1} a^i b^j, the divided difference (b^n - a^n)/(b - a)
      if (n >= 3 && !R_.is_zero(w_[n])) lambda = lambda + h.scaled(w_[n]);
      bpow = bpow * b;
      h = a * h + bpow;
      apow = apow * a;
      if (n >= 3 && !R_.is_zero(w_[n])) wa = wa + apow.scaled(w_[n]);
    }
    S nu = wa - lambda * a;
    S l2 = lambda * lambda;
    S l3 = l2 * lambda;
    S num = (lambda.scaled(R_.mul(R_.from_int(2), A_)) + l2.scaled(R_.mul(R_.from_int(3), B_))) * nu;
    S den = l2.scaled(A_) + l3.scaled(B_);
    return a + b + num * den.one_plus_inverse();
  }

  // [m](z), double-and-add.
  std::vector<T> multiply(std::uint64_t m) const {
    if (m == 0) throw DomainError("multiplication series needs m >= 1");
    const S z = S::var(R_, 1, N_, 0);
    S r = z;
    int top = 63;
    while (!((m >> top) & 1)) --top;
    for (int bit = top - 1; bit >= 0; --bit) {
      r = add(r, r);
      if ((m >> bit) & 1) r = add(r, z);
    }
    std::vector<T> out;
    for (std::size_t n = 0; n < N_; ++n) out.push_back(r[n]);
    return out;
  }

  std::size_t precision() const { return N_; }

 private:
  unsigned nvars(const S& s) const {
    unsigned nv = 0;
    for (std::size_t size = 1; size < s.size(); size *= N_) ++nv;
    return nv;
  }

  const Ring& R_;
  T A_, B_;
  std::size_t N_;
  std::vector<T> w_;
};

struct LocalModel {
  std::int64_t k;          // valuation of the minimalizing scale
  std::vector<Fq> A, B;    // minimal-model coefficients in O_v / m_v^n
  std::int64_t hasse_val;  // v(alpha) on the minimal model
};

LocalModel local_minimal_model(const Curve& E, const Place& v, std::size_t n) {
  LocalMinimalModel m = minimal_model_at(E, v, n);
  if (m.val_disc != 0) throw DomainError("place " + v.to_string() + " is not a place of good reduction");
  const auto p = static_cast<std::int64_t>(E.field()->p());
  return {m.k, std::move(m.A), std::move(m.B), valuation(E.hasse_invariant(), v) - (p - 1) * m.k};
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp) {
  unsigned __int128 r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > (static_cast<unsigned __int128>(1) << 62)) return std::uint64_t{1} << 62;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::vector<Poly> weierstrass_w(const Curve& E, std::size_t N) {
  PolyRing R{E.field()};
  return FormalGroup<PolyRing>(R, E.A(), E.B(), N).w();
}

FormalGroupLaw formal_group_law(const Curve& E, std::size_t N) {
  if (N < 3) throw DomainError("formal group law needs precision N >= 3");
  PolyRing R{E.field()};
  FormalGroup<PolyRing> G(R, E.A(), E.B(), N);
  using S = MSeries<PolyRing>;
  S law = G.add(S::var(R, 2, N, 0), S::var(R, 2, N, 1));
  FormalGroupLaw out{N, std::vector<std::vector<Poly>>(N, std::vector<Poly>(N, Poly(E.field())))};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; i + j < N; ++j) out.f[i][j] = law[i + j * N];
  return out;
}

std::vector<Poly> multiplication_series(const Curve& E, std::uint64_t m, std::size_t N) {
  PolyRing R{E.field()};
  return FormalGroup<PolyRing>(R, E.A(), E.B(), N).multiply(m);
}

VerschiebungSeries verschiebung_series(const Curve& E, std::size_t N) {
  const FieldPtr& F = E.field();
  const std::size_t p = F->p();
  if (N < p) throw DomainError("Verschiebung series needs precision N >= p");
  const Curve Et = E.frobenius_twist();
  PolyRing R{F};
  const auto pe = FormalGroup<PolyRing>(R, Et.A(), Et.B(), p * (N - 1) + 1).multiply(p);
  VerschiebungSeries out{N, std::vector<Poly>(N, Poly(F))};
  for (std::size_t i = 0; i < pe.size(); ++i) {
    if (i % p != 0) {
      if (!pe[i].is_zero()) throw InternalError("[p]_{E'} has a term z^" + std::to_string(i) + " outside z^p-powers");
      continue;
    }
    auto root = pth_root(pe[i]);
    if (!root) throw InternalError("coefficient of z^" + std::to_string(i) + " in [p]_{E'} is not a p-th power");
    out.coeffs[i / p] = *root;
  }
  return out;
}

std::string format_series(const std::vector<Poly>& s, std::string_view coeff_var) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (s[k].is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(s[k], coeff_var) + ") * t^" + std::to_string(k);
  }
  return out.empty() ? "0" : out;
}

std::vector<std::vector<Fq>> local_verschiebung(const Curve& E, const Place& v, std::size_t M, bool via_twist) {
  const FieldPtr& K = v.residue_field();
  const std::size_t p = E.field()->p();
  if (M < 2) throw DomainError("local Verschiebung needs M >= 2");
  const std::size_t P = via_twist ? p * M : M;
  const LocalModel lm = local_minimal_model(E, v, P);
  TruncRing R{K, P};
  std::vector<Fq> A = lm.A, B = lm.B;
  if (via_twist) {
    // (sum a_j s^j)^p = sum a_j^p s^(pj) in characteristic p
    std::vector<Fq> At(P, Fq{0}), Bt(P, Fq{0});
    for (std::size_t j = 0; p * j < P; ++j) {
      At[p * j] = K->frobenius(A[j]);
      Bt[p * j] = K->frobenius(B[j]);
    }
    A = std::move(At);
    B = std::move(Bt);
  }
  const auto series = FormalGroup<TruncRing>(R, A, B, p * (M - 1) + 1).multiply(p);
  std::vector<std::vector<Fq>> beta(M, std::vector<Fq>(M, Fq{0}));
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i % p != 0) {
      if (!R.is_zero(series[i])) throw InternalError("local [p] series has a term outside z^p-powers");
      continue;
    }
    const std::size_t idx = i / p;
    if (idx == 0 || idx >= M) continue;
    const auto& c = series[i];
    if (via_twist) {
      for (std::size_t j = 0; j < P; ++j)
        if (j % p != 0 && c[j].v != 0) throw InternalError("local [p]_{E'} coefficient is not a p-th power");
      for (std::size_t j = 0; j < M; ++j) beta[idx][j] = K->inv_frobenius(c[p * j]);
    } else {
      for (std::size_t j = 0; j < M; ++j) beta[idx][j] = c[j];
    }
  }
  return beta;
}

ZVCount z_V_count(const Curve& E, const Place& v, std::size_t M) {
  const FieldPtr& K = v.residue_field();
  const std::uint64_t Q = K->q();
  if (M < 2) throw DomainError("z_V needs truncation M >= 2");
  const std::uint64_t total = checked_power(Q, M - 1);
  if (total > kZVEnumerationLimit)
    throw ResourceError("truncated ring m/m^" + std::to_string(M) + " has " + std::to_string(total) +
                        " elements, above the limit " + std::to_string(kZVEnumerationLimit));
  const auto hasse_val = local_minimal_model(E, v, 1).hasse_val;
  const auto beta = local_verschiebung(E, v, M);

  std::vector<char> in_image(total, 0);
  std::vector<std::uint64_t> kernel_by_val(M + 1, 0);  // kernel elements by valuation (M = zero)
  std::vector<std::uint64_t> digits(M, 0);
  std::vector<Fq> t(M, Fq{0});
  std::uint64_t kernel = 0, image = 0;
  for (std::uint64_t it = 0; it < total; ++it) {
    for (std::size_t j = 1; j < M; ++j) t[j] = Fq{digits[j]};
    std::vector<Fq> r = beta[M - 1];
    for (std::size_t i = M - 1; i-- > 1;) {
      r = fseries::mul(*K, r, t, M);
      for (std::size_t j = 0; j < M; ++j) r[j] = K->add(r[j], beta[i][j]);
    }
    r = fseries::mul(*K, r, t, M);
    std::uint64_t key = 0;
    for (std::size_t j = M; j-- > 1;) key = key * Q + r[j].v;
    if (!in_image[key]) {
      in_image[key] = 1;
      ++image;
    }
    if (key == 0) {
      ++kernel;
      std::size_t val = M;
      for (std::size_t j = 1; j < M; ++j)
        if (digits[j]) {
          val = j;
          break;
        }
      ++kernel_by_val[val];
    }
    for (std::size_t j = 1; j < M; ++j) {
      if (++digits[j] < Q) break;
      digits[j] = 0;
    }
  }
  if (image * kernel != total) throw InternalError("truncated V_1 is not a group homomorphism");
  // smallest c with the ball m^c / m^M inside the kernel set
  std::uint64_t acc = kernel_by_val[M];
  std::size_t c = M;
  for (std::size_t j = M; j-- > 1;) {
    acc += kernel_by_val[j];
    if (acc != checked_power(Q, M - j)) break;
    c = j;
  }
  return {total / image, kernel / checked_power(Q, M - c), M, hasse_val};
}

ZVCount z_V_numeric(const Curve& E, const Place& v, std::size_t M) {
  const std::uint64_t Q = v.residue_size();
  const auto hasse_val = local_minimal_model(E, v, 1).hasse_val;
  if (static_cast<std::int64_t>(M) <= 2 * hasse_val + 2)
    throw DomainError("z_V needs M > 2 v(alpha) + 2 = " + std::to_string(2 * hasse_val + 2));
  if (checked_power(Q, M) > kZVEnumerationLimit)
    throw ResourceError("z_V at M = " + std::to_string(M) + " needs q_v^M = " + std::to_string(Q) + "^" +
                        std::to_string(M) + " elements, above the limit " + std::to_string(kZVEnumerationLimit));
  const ZVCount a = z_V_count(E, v, M);
  const ZVCount b = z_V_count(E, v, M + 1);
  if (a.coker * b.ker != b.coker * a.ker)
    throw DomainError("z_V truncation M = " + std::to_string(M) + " too small: " + zv_string(a) + " at M, " +
                      zv_string(b) + " at M + 1");
  return a;
}

std::int64_t zv_exponent(const ZVCount& z, std::uint64_t p) {
  auto log_p = [p](std::uint64_t n) {
    std::int64_t e = 0;
    while (n > 1) {
      if (n % p) throw InternalError("z_V count is not a power of p");
      n /= p;
      ++e;
    }
    return e;
  };
  return log_p(z.coker) - log_p(z.ker);
}

std::string zv_string(const ZVCount& z) {
  std::uint64_t a = z.coker, b = z.ker;
  const std::uint64_t g = std::gcd(a, b);
  a /= g;
  b /= g;
  return b == 1 ? std::to_string(a) : std::to_string(a) + "/" + std::to_string(b);
}

}  // namespace ffp
