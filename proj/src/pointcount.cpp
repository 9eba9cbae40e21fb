#include "ffparity/pointcount.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "ffparity/errors.hpp"
#include "ffparity/prng.hpp"

namespace ffp {

namespace {

// Elements as discrete logs, kZero for 0: products are integer sums and each
// sum costs one Zech lookup, log(1 + g^d) = zech(d).
using Log = std::uint32_t;
constexpr Log kZero = 0xffffffffu;

struct TableZech {
  const std::uint32_t* t;
  std::uint32_t operator()(std::uint64_t d) const { return t[d]; }
};

template <class Zech>
class LogField {
 public:
  using Elem = Log;

  LogField(Zech zech, std::uint64_t n) : zech_(zech), n_(n) {}

  Log mul(Log a, Log b) const {
    if (a == kZero || b == kZero) return kZero;
    return wrap(std::uint64_t{a} + b);
  }
  Log neg(Log a) const { return a == kZero ? a : wrap(std::uint64_t{a} + n_ / 2); }
  Log inv(Log a) const { return a == 0 ? 0 : static_cast<Log>(n_ - a); }
  Log add(Log a, Log b) const {
    if (a == kZero) return b;
    if (b == kZero) return a;
    const std::uint32_t z = zech_(b >= a ? b - a : b + n_ - a);
    return z == Field::kNoZech ? kZero : wrap(std::uint64_t{a} + z);
  }
  Log sub(Log a, Log b) const { return add(a, neg(b)); }
  bool is_zero(Log a) const { return a == kZero; }
  std::uint64_t key(Log a) const { return a; }
  Log three() const { return add(add(0, 0), 0); }
  std::optional<Log> sqrt(Log a) const {
    if (a == kZero) return a;
    if (a % 2) return std::nullopt;
    return a / 2;
  }
  Log random(SplitMix64& rng) const {
    const std::uint64_t r = rng.below(n_ + 1);
    return r == n_ ? kZero : static_cast<Log>(r);
  }

 private:
  Log wrap(std::uint64_t k) const { return static_cast<Log>(k >= n_ ? k - n_ : k); }
  Zech zech_;
  std::uint64_t n_;
};

}  // namespace

// F_{Q0^2} = S[y]/(y^2 - c) over S = F_{Q0}. With g the generator, h = Q0 + 1,
// S* is generated by g^h, c = g^h and y = g^(h/2); subfield elements are kept
// as logs to base g^h. Every table here has about Q0 entries.
struct PointCounter::Tower {
  std::uint64_t n, n0, h;
  std::vector<std::uint32_t> sub_zech;       // log_S(1 + g^(h k))
  std::vector<std::pair<Log, Log>> residue;  // g^r = a + b y for 0 <= r < h
  std::vector<std::uint32_t> one_plus_ty;    // log(1 + g^(h t) y)

  std::uint32_t operator()(std::uint64_t d) const {
    const std::uint64_t j = d / h, r = d - j * h;
    auto [a, b] = residue[r];
    if (a != kZero) a = static_cast<Log>((a + j) % n0);
    if (b != kZero) b = static_cast<Log>((b + j) % n0);
    // 1 + a
    if (a == kZero) {
      a = 0;
    } else {
      const std::uint32_t z = sub_zech[a];
      a = z == Field::kNoZech ? kZero : z;
    }
    if (a == kZero) return b == kZero ? Field::kNoZech : static_cast<std::uint32_t>(b * h + h / 2);
    if (b == kZero) return static_cast<std::uint32_t>(a * h);
    const std::uint64_t t = b >= a ? b - a : b + n0 - a;
    return static_cast<std::uint32_t>((a * h + one_plus_ty[t]) % n);
  }
};

namespace {

struct TowerZech {
  const PointCounter::Tower* t;
  std::uint32_t operator()(std::uint64_t d) const { return (*t)(d); }
};

template <class Ops>
struct Pt {
  typename Ops::Elem x, y;
  bool inf = false;
};

template <class Ops>
class Group {
 public:
  using E = typename Ops::Elem;
  using P = Pt<Ops>;

  Group(const Ops& L, E a, E b) : L_(L), a_(a), b_(b), three_(L.three()) {}

  E rhs(const E& x) const { return L_.add(L_.mul(L_.add(L_.mul(x, x), a_), x), b_); }

  P add(const P& p, const P& q) const {
    if (p.inf) return q;
    if (q.inf) return p;
    E lambda;
    if (p.x == q.x) {
      if (!(p.y == q.y) || L_.is_zero(p.y)) return P{{}, {}, true};
      const E num = L_.add(L_.mul(three_, L_.mul(p.x, p.x)), a_);
      lambda = L_.mul(num, L_.inv(L_.add(p.y, p.y)));
    } else {
      lambda = L_.mul(L_.sub(q.y, p.y), L_.inv(L_.sub(q.x, p.x)));
    }
    const E x3 = L_.sub(L_.sub(L_.mul(lambda, lambda), p.x), q.x);
    const E y3 = L_.sub(L_.mul(lambda, L_.sub(p.x, x3)), p.y);
    return {x3, y3};
  }

  P mul(std::uint64_t n, P p) const {
    P r{{}, {}, true};
    while (n) {
      if (n & 1) r = add(r, p);
      p = add(p, p);
      n >>= 1;
    }
    return r;
  }

  P random_point(SplitMix64& rng) const {
    while (true) {
      const E x = L_.random(rng);
      if (auto y = L_.sqrt(rhs(x))) return {x, *y};
    }
  }

  const Ops& ops() const { return L_; }

 private:
  const Ops& L_;
  E a_, b_, three_;
};

struct Scan {
  std::vector<std::uint64_t> hits;  // every m in [lo, hi] with mP = O
  std::uint64_t order = 0;          // exact order of P when known
};

// Baby-step giant-step over the whole interval. The baby steps jP, 1 <= j <= s,
// have distinct x-coordinates unless the order of P is at most 2s, in which
// case that order is computed directly and the scan is skipped.
template <class Ops>
Scan scan_interval(const Group<Ops>& G, const Pt<Ops>& P, std::uint64_t lo, std::uint64_t hi) {
  const Ops& L = G.ops();
  const std::uint64_t width = hi - lo + 1;
  const auto s = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(width)))) + 1;
  std::unordered_map<std::uint64_t, std::pair<std::uint64_t, typename Ops::Elem>> baby;  // x(jP) -> (j, y(jP))
  baby.reserve(2 * s);
  Scan out;
  Pt<Ops> jP = P;
  for (std::uint64_t j = 1; j <= s; ++j) {
    if (jP.inf) {
      out.order = j;
      return out;
    }
    auto [it, fresh] = baby.emplace(L.key(jP.x), std::pair{j, jP.y});
    if (!fresh) {
      const std::uint64_t i = it->second.first;
      out.order = it->second.second == jP.y ? j - i : j + i;
      return out;
    }
    jP = G.add(jP, P);
  }
  const Pt<Ops> step = G.mul(s, P);
  Pt<Ops> R = G.mul(lo, P);
  for (std::uint64_t base = lo; base <= hi; base += s) {
    // base + k annihilates P, 0 <= k < s, iff R = base P is O or -kP
    if (R.inf) {
      out.hits.push_back(base);
    } else if (auto it = baby.find(L.key(R.x)); it != baby.end() && !(it->second.second == R.y) && it->second.first < s) {
      if (base + it->second.first <= hi) out.hits.push_back(base + it->second.first);
    }
    R = G.add(R, step);
  }
  if (out.hits.size() >= 2) out.order = out.hits[1] - out.hits[0];
  return out;
}

// E and its twist T have orders N and 2Q + 2 - N. nullopt when 80 random
// points leave more than one candidate.
template <class Ops>
std::optional<std::uint64_t> mestre(const Group<Ops>& E, const Group<Ops>& T, std::uint64_t Q, SplitMix64& rng) {
  const auto r = static_cast<std::uint64_t>(std::floor(2 * std::sqrt(static_cast<double>(Q))));
  const std::uint64_t lo = Q + 1 - r, hi = Q + 1 + r;
  std::uint64_t le = 1, lt = 1;
  for (int iter = 0; iter < 80; ++iter) {
    const bool on_twist = iter % 2 == 1;
    const Group<Ops>& G = on_twist ? T : E;
    const Scan sc = scan_interval(G, G.random_point(rng), lo, hi);
    if (sc.order == 0) {
      if (sc.hits.size() != 1) throw InternalError("point counting: no group order fits the Hasse interval");
      return on_twist ? 2 * Q + 2 - sc.hits[0] : sc.hits[0];
    }
    (on_twist ? lt : le) = std::lcm(on_twist ? lt : le, sc.order);
    std::optional<std::uint64_t> found;
    int candidates = 0;
    for (std::uint64_t n = (lo + le - 1) / le * le; n <= hi; n += le) {
      if ((2 * Q + 2 - n) % lt == 0) {
        found = n;
        if (++candidates > 1) break;
      }
    }
    if (candidates == 1) return *found;
    if (candidates == 0) throw InternalError("point counting: no group order fits the Hasse interval");
  }
  return std::nullopt;
}

}  // namespace

PointCounter::PointCounter(const Field& F) : F_(F) {
  if (!F.has_tables() || F.e() % 2 || F.q() <= kNaiveCountLimit) return;
  std::uint64_t Q0 = 1;
  for (unsigned i = 0; i < F.e() / 2; ++i) Q0 *= F.p();
  const auto zech = F.zech_table();
  auto T = std::make_shared<Tower>();
  T->n = F.q() - 1;
  T->n0 = Q0 - 1;
  T->h = Q0 + 1;
  const std::uint64_t h = T->h, n = T->n;
  T->sub_zech.resize(Q0 - 1);
  for (std::uint64_t k = 0; k + 1 < Q0; ++k) {
    const std::uint32_t z = zech[k * h];
    T->sub_zech[k] = z == Field::kNoZech ? Field::kNoZech : static_cast<std::uint32_t>(z / h);
  }
  T->one_plus_ty.resize(Q0 - 1);
  for (std::uint64_t t = 0; t + 1 < Q0; ++t) T->one_plus_ty[t] = zech[(t * h + h / 2) % n];
  // g^r = a + b y with a = (z + z^Q0) / 2, b = (z - z^Q0) / (2y)
  const LogField<TableZech> L(TableZech{zech.data()}, n);
  const Log half = L.inv(static_cast<Log>(F.log(F.from_int(2))));
  T->residue.resize(h);
  for (std::uint64_t r = 0; r < h; ++r) {
    const Log z = static_cast<Log>(r), conj = static_cast<Log>(r * Q0 % n);
    const Log a = L.mul(L.add(z, conj), half);
    const Log b = L.mul(L.mul(L.sub(z, conj), half), L.inv(static_cast<Log>(h / 2)));
    T->residue[r] = {a == kZero ? kZero : static_cast<Log>(a / h), b == kZero ? kZero : static_cast<Log>(b / h)};
  }
  tower_ = std::move(T);
}

std::uint64_t PointCounter::bsgs(Fq a, Fq b) const {
  if (!F_.has_tables()) throw ResourceError("point counting needs a table field");
  const std::uint64_t Q = F_.q();
  SplitMix64 rng(0xc0ffee ^ (a.v * 0x9e3779b97f4a7c15ULL) ^ (b.v << 17) ^ Q);
  const Log la = a.v == 0 ? kZero : static_cast<Log>(F_.log(a));
  const Log lb = b.v == 0 ? kZero : static_cast<Log>(F_.log(b));
  // twist by the generator g: y^2 = x^3 + a g^2 x + b g^3, order 2Q + 2 - #E
  auto run = [&](const auto& L) {
    const Log lat = L.mul(la, 2), lbt = L.mul(lb, 3);
    return mestre(Group(L, la, lb), Group(L, lat, lbt), Q, rng);
  };
  const std::optional<std::uint64_t> n = tower_ ? run(LogField<TowerZech>(TowerZech{tower_.get()}, Q - 1))
                                                : run(LogField<TableZech>(TableZech{F_.zech_table().data()}, Q - 1));
  return n ? *n : count_points_naive(F_, a, b);
}

std::uint64_t PointCounter::operator()(Fq a, Fq b) const {
  if (F_.q() <= kNaiveCountLimit || !F_.has_tables()) return count_points_naive(F_, a, b);
  return bsgs(a, b);
}

std::uint64_t count_points_naive(const Field& F, Fq a, Fq b) {
  std::int64_t s = 0;
  for (std::uint64_t x = 0; x < F.q(); ++x) {
    const Fq X{x};
    s += F.legendre(F.add(F.mul(F.add(F.mul(X, X), a), X), b));
  }
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(F.q()) + 1 + s);
}

std::uint64_t count_points_bsgs(const Field& F, Fq a, Fq b) { return PointCounter(F).bsgs(a, b); }

std::uint64_t count_points(const Field& F, Fq a, Fq b) { return PointCounter(F)(a, b); }

}  // namespace ffp
