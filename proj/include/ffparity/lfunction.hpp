#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffparity/localdata.hpp"

namespace ffp {

using BigInt = boost::multiprecision::cpp_int;

/// Integer polynomial in T, low to high.
using IntPoly = std::vector<BigInt>;

/// a_v = q_v + 1 - #E~(F_{q_v}) on the reduced minimal model at a good place.
std::int64_t frobenius_trace(const Curve& E, const Place& v);

/// 1 - a_v T^d + q_v T^2d (good), 1 - T^d (split), 1 + T^d (nonsplit), 1 (additive).
IntPoly local_euler_factor(const Curve& E, const Place& v);
IntPoly local_euler_factor(const Curve& E, const LocalAnalysis& a);

/// Largest q^(D+2) the Euler product will enumerate.
inline constexpr std::uint64_t kEulerProductFieldLimit = std::uint64_t{1} << 23;

struct LPolynomial {
  std::uint64_t q;
  IntPoly coeffs;      // degree D, coeffs[0] = 1
  std::int64_t degree; // D = deg n - 4
  int sign;            // w_fe, 0 when the top coefficient is not +-q^D
  IntPoly guard;       // product coefficients at T^(D+1), T^(D+2)
  bool guard_vanishes;
  bool functional_equation;
  bool hasse_bound;    // |a_v| <= 2 sqrt(q_v) at every counted place
  std::uint64_t places_counted;
};

/// Euler product over every place of degree <= D + 2. DomainError when
/// deg n < 4; ResourceError beyond kEulerProductFieldLimit.
LPolynomial global_L(const Curve& E);
LPolynomial global_L(const Curve& E, const std::vector<LocalAnalysis>& places);

/// Number of inverse roots alpha of L with alpha^n = q^n, with multiplicity.
std::int64_t analytic_rank(const LPolynomial& L, unsigned n);

/// Multiplicity of the divisor P (constant term 1) in L.
int divisor_multiplicity(const IntPoly& L, const IntPoly& P);

/// Phi_d reversed and scaled: prod over primitive d-th roots zeta of (1 - q zeta T).
IntPoly central_factor(std::uint64_t q, unsigned d);

struct ParityReport {
  int w_global;       // prod w_v
  int w_fe;
  std::int64_t r_an;     // over K
  std::int64_t r_an_K2;  // over K_2
  bool semistable;
  std::optional<int> sigma_product;
  std::optional<int> norm_symbol_product;
  std::optional<std::int64_t> zv_exponent;  // ord_p prod z_V
  std::int64_t s_split;
  std::int64_t tamagawa_ord_p;
  bool split_tamagawa_scaling;
  bool local_identity;  // w_v = sigma_v * symbol_v wherever both are known
  std::int64_t deg_n;
  /// 'a'..'f'; nullopt when the check does not apply (semistable-only checks).
  std::map<char, std::optional<bool>> verdicts;
  /// guard, functional equation, Hasse bound, norm-symbol product, local identity, split scaling
  std::map<std::string, bool> consistency;
  bool all_pass() const;
};

ParityReport parity_verdicts(const Curve& E, const std::vector<LocalAnalysis>& places, const LPolynomial& L);
ParityReport parity_verdicts(const Curve& E);

struct EllReport {
  std::uint64_t ell;
  std::uint64_t a;  // multiplicative order of q mod ell
  bool a_even;
  std::int64_t growth;  // r_an(K_2) - r_an(K_1)
  bool growth_at_most_one;
  bool hypotheses_hold;
};

/// DomainError unless ell is an odd prime different from p.
EllReport ell_parity_hypotheses(std::uint64_t q, std::uint64_t ell, const LPolynomial& L);

}  // namespace ffp
