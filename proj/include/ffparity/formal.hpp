#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ffparity/curve.hpp"
#include "ffparity/places.hpp"

namespace ffp {

/// Truncated bivariate law F(z1, z2) = sum f_ij z1^i z2^j over i + j < N.
struct FormalGroupLaw {
  std::size_t precision;
  std::vector<std::vector<Poly>> f;  // f[i][j], zero when i + j >= precision
  const Poly& coeff(std::size_t i, std::size_t j) const { return f[i][j]; }
};

/// Formal group of y^2 = x^3 + Ax + B in the parameter z = -x/y. N >= 3.
FormalGroupLaw formal_group_law(const Curve& E, std::size_t N);

/// The auxiliary series w(z) = -1/y with w = z^3 + A z w^2 + B w^3, to N terms.
std::vector<Poly> weierstrass_w(const Curve& E, std::size_t N);

/// [m](z) to N terms (index = power of z). m >= 1.
std::vector<Poly> multiplication_series(const Curve& E, std::uint64_t m, std::size_t N);

/// V_1(z) = sum b_i z^i, i < N, obtained from [p]_{E'}(z) = sum b_i^p z^(p i)
/// by coefficientwise p-th roots. coeffs[1] is the Hasse invariant of E.
struct VerschiebungSeries {
  std::size_t precision;
  std::vector<Poly> coeffs;
};
VerschiebungSeries verschiebung_series(const Curve& E, std::size_t N);

/// `c * z^k` terms, one per nonzero coefficient, sorted by k.
std::string format_series(const std::vector<Poly>& s, std::string_view coeff_var = "T");

/// #coker / #ker of V_1 on the formal groups of the minimal model at a good
/// place, counted on m_v / m_v^M. coker = q_v^(M-1) / #image; ker = #K_M
/// divided by the largest ball m_v^c / m_v^M contained in K_M = V_1^{-1}(m_v^M).
struct ZVCount {
  std::uint64_t coker;
  std::uint64_t ker;
  std::size_t M;
  std::int64_t hasse_val;  // v(alpha) on the minimal model
};

/// Value as an exponent of p: z = p^exponent.
std::int64_t zv_exponent(const ZVCount& z, std::uint64_t p);
std::string zv_string(const ZVCount& z);

/// Maximum size q_v^(M) of an enumerated truncated ring.
inline constexpr std::uint64_t kZVEnumerationLimit = 1'000'000;

/// Counts at M and M + 1 and requires them to agree. DomainError when v is
/// not a good place, M <= 2 v(alpha) + 2, or the two levels disagree;
/// ResourceError when q_v^M exceeds kZVEnumerationLimit.
ZVCount z_V_numeric(const Curve& E, const Place& v, std::size_t M);

/// Single-level count (no stability check); exposed for tests.
ZVCount z_V_count(const Curve& E, const Place& v, std::size_t M);

/// V_1 of the minimal model at v, reduced into O_v / m_v^M, coefficients of
/// z^1 .. z^(M-1). `via_twist` selects the p-th-root route through [p]_{E'};
/// otherwise coefficients are read off [p]_E(z) = V_1(z^p).
std::vector<std::vector<Fq>> local_verschiebung(const Curve& E, const Place& v, std::size_t M, bool via_twist = true);

}  // namespace ffp
