#pragma once

#include <cstddef>
#include <vector>

#include "ffparity/field.hpp"

namespace ffp::fseries {

/// Truncated power series c[0] + c[1] s + ... over a finite field. All
/// functions truncate their result to `n` coefficients.
using Coeffs = std::vector<Fq>;

Coeffs add(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n);
Coeffs sub(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n);
Coeffs mul(const Field& F, const Coeffs& a, const Coeffs& b, std::size_t n);
Coeffs scale(const Field& F, const Coeffs& a, Fq c, std::size_t n);
/// Requires a[0] != 0.
Coeffs inverse(const Field& F, const Coeffs& a, std::size_t n);
/// Polynomial with coefficients `poly` (low to high) evaluated at the series x.
Coeffs eval_poly(const Field& F, const std::vector<Fq>& poly, const Coeffs& x, std::size_t n);
/// Index of the first nonzero coefficient, or n when all of the first n vanish.
std::size_t order(const Coeffs& a, std::size_t n);

}  // namespace ffp::fseries
