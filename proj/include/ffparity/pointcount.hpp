#pragma once

#include <cstdint>
#include <memory>

#include "ffparity/field.hpp"

namespace ffp {

/// Fields up to this size are counted by the character sum over all x.
inline constexpr std::uint64_t kNaiveCountLimit = 5000;

/// #E(F) (projective) for y^2 = x^3 + ax + b; 4a^3 + 27b^2 != 0 required.
std::uint64_t count_points(const Field& F, Fq a, Fq b);

/// q + 1 + sum_x legendre(x^3 + ax + b).
std::uint64_t count_points_naive(const Field& F, Fq a, Fq b);

/// Baby-step giant-step on E and its quadratic twist until one group order in
/// the Hasse interval survives. Table fields only.
std::uint64_t count_points_bsgs(const Field& F, Fq a, Fq b);

/// Reusable counter for many curves over one field. Even-degree table fields
/// F_{Q0^2} evaluate Zech logarithms through F_{Q0}[y]/(y^2 - c), whose
/// tables are small enough to stay in cache.
class PointCounter {
 public:
  explicit PointCounter(const Field& F);
  std::uint64_t operator()(Fq a, Fq b) const;
  std::uint64_t bsgs(Fq a, Fq b) const;
  bool uses_tower() const { return tower_ != nullptr; }

  struct Tower;

 private:
  const Field& F_;
  std::shared_ptr<const Tower> tower_;
};

}  // namespace ffp
