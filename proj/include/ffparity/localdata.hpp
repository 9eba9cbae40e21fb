#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffparity/curve.hpp"
#include "ffparity/places.hpp"

namespace ffp {

/// Minimal model at v: A_min = u^-4 A, B_min = u^-6 B with v(u) = k, as power
/// series in the uniformizer (index = power of s).
struct LocalMinimalModel {
  std::int64_t k;
  std::int64_t val_A, val_B, val_disc;  // on the minimal model
  std::vector<Fq> A, B;                 // residue-field coefficients
};

/// k = max{k : v(A) >= 4k, v(B) >= 6k}; `precision` series coefficients.
LocalMinimalModel minimal_model_at(const Curve& E, const Place& v, std::size_t precision = 1);

enum class Kodaira { Good, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };
enum class Reduction { Good, SplitMultiplicative, NonsplitMultiplicative, AdditivePotMultiplicative, AdditivePotGood };

/// "good", "I3", "II", "I0*", "I2*", "IV*", ...
std::string kodaira_symbol(Kodaira k, int n);

struct LocalAnalysis {
  Place place;
  std::int64_t scale_val;  // k_v
  std::int64_t disc_val;   // v(Delta_min)
  Kodaira kodaira;
  int kodaira_n;  // n of I_n and I_n*, else 0
  Reduction reduction;
  std::uint64_t tamagawa;
  int conductor_exp;
  int root_number;
  std::optional<int> sigma;
  std::optional<int> norm_symbol;
  std::optional<std::int64_t> zv_exponent;  // z_V = p^zv_exponent
  std::int64_t hasse_val;                   // v(alpha_min)
  std::optional<std::int64_t> tate_param_val;
  std::string unknown_reason;  // set when sigma, symbol and z_V are unknown

  bool is_multiplicative() const {
    return reduction == Reduction::SplitMultiplicative || reduction == Reduction::NonsplitMultiplicative;
  }
  bool is_additive() const {
    return reduction == Reduction::AdditivePotMultiplicative || reduction == Reduction::AdditivePotGood;
  }
  bool is_split() const { return reduction == Reduction::SplitMultiplicative; }
  std::string kodaira_string() const { return kodaira_symbol(kodaira, kodaira_n); }
  std::string split_string() const;
};

/// Full per-place analysis on the minimal model.
LocalAnalysis analyze_place(const Curve& E, const Place& v);

/// Finite places dividing the discriminant or the Hasse invariant, then
/// infinity. Every place outside this list is good and ordinary with k_v = 0.
std::vector<Place> special_places(const Curve& E);

/// analyze_place over special_places.
std::vector<LocalAnalysis> analyze_all(const Curve& E);

int local_root_number(const Curve& E, const Place& v);

struct Conductor {
  std::vector<std::pair<Place, int>> exponents;  // nonzero f_v only
  std::int64_t degree;
};
Conductor conductor(const Curve& E);
Conductor conductor(const std::vector<LocalAnalysis>& places);

/// C = c_product * q^q_exponent with q the size of the constant field.
struct CorrectedTamagawa {
  std::uint64_t c_product;
  std::int64_t q_exponent;
  friend bool operator==(const CorrectedTamagawa&, const CorrectedTamagawa&) = default;
};
CorrectedTamagawa corrected_tamagawa_product(const Curve& E);
CorrectedTamagawa corrected_tamagawa_product(const std::vector<LocalAnalysis>& places);

struct TamagawaRatio {
  std::int64_t ord_p;   // ord_p prod_v c_v(E) / c_v(E')
  std::int64_t s_split; // number of split multiplicative places
  bool split_places_scale_by_p;  // c_v(E') = p c_v(E) at every split place
  bool consistent() const { return ((ord_p - s_split) % 2 + 2) % 2 == 0; }
};
TamagawaRatio tamagawa_ratio_parity(const Curve& E);
TamagawaRatio tamagawa_ratio_parity(const Curve& E, const std::vector<LocalAnalysis>& places);

}  // namespace ffp
