#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ffparity/lfunction.hpp"
#include "ffparity/prng.hpp"

namespace ffp {

using Json = nlohmann::ordered_json;

/// Bumped whenever the report shape or any computed value changes; cached
/// reports carrying another version are ignored.
inline constexpr const char* kReportVersion = "ffparity-report-1";

Json to_json(const LocalAnalysis& a);
Json to_json(const LPolynomial& L);
Json to_json(const EllReport& r);

/// Full report: curve data, per-place table, L-polynomial, ranks, verdicts.
/// Throws ResourceError / DomainError from global_L.
Json curve_report(const Curve& E);

/// Verdicts named in `checks` plus every consistency flag.
bool report_passes(const Json& report, const std::string& checks = "abcdef");

/// Opt-in on-disk cache of curve reports keyed by (canonical form, version).
/// Entries are written to a temporary file and renamed into place.
class ReportCache {
 public:
  explicit ReportCache(std::filesystem::path dir);
  /// PARITY_CACHE_DIR when set, else no cache.
  static std::optional<ReportCache> from_environment();

  std::optional<Json> load(const std::string& canonical) const;
  void store(const std::string& canonical, const Json& report) const;
  std::filesystem::path path_for(const std::string& canonical) const;

 private:
  std::filesystem::path dir_;
};

/// curve_report through the cache when one is given.
Json cached_report(const Curve& E, const ReportCache* cache);

struct SweepConfig {
  std::uint64_t q = 5;
  unsigned max_deg_A = 4;
  unsigned max_deg_B = 6;
  std::uint64_t count = 100;  // number of (A, B) draws
  std::uint64_t seed = 1;
  bool semistable_only = false;
  std::string checks = "abcdef";
  std::optional<std::int64_t> max_deg_n;  // curves above are filtered out
  unsigned jobs = 1;
};

/// One (A, B) draw: degrees uniform in [0, max], coefficients uniform. nullopt
/// for singular or isotrivial pairs.
std::optional<Curve> draw_curve(const FieldPtr& F, SplitMix64& rng, unsigned max_deg_A, unsigned max_deg_B);

struct SweepEntry {
  std::string canonical;
  std::int64_t deg_n;
  std::optional<Json> report;  // absent when skipped
  std::string skip_reason;
};

struct SweepResult {
  SweepConfig config;
  std::uint64_t draws = 0, invalid = 0, filtered = 0;
  std::vector<SweepEntry> entries;  // sorted by canonical form
  bool all_pass() const;
  Json aggregate() const;
  Json to_json() const;
  std::string to_csv() const;
};

SweepResult run_sweep(const SweepConfig& cfg, const ReportCache* cache = nullptr);

}  // namespace ffp
