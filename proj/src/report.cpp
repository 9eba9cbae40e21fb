#include "ffparity/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ffparity/errors.hpp"
#include "ffparity/formal.hpp"

namespace ffp {

namespace {

Json big(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

Json big_list(const IntPoly& f) {
  Json out = Json::array();
  for (const auto& c : f) out.push_back(big(c));
  return out;
}

template <class T>
Json opt(const std::optional<T>& x) {
  return x ? Json(*x) : Json(nullptr);
}

std::string reduction_name(Reduction r) {
  switch (r) {
    case Reduction::Good: return "good";
    case Reduction::SplitMultiplicative: return "split multiplicative";
    case Reduction::NonsplitMultiplicative: return "nonsplit multiplicative";
    case Reduction::AdditivePotMultiplicative: return "additive, potentially multiplicative";
    case Reduction::AdditivePotGood: return "additive, potentially good";
  }
  return "";
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const Json& j) {
  if (j.is_null()) return "na";
  if (j.is_boolean()) return j.get<bool>() ? "pass" : "fail";
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

}  // namespace

Json to_json(const LocalAnalysis& a) {
  Json j;
  j["place"] = a.place.to_string();
  j["degree"] = a.place.degree();
  j["kodaira"] = a.kodaira_string();
  j["reduction"] = reduction_name(a.reduction);
  j["scale_val"] = a.scale_val;
  j["disc_val"] = a.disc_val;
  j["conductor_exp"] = a.conductor_exp;
  j["tamagawa"] = a.tamagawa;
  j["root_number"] = a.root_number;
  j["sigma"] = opt(a.sigma);
  j["norm_symbol"] = opt(a.norm_symbol);
  j["zv_exponent"] = opt(a.zv_exponent);
  j["hasse_val"] = a.hasse_val;
  j["tate_param_val"] = opt(a.tate_param_val);
  j["unknown_reason"] = a.unknown_reason.empty() ? Json(nullptr) : Json(a.unknown_reason);
  return j;
}

Json to_json(const LPolynomial& L) {
  Json j;
  j["coeffs"] = big_list(L.coeffs);
  j["degree"] = L.degree;
  j["sign"] = L.sign;
  j["guard"] = big_list(L.guard);
  j["places_counted"] = L.places_counted;
  return j;
}

Json to_json(const EllReport& r) {
  Json j;
  j["ell"] = r.ell;
  j["a"] = r.a;
  j["a_even"] = r.a_even;
  j["growth"] = r.growth;
  j["growth_at_most_one"] = r.growth_at_most_one;
  j["hypotheses_hold"] = r.hypotheses_hold;
  return j;
}

Json curve_report(const Curve& E) {
  const auto places = analyze_all(E);
  const Conductor n = conductor(places);
  const LPolynomial L = global_L(E, places);
  const ParityReport pr = parity_verdicts(E, places, L);
  const CorrectedTamagawa C = corrected_tamagawa_product(places);

  Json r;
  Json& c = r["curve"];
  c["q"] = E.field()->q();
  c["A"] = to_string(E.A());
  c["B"] = to_string(E.B());
  c["canonical"] = E.canonical();
  c["discriminant"] = to_string(E.discriminant());
  c["j_invariant"] = to_string(E.j_invariant());
  c["hasse_invariant"] = to_string(E.hasse_invariant());
  c["verschiebung_kernel"] = to_string(verschiebung_kernel_poly(E));

  r["places"] = Json::array();
  for (const auto& a : places) r["places"].push_back(to_json(a));

  Json& cond = r["conductor"];
  cond["degree"] = n.degree;
  cond["exponents"] = Json::array();
  for (const auto& [v, f] : n.exponents) cond["exponents"].push_back({{"place", v.to_string()}, {"f", f}});

  r["tamagawa"] = {{"c_product", C.c_product},
                   {"q_exponent", C.q_exponent},
                   {"ratio_ord_p", pr.tamagawa_ord_p},
                   {"split_places_scale_by_p", pr.split_tamagawa_scaling}};
  r["L"] = to_json(L);
  r["ranks"] = {{"r1", pr.r_an}, {"r2", pr.r_an_K2}};
  r["parity"] = {{"w_global", pr.w_global},
                 {"w_fe", pr.w_fe},
                 {"semistable", pr.semistable},
                 {"s_split", pr.s_split},
                 {"sigma_product", opt(pr.sigma_product)},
                 {"norm_symbol_product", opt(pr.norm_symbol_product)},
                 {"zv_exponent", opt(pr.zv_exponent)},
                 {"tamagawa_ord_p", pr.tamagawa_ord_p}};
  Json& v = r["verdicts"];
  for (const auto& [k, ok] : pr.verdicts) v[std::string(1, k)] = opt(ok);
  r["consistency"] = pr.consistency;
  return r;
}

bool report_passes(const Json& report, const std::string& checks) {
  for (const auto& [k, ok] : report.at("verdicts").items())
    if (checks.find(k) != std::string::npos && ok.is_boolean() && !ok.get<bool>()) return false;
  for (const auto& [k, ok] : report.at("consistency").items())
    if (!ok.get<bool>()) return false;
  return true;
}

ReportCache::ReportCache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

std::optional<ReportCache> ReportCache::from_environment() {
  const char* dir = std::getenv("PARITY_CACHE_DIR");
  if (!dir || !*dir) return std::nullopt;
  return ReportCache(dir);
}

std::filesystem::path ReportCache::path_for(const std::string& canonical) const {
  std::ostringstream name;
  name << std::hex << fnv1a(std::string(kReportVersion) + "\n" + canonical) << ".json";
  return dir_ / name.str();
}

std::optional<Json> ReportCache::load(const std::string& canonical) const {
  std::ifstream in(path_for(canonical));
  if (!in) return std::nullopt;
  const Json entry = Json::parse(in, nullptr, false);
  if (entry.is_discarded() || !entry.is_object()) return std::nullopt;
  if (entry.value("version", "") != kReportVersion || entry.value("canonical", "") != canonical) return std::nullopt;
  if (!entry.contains("report")) return std::nullopt;
  return std::optional<Json>(std::in_place, entry["report"]);
}

void ReportCache::store(const std::string& canonical, const Json& report) const {
  const auto target = path_for(canonical);
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::this_thread::get_id();
  const auto tmp = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp);
    out << Json{{"version", kReportVersion}, {"canonical", canonical}, {"report", report}}.dump() << "\n";
    if (!out) return;
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

Json cached_report(const Curve& E, const ReportCache* cache) {
  const std::string key = E.canonical();
  if (cache)
    if (auto hit = cache->load(key)) return *hit;
  Json r = curve_report(E);
  if (cache) cache->store(key, r);
  return r;
}

std::optional<Curve> draw_curve(const FieldPtr& F, SplitMix64& rng, unsigned max_deg_A, unsigned max_deg_B) {
  auto poly = [&](unsigned max_deg) {
    std::vector<Fq> c(rng.below(max_deg + 1) + 1);
    for (auto& x : c) x = Fq{rng.below(F->q())};
    return Poly(F, std::move(c));
  };
  Poly A = poly(max_deg_A);
  Poly B = poly(max_deg_B);
  try {
    return Curve(RatFunc(A), RatFunc(B));
  } catch (const SingularCurveError&) {
  } catch (const IsotrivialCurveError&) {
  }
  return std::nullopt;
}

bool SweepResult::all_pass() const {
  for (const auto& e : entries)
    if (e.report && !report_passes(*e.report, config.checks)) return false;
  return true;
}

Json SweepResult::aggregate() const {
  Json a;
  a["draws"] = draws;
  a["invalid"] = invalid;
  a["filtered"] = filtered;
  std::uint64_t analyzed = 0, skipped = 0, semistable = 0, passed = 0;
  Json per = Json::object();
  for (char k : config.checks) per[std::string(1, k)] = {{"pass", 0}, {"fail", 0}, {"not_applicable", 0}};
  for (const auto& e : entries) {
    if (!e.report) {
      ++skipped;
      continue;
    }
    ++analyzed;
    semistable += (*e.report)["parity"]["semistable"].get<bool>();
    passed += report_passes(*e.report, config.checks);
    for (char k : config.checks) {
      const Json& v = (*e.report)["verdicts"][std::string(1, k)];
      Json& slot = per[std::string(1, k)];
      const char* key = v.is_null() ? "not_applicable" : v.get<bool>() ? "pass" : "fail";
      slot[key] = slot[key].get<std::uint64_t>() + 1;
    }
  }
  a["analyzed"] = analyzed;
  a["skipped"] = skipped;
  a["semistable"] = semistable;
  a["passed"] = passed;
  a["verdicts"] = per;
  return a;
}

Json SweepResult::to_json() const {
  Json j;
  j["config"] = {{"q", config.q},
                 {"max_deg_A", config.max_deg_A},
                 {"max_deg_B", config.max_deg_B},
                 {"count", config.count},
                 {"seed", config.seed},
                 {"semistable_only", config.semistable_only},
                 {"checks", config.checks},
                 {"max_deg_n", opt(config.max_deg_n)}};
  j["aggregate"] = aggregate();
  j["curves"] = Json::array();
  for (const auto& e : entries) {
    if (e.report) {
      j["curves"].push_back(*e.report);
    } else {
      j["curves"].push_back({{"curve", {{"canonical", e.canonical}}}, {"skipped", e.skip_reason}});
    }
  }
  return j;
}

std::string SweepResult::to_csv() const {
  std::string out = "canonical,deg_n,semistable,s_split,w_global,w_fe,r1,r2,a,b,c,d,e,f,consistency,status\n";
  for (const auto& e : entries) {
    out += csv_field(e.canonical) + "," + std::to_string(e.deg_n) + ",";
    if (!e.report) {
      out += ",,,,,,,,,,,,," + csv_field("skipped: " + e.skip_reason) + "\n";
      continue;
    }
    const Json& r = *e.report;
    out += std::string(r["parity"]["semistable"].get<bool>() ? "yes" : "no") + ",";
    out += cell(r["parity"]["s_split"]) + "," + cell(r["parity"]["w_global"]) + "," + cell(r["parity"]["w_fe"]) + ",";
    out += cell(r["ranks"]["r1"]) + "," + cell(r["ranks"]["r2"]) + ",";
    for (const char* k : {"a", "b", "c", "d", "e", "f"})
      out += (config.checks.find(k[0]) == std::string::npos ? "unchecked" : cell(r["verdicts"][k])) + ",";
    bool consistent = true;
    for (const auto& [k, ok] : r["consistency"].items()) consistent = consistent && ok.get<bool>();
    out += std::string(consistent ? "pass" : "fail") + ",";
    out += report_passes(r, config.checks) ? "pass" : "fail";
    out += "\n";
  }
  return out;
}

SweepResult run_sweep(const SweepConfig& cfg, const ReportCache* cache) {
  for (char k : cfg.checks)
    if (k < 'a' || k > 'f') throw ParseError(std::string("unknown check '") + k + "'");
  const FieldPtr F = Field::of_order(cfg.q);
  SweepResult res;
  res.config = cfg;
  SplitMix64 rng(cfg.seed);
  std::vector<Curve> curves;
  for (std::uint64_t i = 0; i < cfg.count; ++i) {
    ++res.draws;
    auto E = draw_curve(F, rng, cfg.max_deg_A, cfg.max_deg_B);
    if (!E) {
      ++res.invalid;
      continue;
    }
    curves.push_back(std::move(*E));
  }

  std::vector<std::optional<SweepEntry>> slots(curves.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < curves.size();) {
      try {
        const Curve& E = curves[i];
        const auto places = analyze_all(E);
        const bool semistable =
            std::none_of(places.begin(), places.end(), [](const LocalAnalysis& a) { return a.is_additive(); });
        const std::int64_t dn = conductor(places).degree;
        if ((cfg.semistable_only && !semistable) || (cfg.max_deg_n && dn > *cfg.max_deg_n)) continue;
        SweepEntry e{E.canonical(), dn, std::nullopt, ""};
        try {
          e.report = cached_report(E, cache);
        } catch (const ResourceError& ex) {
          e.skip_reason = ex.what();
        } catch (const DomainError& ex) {
          e.skip_reason = ex.what();
        }
        slots[i] = std::move(e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(curves.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (auto& s : slots) {
    if (s) {
      res.entries.push_back(std::move(*s));
    } else {
      ++res.filtered;
    }
  }
  std::stable_sort(res.entries.begin(), res.entries.end(),
                   [](const SweepEntry& a, const SweepEntry& b) { return a.canonical < b.canonical; });
  return res;
}

}  // namespace ffp
