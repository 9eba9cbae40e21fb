// ffparity: command-line front end.
//
// Exit codes: 0 every verdict passed, 1 some verdict failed, 2 bad input or
// resource limit.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ffparity/errors.hpp"
#include "ffparity/formal.hpp"
#include "ffparity/report.hpp"

using namespace ffp;

namespace {

struct Input {
  std::string curve_file;
  std::string out;
  bool json = false;
  bool csv = false;
  std::optional<std::uint64_t> ell;
  std::size_t prec = 8;
  std::string place;
  std::optional<std::size_t> truncation;
};

Curve load_curve(const std::string& path) {
  std::stringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read curve file '" + path + "'");
    buf << in.rdbuf();
  }
  return Curve::parse(buf.str());
}

void emit(const Input& in, const std::string& text) {
  if (in.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(in.out);
  out << text;
  if (!out) throw ParseError("cannot write '" + in.out + "'");
}

std::string poly_text(const IntPoly& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] == 0) continue;
    const BigInt a = abs(f[i]);
    if (s.empty()) {
      s += f[i] < 0 ? "-" : "";
    } else {
      s += f[i] < 0 ? " - " : " + ";
    }
    if (a != 1 || i == 0) s += a.str() + (i ? "*" : "");
    if (i) s += i == 1 ? "T" : "T^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

int cmd_analyze(const Input& in) {
  const Curve E = load_curve(in.curve_file);
  auto cache = ReportCache::from_environment();
  Json r = cached_report(E, cache ? &*cache : nullptr);
  if (in.ell) {
    const auto places = analyze_all(E);
    r["ell"] = to_json(ell_parity_hypotheses(E.field()->q(), *in.ell, global_L(E, places)));
  }
  emit(in, r.dump(2) + "\n");
  return report_passes(r) ? 0 : 1;
}

int cmd_lfunction(const Input& in) {
  const Curve E = load_curve(in.curve_file);
  const auto places = analyze_all(E);
  const LPolynomial L = global_L(E, places);
  const auto r1 = analytic_rank(L, 1), r2 = analytic_rank(L, 2);
  const bool ok = L.guard_vanishes && L.functional_equation && L.hasse_bound;
  if (in.json) {
    Json j;
    j["curve"] = E.canonical();
    j["conductor_degree"] = conductor(places).degree;
    j["L"] = to_json(L);
    j["ranks"] = {{"r1", r1}, {"r2", r2}};
    j["checks"] = {{"guard", L.guard_vanishes}, {"functional_equation", L.functional_equation}, {"hasse_bound", L.hasse_bound}};
    emit(in, j.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "L(T) = " << poly_text(L.coeffs) << "\n";
    o << "degree " << L.degree << " (deg n = " << conductor(places).degree << ")\n";
    o << "sign " << L.sign << "\n";
    o << "r_an(K) = " << r1 << ", r_an(K_2) = " << r2 << "\n";
    o << "guard " << (L.guard_vanishes ? "vanishes" : "NONZERO") << ", functional equation "
      << (L.functional_equation ? "holds" : "FAILS") << ", Hasse bound " << (L.hasse_bound ? "holds" : "FAILS") << "\n";
    o << "places counted " << L.places_counted << "\n";
    emit(in, o.str());
  }
  return ok ? 0 : 1;
}

int cmd_ell(const Input& in) {
  const Curve E = load_curve(in.curve_file);
  const EllReport r = ell_parity_hypotheses(E.field()->q(), *in.ell, global_L(E));
  if (in.json) {
    emit(in, to_json(r).dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << "ell = " << r.ell << "\n";
    o << "a = ord_ell(q) = " << r.a << (r.a_even ? " (even)" : " (odd)") << "\n";
    o << "growth r_an(K_2) - r_an(K) = " << r.growth << (r.growth_at_most_one ? " (<= 1)" : " (> 1)") << "\n";
    o << "hypotheses " << (r.hypotheses_hold ? "hold" : "do not hold") << "\n";
    emit(in, o.str());
  }
  return 0;
}

int cmd_formal(const Input& in) {
  const Curve E = load_curve(in.curve_file);
  const std::uint64_t p = E.field()->p();
  if (in.prec < 2) throw DomainError("--prec must be at least 2");
  std::ostringstream o;
  o << "V_1 = " << format_series(verschiebung_series(E, in.prec).coeffs) << "\n";
  o << "[" << p << "] = " << format_series(multiplication_series(E, p, in.prec)) << "\n";
  int rc = 0;
  if (!in.place.empty()) {
    const Place v = Place::parse(E.field(), in.place);
    const LocalAnalysis a = analyze_place(E, v);
    if (a.kodaira != Kodaira::Good) throw DomainError("z_V needs a good place; " + v.to_string() + " is " + a.kodaira_string());
    const std::size_t M = in.truncation.value_or(static_cast<std::size_t>(2 * a.hasse_val + 3));
    const ZVCount z = z_V_numeric(E, v, M);
    const std::int64_t closed = static_cast<std::int64_t>(v.degree() * E.field()->e()) * a.hasse_val;
    if (zv_exponent(z, p) == closed) {
      o << "z_V = " << zv_string(z) << " (matches closed form)\n";
    } else {
      o << "z_V = " << zv_string(z) << " (closed form q_v^v(alpha) = " << p << "^" << closed << ": MISMATCH)\n";
      rc = 1;
    }
  }
  emit(in, o.str());
  return rc;
}

int cmd_sweep(const Input& in, SweepConfig cfg) {
  auto cache = ReportCache::from_environment();
  const SweepResult res = run_sweep(cfg, cache ? &*cache : nullptr);
  emit(in, in.json && !in.csv ? res.to_json().dump(2) + "\n" : res.to_csv());
  const Json agg = res.aggregate();
  std::cerr << agg["analyzed"] << " analyzed, " << agg["passed"] << " passed, " << agg["skipped"] << " skipped, "
            << agg["filtered"] << " filtered, " << agg["invalid"] << " invalid of " << agg["draws"] << " draws\n";
  return res.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity data for elliptic curves over F_q(t)"};
  app.require_subcommand(1);
  Input in;
  SweepConfig cfg;

  auto add_curve = [&](CLI::App* sub) { sub->add_option("curve_file", in.curve_file, "Curve file (- for stdin)")->required(); };
  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", in.out, "Write output to PATH"); };

  auto* analyze = app.add_subcommand("analyze", "Full report for one curve (JSON)");
  add_curve(analyze);
  add_out(analyze);
  analyze->add_flag("--json", in.json, "JSON output (the default for analyze)");
  analyze->add_option("--ell", in.ell, "Also report the ell-parity hypotheses");

  auto* sweep = app.add_subcommand("sweep", "Random corpus run");
  add_out(sweep);
  sweep->add_option("--q", cfg.q, "Constant field size")->capture_default_str();
  sweep->add_option("--count", cfg.count, "Number of (A, B) draws")->capture_default_str();
  sweep->add_option("--seed", cfg.seed, "PRNG seed")->capture_default_str();
  sweep->add_option("--max-deg-A", cfg.max_deg_A)->capture_default_str();
  sweep->add_option("--max-deg-B", cfg.max_deg_B)->capture_default_str();
  sweep->add_option("--max-deg-n", cfg.max_deg_n, "Drop curves of larger conductor degree");
  sweep->add_option("--checks", cfg.checks, "Verdicts that decide pass/fail")->capture_default_str();
  sweep->add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  sweep->add_flag("--semistable-only", cfg.semistable_only);
  sweep->add_flag("--csv", in.csv, "CSV output (default)");
  sweep->add_flag("--json", in.json, "JSON run report");

  auto* formal = app.add_subcommand("formal", "Formal-group series and z_V");
  add_curve(formal);
  add_out(formal);
  formal->add_option("--prec", in.prec, "Number of series terms")->capture_default_str();
  formal->add_option("--place", in.place, "Good place for z_V, e.g. \"t^2 + 2\" or inf");
  formal->add_option("--truncation", in.truncation, "Truncation level M for z_V");

  auto* lfun = app.add_subcommand("lfunction", "L-polynomial and analytic ranks");
  add_curve(lfun);
  add_out(lfun);
  lfun->add_flag("--json", in.json);

  auto* ell = app.add_subcommand("ell-check", "Hypotheses of the ell-parity theorem");
  add_curve(ell);
  add_out(ell);
  ell->add_flag("--json", in.json);
  ell->add_option("--ell", in.ell, "Odd prime ell != p")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(in);
    if (*sweep) return cmd_sweep(in, cfg);
    if (*formal) return cmd_formal(in);
    if (*lfun) return cmd_lfunction(in);
    if (*ell) return cmd_ell(in);
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
