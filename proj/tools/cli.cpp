#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "dwell/config.hpp"
#include "dwell/errors.hpp"
#include "dwell/extremum_probe.hpp"
#include "dwell/functional.hpp"
#include "dwell/radial.hpp"
#include "dwell/report_io.hpp"

namespace dwell::cli {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Options {
  std::string command;
  std::string config;
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  std::optional<long long> m;
  std::string p = "2";
  std::optional<double> tol;
  std::size_t trials = 1000;
  std::optional<double> gamma;
  std::optional<int> power;
};

// Failed verdicts that are not probe contradictions but still make the run
// unusable, e.g. a forcing outside the admissible class.
struct VerdictFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<double> kLpNs{10.0, 31.622776601683793, 100.0, 316.22776601683796, 1000.0,
                                3162.2776601683795, 10000.0};
const std::vector<double> kFrechetNs{1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12};
const std::vector<std::string> kFrechetExponents{"1", "2", "3", "4", "8", "inf"};

std::string timestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) return epoch;
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count());
}

class Writer {
 public:
  explicit Writer(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

  void json(const std::string& name, const ojson& doc) const {
    std::ofstream f(dir_ / name, std::ios::binary);
    f << doc.dump(2) << '\n';
    if (!f) throw std::runtime_error("cannot write " + (dir_ / name).string());
  }

  void probe(const std::string& stem, const ProbeReport& report) const {
    json(stem + ".json", with_version(to_json(report)));
    std::ofstream f(dir_ / (stem + ".csv"), std::ios::binary);
    write_probe_csv(f, report);
  }

  void table(const std::string& name, const std::vector<std::string>& headers,
             const std::vector<const GridFunction*>& columns) const {
    std::ofstream f(dir_ / name, std::ios::binary);
    write_table_csv(f, headers, columns);
  }

  static ojson with_version(ojson doc) {
    ojson out{{"version", kVersion}};
    for (auto& item : doc.items()) out[item.key()] = std::move(item.value());
    return out;
  }

 private:
  fs::path dir_;
};

void write_manifest(const Writer& writer, const Options& o) {
  ojson overrides = ojson::object();
  if (o.m) overrides["m"] = *o.m;
  if (o.tol) overrides["tol"] = *o.tol;
  if (o.gamma) overrides["gamma"] = *o.gamma;
  writer.json("manifest.json", ojson{{"version", kVersion},
                                     {"command", o.command},
                                     {"config", o.config},
                                     {"seed", o.seed},
                                     {"out", o.out_dir},
                                     {"p", o.p},
                                     {"trials", o.trials},
                                     {"tolerance_overrides", std::move(overrides)},
                                     {"timestamp", timestamp()}});
}

nlohmann::json load_config(const Options& o) {
  nlohmann::json doc = read_config_file(o.config);
  if (o.m && doc.is_object()) doc["m"] = *o.m;
  return doc;
}

ProblemConfig load_problem(const Options& o) {
  const nlohmann::json doc = load_config(o);
  if (is_radial_config(doc)) throw ConfigError("this subcommand needs a 1D config; use `radial`");
  return parse_problem_config(doc);
}

LpExponent parse_p(const Options& o) {
  try {
    return LpExponent::parse(o.p);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("--p: ") + e.what());
  }
}

struct Solved {
  ProblemConfig cfg;
  ValidationReport validation;
  GridFunction F;
  GridFunction v;
};

Solved solve(const Options& o) {
  ProblemConfig cfg = load_problem(o);
  ValidationReport validation = validate_forcing(cfg.problem, cfg.intervals);
  if (!validation.all_ok()) throw VerdictFailure("forcing fails the admissibility checks; run `validate`");
  GridFunction F = build_potential(cfg.problem, cfg.intervals);
  GridFunction v = stationary_point(cfg.problem, F);
  return {std::move(cfg), validation, std::move(F), std::move(v)};
}

void print_validation(std::ostream& out, const ValidationReport& r) {
  auto mark = [](bool ok) { return ok ? "pass" : "FAIL"; };
  out << "balance  " << mark(r.balance_ok) << "  int f = " << format_double(r.balance_integral) << '\n'
      << "sign     " << mark(r.sign_ok) << "  sign F = " << r.potential_sign << '\n'
      << "l1       " << mark(r.l1_ok) << "  ||f||_1 = " << format_double(r.l1_norm) << " < "
      << format_double(r.l1_bound) << '\n'
      << "finf     " << mark(r.finf_ok) << "  ||F/theta||_inf = " << format_double(r.scaled_potential_sup)
      << " < " << format_double(r.finf_bound) << '\n';
}

void print_probe(std::ostream& out, const std::string& label, const ProbeReport& r) {
  out << label << " [" << to_string(r.mode) << ", p=" << r.exponent << "]: " << (r.passed ? "pass" : "FAIL");
  if (r.fitted_slope) out << "  slope " << format_double(*r.fitted_slope);
  if (r.expected_slope) out << " (expected " << format_double(*r.expected_slope) << ")";
  if (r.n_star) out << "  n* = " << format_double(*r.n_star);
  out << '\n';
  if (!r.maximizer_status.empty()) out << "  maximizer status: " << r.maximizer_status << '\n';
}

ProbeReport lp_probe(const Solved& s, const Options& o) {
  const LpExponent p = parse_p(o);
  if (!p.is_infinite() && p.value() < 4.0) {
    LpProbeOptions lp;
    lp.gamma_exp = o.gamma;
    return lp_nonextremum_probe(s.cfg.problem, s.F, s.v, p, kLpNs, lp);
  }
  return smooth_descent_probe(s.cfg.problem, s.F, s.v, p);
}

ProbeReport frechet(const Solved& s, LpExponent p, const Options& o) {
  FrechetOptions fo;
  fo.power = o.power;
  fo.gamma_exp = o.gamma;
  return frechet_probe(s.cfg.problem, s.v, p, kFrechetNs, fo);
}

int cmd_validate(const Options& o, const Writer& w, std::ostream& out) {
  const ProblemConfig cfg = load_problem(o);
  const ValidationReport r = validate_forcing(cfg.problem, cfg.intervals);
  w.json("validation.json", Writer::with_version(to_json(r)));
  print_validation(out, r);
  return r.all_ok() ? kExitOk : kExitVerdict;
}

int cmd_solve(const Options& o, const Writer& w, std::ostream& out) {
  const Solved s = solve(o);
  const GridFunction u = integrate_profile(s.v, 0.0);
  const Certificate cert = local_max_certificate(s.cfg.problem, s.v);
  const double K = eval_K(s.cfg.problem, s.F, s.v);
  w.table("solution.csv", {"x", "F", "v", "u"}, {&s.F, &s.v, &u});
  w.json("solve.json", ojson{{"version", kVersion},
                             {"intervals", s.cfg.intervals},
                             {"K", K},
                             {"v_sup", s.v.sup_norm()},
                             {"u_c1_norm", c1_norm(u, s.v)},
                             {"certificate", to_json(cert)},
                             {"validation", to_json(s.validation)}});
  out << "K(v) = " << format_double(K) << "\ncertificate: gamma_bar = " << format_double(cert.gamma_bar)
      << ", eta = " << format_double(cert.eta) << ", epsilon = " << format_double(cert.epsilon) << '\n';
  return kExitOk;
}

int cmd_probe_sup(const Options& o, const Writer& w, std::ostream& out) {
  const Solved s = solve(o);
  const ProbeReport r = sup_norm_probe(s.cfg.problem, s.F, s.v, o.trials, o.seed);
  w.probe("probe_sup", r);
  print_probe(out, "sup-norm probe", r);
  out << "  " << r.count_ok("random") << '/' << r.count("random") << " random trials with Delta K < 0\n";
  return r.passed ? kExitOk : kExitVerdict;
}

int cmd_probe_lp(const Options& o, const Writer& w, std::ostream& out) {
  const Solved s = solve(o);
  const ProbeReport r = lp_probe(s, o);
  w.probe("probe_lp", r);
  print_probe(out, "Lp probe", r);
  return r.passed ? kExitOk : kExitVerdict;
}

int cmd_frechet(const Options& o, const Writer& w, std::ostream& out) {
  const Solved s = solve(o);
  const ProbeReport r = frechet(s, parse_p(o), o);
  w.probe("frechet", r);
  print_probe(out, "Frechet probe", r);
  return r.passed ? kExitOk : kExitVerdict;
}

int cmd_candidates(const Options& o, const Writer& w, std::ostream& out) {
  const Solved s = solve(o);
  const Candidates c = dual_candidates(s.cfg.problem, s.F);
  w.table("candidates.csv", {"x", "v1", "v2", "v3", "stationary"}, {&c.v1, &c.v2, &c.v3, &s.v});
  const ojson table = endpoint_table(c, s.v);
  w.json("candidates.json",
         ojson{{"version", kVersion}, {"potential_sign", c.potential_sign}, {"endpoints", table}});
  for (const auto& row : table) {
    out << row["profile"].get<std::string>() << ": a -> " << format_double(row["at_a"].get<double>())
        << ", b -> " << format_double(row["at_b"].get<double>())
        << (row["in_c0"].get<bool>() ? "  (in C0)" : "  (not in C0)") << '\n';
  }
  return kExitOk;
}

ojson radial_run(const Options& o, const Writer& w, std::ostream& out, bool& passed) {
  const RadialConfig cfg = parse_radial_config(load_config(o));
  RefutationOptions ro;
  ro.intervals = cfg.intervals;
  ro.trials = o.trials;
  ro.seed = o.seed;
  const LpExponent p = parse_p(o);
  if (p.is_infinite() || p.value() >= 4.0) throw ConfigError("radial refutation needs --p below 4");
  ro.p = p.value();
  if (o.gamma) ro.gamma_exp = *o.gamma;
  ro.n_values = kLpNs;
  if (o.tol) ro.coincidence_tol = *o.tol;
  const RadialRefutation r = radial_refutation(cfg.problem, ro);
  w.table("radial_profiles.csv", {"r", "F", "v1", "v2", "v3", "stationary"},
          {&r.potential, &r.candidates.v1, &r.candidates.v2, &r.candidates.v3, &r.stationary});
  w.probe("radial_sup", r.sup_probe);
  w.probe("radial_lp", r.lp_probe);
  print_validation(out, r.validation);
  print_probe(out, "sup-norm probe", r.sup_probe);
  print_probe(out, "Lp probe", r.lp_probe);
  passed = r.passed;
  ojson doc = to_json(r);
  ojson head{{"version", kVersion},
             {"n", cfg.problem.n},
             {"gamma_n", gamma_n(cfg.problem.n)},
             {"assertions_true", r.assertions.assertions_true},
             {"assertions_false", r.assertions.assertions_false}};
  for (auto& item : doc.items()) head[item.key()] = std::move(item.value());
  return head;
}

int cmd_radial(const Options& o, const Writer& w, std::ostream& out) {
  bool passed = false;
  const ojson doc = radial_run(o, w, out, passed);
  w.json("radial.json", doc);
  out << "assertions_true: " << doc["assertions_true"].dump() << '\n';
  return passed ? kExitOk : kExitVerdict;
}

int cmd_report(const Options& o, const Writer& w, std::ostream& out) {
  if (is_radial_config(load_config(o))) {
    bool passed = false;
    const ojson doc = radial_run(o, w, out, passed);
    w.json("report.json", doc);
    out << "assertions_true: " << doc["assertions_true"].dump() << '\n';
    return passed ? kExitOk : kExitVerdict;
  }
  const Solved s = solve(o);
  const Certificate cert = local_max_certificate(s.cfg.problem, s.v);
  const ProbeReport sup = sup_norm_probe(s.cfg.problem, s.F, s.v, o.trials, o.seed);
  const ProbeReport lp = lp_probe(s, o);
  const Candidates c = dual_candidates(s.cfg.problem, s.F);
  const AssertionSummary claims = assess_candidate_claims(c, s.v, sup, o.tol.value_or(1e-12));
  bool passed = sup.passed && lp.passed;
  ojson frechet_runs = ojson::array();
  for (const std::string& text : kFrechetExponents) {
    const ProbeReport r = frechet(s, LpExponent::parse(text), o);
    passed = passed && r.passed;
    frechet_runs.push_back(to_json(r));
    print_probe(out, "Frechet probe", r);
  }
  const ojson doc{{"version", kVersion},
                  {"assertions_true", claims.assertions_true},
                  {"assertions_false", claims.assertions_false},
                  {"passed", passed},
                  {"validation", to_json(s.validation)},
                  {"K", eval_K(s.cfg.problem, s.F, s.v)},
                  {"certificate", to_json(cert)},
                  {"endpoints", endpoint_table(c, s.v)},
                  {"assertions", to_json(claims)},
                  {"sup_probe", to_json(sup)},
                  {"lp_probe", to_json(lp)},
                  {"frechet", std::move(frechet_runs)}};
  w.json("report.json", doc);
  print_probe(out, "sup-norm probe", sup);
  print_probe(out, "Lp probe", lp);
  out << "assertions_true: " << doc["assertions_true"].dump() << '\n'
      << "assertions_false: " << doc["assertions_false"].dump() << '\n';
  return passed ? kExitOk : kExitVerdict;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config, "JSON config file")->required();
  sub->add_option("--out", o.out_dir, "output directory");
  sub->add_option("--seed", o.seed, "seed for random perturbations");
  sub->add_option("--m", o.m, "number of grid intervals (even)");
  sub->add_option("--p", o.p, "Lp exponent, a real >= 1 or 'inf'");
  sub->add_option("--tol", o.tol, "tolerance for candidate/stationary coincidence");
  sub->add_option("--trials", o.trials, "sup-norm probe trials");
  sub->add_option("--gamma", o.gamma, "spike exponent gamma");
  sub->add_option("--s", o.power, "Frechet probe: single power s in {2,3,4}");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Double-well stationary profile: validation, certificates and extremum probes", "dwell"};
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands{
      {"validate", "check balance, sign and smallness of the forcing"},
      {"solve", "stationary profile, K and the local-max certificate"},
      {"probe-sup", "random sup-norm perturbations"},
      {"probe-lp", "spike and smooth Lp perturbations"},
      {"frechet", "normalised Taylor remainder along spikes"},
      {"candidates", "candidate profiles of the dual construction"},
      {"radial", "radially symmetric reduction and its refutation checks"},
      {"report", "all checks and the verdict on each claimed extremum"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help), o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  o.command = app.get_subcommands().front()->get_name();
  if (o.power && (*o.power < 2 || *o.power > 4)) {
    err << "error: --s must be 2, 3 or 4\n";
    return kExitConfig;
  }

  try {
    const Writer writer(o.out_dir);
    write_manifest(writer, o);
    if (o.command == "validate") return cmd_validate(o, writer, out);
    if (o.command == "solve") return cmd_solve(o, writer, out);
    if (o.command == "probe-sup") return cmd_probe_sup(o, writer, out);
    if (o.command == "probe-lp") return cmd_probe_lp(o, writer, out);
    if (o.command == "frechet") return cmd_frechet(o, writer, out);
    if (o.command == "candidates") return cmd_candidates(o, writer, out);
    if (o.command == "radial") return cmd_radial(o, writer, out);
    return cmd_report(o, writer, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const VerdictFailure& e) {
    err << "verdict: " << e.what() << '\n';
    return kExitVerdict;
  } catch (const DomainError& e) {
    err << "verdict: " << e.what() << '\n';
    return kExitVerdict;
  } catch (const CertificateError& e) {
    err << "verdict: " << e.what() << '\n';
    return kExitVerdict;
  }
}

}  // namespace dwell::cli
