// pmkit command-line front end.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pmkit/cayley.hpp"
#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"
#include "pmkit/io.hpp"
#include "pmkit/lcp.hpp"
#include "pmkit/operator_sim.hpp"
#include "pmkit/spectral_sets.hpp"
#include "pmkit/suites.hpp"

namespace {

using nlohmann::json;
using namespace pmkit;

constexpr int kOk = 0;
constexpr int kContradiction = 1;
constexpr int kUsage = 2;

struct RunConfig {
  std::string input;
  std::string out;
  std::string values;
  std::string spec;
  std::string spec_t;
  std::string x;
  std::string s_diag;
  std::string t_diag;
  std::string gen_class;
  std::string suite_name;
  std::string stability_log;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_minor;
  std::optional<double> tol_sing;
  std::size_t trials = 100;
  std::size_t samples = 64;
  std::size_t budget = 256;
  std::size_t order = 8;
  std::size_t n = 4;
  double scale = 1.0;
  bool quiet = false;
  bool csv = false;
  bool augment = false;
  bool realize = false;
};

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::uint64_t effective_seed(const RunConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("PMKIT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidArgument, "PMKIT_SEED is not an unsigned integer");
  }
  return 0;
}

Tolerances effective_tolerances(const RunConfig& cfg) {
  Tolerances t;
  if (cfg.tol_minor) t.minor = *cfg.tol_minor;
  if (cfg.tol_sing) t.singular = *cfg.tol_sing;
  return t;
}

Vector parse_reals(const std::string& text) {
  Vector v;
  for (Complex c : io::parse_values(text).values) {
    if (c.imag() != 0.0) throw Error(ErrorCode::ParseError, "expected real values in '" + text + "'");
    v.push_back(c.real());
  }
  return v;
}

std::string verdict_line(const std::string& key, Verdict v) {
  return key + ": " + std::string(to_string(v));
}

std::string fmt_index_set(const IndexSet& s) {
  std::ostringstream o;
  o << '{';
  bool first = true;
  for (std::size_t i : s.one_based()) {
    o << (first ? "" : ",") << i;
    first = false;
  }
  o << '}';
  return o.str();
}

std::string fmt_vector(const Vector& v) {
  std::ostringstream o;
  o.precision(6);
  o << '(';
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? ", " : "") << v[i];
  o << ')';
  return o.str();
}

// Result of one command: the report body, a human summary, and an exit code.
struct Outcome {
  json body;
  std::vector<std::string> summary;
  int code = kOk;
};

Outcome cmd_classify(const RunConfig& cfg, const Tolerances& tol, std::uint64_t seed) {
  const Matrix m = io::read_matrix(cfg.input);
  const ClassificationReport r = classify(m, {cfg.budget, seed}, tol);
  Outcome o;
  o.body = io::to_json(r);
  o.body["input"] = io::to_json(m);
  for (const auto& [k, v] : r.verdicts) {
    std::string line = verdict_line(k, v);
    if (auto it = r.witnesses.find(k); it != r.witnesses.end()) {
      if (const auto* s = std::get_if<IndexSet>(&it->second)) line += ", witness " + fmt_index_set(*s);
      if (const auto* x = std::get_if<Vector>(&it->second)) line += ", witness " + fmt_vector(*x);
    }
    o.summary.push_back(line);
  }
  return o;
}

Outcome cmd_factor(const RunConfig& cfg, const Tolerances& tol) {
  const Matrix a = io::read_matrix(cfg.input);
  Outcome o;
  const FactorizationResult f = factor_p(a, tol);
  o.body = io::to_json(f);
  o.body["input"] = io::to_json(a);
  o.summary.push_back("residual: " + std::to_string(f.residual));
  o.summary.push_back(verdict_line("left factor P", f.left_is_P));
  o.summary.push_back(verdict_line("right factor P", f.right_is_P));
  if (f.residual > 1e-8 || f.path_residual > 1e-8 || f.left_is_P == Verdict::No ||
      f.right_is_P == Verdict::No)
    o.code = kContradiction;
  if (!cfg.s_diag.empty() || !cfg.t_diag.empty()) {
    const Vector s = cfg.s_diag.empty() ? Vector(a.size(), 1.0) : parse_reals(cfg.s_diag);
    const Vector t = cfg.t_diag.empty() ? Vector(a.size(), 1.0) : parse_reals(cfg.t_diag);
    const ScaledFactorReport sr =
        scaled_stable_factor(a, Matrix::diagonal(s), Matrix::diagonal(t), tol);
    o.body["scaled"] = io::to_json(sr);
    o.summary.push_back(verdict_line("scaled left positive stable", sr.left_stable));
    o.summary.push_back(verdict_line("scaled right positive stable", sr.right_stable));
    o.summary.push_back(verdict_line("A T positive stable", sr.a_t_stable));
    if (sr.residual > 1e-8) o.code = kContradiction;
  }
  return o;
}

Outcome cmd_pset(const RunConfig& cfg, const Tolerances& tol, std::uint64_t seed) {
  if (cfg.values.empty() == cfg.input.empty())
    throw Error(ErrorCode::InvalidArgument, "give exactly one of --values or --input");
  const CandidateSpectrum s =
      cfg.values.empty() ? io::spectrum_from_json(io::read_json(cfg.input)) : io::parse_values(cfg.values);
  Outcome o;
  o.body["input"] = io::to_json(s);
  const SymmetricFunctions f = sigma_all(s, tol);
  const Verdict p = is_P_set(s, tol);
  o.body["sigma"] = f.sigma;
  o.body["P_set"] = to_string(p);
  o.body["P0_set"] = to_string(is_P0_set(s, tol));
  o.summary.push_back("P-set: " + std::string(to_string(p)) + ", sigma = " + fmt_vector(f.sigma));
  if (p == Verdict::Yes) {
    const WedgeReport w = wedge_check(s, SetClass::P, tol);
    o.body["wedge"] = io::to_json(w);
    o.summary.push_back("wedge: " + std::string(to_string(w.verdict)) + ", max |arg| = " +
                        std::to_string(w.max_arg) + " < " + std::to_string(w.bound));
    if (w.verdict == Verdict::No) o.code = kContradiction;
    if (cfg.realize) {
      const auto m = realize_P_set(s, cfg.budget, seed, tol);
      o.body["realization"] = m ? io::to_json(*m) : json(nullptr);
      o.summary.push_back(m ? "realized by a P-matrix" : "no realization found within budget");
    }
  }
  if (cfg.augment) {
    const auto a = augment_to_P_set(s, {400, 32, seed}, tol);
    o.body["augmentation"] =
        a ? json{{"additions", a->additions}, {"sigma", a->sigma.sigma}} : json(nullptr);
    o.summary.push_back(a ? "augmentation: " + std::to_string(a->additions.size()) + " positive values added"
                          : "augmentation: none found within budget");
  }
  return o;
}

Outcome cmd_lcp(const std::string& sub, const RunConfig& cfg, const Tolerances& tol,
                std::uint64_t seed) {
  const json j = io::read_json(cfg.input);
  Outcome o;
  if (sub == "census") {
    const Matrix m = j.contains("m") ? io::matrix_from_json(j["m"]) : io::matrix_from_json(j);
    const CensusReport c = uniqueness_census(m, cfg.trials, seed, tol);
    o.body = io::to_json(c);
    o.summary.push_back("counts: 0 -> " + std::to_string(c.zero) + ", 1 -> " + std::to_string(c.one) +
                        ", >=2 -> " + std::to_string(c.multiple));
    o.summary.push_back("verdict: " + std::string(to_string(c.verdict)));
    const bool p = m.size() <= kMaxMinorEnumeration && is_P_minors(m, tol).verdict == Verdict::Yes;
    if (c.lemke_mismatch || (p && c.verdict == CensusVerdict::Violation)) o.code = kContradiction;
    return o;
  }
  const LCPInstance inst = io::lcp_from_json(j);
  if (sub == "solve") {
    const auto s = lemke_solve(inst, tol);
    o.body["solution"] = s ? io::to_json(*s) : json(nullptr);
    o.body["ray_termination"] = !s;
    if (s) {
      o.summary.push_back("z = " + fmt_vector(s->z) + ", w = " + fmt_vector(s->w));
      if (auto bad = check_solution(inst, *s, tol)) {
        o.summary.push_back("invalid solution: " + *bad);
        o.code = kContradiction;
      }
    } else {
      o.summary.push_back("ray termination");
    }
  } else {
    const Enumeration e = enumerate_solutions(inst, tol);
    o.body = io::to_json(e);
    o.summary.push_back(std::to_string(e.solutions.size()) + " solution(s), " +
                        std::to_string(e.skipped) + " singular bases skipped");
    for (const LCPSolution& s : e.solutions) o.summary.push_back("  z = " + fmt_vector(s.z));
  }
  return o;
}

Outcome cmd_opsim(const std::string& sub, const RunConfig& cfg, const Tolerances& tol,
                  std::uint64_t seed) {
  const OperatorSpec spec = io::spec_from_json(io::read_json(cfg.spec));
  const std::size_t n = cfg.order;
  Outcome o;
  o.body["spec"] = io::to_json(spec);
  o.body["order"] = n;
  if (sub == "sqrt") {
    const SqrtResult r = operator_sqrt(spec, n);
    o.body["result"] = io::to_json(r);
    o.summary.push_back("residual ||R^2 - T|| = " + std::to_string(r.residual));
    if (r.residual > 1e-12) o.code = kContradiction;
  } else if (sub == "minmax") {
    const MinMaxReport r = minmax_rho(spec, n, cfg.samples, seed);
    o.body["result"] = io::to_json(r);
    std::ostringstream line;
    line.precision(12);
    line << "sup_inf = " << r.sup_inf << " <= rho = " << r.rho << " <= inf_sup = " << r.inf_sup;
    o.summary.push_back(line.str());
    if (r.sup_inf > r.rho + 1e-9 * (1 + r.rho) || r.inf_sup < r.rho - 1e-9 * (1 + r.rho))
      o.code = kContradiction;
  } else if (sub == "interp") {
    if (cfg.spec_t.empty()) throw Error(ErrorCode::InvalidArgument, "interp needs --spec-t");
    const OperatorSpec t = io::spec_from_json(io::read_json(cfg.spec_t));
    const InterpReport r = diag_interp_check(spec, t, DiagRule::Mixed, n, cfg.trials, seed, tol);
    o.body["result"] = io::to_json(r);
    o.summary.push_back(std::to_string(r.checks) + " checks, " + std::to_string(r.violations) +
                        " violations");
    if (r.violations) o.code = kContradiction;
  } else if (sub == "csuff") {
    const CSuffReport r = csufficient_kernel_search(spec, n, kDefaultDGrid, tol);
    o.body["result"] = io::to_json(r);
    o.summary.push_back(std::string("kernel search: ") + (r.refutation ? "refuted" : "not refuted") +
                        ", classifier: " + std::string(to_string(r.classifier.verdict)));
    if (r.refutation)
      o.summary.push_back("  alpha " + fmt_index_set(r.refutation->alpha) + ", kernel vector " +
                          fmt_vector(r.refutation->kernel));
    if (!r.agrees) o.code = kContradiction;
  } else {
    Vector x = cfg.x.empty() ? Vector(n, 1.0) : parse_reals(cfg.x);
    const RevQuery q = rev_membership(spec, n, x, tol);
    o.body["result"] = io::to_json(q);
    o.summary.push_back(std::string("in rev: ") + (q.in_rev ? "yes" : "no") + ", products " +
                        fmt_vector(q.products));
    const EigvecRevReport e = eigvec_rev_check(spec, n, tol);
    o.body["eigenvectors"] = io::to_json(e);
    if (e.violations) o.code = kContradiction;
  }
  return o;
}

Outcome cmd_gen(const RunConfig& cfg, std::uint64_t seed) {
  const auto tag = parse_class_tag(cfg.gen_class);
  if (!tag) throw Error(ErrorCode::InvalidArgument, "unknown class '" + cfg.gen_class + "'");
  const Matrix m = generate({*tag, cfg.n, seed, cfg.scale});
  Outcome o;
  o.body = io::to_json(m);
  o.summary.push_back("generated " + cfg.gen_class + " matrix, n = " + std::to_string(cfg.n));
  return o;
}

Outcome cmd_suite(const RunConfig& cfg, const Tolerances& tol, std::uint64_t seed) {
  auto progress = [&](const CheckResult& c) {
    if (cfg.quiet) return;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s %-30s cases=%-7zu failures=%-4zu %7.2fs  ", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.cases, c.failures, c.seconds);
    std::cerr << buf << c.detail << '\n';
  };
  const SuiteReport r = run_suite(cfg.suite_name, seed, tol, progress);
  Outcome o;
  o.body = to_json(r);
  if (!cfg.stability_log.empty()) {
    const json log = r.artifacts.contains("stability_log") ? r.artifacts["stability_log"] : json(nullptr);
    io::write_text(cfg.stability_log, log.dump(2) + "\n");
  }
  o.summary.push_back("suite " + r.name + ": " + std::to_string(r.checks.size()) + " checks, " +
                      std::to_string(r.contradictions()) + " failed");
  if (r.contradictions()) o.code = kContradiction;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pmkit: P-matrix and sufficiency toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  auto positive = CLI::PositiveNumber;
  app.add_option("--tol-minor", cfg.tol_minor, "minor positivity factor")->check(positive);
  app.add_option("--tol-sing", cfg.tol_sing, "pivot singularity factor")->check(positive);
  app.add_option("--seed", cfg.seed, "random seed (falls back to PMKIT_SEED)");
  app.add_option("--out", cfg.out, "write the JSON report here");
  app.add_flag("--quiet", cfg.quiet, "suppress the human summary");

  auto* classify_cmd = app.add_subcommand("classify", "classify a matrix");
  classify_cmd->add_option("--input", cfg.input, "matrix file (JSON or CSV)")->required();
  classify_cmd->add_option("--budget", cfg.budget, "sufficiency search budget");

  auto* factor_cmd = app.add_subcommand("factor", "factor a P-matrix into two P-matrices");
  factor_cmd->add_option("--input", cfg.input, "matrix file")->required();
  factor_cmd->add_option("--s", cfg.s_diag, "diagonal of S, e.g. \"1,2\"");
  factor_cmd->add_option("--t", cfg.t_diag, "diagonal of T");

  auto* pset_cmd = app.add_subcommand("pset", "P-set analysis of a value list");
  pset_cmd->add_option("--values", cfg.values, "e.g. \"1,1\" or \"-0.5+2i,-0.5-2i,3\"");
  pset_cmd->add_option("--input", cfg.input, "spectrum JSON file");
  pset_cmd->add_flag("--augment", cfg.augment, "search for positive values making a P-set");
  pset_cmd->add_flag("--realize", cfg.realize, "search for a realizing P-matrix");
  pset_cmd->add_option("--budget", cfg.budget, "realization budget");

  auto* lcp_cmd = app.add_subcommand("lcp", "linear complementarity problems");
  lcp_cmd->require_subcommand(1);
  for (auto [name, help] : {std::pair{"solve", "Lemke's method"},
                             std::pair{"enumerate", "all solutions over the 2^n complementary bases"},
                             std::pair{"census", "solution counts for random q"}}) {
    auto* sub = lcp_cmd->add_subcommand(name, help);
    sub->add_option("--input", cfg.input, "instance JSON {\"m\": .., \"q\": ..}")->required();
    if (std::string(name) == "census") sub->add_option("--trials", cfg.trials, "number of q samples");
  }

  auto* opsim_cmd = app.add_subcommand("opsim", "finite-section operator experiments");
  opsim_cmd->require_subcommand(1);
  for (auto [name, help] : {std::pair{"sqrt", "square root of a positive diagonal operator"},
                             std::pair{"minmax", "Perron root and Collatz-Wielandt bounds"},
                             std::pair{"interp", "nonsingularity of D T + (I - D) S combinations"},
                             std::pair{"csuff", "kernel search for column sufficiency"},
                             std::pair{"rev", "sign-reversal membership of a vector"}}) {
    auto* sub = opsim_cmd->add_subcommand(name, help);
    sub->add_option("--spec", cfg.spec, "operator spec JSON")->required();
    sub->add_option("--order", cfg.order, "section order")->check(CLI::Range(1, 64));
    const std::string s = name;
    if (s == "minmax") sub->add_option("--samples", cfg.samples, "positive sample vectors");
    if (s == "interp") {
      sub->add_option("--spec-t", cfg.spec_t, "spec of T (the --spec operand is S)")->required();
      sub->add_option("--trials", cfg.trials, "random diagonal trials");
    }
    if (s == "rev") sub->add_option("--x", cfg.x, "vector, e.g. \"1,-1\"");
  }

  auto* gen_cmd = app.add_subcommand("gen", "generate a random matrix of a class");
  gen_cmd->add_option("--class", cfg.gen_class, "P-diagdom|M-matrix|sym-PD|Z|PSD|non-P|arbitrary")->required();
  gen_cmd->add_option("--n", cfg.n, "dimension")->check(CLI::Range(1, 64));
  gen_cmd->add_option("--scale", cfg.scale, "entry scale")->check(positive);
  gen_cmd->add_flag("--csv", cfg.csv, "write CSV instead of JSON");

  auto* suite_cmd = app.add_subcommand("suite", "run a property suite");
  suite_cmd->add_option("name", cfg.suite_name, "classify|cayley|lcp|operator|all")->required();
  suite_cmd->add_option("--stability-log", cfg.stability_log, "write the positive-stability probe log here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::string command;
  Outcome outcome;
  try {
    const Tolerances tol = effective_tolerances(cfg);
    const std::uint64_t seed = effective_seed(cfg);
    if (classify_cmd->parsed()) {
      command = "classify";
      outcome = cmd_classify(cfg, tol, seed);
    } else if (factor_cmd->parsed()) {
      command = "factor";
      outcome = cmd_factor(cfg, tol);
    } else if (pset_cmd->parsed()) {
      command = "pset";
      outcome = cmd_pset(cfg, tol, seed);
    } else if (lcp_cmd->parsed()) {
      const std::string sub = lcp_cmd->get_subcommands().front()->get_name();
      command = "lcp " + sub;
      outcome = cmd_lcp(sub, cfg, tol, seed);
    } else if (opsim_cmd->parsed()) {
      const std::string sub = opsim_cmd->get_subcommands().front()->get_name();
      command = "opsim " + sub;
      outcome = cmd_opsim(sub, cfg, tol, seed);
    } else if (gen_cmd->parsed()) {
      command = "gen";
      outcome = cmd_gen(cfg, seed);
      if (cfg.csv) {
        const std::string text = io::matrix_to_csv(io::matrix_from_json(outcome.body));
        if (cfg.out.empty()) std::cout << text;
        else io::write_text(cfg.out, text);
        return kOk;
      }
    } else {
      command = "suite";
      outcome = cmd_suite(cfg, tol, seed);
    }

    json report = outcome.body;
    if (command != "gen") {
      report = json{{"command", command},
                    {"seed", seed},
                    {"tolerances", io::to_json(tol)},
                    {"timestamp", timestamp()},
                    {"exit_code", outcome.code},
                    {"result", outcome.body}};
    }
    const std::string text = report.dump(2) + "\n";
    std::ostream& human = cfg.out.empty() ? std::cerr : std::cout;
    if (!cfg.quiet)
      for (const std::string& line : outcome.summary) human << line << '\n';
    if (cfg.out.empty()) std::cout << text;
    else io::write_text(cfg.out, text);
    return outcome.code;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
