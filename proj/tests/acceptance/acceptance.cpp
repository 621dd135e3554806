// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmkit/cayley.hpp"
#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"
#include "pmkit/io.hpp"
#include "pmkit/lcp.hpp"
#include "pmkit/operator_sim.hpp"
#include "pmkit/spectral_sets.hpp"
#include "pmkit/suites.hpp"

using namespace pmkit;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

WedgeTally g_wedge;  // every P-matrix generated below

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Matrix p_matrix(std::size_t n, std::uint64_t seed) {
  Matrix a = random_P_matrix(n, seed);
  g_wedge.record(a);
  return a;
}

Outcome reference_example() {
  const Matrix a{{-1, -1}, {4, 3}};
  std::string bad;
  const Spectrum s = eigenvalues(a);
  for (Complex v : s.values)
    if (std::abs(v - Complex(1.0, 0.0)) > 1e-8) bad += " eigenvalue";
  const Polynomial p = charpoly(a);
  if (std::abs(p.c[1] - 2.0) > 1e-12 || std::abs(p.c[2] - 1.0) > 1e-12) bad += " sigma";
  const MinorTest t = is_P_minors(a);
  if (t.verdict != Verdict::No || !t.witness || *t.witness != IndexSet{0}) bad += " witness";
  const CandidateSpectrum ones{{{1, 0}, {1, 0}}};
  const SymmetricFunctions f = sigma_all(ones);
  if (f.sigma != std::vector<double>{2, 1}) bad += " sigma_all";
  if (is_P_set(ones) != Verdict::Yes) bad += " P-set";
  const auto m = realize_P_set(ones, 100, 1);
  if (!m || is_P_minors(*m).verdict != Verdict::Yes ||
      spectrum_distance(eigenvalues(*m).values, ones.values) > 1e-8)
    bad += " realization";
  return {bad.empty(), bad.empty() ? "spectrum {1,1}, sigma (2,1), witness {1}" : "failed:" + bad};
}

Outcome oracle_agreement() {
  constexpr ClassTag tags[] = {ClassTag::Arbitrary, ClassTag::PDiagDom, ClassTag::NonP,
                               ClassTag::MMatrix,   ClassTag::Z,        ClassTag::SymPD};
  std::size_t disagree = 0, p = 0;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const Matrix m = generate({tags[k % 6], 1 + (k / 6) % 6, 1000 + k, 1.0});
    const Verdict a = is_P_minors(m).verdict;
    if (a != is_P_submatrix_eigen(m)) ++disagree;
    if (a == Verdict::Yes) {
      ++p;
      g_wedge.record(m);
    }
  }
  return {disagree == 0, std::to_string(disagree) + " disagreements, " + std::to_string(p) + " P-matrices"};
}

Outcome sum_and_inverse() {
  std::mt19937_64 rng(3);
  std::size_t failures = 0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const Matrix a = p_matrix(1 + k % 6, 3000 + k);
    Vector d(a.size());
    for (double& v : d) v = rng() % 4 == 0 ? 0.0 : uniform(rng, 0.0, 5.0);
    if (is_P_minors(a + Matrix::diagonal(d)).verdict != Verdict::Yes) ++failures;
    if (is_P_minors(inverse(a)).verdict != Verdict::Yes) ++failures;
  }
  return {failures == 0, std::to_string(failures) + " failures"};
}

Outcome cayley() {
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const Matrix a = p_matrix(1 + k % 6, 4000 + k);
    const double inv = verify_involution(a);
    const IdentityResiduals id = verify_identities(a);
    const FactorizationResult f = factor_p(a);
    worst = std::max({worst, inv, id.plus, id.minus.value_or(0.0), f.residual});
    if (inv > 1e-8 || id.plus > 1e-8 || id.minus.value_or(0.0) > 1e-8 || f.residual > 1e-8) ++failures;
    if (is_P_minors(f.factor_left).verdict != Verdict::Yes ||
        is_P_minors(f.factor_right).verdict != Verdict::Yes)
      ++failures;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%zu failures, worst residual %.2e", failures, worst);
  return {failures == 0, buf};
}

Outcome lcp() {
  std::mt19937_64 rng(5);
  std::size_t forward_fail = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const Matrix m = p_matrix(1 + k % 6, 5000 + k);
    for (int t = 0; t < 20; ++t) {
      Vector q(m.size());
      for (double& v : q) v = uniform(rng, -5.0, 5.0);
      const LCPInstance inst{m, q};
      const Enumeration e = enumerate_solutions(inst);
      const auto l = lemke_solve(inst);
      bool ok = e.solutions.size() == 1 && l && !check_solution(inst, *l);
      if (ok)
        for (std::size_t i = 0; i < m.size(); ++i)
          ok = ok && std::abs(l->z[i] - e.solutions[0].z[i]) <= 1e-6;
      if (!ok) ++forward_fail;
    }
  }
  std::size_t found = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const Matrix m = generate({ClassTag::NonP, 1 + k % 6, 5500 + k, 1.0});
    const CensusReport c = uniqueness_census(m, 500, 5600 + k);
    if (c.zero + c.multiple > 0) ++found;
  }
  const bool pass = forward_fail == 0 && found * 10 >= 50 * 9;
  return {pass, std::to_string(forward_fail) + " forward failures; " + std::to_string(found) +
                    "/50 non-P matrices show a q with count != 1"};
}

Outcome wedge(const SuiteReport& all) {
  WedgeTally t = g_wedge;
  t.merge(all.wedge);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu matrices, %zu eigenvalues, %zu violations", t.matrices,
                t.eigenvalues, t.violations);
  return {t.violations == 0 && t.matrices > 0, buf};
}

Outcome augmentation() {
  std::mt19937_64 rng(7);
  std::size_t failures = 0, most = 0;
  for (int k = 0; k < 100; ++k) {
    CandidateSpectrum c;
    const int pairs = 1 + static_cast<int>(rng() % 2);
    for (int p = 0; p < pairs; ++p) {
      const Complex z(uniform(rng, -3.0, 3.0), uniform(rng, 0.1, 3.0));
      c.values.push_back(z);
      c.values.push_back(std::conj(z));
    }
    if (rng() % 2) c.values.emplace_back(uniform(rng, 0.1, 3.0), 0.0);
    const auto a = augment_to_P_set(c, {4096, 32, rng()});
    if (!a) {
      ++failures;
      continue;
    }
    CandidateSpectrum u = c;
    for (double v : a->additions) u.values.emplace_back(v, 0.0);
    if (is_P_set(u) != Verdict::Yes) ++failures;
    most = std::max(most, a->additions.size());
  }
  return {failures == 0, std::to_string(failures) + " failures, largest addition count " + std::to_string(most)};
}

Outcome operators() {
  std::string bad;
  const OperatorSpec inv{OperatorKind::Diagonal, rules::InverseSquareDiagonal{1.0, {}}, true};
  for (std::size_t n : {4, 16, 64})
    if (operator_sqrt(inv, n).residual > 1e-12) bad += " sqrt";

  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 1 + k % 8;
    Matrix t(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = uniform(rng, 0.01, 1.0);
    double rho = 0.0;
    for (Complex v : eigenvalues(t).values) rho = std::max(rho, std::abs(v));
    const MinMaxReport r = minmax_rho(t, 50, rng());
    if (r.sup_inf > rho + 1e-6 || r.inf_sup < rho - 1e-6 || r.inf_sup - r.sup_inf > 1e-6 ||
        std::abs(r.rho - rho) > 1e-6) {
      bad += " minmax";
      break;
    }
  }

  std::size_t trials = 0, violations = 0;
  for (std::uint64_t k = 0; trials < 500; ++k) {
    const std::size_t n = 1 + k % 5;
    const Matrix a = generate({ClassTag::PDiagDom, n, 8000 + k, 1.0});
    const Matrix t = generate({ClassTag::PDiagDom, n, 9000 + k, 1.0});
    try {
      const InterpReport r = diag_interp_check(a * t, t, DiagRule::Mixed, 25, k);
      trials += r.trials;
      violations += r.violations;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionNotEstablished) throw;
    }
  }
  if (violations) bad += " interp";

  const std::vector<std::pair<Matrix, std::optional<bool>>> curated{
      {Matrix::diagonal({1, -1}), true},
      {Matrix::diagonal({1, 0}), false},
      {Matrix::identity(2), false},
      {Matrix{{0, 1}, {-1, 0}}, false},
      {Matrix{{0, 1}, {0, 0}}, true},
      {Matrix{{-1, -1}, {4, 3}}, true},
      {Matrix{{1, 2, 0}, {-2, 0, 1}, {0, -1, 0}}, false},
      {Matrix::diagonal({2, 0, -1}), true},
      {Matrix{{2, 1, 0, 1}, {1, 2, 1, 0}, {0, 1, 2, 1}, {1, 0, 1, 2}}, false},
      {Matrix::diagonal({1, 1, 1, -1}), true},
  };
  for (const auto& [t, refuted] : curated) {
    const CSuffReport r = csufficient_kernel_search(t);
    if (!r.agrees || (refuted && *refuted != r.refutation.has_value())) bad += " csuff";
  }
  return {bad.empty(), bad.empty() ? std::to_string(trials) + " interpolation trials, 0 violations"
                                   : "failed:" + bad};
}

Outcome stability_log() {
  const StabilityProbeLog log = ad_stability_probe(1000, 9);
  const auto path = std::filesystem::temp_directory_path() / "pmkit_stability_log.json";
  io::write_text(path, io::to_json(log).dump(2) + "\n");
  const json back = json::parse(std::ifstream(path));
  std::size_t confirmed = 0;
  for (const StabilityProbeEntry& e : log.counterexamples) {
    const Matrix ad = e.a * Matrix::diagonal(e.d);
    double min_re = 1e300;
    for (Complex v : eigenvalues(ad).values) min_re = std::min(min_re, v.real());
    if (min_re <= 0.0 && !routh_hurwitz_positive(charpoly(ad)) && e.residual <= 1e-6) ++confirmed;
  }
  const bool pass = log.trials == 1000 && back.is_object() &&
                    confirmed == log.counterexamples.size();
  return {pass, std::to_string(log.counterexamples.size()) + " counterexamples, " +
                    std::to_string(confirmed) + " re-validated; log at " + path.string()};
}

Outcome cli_suite_all() {
  const auto out = std::filesystem::temp_directory_path() / "pmkit_suite_all.json";
  const std::string cmd = std::string(PMKIT_CLI) + " suite all --seed 1 --out " + out.string() +
                          " >/dev/null 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  bool covered = false;
  try {
    const json r = json::parse(std::ifstream(out))["result"];
    std::vector<std::string> names;
    for (const json& c : r["checks"])
      if (c["passed"].get<bool>()) names.push_back(c["name"]);
    covered = true;
    for (const char* need : {"reference-example", "oracle-agreement", "P-plus-diagonal-and-inverse",
                             "cayley-involution", "cayley-identities", "P-factorization", "lcp-forward",
                             "lcp-contrapositive", "eigenvalue-wedge", "augmentation", "operator-sqrt",
                             "operator-minmax", "operator-diag-interp", "operator-csufficiency"})
      covered = covered && std::find(names.begin(), names.end(), need) != names.end();
  } catch (const std::exception&) {
    covered = false;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "exit %d in %.1f s, criteria 1-8 covered: %s", code, secs,
                covered ? "yes" : "no");
  return {code == 0 && secs < 600.0 && covered, buf};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds, 0 = none stated
    std::function<Outcome()> run;
  };
  SuiteReport all;
  const std::vector<Criterion> criteria{
      {1, "reference example", 1.0, reference_example},
      {2, "minor oracle agreement", 30.0, oracle_agreement},
      {3, "P closed under +D and inverse", 0.0, sum_and_inverse},
      {4, "Cayley transform and factorization", 60.0, cayley},
      {5, "LCP uniqueness equivalence", 0.0, lcp},
      {6, "eigenvalue wedge bound",
       0.0,
       [&] {
         all = run_suite("all", 1);
         return wedge(all);
       }},
      {7, "augmentation to a P-set", 0.0, augmentation},
      {8, "operator suite", 0.0, operators},
      {9, "stability probe log", 0.0, stability_log},
      {10, "suite all --seed 1", 600.0, cli_suite_all},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0.0 && secs >= c.limit) {
      o.pass = false;
      o.detail += " (time limit exceeded)";
    }
    if (!o.pass) ++failed;
    std::printf("%s criterion %2d  %-36s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
