#include "pmkit/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"
#include "pmkit/io.hpp"
#include "pmkit/lcp.hpp"
#include "pmkit/operator_sim.hpp"

namespace pmkit {

using nlohmann::json;

namespace {

void fail(CheckResult& r, const std::string& what) {
  ++r.failures;
  if (r.detail.empty()) r.detail = what;
}

// Runs `body`, which fills cases/failures and may return an explicit verdict
// for thresholded checks.
template <class F>
CheckResult timed(std::string name, F&& body) {
  CheckResult r;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<bool> verdict;
  try {
    verdict = body(r);
  } catch (const std::exception& e) {
    fail(r, std::string("exception: ") + e.what());
    verdict = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = verdict ? *verdict : r.failures == 0;
  return r;
}

std::size_t pick(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

Matrix uniform_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = uniform(rng, lo, hi);
  return m;
}

Matrix random_diagonal(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  Vector d(n);
  for (double& v : d) v = log_uniform(rng, lo, hi);
  return Matrix::diagonal(d);
}

bool is_P(const Matrix& m, const Tolerances& tol) {
  return is_P_minors(m, tol).verdict == Verdict::Yes;
}

// Condition number estimate in the infinity norm; +inf when singular.
double condition(const Matrix& m, const Tolerances& tol) {
  if (is_singular(m, tol)) return INFINITY;
  return m.norm_inf() * inverse(m, tol).norm_inf();
}

double brute_minor_sum(const Matrix& m, std::size_t k) {
  double s = 0.0;
  for (unsigned long long mask = 1; mask < (1ULL << m.size()); ++mask)
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) == k)
      s += det(principal_submatrix(m, IndexSet::from_mask(mask, m.size())));
  return s;
}

enum Stream : std::uint64_t {
  kReference = 1,
  kLinalg,
  kCharpoly,
  kOracle,
  kSumInverse,
  kGenerators,
  kSufficient,
  kZPath,
  kReversal,
  kSpectral,
  kAugment,
  kRealize,
  kExtremal,
  kPowers,
  kInvolution,
  kIdentities,
  kFactor,
  kScaled,
  kStability,
  kLcpForward,
  kLcpContra,
  kOpMinmax,
  kOpInterp,
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  // splitmix64 over a combination of the three inputs
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + stream * 0xBF58476D1CE4E5B9ULL + index + 1;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_P_matrix(std::size_t n, std::uint64_t seed, const Tolerances& tol) {
  std::mt19937_64 rng(seed);
  const double scale = log_uniform(rng, 0.3, 3.0);
  Matrix m;
  switch (rng() % 5) {
    case 0: return generate({ClassTag::PDiagDom, n, rng(), scale});
    case 1: return generate({ClassTag::MMatrix, n, rng(), scale});
    case 2: return generate({ClassTag::SymPD, n, rng(), scale});
    case 3:
      if (n <= 4) {
        for (int attempt = 0; attempt < 2000; ++attempt) {
          m = uniform_matrix(n, rng);
          for (std::size_t i = 0; i < n; ++i) m(i, i) = uniform(rng, 0.0, 1.5);
          if (is_P(m, tol)) return scale * m;
        }
      }
      [[fallthrough]];
    default:
      // D1 A D2 is P and no longer diagonally dominant.
      m = random_diagonal(n, rng, 0.5, 2.0) * generate({ClassTag::PDiagDom, n, rng(), 1.0}) *
          random_diagonal(n, rng, 0.5, 2.0);
  }
  // Keep only draws whose minors clear the declared threshold.
  return is_P(m, tol) ? m : generate({ClassTag::PDiagDom, n, rng(), scale});
}

namespace checks {

CheckResult reference_example(SuiteContext& ctx) {
  return timed("reference-example", [&](CheckResult& r) -> std::optional<bool> {
    const Matrix a{{-1, -1}, {4, 3}};
    r.cases = 6;
    const Spectrum s = eigenvalues(a, ctx.tol);
    for (Complex l : s.values)
      if (std::abs(l - Complex(1.0, 0.0)) > 1e-8) fail(r, "eigenvalues differ from {1,1}");
    const CandidateSpectrum ones{{Complex(1, 0), Complex(1, 0)}};
    const SymmetricFunctions f = sigma_all(ones, ctx.tol);
    if (std::abs(f.sigma[0] - 2.0) > 1e-12 || std::abs(f.sigma[1] - 1.0) > 1e-12)
      fail(r, "sigma({1,1}) != (2,1)");
    const Polynomial p = charpoly(a);
    if (std::abs(p.c[1] - 2.0) > 1e-12 || std::abs(p.c[2] - 1.0) > 1e-12)
      fail(r, "charpoly coefficients != (2,1)");
    const MinorTest t = is_P_minors(a, ctx.tol);
    if (t.verdict != Verdict::No || !t.witness || *t.witness != IndexSet{0})
      fail(r, "is_P_minors should be no with witness {1}");
    if (is_P_set(ones, ctx.tol) != Verdict::Yes) fail(r, "{1,1} should be a P-set");
    const auto m = realize_P_set(ones, 64, ctx.seed, ctx.tol);
    if (!m) {
      fail(r, "realize_P_set({1,1}) found nothing");
    } else {
      if (!is_P(*m, ctx.tol)) fail(r, "realized matrix is not P");
      const Spectrum ms = eigenvalues(*m, ctx.tol);
      if (spectrum_distance(ms.values, ones.values) > 1e-6) fail(r, "realized spectrum is not {1,1}");
      ctx.wedge.record(ms);
      ctx.artifacts["realized_{1,1}"] = io::to_json(*m);
    }
    return std::nullopt;
  });
}

CheckResult linalg_identities(SuiteContext& ctx, std::size_t count) {
  return timed("linalg-identities", [&](CheckResult& r) -> std::optional<bool> {
    std::mt19937_64 rng(derive_seed(ctx.seed, kLinalg));
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t n = pick(rng, 1, 8);
      const Matrix m = uniform_matrix(n, rng);
      const Spectrum s = eigenvalues(m, ctx.tol);
      double mag = 1.0, abs_sum = 0.0;
      for (Complex l : s.values) {
        mag *= std::abs(l);
        abs_sum += std::abs(l);
      }
      ++r.cases;
      if (std::abs(s.product() - det(m)) > 1e-6 * std::max(mag, 1e-300) + 1e-300)
        fail(r, "product of eigenvalues != det");
      if (std::abs(s.sum() - m.trace()) > 1e-6 * (abs_sum + m.norm_inf()))
        fail(r, "sum of eigenvalues != trace");
      const Matrix w = generate({ClassTag::PDiagDom, n, rng(), 1.0});
      if ((inverse(inverse(w, ctx.tol), ctx.tol) - w).norm_fro() > 1e-8 * w.norm_fro())
        fail(r, "inverse of inverse != identity map");
    }
    return std::nullopt;
  });
}

CheckResult charpoly_minor_sums(SuiteContext& ctx, std::size_t count) {
  return timed("charpoly-minor-sums", [&](CheckResult& r) -> std::optional<bool> {
    std::mt19937_64 rng(derive_seed(ctx.seed, kCharpoly));
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t n = pick(rng, 1, 6);
      const Matrix m = uniform_matrix(n, rng, -2.0, 2.0);
      const Polynomial p = charpoly(m);
      for (std::size_t k = 1; k <= n; ++k) {
        ++r.cases;
        double scale = 0.0;
        for (unsigned long long mask = 1; mask < (1ULL << n); ++mask)
          if (static_cast<std::size_t>(__builtin_popcountll(mask)) == k)
            scale += std::abs(det(principal_submatrix(m, IndexSet::from_mask(mask, n))));
        if (std::abs(p.c[k] - brute_minor_sum(m, k)) > 1e-8 * (1.0 + scale))
          fail(r, "c_k differs from the k x k principal minor sum");
      }
    }
    return std::nullopt;
  });
}

CheckResult oracle_agreement(SuiteContext& ctx, std::size_t count) {
  return timed("oracle-agreement", [&](CheckResult& r) -> std::optional<bool> {
    constexpr ClassTag tags[] = {ClassTag::Arbitrary, ClassTag::PDiagDom, ClassTag::NonP,
                                 ClassTag::Z,         ClassTag::MMatrix,  ClassTag::SymPD};
    std::size_t p_count = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kOracle, k));
      const std::size_t n = pick(rng, 1, 6);
      Matrix m = k % 7 == 6 ? random_P_matrix(n, rng(), ctx.tol)
                            : generate({tags[k % 7 % 6], n, rng(), 1.0});
      const Verdict a = is_P_minors(m, ctx.tol).verdict;
      const Verdict b = is_P_submatrix_eigen(m, ctx.tol);
      ++r.cases;
      if (a != b) fail(r, "minor and eigenvalue oracles disagree at instance " + std::to_string(k));
      if (a == Verdict::Yes) {
        ++p_count;
        ctx.wedge.record(m, ctx.tol);
      }
    }
    r.detail = r.detail.empty() ? std::to_string(p_count) + " P-matrices" : r.detail;
    return std::nullopt;
  });
}

CheckResult sum_and_inverse(SuiteContext& ctx, std::size_t count) {
  return timed("P-plus-diagonal-and-inverse", [&](CheckResult& r) -> std::optional<bool> {
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kSumInverse, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix a = random_P_matrix(n, rng(), ctx.tol);
      ++r.cases;
      if (!is_P(a, ctx.tol)) {
        fail(r, "generator produced a non-P matrix");
        continue;
      }
      ctx.wedge.record(a, ctx.tol);
      Vector d(n);
      for (double& v : d) v = uniform(rng, 0.0, 1.0) < 0.3 ? 0.0 : uniform(rng, 0.0, 5.0);
      const Matrix sum = a + Matrix::diagonal(d);
      if (!is_P(sum, ctx.tol)) fail(r, "A + D is not P at instance " + std::to_string(k));
      else ctx.wedge.record(sum, ctx.tol);
      const Matrix inv = inverse(a, ctx.tol);
      if (!is_P(inv, ctx.tol)) fail(r, "inverse is not P at instance " + std::to_string(k));
      else ctx.wedge.record(inv, ctx.tol);
    }
    return std::nullopt;
  });
}

CheckResult generator_oracles(SuiteContext& ctx, std::size_t per_tag) {
  return timed("generator-oracles", [&](CheckResult& r) -> std::optional<bool> {
    constexpr ClassTag tags[] = {ClassTag::PDiagDom, ClassTag::MMatrix, ClassTag::SymPD,
                                 ClassTag::Z,        ClassTag::PSD,     ClassTag::NonP,
                                 ClassTag::Arbitrary};
    std::mt19937_64 rng(derive_seed(ctx.seed, kGenerators));
    for (ClassTag tag : tags) {
      for (std::size_t k = 0; k < per_tag; ++k) {
        const GenSpec g{tag, pick(rng, 1, 6), rng(), 1.0};
        ++r.cases;
        const Matrix m = generate(g);
        if (k % 10 == 0 && !(generate(g) == m)) fail(r, "generator is not deterministic");
        const bool expect_P =
            tag == ClassTag::PDiagDom || tag == ClassTag::MMatrix || tag == ClassTag::SymPD;
        if (expect_P) {
          if (!is_P(m, ctx.tol)) fail(r, std::string(to_string(tag)) + " draw is not P");
          else ctx.wedge.record(m, ctx.tol);
        }
        if (tag == ClassTag::MMatrix && is_Z(m) != Verdict::Yes) fail(r, "M-matrix draw is not Z");
        if (tag == ClassTag::PSD && k % 5 == 0 &&
            is_column_sufficient(m, {64, g.seed}, ctx.tol).verdict == Verdict::No)
          fail(r, "PSD draw refuted as column sufficient");
      }
    }
    return std::nullopt;
  });
}

CheckResult p_is_sufficient(SuiteContext& ctx, std::size_t count) {
  return timed("P-is-sufficient", [&](CheckResult& r) -> std::optional<bool> {
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kSufficient, k));
      const Matrix a = random_P_matrix(pick(rng, 1, 6), rng(), ctx.tol);
      ++r.cases;
      const SufficiencyOptions opt{64, rng()};
      if (is_column_sufficient(a, opt, ctx.tol).verdict == Verdict::No ||
          is_row_sufficient(a, opt, ctx.tol).verdict == Verdict::No)
        fail(r, "a P-matrix was refuted as sufficient");
    }
    return std::nullopt;
  });
}

CheckResult z_path(SuiteContext& ctx, std::size_t count) {
  return timed("Z-spectrum-path", [&](CheckResult& r) -> std::optional<bool> {
    std::mt19937_64 rng(derive_seed(ctx.seed, kZPath));
    std::size_t yes = 0;
    for (std::size_t k = 0; k < count; ++k) {
      const Matrix m = generate({ClassTag::Z, pick(rng, 1, 6), rng(), 1.0});
      ++r.cases;
      const Verdict a = is_P_minors(m, ctx.tol).verdict;
      if (a != is_P_via_Z_spectrum(m, ctx.tol)) fail(r, "Z-path disagrees with minors");
      if (a == Verdict::Yes) {
        ++yes;
        ctx.wedge.record(m, ctx.tol);
      }
    }
    if (r.detail.empty()) r.detail = std::to_string(yes) + " of the Z-matrices are P";
    return std::nullopt;
  });
}

CheckResult reversal_witnesses(SuiteContext& ctx, std::size_t count) {
  return timed("sign-reversal-witnesses", [&](CheckResult& r) -> std::optional<bool> {
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kReversal, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix m = k % 2 == 0 ? generate({ClassTag::NonP, n, rng(), 1.0})
                                  : random_P_matrix(n, rng(), ctx.tol);
      const bool p = is_P(m, ctx.tol);
      const auto w = find_reversal_witness(m, 32, rng(), ctx.tol);
      ++r.cases;
      if (p && w) fail(r, "reversal witness returned for a P-matrix");
      if (!p && !w) fail(r, "no reversal witness for a non-P matrix");
      if (w) {
        // re-evaluate x_i (Mx)_i <= 0 directly
        const Vector mx = m * *w;
        const double t = ctx.tol.product(m.norm_inf());
        bool ok = norm_inf(*w) > 0.0;
        for (std::size_t i = 0; i < n; ++i) ok = ok && (*w)[i] * mx[i] <= t;
        if (!ok) fail(r, "witness does not reverse signs");
      }
    }
    return std::nullopt;
  });
}

CheckResult spectral_bridge(SuiteContext& ctx, std::size_t count) {
  return timed("spectral-bridge", [&](CheckResult& r) -> std::optional<bool> {
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kSpectral, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix m = k % 2 == 0 ? uniform_matrix(n, rng) : random_P_matrix(n, rng(), ctx.tol);
      const Spectrum s = eigenvalues(m, ctx.tol);
      const CandidateSpectrum c = CandidateSpectrum::from(s);
      const SymmetricFunctions f = sigma_all(c, ctx.tol);
      const Polynomial p = charpoly(m);
      ++r.cases;
      for (std::size_t j = 1; j <= n; ++j)
        if (std::abs(f.sigma[j - 1] - p.c[j]) > 1e-6 * (1.0 + f.scale[j - 1]))
          fail(r, "sigma_k of the spectrum differs from c_k");
      if (is_P(m, ctx.tol)) {
        ctx.wedge.record(s);
        if (is_P_set(c, ctx.tol) != Verdict::Yes) fail(r, "P-matrix spectrum is not a P-set");
      }
      if (is_P_set(c, ctx.tol) == Verdict::Yes &&
          wedge_check(c, SetClass::P, ctx.tol).verdict != Verdict::Yes)
        fail(r, "P-set outside the wedge");
    }
    return std::nullopt;
  });
}

CheckResult augmentation(SuiteContext& ctx, std::size_t count) {
  return timed("augmentation", [&](CheckResult& r) -> std::optional<bool> {
    std::mt19937_64 rng(derive_seed(ctx.seed, kAugment));
    std::size_t total_added = 0, max_added = 0;
    for (std::size_t k = 0; k < count; ++k) {
      CandidateSpectrum c;
      const std::size_t pairs = pick(rng, 1, 2);
      for (std::size_t p = 0; p < pairs; ++p) {
        const Complex z(uniform(rng, -3.0, 3.0), uniform(rng, 0.1, 3.0));
        c.values.push_back(z);
        c.values.push_back(std::conj(z));
      }
      if (rng() % 2) c.values.emplace_back(uniform(rng, 0.1, 3.0), 0.0);
      ++r.cases;
      const auto aug = augment_to_P_set(c, {4096, 32, rng()}, ctx.tol);
      if (!aug) {
        fail(r, "no augmentation found for seed set " + std::to_string(k));
        continue;
      }
      CandidateSpectrum u = c;
      for (double v : aug->additions) u.values.emplace_back(v, 0.0);
      if (is_P_set(u, ctx.tol) != Verdict::Yes) fail(r, "augmented union is not a P-set");
      total_added += aug->additions.size();
      max_added = std::max(max_added, aug->additions.size());
    }
    if (r.detail.empty())
      r.detail = "additions: total " + std::to_string(total_added) + ", max " +
                 std::to_string(max_added);
    return std::nullopt;
  });
}

CheckResult realization(SuiteContext& ctx, std::size_t count) {
  return timed("P-set-realization", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t found = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kRealize, k));
      const Matrix a = random_P_matrix(pick(rng, 1, 4), rng(), ctx.tol);
      const CandidateSpectrum c = CandidateSpectrum::from(eigenvalues(a, ctx.tol));
      ++r.cases;
      const auto m = realize_P_set(c, 200, rng(), ctx.tol);
      if (!m) continue;  // heuristic miss, not a refutation
      ++found;
      const Spectrum ms = eigenvalues(*m, ctx.tol);
      double radius = 0.0;
      for (Complex l : c.values) radius = std::max(radius, std::abs(l));
      if (!is_P(*m, ctx.tol)) fail(r, "realized matrix is not P");
      if (spectrum_distance(ms.values, c.values) > 1e-6 * (1.0 + radius))
        fail(r, "realized spectrum differs from the request");
      ctx.wedge.record(ms);
    }
    if (r.detail.empty()) r.detail = "realized " + std::to_string(found) + " of " + std::to_string(count);
    return std::nullopt;
  });
}

CheckResult extremal_evidence(SuiteContext& ctx, std::size_t budget) {
  return timed("extremal-spectrum-evidence", [&](CheckResult& r) -> std::optional<bool> {
    json rows = json::array();
    for (std::size_t n = 2; n <= 5; ++n) {
      const ExtremalReport e = extremal_spectrum_search(n, budget, derive_seed(ctx.seed, kExtremal, n), ctx.tol);
      ++r.cases;
      ctx.wedge.merge(e.wedge);
      if (n == 2 && e.max_left_half_plane != 0) fail(r, "2x2 P-matrix with a left half-plane eigenvalue");
      rows.push_back({{"n", n},
                      {"evaluated", e.evaluated},
                      {"p_matrices", e.p_matrices},
                      {"max_left_half_plane", e.max_left_half_plane},
                      {"max_abs_arg", e.max_abs_arg}});
    }
    ctx.artifacts["extremal"] = rows;
    return std::nullopt;
  });
}

CheckResult powers_evidence(SuiteContext& ctx, std::size_t count) {
  return timed("powers-evidence", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t all_powers_P = 0, nonpositive_spectrum = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kPowers, k));
      const Matrix a = random_P_matrix(pick(rng, 2, 5), rng(), ctx.tol);
      ++r.cases;
      const PowersReport p = powers_P_check(a, 6, ctx.tol);
      if (p.all_eigenvalues_positive_real) {
        ++all_powers_P;
        if (!*p.all_eigenvalues_positive_real) ++nonpositive_spectrum;
      }
    }
    ctx.artifacts["powers"] = {{"matrices", count},
                               {"all_powers_P_up_to_6", all_powers_P},
                               {"of_which_spectrum_not_positive_real", nonpositive_spectrum}};
    return std::nullopt;
  });
}

CheckResult involution(SuiteContext& ctx, std::size_t count) {
  return timed("cayley-involution", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t skipped = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kInvolution, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix a = k % 2 ? random_P_matrix(n, rng(), ctx.tol) : uniform_matrix(n, rng);
      const Matrix id = Matrix::identity(n);
      if (condition(id + a, ctx.tol) > 1e4 || condition(id + cayley_u(a, ctx.tol), ctx.tol) > 1e4) {
        ++skipped;
        continue;
      }
      ++r.cases;
      if (verify_involution(a, ctx.tol) > 1e-8) fail(r, "U(U(A)) != A");
    }
    r.detail = r.detail.empty() ? std::to_string(skipped) + " ill-conditioned draws skipped" : r.detail;
    return std::nullopt;
  });
}

CheckResult cayley_identities(SuiteContext& ctx, std::size_t count) {
  return timed("cayley-identities", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t minus = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kIdentities, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix a = k % 2 ? random_P_matrix(n, rng(), ctx.tol) : uniform_matrix(n, rng);
      if (condition(Matrix::identity(n) + a, ctx.tol) > 1e4) continue;
      ++r.cases;
      const IdentityResiduals res = verify_identities(a, ctx.tol);
      if (res.plus > 1e-8) fail(r, "I + U != 2 (I + A)^-1");
      if (res.minus && condition(a, ctx.tol) <= 1e4) {
        ++minus;
        if (*res.minus > 1e-8) fail(r, "I - U != 2 (I + A^-1)^-1");
      }
    }
    if (r.detail.empty()) r.detail = std::to_string(minus) + " minus-identity cases";
    return std::nullopt;
  });
}

CheckResult factorization(SuiteContext& ctx, std::size_t count) {
  return timed("P-factorization", [&](CheckResult& r) -> std::optional<bool> {
    double worst = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kFactor, k));
      const Matrix a = random_P_matrix(pick(rng, 1, 6), rng(), ctx.tol);
      ctx.wedge.record(a, ctx.tol);
      ++r.cases;
      const FactorizationResult f = factor_p(a, ctx.tol);
      worst = std::max(worst, f.residual);
      if (f.residual > 1e-8) fail(r, "factor product residual above 1e-8");
      if (f.path_residual > 1e-8) fail(r, "(I + U)^-1 differs from (I + A)/2");
      if (f.left_is_P != Verdict::Yes || f.right_is_P != Verdict::Yes)
        fail(r, "a factor is not P at instance " + std::to_string(k));
      const IdentityResiduals res = verify_identities(a, ctx.tol);
      if (res.plus > 1e-8 || (res.minus && *res.minus > 1e-8)) fail(r, "identity residual above 1e-8");
      if (verify_involution(a, ctx.tol) > 1e-8) fail(r, "U(U(A)) != A");
    }
    if (r.detail.empty()) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
      r.detail = buf;
    }
    return std::nullopt;
  });
}

CheckResult scaled_factors(SuiteContext& ctx, std::size_t count) {
  return timed("scaled-stable-factors", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t left_stable = 0, right_stable = 0, both_P = 0, at_stable = 0;
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kScaled, k));
      const std::size_t n = pick(rng, 1, 5);
      const Matrix a = random_P_matrix(n, rng(), ctx.tol);
      const Matrix s = random_diagonal(n, rng, 0.1, 10.0);
      const Matrix t = random_diagonal(n, rng, 0.1, 10.0);
      ++r.cases;
      const ScaledFactorReport rep = scaled_stable_factor(a, s, t, ctx.tol);
      if (rep.residual > 1e-8) fail(r, "scaled factor product residual above 1e-8");
      left_stable += rep.left_stable == Verdict::Yes;
      right_stable += rep.right_stable == Verdict::Yes;
      both_P += rep.left_P == Verdict::Yes && rep.right_P == Verdict::Yes;
      at_stable += rep.a_t_stable == Verdict::Yes;
    }
    ctx.artifacts["scaled_factors"] = {{"trials", count},
                                       {"left_positive_stable", left_stable},
                                       {"right_positive_stable", right_stable},
                                       {"both_P", both_P},
                                       {"a_t_positive_stable", at_stable}};
    return std::nullopt;
  });
}

CheckResult ad_stability_probe(SuiteContext& ctx, std::size_t trials) {
  return timed("ad-stability-probe", [&](CheckResult& r) -> std::optional<bool> {
    const StabilityProbeLog log = pmkit::ad_stability_probe(trials, derive_seed(ctx.seed, kStability), 5, ctx.tol);
    r.cases = log.trials;
    ctx.artifacts["stability_log"] = io::to_json(log);
    for (const StabilityProbeEntry& e : log.counterexamples)
      if (!e.revalidated) fail(r, "counterexample at trial " + std::to_string(e.trial) + " did not re-validate");
    if (r.detail.empty())
      r.detail = std::to_string(log.counterexamples.size()) + " counterexamples logged, all re-validated";
    return log.trials == trials && r.failures == 0;
  });
}

CheckResult lcp_forward(SuiteContext& ctx, std::size_t matrices, std::size_t per_matrix) {
  return timed("lcp-forward", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t rays = 0;
    for (std::size_t k = 0; k < matrices; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kLcpForward, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix a = random_P_matrix(n, rng(), ctx.tol);
      ctx.wedge.record(a, ctx.tol);
      for (std::size_t t = 0; t < per_matrix; ++t) {
        LCPInstance inst{a, Vector(n)};
        for (double& v : inst.q) v = uniform(rng, -5.0, 5.0);
        ++r.cases;
        const Enumeration e = enumerate_solutions(inst, ctx.tol);
        if (e.solutions.size() != 1 || e.skipped != 0) {
          fail(r, "P-matrix LCP with " + std::to_string(e.solutions.size()) + " solutions");
          continue;
        }
        if (auto bad = check_solution(inst, e.solutions[0], ctx.tol)) fail(r, "enumerated: " + *bad);
        const auto s = lemke_solve(inst, ctx.tol);
        if (!s) {
          ++rays;
          fail(r, "Lemke ray termination on a P-matrix");
          continue;
        }
        if (auto bad = check_solution(inst, *s, ctx.tol)) fail(r, "Lemke: " + *bad);
        double d = 0.0;
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(s->z[i] - e.solutions[0].z[i]));
        if (d > 1e-6) fail(r, "Lemke and enumeration differ");
      }
    }
    ctx.artifacts["lcp_forward"] = {{"instances", r.cases}, {"lemke_ray_terminations", rays}};
    return std::nullopt;
  });
}

CheckResult lcp_contrapositive(SuiteContext& ctx, std::size_t matrices, std::size_t samples) {
  return timed("lcp-contrapositive", [&](CheckResult& r) -> std::optional<bool> {
    std::size_t found = 0;
    for (std::size_t k = 0; k < matrices; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kLcpContra, k));
      const Matrix a = generate({ClassTag::NonP, pick(rng, 2, 6), rng(), 1.0});
      ++r.cases;
      const CensusReport c = uniqueness_census(a, samples, rng(), ctx.tol);
      if (c.verdict == CensusVerdict::Violation) ++found;
      if (c.lemke_mismatch) fail(r, "Lemke disagrees with a unique enumerated solution");
    }
    const double rate = matrices ? static_cast<double>(found) / static_cast<double>(matrices) : 1.0;
    r.detail = std::to_string(found) + "/" + std::to_string(matrices) +
               " non-P matrices show a q without a unique solution" +
               (r.detail.empty() ? "" : "; " + r.detail);
    return rate >= 0.9 && r.failures == 0;
  });
}

namespace {

OperatorSpec inverse_square(double c = 1.0) {
  return {OperatorKind::Diagonal, rules::InverseSquareDiagonal{c, {}}, true};
}

OperatorSpec literal(Matrix m, OperatorKind kind = OperatorKind::DenseRule) {
  return {kind, rules::MatrixLiteral{std::move(m)}, false};
}

}  // namespace

CheckResult operator_sections(SuiteContext& ctx) {
  return timed("operator-sections", [&](CheckResult& r) -> std::optional<bool> {
    const std::vector<OperatorSpec> specs{
        inverse_square(),
        {OperatorKind::Diagonal, rules::Identity{}, false},
        {OperatorKind::Banded, rules::Tridiag{2.0, -1.0}, false},
        {OperatorKind::DenseRule, rules::Hilbert{1.0}, true},
        literal(Matrix{{-1, -1}, {4, 3}}),
    };
    for (const OperatorSpec& s : specs) {
      const Matrix big = section(s, 64).matrix;
      for (std::size_t m : {1, 2, 5, 16, 63}) {
        ++r.cases;
        if (!(section(s, m).matrix == principal_submatrix(big, IndexSet::from_mask((1ULL << m) - 1, 64))))
          fail(r, "section is not the leading block of a larger section");
      }
      if (s.kind == OperatorKind::Diagonal && !big.is_diagonal()) fail(r, "diagonal spec gave a non-diagonal section");
      if (s.decay != decay_observed(s)) fail(r, "declared decay not observed for " + std::string(rule_name(s.rule)));
    }
    ++r.cases;
    try {
      section({OperatorKind::Diagonal, rules::Tridiag{}, false}, 3);
      fail(r, "banded rule accepted under a diagonal kind");
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RuleUndefined) throw;
    }
    // Diagonal oracle: the smallest k-minor is the product of the k smallest entries,
    // which for 1/i^2 drops under the absolute minor threshold at larger orders.
    for (std::size_t n : {1, 2, 4, 8, 10, 12}) {
      ++r.cases;
      const Matrix m = section(specs[0], n).matrix;
      std::vector<double> d;
      for (std::size_t i = 0; i < n; ++i) d.push_back(m(i, i));
      std::sort(d.begin(), d.end());
      bool expect = true;
      double prod = 1.0;
      for (std::size_t k = 0; k < n; ++k) {
        prod *= d[k];
        expect = expect && prod > ctx.tol.minor_threshold(m.norm_inf(), k + 1);
      }
      const Verdict v = is_P_operator_section(specs[0], n, ctx.tol);
      if (v != (expect ? Verdict::Yes : Verdict::No)) fail(r, "diagonal section verdict disagrees with oracle");
    }
    for (std::size_t n : {1, 2, 4, 8, 12}) {
      ++r.cases;
      if (is_P_operator_section(specs[2], n, ctx.tol) != Verdict::Yes) fail(r, "tridiagonal section is not P");
    }
    return std::nullopt;
  });
}

CheckResult operator_sqrt_ladder(SuiteContext& ctx) {
  return timed("operator-sqrt", [&](CheckResult& r) -> std::optional<bool> {
    (void)ctx;
    double worst = 0.0;
    for (double c : {1.0, 4.0, 0.37})
      for (std::size_t n : {2, 4, 8, 16, 32, 64}) {
        ++r.cases;
        const SqrtResult s = operator_sqrt(inverse_square(c), n);
        worst = std::max(worst, s.residual);
        if (s.residual > 1e-12) fail(r, "R^2 - T residual above 1e-12");
        if (!sqrt_candidate_matches(s, s.root.matrix)) fail(r, "root does not match itself");
        Matrix other = s.root.matrix;
        other(n - 1, n - 1) *= 1.001;
        if (sqrt_candidate_matches(s, other)) fail(r, "a different candidate was accepted");
      }
    char buf[64];
    std::snprintf(buf, sizeof buf, "worst residual %.2e", worst);
    if (r.detail.empty()) r.detail = buf;
    return std::nullopt;
  });
}

CheckResult operator_minmax(SuiteContext& ctx, std::size_t count) {
  return timed("operator-minmax", [&](CheckResult& r) -> std::optional<bool> {
    for (std::size_t k = 0; k < count; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kOpMinmax, k));
      const std::size_t n = pick(rng, 1, 8);
      const Matrix t = uniform_matrix(n, rng, 0.05, 1.0) * log_uniform(rng, 0.1, 10.0);
      ++r.cases;
      const MinMaxReport m = minmax_rho(literal(t), n, 64, rng());
      if (m.sup_inf > m.rho + 1e-9 * (1.0 + m.rho) || m.inf_sup < m.rho - 1e-9 * (1.0 + m.rho))
        fail(r, "estimates do not bracket rho");
      if (std::abs(m.sup_inf - m.rho) > 1e-6 || std::abs(m.inf_sup - m.rho) > 1e-6)
        fail(r, "estimates do not meet rho within 1e-6");
      double ref = 0.0;
      for (Complex l : eigenvalues(t, ctx.tol).values) ref = std::max(ref, std::abs(l));
      if (std::abs(ref - m.rho) > 1e-8 * (1.0 + ref)) fail(r, "power-iteration rho differs from the spectral radius");
    }
    return std::nullopt;
  });
}

CheckResult operator_interp(SuiteContext& ctx, std::size_t trials) {
  return timed("operator-diag-interp", [&](CheckResult& r) -> std::optional<bool> {
    const std::size_t per_pair = 20;
    std::size_t done = 0, violations = 0;
    for (std::size_t k = 0; done < trials; ++k) {
      std::mt19937_64 rng(derive_seed(ctx.seed, kOpInterp, k));
      const std::size_t n = pick(rng, 1, 6);
      const Matrix t = random_P_matrix(n, rng(), ctx.tol);
      const Matrix a = random_P_matrix(n, rng(), ctx.tol);
      // S T^{-1} = A, or S^{-1} T = A
      const Matrix s = k % 2 == 0 ? a * t : t * inverse(a, ctx.tol);
      const std::size_t batch = std::min(per_pair, trials - done);
      const InterpReport rep = diag_interp_check(literal(s), literal(t), DiagRule::Mixed, n, batch, rng(), ctx.tol);
      done += rep.trials;
      r.cases += rep.checks;
      violations += rep.violations;
      if (rep.violations) fail(r, "singular interpolation D T + (I - D) S");
    }
    ctx.artifacts["diag_interp"] = {{"trials", done}, {"violations", violations}};
    return std::nullopt;
  });
}

CheckResult operator_csufficiency(SuiteContext& ctx) {
  return timed("operator-csufficiency", [&](CheckResult& r) -> std::optional<bool> {
    struct Case {
      const char* name;
      Matrix t;
      std::optional<bool> refuted;  // expected outcome when known
    };
    const std::vector<Case> curated{
        {"diag(1,-1)", Matrix::diagonal({1, -1}), true},
        {"diag(1,0)", Matrix::diagonal({1, 0}), false},
        {"I2", Matrix::identity(2), false},
        {"skew", Matrix{{0, 1}, {-1, 0}}, false},
        {"nilpotent", Matrix{{0, 1}, {0, 0}}, true},
        {"ones", Matrix{{1, 1}, {1, 1}}, false},
        {"example", Matrix{{-1, -1}, {4, 3}}, true},
        {"tridiag3", Matrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}, false},
        {"psd3", Matrix{{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}, false},
        {"diag3", Matrix::diagonal({2, 0, -1}), true},
        {"skew-plus3", Matrix{{1, 2, 0}, {-2, 0, 1}, {0, -1, 0}}, false},
        {"reversing3", Matrix{{1, -3, 0}, {0, 1, -3}, {-3, 0, 1}}, std::nullopt},
        {"diag4", Matrix::diagonal({1, 1, 1, -1}), true},
        {"psd4", Matrix{{2, 1, 0, 1}, {1, 2, 1, 0}, {0, 1, 2, 1}, {1, 0, 1, 2}}, false},
        {"I4", Matrix::identity(4), false},
    };
    json rows = json::array();
    for (const Case& c : curated) {
      ++r.cases;
      const CSuffReport rep = csufficient_kernel_search(literal(c.t), c.t.size(), kDefaultDGrid, ctx.tol);
      const bool refuted = rep.refutation.has_value();
      if (!rep.agrees) fail(r, std::string("kernel search and classifier disagree on ") + c.name);
      if (c.refuted && *c.refuted != refuted) fail(r, std::string("unexpected kernel search outcome on ") + c.name);
      rows.push_back({{"name", c.name}, {"report", io::to_json(rep)}});
    }
    ctx.artifacts["csufficiency"] = rows;
    return std::nullopt;
  });
}

CheckResult operator_positivity(SuiteContext& ctx) {
  return timed("operator-eigen-positivity", [&](CheckResult& r) -> std::optional<bool> {
    const std::vector<std::size_t> ladder{2, 4, 8, 16, 32, 64};
    const std::vector<OperatorSpec> p_specs{
        inverse_square(), inverse_square(4.0),
        {OperatorKind::Diagonal, rules::Identity{}, false},
        {OperatorKind::Banded, rules::Tridiag{2.0, -1.0}, false},
        {OperatorKind::Banded, rules::Tridiag{3.0, 1.0}, false},
        literal(Matrix{{2, -1, 0.5}, {0.3, 1, 0.2}, {-0.4, 0.1, 1}}),
    };
    for (const OperatorSpec& s : p_specs) {
      const EigenPositivityReport rep = eigen_positivity_check(s, ladder, ctx.tol);
      for (const OrderEigenReport& o : rep.orders) {
        ++r.cases;
        if (!o.all_positive) fail(r, std::string(rule_name(s.rule)) + ": non-positive real eigenvalue");
        ctx.wedge.record(section(s, o.order).matrix, ctx.tol);
      }
      if (rep.contradictions) fail(r, "contradiction flagged on a P-operator spec");
    }
    // negative control: lambda_3 = -1 must be flagged from order 3 on
    OperatorSpec bad = inverse_square();
    std::get<rules::InverseSquareDiagonal>(bad.rule).overrides[3] = -1.0;
    const EigenPositivityReport rep = eigen_positivity_check(bad, {2, 3, 8}, ctx.tol);
    ++r.cases;
    if (!rep.orders[0].all_positive || rep.orders[1].all_positive || rep.orders[2].all_positive)
      fail(r, "negative diagonal entry not flagged");
    if (is_P_operator_section(bad, 3, ctx.tol) != Verdict::No) fail(r, "section with -1 classified P");
    return std::nullopt;
  });
}

CheckResult operator_eigvec_rev(SuiteContext& ctx) {
  return timed("operator-eigvec-rev", [&](CheckResult& r) -> std::optional<bool> {
    const std::vector<Matrix> sufficient{
        Matrix::identity(3),
        Matrix::diagonal({1, 0}),
        Matrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}},
        Matrix{{1, 1, 0}, {1, 1, 0}, {0, 0, 0}},
        Matrix{{1, 2}, {-2, 1}},
        Matrix{{3, 1, 0, 0}, {1, 3, 1, 0}, {0, 1, 3, 1}, {0, 0, 1, 3}},
    };
    for (const Matrix& t : sufficient) {
      ++r.cases;
      const EigvecRevReport rep = eigvec_rev_check(literal(t), t.size(), ctx.tol);
      if (rep.skipped) fail(r, "column sufficient section was refuted");
      if (rep.violations) fail(r, "eigenvector of a nonzero eigenvalue lies in rev");
    }
    ++r.cases;
    if (!eigvec_rev_check(literal(Matrix::diagonal({1, -1})), 2, ctx.tol).skipped)
      fail(r, "diag(1,-1) should fail the precondition");
    ++r.cases;
    const RevQuery q = rev_membership(literal(Matrix{{-1, -1}, {4, 3}}), 2, Vector{1, -1}, ctx.tol);
    if (!q.in_rev || q.products != Vector{0, -1}) fail(r, "rev membership of (1,-1) misreported");
    return std::nullopt;
  });
}

CheckResult wedge_bound(SuiteContext& ctx) {
  return timed("eigenvalue-wedge", [&](CheckResult& r) -> std::optional<bool> {
    r.cases = ctx.wedge.eigenvalues;
    r.failures = ctx.wedge.violations;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%zu P-matrices, %zu eigenvalues, %zu violations, min margin %.3g",
                  ctx.wedge.matrices, ctx.wedge.eigenvalues, ctx.wedge.violations,
                  ctx.wedge.matrices ? ctx.wedge.min_margin : 0.0);
    r.detail = buf;
    return ctx.wedge.matrices > 0 && ctx.wedge.violations == 0;
  });
}

}  // namespace checks

std::size_t SuiteReport::contradictions() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

SuiteReport run_suite(std::string_view name, std::uint64_t seed, const Tolerances& tol,
                      const std::function<void(const CheckResult&)>& progress) {
  if (std::find(kSuiteNames.begin(), kSuiteNames.end(), name) == kSuiteNames.end())
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "'");
  SuiteContext ctx{seed, tol, {}, json::object()};
  SuiteReport rep;
  rep.name = std::string(name);
  rep.seed = seed;
  auto add = [&](CheckResult c) {
    if (progress) progress(c);
    rep.checks.push_back(std::move(c));
  };
  const bool all = name == "all";
  using namespace checks;
  if (all || name == "classify") {
    add(reference_example(ctx));
    add(linalg_identities(ctx));
    add(charpoly_minor_sums(ctx));
    add(oracle_agreement(ctx));
    add(sum_and_inverse(ctx));
    add(generator_oracles(ctx));
    add(p_is_sufficient(ctx));
    add(z_path(ctx));
    add(reversal_witnesses(ctx));
    add(spectral_bridge(ctx));
    add(augmentation(ctx));
    add(realization(ctx));
    add(extremal_evidence(ctx));
    add(powers_evidence(ctx));
  }
  if (all || name == "cayley") {
    add(involution(ctx));
    add(cayley_identities(ctx));
    add(factorization(ctx));
    add(scaled_factors(ctx));
    add(ad_stability_probe(ctx));
  }
  if (all || name == "lcp") {
    add(lcp_forward(ctx));
    add(lcp_contrapositive(ctx));
  }
  if (all || name == "operator") {
    add(operator_sections(ctx));
    add(operator_sqrt_ladder(ctx));
    add(operator_minmax(ctx));
    add(operator_interp(ctx));
    add(operator_csufficiency(ctx));
    add(operator_positivity(ctx));
    add(operator_eigvec_rev(ctx));
  }
  add(wedge_bound(ctx));
  rep.wedge = ctx.wedge;
  rep.artifacts = std::move(ctx.artifacts);
  return rep;
}

json to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"cases", c.cases},
          {"failures", c.failures},
          {"passed", c.passed},
          {"detail", c.detail}};
}

json to_json(const SuiteReport& r) {
  json checks = json::array();
  for (const CheckResult& c : r.checks) checks.push_back(to_json(c));
  return {{"suite", r.name},
          {"seed", r.seed},
          {"checks", checks},
          {"contradictions", r.contradictions()},
          {"wedge", io::to_json(r.wedge)},
          {"artifacts", r.artifacts}};
}

}  // namespace pmkit
