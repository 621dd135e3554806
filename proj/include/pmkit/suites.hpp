#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "pmkit/cayley.hpp"
#include "pmkit/spectral_sets.hpp"

namespace pmkit {

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool passed = true;
  std::string detail;
  double seconds = 0.0;
};

/// Shared state of one suite run. Every check draws from its own stream
/// derived from `seed`, so results do not depend on which checks ran before.
struct SuiteContext {
  std::uint64_t seed = 0;
  Tolerances tol;
  WedgeTally wedge;  // eigenvalues of every P-matrix the checks generated
  nlohmann::json artifacts = nlohmann::json::object();
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index = 0);

/// A P-matrix of order n drawn from a rotating mix of sources: diagonally
/// dominant, M-matrix, symmetric positive definite, and rejection-sampled.
Matrix random_P_matrix(std::size_t n, std::uint64_t seed, const Tolerances& tol = {});

namespace checks {
CheckResult reference_example(SuiteContext& ctx);
CheckResult linalg_identities(SuiteContext& ctx, std::size_t count = 500);
CheckResult charpoly_minor_sums(SuiteContext& ctx, std::size_t count = 200);
CheckResult oracle_agreement(SuiteContext& ctx, std::size_t count = 1000);
CheckResult sum_and_inverse(SuiteContext& ctx, std::size_t count = 500);
CheckResult generator_oracles(SuiteContext& ctx, std::size_t per_tag = 1000);
CheckResult p_is_sufficient(SuiteContext& ctx, std::size_t count = 200);
CheckResult z_path(SuiteContext& ctx, std::size_t count = 300);
CheckResult reversal_witnesses(SuiteContext& ctx, std::size_t count = 200);
CheckResult spectral_bridge(SuiteContext& ctx, std::size_t count = 500);
CheckResult augmentation(SuiteContext& ctx, std::size_t count = 100);
CheckResult realization(SuiteContext& ctx, std::size_t count = 40);
CheckResult extremal_evidence(SuiteContext& ctx, std::size_t budget = 400);
CheckResult powers_evidence(SuiteContext& ctx, std::size_t count = 100);

CheckResult involution(SuiteContext& ctx, std::size_t count = 500);
CheckResult cayley_identities(SuiteContext& ctx, std::size_t count = 500);
CheckResult factorization(SuiteContext& ctx, std::size_t count = 500);
CheckResult scaled_factors(SuiteContext& ctx, std::size_t count = 200);
CheckResult ad_stability_probe(SuiteContext& ctx, std::size_t trials = 1000);

CheckResult lcp_forward(SuiteContext& ctx, std::size_t matrices = 200, std::size_t per_matrix = 20);
CheckResult lcp_contrapositive(SuiteContext& ctx, std::size_t matrices = 50,
                               std::size_t samples = 500);

CheckResult operator_sections(SuiteContext& ctx);
CheckResult operator_sqrt_ladder(SuiteContext& ctx);
CheckResult operator_minmax(SuiteContext& ctx, std::size_t count = 100);
CheckResult operator_interp(SuiteContext& ctx, std::size_t trials = 500);
CheckResult operator_csufficiency(SuiteContext& ctx);
CheckResult operator_positivity(SuiteContext& ctx);
CheckResult operator_eigvec_rev(SuiteContext& ctx);

/// Every recorded P-matrix eigenvalue lies strictly inside the wedge.
CheckResult wedge_bound(SuiteContext& ctx);
}  // namespace checks

struct SuiteReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  WedgeTally wedge;
  nlohmann::json artifacts;

  std::size_t contradictions() const;
};

inline const std::vector<std::string> kSuiteNames{"classify", "cayley", "lcp", "operator", "all"};

/// UnknownSuite for names outside kSuiteNames. `progress` sees each check as it finishes.
SuiteReport run_suite(std::string_view name, std::uint64_t seed, const Tolerances& tol = {},
                      const std::function<void(const CheckResult&)>& progress = {});

nlohmann::json to_json(const CheckResult& c);
nlohmann::json to_json(const SuiteReport& r);

}  // namespace pmkit
