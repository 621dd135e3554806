#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmkit/linalg.hpp"
#include "pmkit/matrix.hpp"
#include "pmkit/tolerances.hpp"

namespace pmkit {

enum class Verdict { Yes, No, Unknown };

std::string_view to_string(Verdict v);
/// Three-valued conjunction: No dominates, Unknown contaminates Yes.
Verdict operator&&(Verdict a, Verdict b);

inline constexpr std::size_t kMaxMinorEnumeration = 12;
inline constexpr std::size_t kMaxSubmatrixEigen = 10;
inline constexpr std::size_t kMaxOrthantEnumeration = 10;
/// Sufficiency verdicts are decisions up to this size; beyond it only a
/// refutation search runs.
inline constexpr std::size_t kExactSufficiencyMaxN = 3;

struct MinorTest {
  Verdict verdict = Verdict::Unknown;
  std::optional<IndexSet> witness;  // first violating set, smallest cardinality first
  double witness_minor = 0.0;
};

struct VectorWitness {
  Verdict verdict = Verdict::Unknown;
  std::optional<Vector> witness;  // normalized to ||x||_inf = 1
};

/// Products x_i (m x)_i.
Vector reversal_products(const Matrix& m, std::span<const double> x);
/// x != 0 and every product is <= the declared product tolerance.
bool reverses_sign(const Matrix& m, std::span<const double> x, const Tolerances& tol = {});
/// Reversal with at least one product strictly below -tolerance.
bool strictly_reverses_sign(const Matrix& m, std::span<const double> x, const Tolerances& tol = {});

MinorTest is_P_minors(const Matrix& m, const Tolerances& tol = {});
MinorTest is_P0_minors(const Matrix& m, const Tolerances& tol = {});
Verdict is_P_submatrix_eigen(const Matrix& m, const Tolerances& tol = {});
std::optional<Vector> find_reversal_witness(const Matrix& m, std::size_t budget,
                                            std::uint64_t seed, const Tolerances& tol = {});
Verdict is_Z(const Matrix& m);
Verdict is_P_via_Z_spectrum(const Matrix& m, const Tolerances& tol = {});
Verdict is_positive_stable(const Matrix& m, const Tolerances& tol = {});

struct SufficiencyOptions {
  std::size_t budget = 256;
  std::uint64_t seed = 0;
  std::size_t exact_max_n = kExactSufficiencyMaxN;
};

VectorWitness is_column_sufficient(const Matrix& m, const SufficiencyOptions& opt = {},
                                   const Tolerances& tol = {});
VectorWitness is_row_sufficient(const Matrix& m, const SufficiencyOptions& opt = {},
                                const Tolerances& tol = {});
Verdict is_sufficient(const Matrix& m, const SufficiencyOptions& opt = {},
                      const Tolerances& tol = {});

struct PowersReport {
  std::vector<Verdict> verdicts;  // A, A^2, ..., A^kmax
  /// Set only when every power is P: whether all eigenvalues of A are positive reals.
  std::optional<bool> all_eigenvalues_positive_real;
};

PowersReport powers_P_check(const Matrix& m, unsigned kmax, const Tolerances& tol = {});

using Witness = std::variant<std::monostate, IndexSet, Vector, Complex>;

struct ClassificationReport {
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, Witness> witnesses;
  std::map<std::string, std::string> method;
  Tolerances tolerances;
};

/// Runs every applicable test: P, P0, Z, M, positive_stable, column/row sufficient, sufficient.
ClassificationReport classify(const Matrix& m, const SufficiencyOptions& opt = {},
                              const Tolerances& tol = {});

}  // namespace pmkit
