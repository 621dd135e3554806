#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pmkit/classify.hpp"

namespace pmkit {

enum class OperatorKind { Diagonal, Banded, DenseRule };

std::string_view to_string(OperatorKind k);
std::optional<OperatorKind> parse_operator_kind(std::string_view s);

namespace rules {
struct Identity {};
/// lambda_i = c / i^2, with optional per-index replacements (1-based).
struct InverseSquareDiagonal {
  double c = 1.0;
  std::map<std::size_t, double> overrides;
};
/// a on the diagonal, b on the first off-diagonals.
struct Tridiag {
  double a = 2.0;
  double b = -1.0;
};
/// c / (i + j - 1).
struct Hilbert {
  double c = 1.0;
};
/// A finite matrix extended by the identity.
struct MatrixLiteral {
  Matrix m;
};
}  // namespace rules

using OperatorRule = std::variant<rules::Identity, rules::InverseSquareDiagonal, rules::Tridiag,
                                  rules::Hilbert, rules::MatrixLiteral>;

std::string_view rule_name(const OperatorRule& r);

struct OperatorSpec {
  OperatorKind kind = OperatorKind::DenseRule;
  OperatorRule rule;
  bool decay = false;
};

/// Coefficient <T e_j, e_i> with 1-based i, j.
double coefficient(const OperatorSpec& spec, std::size_t i, std::size_t j);

/// Whether sampled coefficients actually tend to zero along the diagonal
/// and the first row.
bool decay_observed(const OperatorSpec& spec);

struct FiniteSection {
  std::size_t order = 0;
  Matrix matrix;
};

/// Leading n x n block. RuleUndefined when the rule leaves the declared band.
FiniteSection section(const OperatorSpec& spec, std::size_t n);

Verdict is_P_operator_section(const OperatorSpec& spec, std::size_t n, const Tolerances& tol = {});

struct OrderEigenReport {
  std::size_t order = 0;
  std::vector<double> real_eigenvalues;
  bool all_positive = true;
  Verdict section_is_P = Verdict::Unknown;
};

struct EigenPositivityReport {
  std::vector<OrderEigenReport> orders;
  std::size_t contradictions = 0;  // non-positive real eigenvalue on a P section
};

EigenPositivityReport eigen_positivity_check(const OperatorSpec& spec,
                                             const std::vector<std::size_t>& orders,
                                             const Tolerances& tol = {});

struct SqrtResult {
  FiniteSection root;
  double residual = 0.0;  // ||R^2 - T||_inf
};

SqrtResult operator_sqrt(const OperatorSpec& spec, std::size_t n);
/// A positive diagonal candidate whose square matches T must equal the root.
bool sqrt_candidate_matches(const SqrtResult& r, const Matrix& candidate, double tol = 1e-12);

struct MinMaxReport {
  double rho = 0.0;
  double inf_sup = 0.0;  // min over samples of max_i (Tx)_i / x_i
  double sup_inf = 0.0;  // max over samples of min_i (Tx)_i / x_i
  Vector perron;
  std::size_t samples = 0;
  std::size_t iterations = 0;
};

MinMaxReport minmax_rho(const Matrix& t, std::size_t samples, std::uint64_t seed);
MinMaxReport minmax_rho(const OperatorSpec& spec, std::size_t n, std::size_t samples,
                        std::uint64_t seed);

enum class DiagRule { Mixed, Uniform, Binary };

struct InterpReport {
  bool case1 = false;  // S T^{-1} is P: D T + (I - D) S
  bool case2 = false;  // S^{-1} T is P: T D + S (I - D)
  std::size_t trials = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::optional<Vector> violating_d;
};

InterpReport diag_interp_check(const Matrix& s, const Matrix& t, DiagRule rule, std::size_t trials,
                               std::uint64_t seed, const Tolerances& tol = {});
InterpReport diag_interp_check(const OperatorSpec& s, const OperatorSpec& t, DiagRule rule,
                               std::size_t n, std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol = {});

struct KernelWitness {
  IndexSet alpha;
  Vector d;      // diagonal of D_alpha
  Vector kernel;  // strictly nonzero, in alpha coordinates
};

struct CSuffReport {
  std::size_t systems = 0;   // (alpha, direction) pairs examined
  std::size_t singular = 0;  // singular T_alpha + D_alpha found
  std::optional<KernelWitness> refutation;
  VectorWitness classifier;
  bool agrees = false;
};

inline const std::vector<double> kDefaultDGrid{0.0, 1e-3, 0.1, 0.5, 1.0, 10.0};

CSuffReport csufficient_kernel_search(const Matrix& t, const std::vector<double>& grid = kDefaultDGrid,
                                      const Tolerances& tol = {});
CSuffReport csufficient_kernel_search(const OperatorSpec& spec, std::size_t n,
                                      const std::vector<double>& grid = kDefaultDGrid,
                                      const Tolerances& tol = {});

struct RevQuery {
  Vector x;
  Vector products;
  bool in_rev = false;
};

RevQuery rev_membership(const Matrix& t, std::span<const double> x, const Tolerances& tol = {});
RevQuery rev_membership(const OperatorSpec& spec, std::size_t n, std::span<const double> x,
                        const Tolerances& tol = {});

struct EigvecRevReport {
  bool skipped = false;  // section refuted as column sufficient
  Verdict column_sufficient = Verdict::Unknown;
  std::size_t eigenpairs = 0;
  std::size_t vectors_checked = 0;
  std::size_t violations = 0;
};

EigvecRevReport eigvec_rev_check(const Matrix& t, const Tolerances& tol = {});
EigvecRevReport eigvec_rev_check(const OperatorSpec& spec, std::size_t n, const Tolerances& tol = {});

}  // namespace pmkit
