#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmkit/matrix.hpp"
#include "pmkit/tolerances.hpp"

namespace pmkit {

/// Find z >= 0 with w = m z + q >= 0 and z'w = 0.
struct LCPInstance {
  Matrix m;
  Vector q;
};

struct LCPSolution {
  Vector z;
  Vector w;
  IndexSet basis;  // indices where z is basic
};

void validate_instance(const LCPInstance& inst);

/// Re-checks an LCPSolution from scratch: w = m z + q, sign and
/// complementarity conditions. Returns the first violated condition, if any.
std::optional<std::string> check_solution(const LCPInstance& inst, const LCPSolution& s,
                                          const Tolerances& tol = {});

inline constexpr std::size_t kMaxLemkeDimension = 32;
inline constexpr std::size_t kMaxEnumerationDimension = 12;
inline constexpr std::size_t kMaxCensusDimension = 10;

/// Lemke's complementary pivoting with covering vector (1, ..., 1) and a
/// lexicographic ratio test. Empty on ray termination.
std::optional<LCPSolution> lemke_solve(const LCPInstance& inst, const Tolerances& tol = {});

struct Enumeration {
  std::vector<LCPSolution> solutions;
  std::size_t skipped = 0;  // bases whose principal block is singular
};

/// Tries all 2^n complementary bases.
Enumeration enumerate_solutions(const LCPInstance& inst, const Tolerances& tol = {});

enum class CensusVerdict { ConsistentWithP, Violation, Inconclusive };

std::string_view to_string(CensusVerdict v);

struct CensusReport {
  std::size_t trials = 0;
  std::size_t zero = 0;
  std::size_t one = 0;
  std::size_t multiple = 0;
  std::size_t skipped_bases = 0;
  std::size_t lemke_checked = 0;
  std::size_t lemke_mismatch = 0;
  std::size_t lemke_ray = 0;
  std::optional<Vector> violating_q;  // first q whose count is not 1
  CensusVerdict verdict = CensusVerdict::Inconclusive;
};

/// Samples q uniformly from [-5, 5]^n (mt19937_64 seeded with `seed`).
CensusReport uniqueness_census(const Matrix& m, std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol = {});

}  // namespace pmkit
