#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmkit/classify.hpp"

namespace pmkit {

struct FactorizationResult {
  Matrix u;
  Matrix factor_left;   // (I + A) / 2
  Matrix factor_right;  // 2 (I + A)^{-1} A
  double residual = 0.0;       // ||left * right - A||_F / ||A||_F
  double path_residual = 0.0;  // ||(I + U)^{-1} - left||_F / (1 + ||left||_F)
  Verdict left_is_P = Verdict::Unknown;
  Verdict right_is_P = Verdict::Unknown;
};

/// (I + a)^{-1} (I - a).
Matrix cayley_u(const Matrix& a, const Tolerances& tol = {});

/// ||U(U(a)) - a||_F / (1 + ||a||_F).
double verify_involution(const Matrix& a, const Tolerances& tol = {});

struct IdentityResiduals {
  double plus = 0.0;            // ||I + U - 2 (I + a)^{-1}||_F
  std::optional<double> minus;  // ||I - U - 2 (I + a^{-1})^{-1}||_F, absent when a is singular
};

IdentityResiduals verify_identities(const Matrix& a, const Tolerances& tol = {});

FactorizationResult factor_p(const Matrix& a, const Tolerances& tol = {});

struct ScaledFactorReport {
  Matrix left;   // [(I + U) S]^{-1}
  Matrix right;  // (I - U) T
  double residual = 0.0;  // against S^{-1} A T
  Verdict left_stable = Verdict::Unknown;
  Verdict left_P = Verdict::Unknown;
  Verdict right_stable = Verdict::Unknown;
  Verdict right_P = Verdict::Unknown;
  Verdict a_t_stable = Verdict::Unknown;  // the A D probe with D = T
};

ScaledFactorReport scaled_stable_factor(const Matrix& a, const Matrix& s_diag,
                                        const Matrix& t_diag, const Tolerances& tol = {});

/// Routh-Hurwitz test on the characteristic polynomial: true iff every root
/// has positive real part.
bool routh_hurwitz_positive(const Polynomial& p);

struct StabilityProbeEntry {
  std::size_t trial = 0;
  std::string source;
  Matrix a;
  Vector d;
  Complex eigenvalue;  // smallest real part of A D
  double residual = 0.0;
  bool routh_unstable = false;
  bool revalidated = false;
};

struct StabilityProbeLog {
  std::size_t trials = 0;
  std::size_t borderline = 0;  // min Re within tolerance of zero
  std::vector<StabilityProbeEntry> counterexamples;

  bool all_revalidated() const;
};

/// Samples (P-matrix, positive diagonal) pairs with n <= max_n and records
/// every pair for which A D has an eigenvalue with negative real part.
StabilityProbeLog ad_stability_probe(std::size_t trials, std::uint64_t seed, std::size_t max_n = 5,
                 const Tolerances& tol = {});

}  // namespace pmkit
