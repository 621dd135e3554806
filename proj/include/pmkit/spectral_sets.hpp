#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "pmkit/classify.hpp"
#include "pmkit/linalg.hpp"

namespace pmkit {

/// A multiset of candidate eigenvalues.
struct CandidateSpectrum {
  std::vector<Complex> values;

  std::size_t size() const noexcept { return values.size(); }
  bool closed_under_conjugation(const Tolerances& tol = {}) const;
  static CandidateSpectrum from(const Spectrum& s) { return {s.values}; }
};

/// sigma[k-1] = k-th elementary symmetric function, k = 1..n.
struct SymmetricFunctions {
  std::vector<double> sigma;
  /// Same functions of |lambda_i|; the natural magnitude scale for thresholds.
  std::vector<double> scale;
};

enum class SetClass { P, P0 };

SymmetricFunctions sigma_all(const CandidateSpectrum& s, const Tolerances& tol = {});
Verdict is_P_set(const CandidateSpectrum& s, const Tolerances& tol = {});
Verdict is_P0_set(const CandidateSpectrum& s, const Tolerances& tol = {});

struct WedgeReport {
  Verdict verdict = Verdict::Unknown;
  double max_arg = 0.0;
  double bound = 0.0;  // (n-1) pi / n
  /// P0 variant only: whether max |arg| attains the bound, and whether
  /// sigma_k = 0 (k < n), sigma_n > 0 holds. The two must coincide.
  bool equality_attained = false;
  std::optional<bool> equality_sigma_condition;
};

WedgeReport wedge_check(const CandidateSpectrum& s, SetClass variant = SetClass::P,
                        const Tolerances& tol = {});

/// Running count of eigenvalues checked against the wedge bound.
struct WedgeTally {
  std::size_t matrices = 0;
  std::size_t eigenvalues = 0;
  std::size_t violations = 0;
  double min_margin = 1e300;  // smallest bound - |arg| seen

  void record(const Spectrum& s);
  void record(const Matrix& m, const Tolerances& tol = {}) { record(pmkit::eigenvalues(m, tol)); }
  void merge(const WedgeTally& o) {
    matrices += o.matrices;
    eigenvalues += o.eigenvalues;
    violations += o.violations;
    min_margin = std::min(min_margin, o.min_margin);
  }
};

struct AugmentOptions {
  std::size_t max_additions = 4096;
  std::size_t random_trials = 32;  // per addition count
  std::uint64_t seed = 0;
};

struct Augmentation {
  std::vector<double> additions;
  SymmetricFunctions sigma;  // of the union
};

std::optional<Augmentation> augment_to_P_set(const CandidateSpectrum& c,
                                             const AugmentOptions& opt = {},
                                             const Tolerances& tol = {});

std::optional<Matrix> realize_P_set(const CandidateSpectrum& s, std::size_t budget,
                                    std::uint64_t seed, const Tolerances& tol = {});

struct ExtremalReport {
  std::size_t n = 0;
  std::size_t evaluated = 0;
  std::size_t p_matrices = 0;
  std::size_t max_left_half_plane = 0;
  double max_abs_arg = 0.0;
  std::optional<Matrix> best;
  WedgeTally wedge;
};

ExtremalReport extremal_spectrum_search(std::size_t n, std::size_t budget, std::uint64_t seed,
                                        const Tolerances& tol = {});

}  // namespace pmkit
