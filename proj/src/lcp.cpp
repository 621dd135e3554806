#include "pmkit/lcp.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "pmkit/errors.hpp"
#include "pmkit/linalg.hpp"

namespace pmkit {

namespace {

double sign_threshold(const LCPInstance& inst, std::span<const double> z, const Tolerances& tol) {
  return tol.minor * (1.0 + norm_inf(inst.q) + inst.m.norm_inf() * norm_inf(z));
}

LCPSolution finish(const LCPInstance& inst, Vector z) {
  LCPSolution s;
  s.w = inst.m * z;
  for (std::size_t i = 0; i < z.size(); ++i) s.w[i] += inst.q[i];
  std::vector<std::size_t> basis;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0.0) basis.push_back(i);
  s.basis = IndexSet(std::move(basis));
  s.z = std::move(z);
  return s;
}

// Lexicographic comparison of rows scaled by 1/d, with a relative tolerance.
int lex_compare(std::span<const double> a, double da, std::span<const double> b, double db) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double x = a[k] / da, y = b[k] / db;
    const double eps = 1e-12 * (1.0 + std::max(std::abs(x), std::abs(y)));
    if (x < y - eps) return -1;
    if (x > y + eps) return 1;
  }
  return 0;
}

}  // namespace

void validate_instance(const LCPInstance& inst) {
  if (inst.m.empty()) throw Error(ErrorCode::InvalidMatrix, "empty LCP matrix");
  if (inst.q.size() != inst.m.size())
    throw Error(ErrorCode::InvalidArgument, "q length does not match the matrix dimension");
  if (!inst.m.all_finite() ||
      !std::all_of(inst.q.begin(), inst.q.end(), [](double v) { return std::isfinite(v); }))
    throw Error(ErrorCode::InvalidMatrix, "non-finite LCP data");
}

std::optional<std::string> check_solution(const LCPInstance& inst, const LCPSolution& s,
                                          const Tolerances& tol) {
  const std::size_t n = inst.m.size();
  if (s.z.size() != n || s.w.size() != n) return "dimension mismatch";
  const Vector mz = inst.m * s.z;
  const double res_tol = 1e-9 * (1.0 + inst.m.norm_inf() * norm_inf(s.z) + norm_inf(inst.q));
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(mz[i] + inst.q[i] - s.w[i]) > res_tol) return "w != m z + q";
  const double t = sign_threshold(inst, s.z, tol);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.z[i] < -t) return "z has a negative component";
    if (s.w[i] < -t) return "w has a negative component";
  }
  if (dot(s.z, s.w) > tol.complementarity * (1.0 + norm_inf(inst.q))) return "z'w > 0";
  return std::nullopt;
}

std::optional<LCPSolution> lemke_solve(const LCPInstance& inst, const Tolerances& tol) {
  validate_instance(inst);
  const std::size_t n = inst.m.size();
  if (n > kMaxLemkeDimension) throw Error(ErrorCode::DimensionTooLarge, "Lemke limited to n <= 32");
  if (std::all_of(inst.q.begin(), inst.q.end(), [](double v) { return v >= 0.0; }))
    return finish(inst, Vector(n, 0.0));

  // Columns: w_0..w_{n-1}, z_0..z_{n-1}, z0, rhs. The w block holds B^{-1}.
  const std::size_t cols = 2 * n + 2, z0 = 2 * n, rhs = 2 * n + 1;
  std::vector<double> t(n * cols, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return t[r * cols + c]; };
  for (std::size_t i = 0; i < n; ++i) {
    at(i, i) = 1.0;
    for (std::size_t j = 0; j < n; ++j) at(i, n + j) = -inst.m(i, j);
    at(i, z0) = -1.0;
    at(i, rhs) = inst.q[i];
  }
  std::vector<std::size_t> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[i] = i;

  auto pivot = [&](std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t k = 0; k < cols; ++k) at(r, k) /= p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < cols; ++k) at(i, k) -= f * at(r, k);
    }
    basis[r] = c;
  };
  // Lexicographic key of row r: (rhs, B^{-1} row).
  std::vector<double> key_a(n + 1), key_b(n + 1);
  auto key = [&](std::size_t r, std::vector<double>& out) {
    out[0] = at(r, rhs);
    for (std::size_t k = 0; k < n; ++k) out[k + 1] = at(r, k);
  };

  // Initial pivot: z0 enters at the most negative q; ties go to the largest index.
  std::size_t r0 = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (inst.q[i] <= inst.q[r0]) r0 = i;
  const std::size_t leaving0 = basis[r0];
  pivot(r0, z0);
  std::size_t entering = leaving0 < n ? leaving0 + n : leaving0 - n;

  const double eps = tol.singular * (1.0 + inst.m.norm_inf());
  const std::uint64_t cap = n + 2 >= 63 ? ~0ULL : (1ULL << (n + 2));
  for (std::uint64_t iter = 0; iter < cap; ++iter) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = at(i, entering);
      if (d <= eps) continue;
      if (!best) {
        best = i;
        continue;
      }
      key(i, key_a);
      key(*best, key_b);
      const int c = lex_compare(key_a, d, key_b, at(*best, entering));
      const double ri = at(i, rhs) / d, rb = at(*best, rhs) / at(*best, entering);
      const bool rhs_tie = std::abs(ri - rb) <= 1e-12 * (1.0 + std::max(std::abs(ri), std::abs(rb)));
      if (rhs_tie && basis[i] == z0) best = i;
      else if (rhs_tie && basis[*best] == z0) continue;
      else if (c < 0) best = i;
    }
    if (!best) return std::nullopt;
    const std::size_t leaving = basis[*best];
    pivot(*best, entering);
    if (leaving == z0) {
      Vector z(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        if (basis[i] >= n && basis[i] < 2 * n) z[basis[i] - n] = std::max(0.0, at(i, rhs));
      return finish(inst, std::move(z));
    }
    entering = leaving < n ? leaving + n : leaving - n;
  }
  throw Error(ErrorCode::CycleDetected, "Lemke iteration cap reached");
}

Enumeration enumerate_solutions(const LCPInstance& inst, const Tolerances& tol) {
  validate_instance(inst);
  const std::size_t n = inst.m.size();
  if (n > kMaxEnumerationDimension)
    throw Error(ErrorCode::DimensionTooLarge, "enumeration limited to n <= 12");
  Enumeration out;
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    const IndexSet alpha = IndexSet::from_mask(mask, n);
    Vector z(n, 0.0);
    if (!alpha.empty()) {
      const Matrix block = principal_submatrix(inst.m, alpha);
      const LuFactors f = lu_factor(block, tol);
      if (f.singular) {
        ++out.skipped;
        continue;
      }
      Vector rhs(alpha.size());
      for (std::size_t k = 0; k < alpha.size(); ++k) rhs[k] = -inst.q[alpha[k]];
      const Vector za = solve(block, rhs, tol);
      for (std::size_t k = 0; k < alpha.size(); ++k) z[alpha[k]] = za[k];
    }
    const double t = sign_threshold(inst, z, tol);
    if (std::any_of(z.begin(), z.end(), [&](double v) { return v < -t; })) continue;
    LCPSolution s = finish(inst, z);
    if (std::any_of(s.w.begin(), s.w.end(), [&](double v) { return v < -t; })) continue;
    for (std::size_t k = 0; k < n; ++k)
      if (!alpha.contains(k)) s.w[k] = std::max(s.w[k], 0.0);
    s.basis = alpha;
    const bool duplicate = std::any_of(out.solutions.begin(), out.solutions.end(), [&](const LCPSolution& o) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(o.z[k] - s.z[k]));
      return d <= 1e-8 * (1.0 + norm_inf(s.z));
    });
    if (!duplicate) out.solutions.push_back(std::move(s));
  }
  return out;
}

std::string_view to_string(CensusVerdict v) {
  switch (v) {
    case CensusVerdict::ConsistentWithP: return "consistent-with-P";
    case CensusVerdict::Violation: return "violation";
    case CensusVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

CensusReport uniqueness_census(const Matrix& m, std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol) {
  const std::size_t n = m.size();
  if (n > kMaxCensusDimension) throw Error(ErrorCode::DimensionTooLarge, "census limited to n <= 10");
  CensusReport r;
  r.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  bool violation = false;
  for (std::size_t t = 0; t < trials; ++t) {
    LCPInstance inst{m, Vector(n)};
    for (double& v : inst.q) v = u(rng);
    const Enumeration e = enumerate_solutions(inst, tol);
    r.skipped_bases += e.skipped;
    const std::size_t count = e.solutions.size();
    if (count == 0) ++r.zero;
    else if (count == 1) ++r.one;
    else ++r.multiple;
    if (count >= 2 || (count == 0 && e.skipped == 0)) {
      violation = true;
      if (!r.violating_q) r.violating_q = inst.q;
    }
    if (count == 1) {
      ++r.lemke_checked;
      const auto s = lemke_solve(inst, tol);
      if (!s) {
        ++r.lemke_ray;
      } else {
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(s->z[k] - e.solutions[0].z[k]));
        if (d > 1e-6 * (1.0 + norm_inf(e.solutions[0].z))) ++r.lemke_mismatch;
      }
    }
  }
  if (violation) r.verdict = CensusVerdict::Violation;
  else if (r.skipped_bases > 0) r.verdict = CensusVerdict::Inconclusive;
  else r.verdict = CensusVerdict::ConsistentWithP;
  return r;
}

}  // namespace pmkit
