#include "pmkit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "pmkit/errors.hpp"
#include "pmkit/lp.hpp"

namespace pmkit {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Unknown: return "unknown";
  }
  return "unknown";
}

Verdict operator&&(Verdict a, Verdict b) {
  if (a == Verdict::No || b == Verdict::No) return Verdict::No;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Yes;
}

Vector reversal_products(const Matrix& m, std::span<const double> x) {
  const Vector mx = m * x;
  Vector p(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] * mx[i];
  return p;
}

namespace {

Vector normalized(std::span<const double> x) {
  Vector v(x.begin(), x.end());
  const double s = norm_inf(v);
  if (s > 0.0)
    for (double& e : v) e = e / s + 0.0;  // + 0.0 turns -0 into 0
  return v;
}

// Nonempty index sets in shortlex order: by cardinality, then lexicographically.
// Stops when `visit` returns false.
void for_each_index_set(std::size_t n, const std::function<bool(const IndexSet&)>& visit) {
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::size_t> cur(k);
    for (std::size_t i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
      if (!visit(IndexSet(cur))) return;
      std::size_t i = k;
      while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
}

MinorTest scan_minors(const Matrix& m, const Tolerances& tol, bool allow_zero) {
  const std::size_t n = m.size();
  if (n > kMaxMinorEnumeration)
    throw Error(ErrorCode::DimensionTooLarge, "minor enumeration limited to n <= 12");
  const double norm = m.norm_inf();
  MinorTest result{Verdict::Yes, std::nullopt, 0.0};
  for_each_index_set(n, [&](const IndexSet& a) {
    const double d = det(principal_submatrix(m, a));
    const double t = tol.minor_threshold(norm, a.size());
    const bool ok = allow_zero ? d >= -t : d > t;
    if (!ok) {
      result = {Verdict::No, a, d};
      return false;
    }
    return true;
  });
  return result;
}

std::vector<double> signs_for(std::uint64_t mask, std::size_t n) {
  // First coordinate fixed positive: x and -x give identical products.
  std::vector<double> s(n, 1.0);
  for (std::size_t i = 1; i < n; ++i)
    if (mask & (1ULL << (i - 1))) s[i] = -1.0;
  return s;
}

Matrix orthant_matrix(const Matrix& m, const std::vector<double>& s) {
  Matrix b = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) b(i, j) *= s[i] * s[j];
  return b;
}

Vector to_x(const std::vector<double>& s, const Vector& y) {
  Vector x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = s[i] * y[i];
  return normalized(x);
}

// y >= 0, B y <= 0, sum y = 1.
std::optional<Vector> orthant_reversal(const Matrix& b) {
  const std::size_t n = b.size();
  lp::Problem p;
  p.num_vars = n;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = b.row(i);
    p.constraints.push_back({Vector(r.begin(), r.end()), lp::Relation::LessEqual, 0.0});
  }
  p.constraints.push_back({Vector(n, 1.0), lp::Relation::Equal, 1.0});
  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal) return std::nullopt;
  return s.x;
}

// maximize delta: y >= 0, B y <= 0, sum y = 1, y_k >= delta, (B y)_k <= -delta.
std::optional<Vector> orthant_strict_reversal(const Matrix& b, std::size_t k) {
  const std::size_t n = b.size();
  lp::Problem p;
  p.num_vars = n + 1;
  p.objective.assign(n + 1, 0.0);
  p.objective[n] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vector c(n + 1, 0.0);
    for (std::size_t j = 0; j < n; ++j) c[j] = b(i, j);
    p.constraints.push_back({c, lp::Relation::LessEqual, 0.0});
  }
  Vector sum(n + 1, 1.0);
  sum[n] = 0.0;
  p.constraints.push_back({sum, lp::Relation::Equal, 1.0});
  Vector lower(n + 1, 0.0);
  lower[k] = -1.0;
  lower[n] = 1.0;
  p.constraints.push_back({lower, lp::Relation::LessEqual, 0.0});
  Vector upper(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) upper[j] = b(k, j);
  upper[n] = 1.0;
  p.constraints.push_back({upper, lp::Relation::LessEqual, 0.0});
  const lp::Solution s = lp::solve(p);
  if (s.status != lp::Status::Optimal || s.value <= 1e-9) return std::nullopt;
  return Vector(s.x.begin(), s.x.begin() + static_cast<std::ptrdiff_t>(n));
}

// Cleans LP round-off: coordinates far below the largest are set to zero.
Vector clean(Vector x) {
  const double s = norm_inf(x);
  for (double& v : x)
    if (std::abs(v) < 1e-12 * s) v = 0.0;
  return x;
}

std::optional<Vector> accept_strict(const Matrix& m, Vector x, const Tolerances& tol) {
  if (strictly_reverses_sign(m, x, tol)) return x;
  x = clean(std::move(x));
  if (strictly_reverses_sign(m, x, tol)) return x;
  return std::nullopt;
}

std::optional<Vector> accept_reversal(const Matrix& m, Vector x, const Tolerances& tol) {
  if (reverses_sign(m, x, tol)) return x;
  x = clean(std::move(x));
  if (reverses_sign(m, x, tol)) return x;
  return std::nullopt;
}

}  // namespace

bool reverses_sign(const Matrix& m, std::span<const double> x, const Tolerances& tol) {
  if (norm_inf(x) == 0.0) return false;
  const Vector p = reversal_products(m, normalized(x));
  const double t = tol.product(m.norm_inf());
  return std::all_of(p.begin(), p.end(), [t](double v) { return v <= t; });
}

bool strictly_reverses_sign(const Matrix& m, std::span<const double> x, const Tolerances& tol) {
  if (!reverses_sign(m, x, tol)) return false;
  const Vector p = reversal_products(m, normalized(x));
  return *std::min_element(p.begin(), p.end()) < -tol.product(m.norm_inf());
}

MinorTest is_P_minors(const Matrix& m, const Tolerances& tol) {
  return scan_minors(m, tol, false);
}

MinorTest is_P0_minors(const Matrix& m, const Tolerances& tol) {
  return scan_minors(m, tol, true);
}

Verdict is_P_submatrix_eigen(const Matrix& m, const Tolerances& tol) {
  const std::size_t n = m.size();
  if (n > kMaxSubmatrixEigen)
    throw Error(ErrorCode::DimensionTooLarge, "submatrix eigen test limited to n <= 10");
  const double t = tol.minor_threshold(m.norm_inf(), 1);
  Verdict v = Verdict::Yes;
  for_each_index_set(n, [&](const IndexSet& a) {
    for (const Complex& lambda : eigenvalues(principal_submatrix(m, a), tol).values) {
      if (tol.is_real(lambda) && lambda.real() <= t) {
        v = Verdict::No;
        return false;
      }
    }
    return true;
  });
  return v;
}

std::optional<Vector> find_reversal_witness(const Matrix& m, std::size_t budget,
                                            std::uint64_t seed, const Tolerances& tol) {
  if (budget == 0) throw Error(ErrorCode::InvalidArgument, "budget must be >= 1");
  const std::size_t n = m.size();
  if (n == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  if (n <= kMaxOrthantEnumeration) {
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask) {
      const auto s = signs_for(mask, n);
      if (auto y = orthant_reversal(orthant_matrix(m, s)))
        if (auto x = accept_reversal(m, to_x(s, *y), tol)) return x;
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t k = 0; k < budget; ++k) {
      Vector x(n);
      for (double& v : x) v = u(rng);
      if (reverses_sign(m, x, tol)) return normalized(x);
    }
    return std::nullopt;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, (1ULL << (n - 1)) - 1);
  for (std::size_t k = 0; k < budget; ++k) {
    const auto s = signs_for(pick(rng), n);
    if (auto y = orthant_reversal(orthant_matrix(m, s)))
      if (auto x = accept_reversal(m, to_x(s, *y), tol)) return x;
  }
  return std::nullopt;
}

Verdict is_Z(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (i != j && m(i, j) > 0.0) return Verdict::No;
  return Verdict::Yes;
}

Verdict is_P_via_Z_spectrum(const Matrix& m, const Tolerances& tol) {
  if (is_Z(m) != Verdict::Yes)
    throw Error(ErrorCode::PreconditionViolated, "matrix has a positive off-diagonal entry");
  return is_positive_stable(m, tol);
}

Verdict is_positive_stable(const Matrix& m, const Tolerances& tol) {
  const double t = tol.minor_threshold(m.norm_inf(), 1);
  for (const Complex& lambda : eigenvalues(m, tol).values)
    if (lambda.real() <= t) return Verdict::No;
  return Verdict::Yes;
}

VectorWitness is_column_sufficient(const Matrix& m, const SufficiencyOptions& opt,
                                   const Tolerances& tol) {
  const std::size_t n = m.size();
  if (n == 0) return {Verdict::Yes, std::nullopt};
  std::mt19937_64 rng(opt.seed);

  auto try_pair = [&](std::uint64_t mask, std::size_t k) -> std::optional<Vector> {
    const auto s = signs_for(mask, n);
    if (auto y = orthant_strict_reversal(orthant_matrix(m, s), k))
      return accept_strict(m, to_x(s, *y), tol);
    return std::nullopt;
  };

  if (n <= opt.exact_max_n && n <= kMaxOrthantEnumeration) {
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask)
      for (std::size_t k = 0; k < n; ++k)
        if (auto x = try_pair(mask, k)) return {Verdict::No, x};
    return {Verdict::Yes, std::nullopt};
  }

  // Budgeted refutation search.
  std::size_t spent = 0;
  if (n <= kMaxOrthantEnumeration) {
    std::vector<std::pair<std::uint64_t, std::size_t>> pairs;
    for (std::uint64_t mask = 0; mask < (1ULL << (n - 1)); ++mask)
      for (std::size_t k = 0; k < n; ++k) pairs.emplace_back(mask, k);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    for (const auto& [mask, k] : pairs) {
      if (spent++ >= opt.budget) break;
      if (auto x = try_pair(mask, k)) return {Verdict::No, x};
    }
  } else {
    std::uniform_int_distribution<std::uint64_t> pick(0, (1ULL << std::min<std::size_t>(n - 1, 62)) - 1);
    std::uniform_int_distribution<std::size_t> pick_k(0, n - 1);
    for (; spent < opt.budget; ++spent)
      if (auto x = try_pair(pick(rng), pick_k(rng))) return {Verdict::No, x};
  }
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t k = 0; k < opt.budget; ++k) {
    Vector x(n);
    for (double& v : x) v = u(rng);
    if (strictly_reverses_sign(m, x, tol)) return {Verdict::No, normalized(x)};
  }
  return {Verdict::Unknown, std::nullopt};
}

VectorWitness is_row_sufficient(const Matrix& m, const SufficiencyOptions& opt,
                                const Tolerances& tol) {
  return is_column_sufficient(m.transposed(), opt, tol);
}

Verdict is_sufficient(const Matrix& m, const SufficiencyOptions& opt, const Tolerances& tol) {
  return is_column_sufficient(m, opt, tol).verdict && is_row_sufficient(m, opt, tol).verdict;
}

PowersReport powers_P_check(const Matrix& m, unsigned kmax, const Tolerances& tol) {
  if (m.size() > kMaxSubmatrixEigen)
    throw Error(ErrorCode::DimensionTooLarge, "powers check limited to n <= 10");
  if (kmax == 0 || kmax > 16) throw Error(ErrorCode::InvalidArgument, "kmax must be in 1..16");
  PowersReport r;
  Matrix pk = m;
  for (unsigned k = 1; k <= kmax; ++k) {
    if (k > 1) pk = pk * m;
    r.verdicts.push_back(is_P_minors(pk, tol).verdict);
  }
  if (std::all_of(r.verdicts.begin(), r.verdicts.end(), [](Verdict v) { return v == Verdict::Yes; })) {
    const double t = tol.minor_threshold(m.norm_inf(), 1);
    const Spectrum s = eigenvalues(m, tol);
    r.all_eigenvalues_positive_real = std::all_of(
        s.values.begin(), s.values.end(),
        [&](Complex l) { return tol.is_real(l) && l.real() > t; });
  }
  return r;
}

ClassificationReport classify(const Matrix& m, const SufficiencyOptions& opt,
                              const Tolerances& tol) {
  ClassificationReport r;
  r.tolerances = tol;
  const std::size_t n = m.size();

  Verdict p = Verdict::Unknown;
  if (n <= kMaxMinorEnumeration) {
    const MinorTest mt = is_P_minors(m, tol);
    p = mt.verdict;
    r.method["P"] = "principal minors";
    if (mt.witness) r.witnesses["P"] = *mt.witness;
    const MinorTest p0 = is_P0_minors(m, tol);
    r.verdicts["P0"] = p0.verdict;
    r.method["P0"] = "principal minors";
    if (p0.witness) r.witnesses["P0"] = *p0.witness;
  } else {
    r.method["P"] = "sign-reversal search";
    if (auto x = find_reversal_witness(m, opt.budget, opt.seed, tol)) {
      p = Verdict::No;
      r.witnesses["P"] = *x;
    }
    r.verdicts["P0"] = Verdict::Unknown;
    r.method["P0"] = "not evaluated above n = 12";
  }
  r.verdicts["P"] = p;

  const Verdict z = is_Z(m);
  r.verdicts["Z"] = z;
  r.method["Z"] = "off-diagonal signs";
  if (z == Verdict::Yes) {
    r.verdicts["M"] = is_P_via_Z_spectrum(m, tol);
    r.method["M"] = "Z-matrix spectrum";
  } else {
    r.verdicts["M"] = Verdict::No;
    r.method["M"] = "not a Z-matrix";
  }

  const Spectrum s = eigenvalues(m, tol);
  const double t = tol.minor_threshold(m.norm_inf(), 1);
  r.verdicts["positive_stable"] = Verdict::Yes;
  r.method["positive_stable"] = "Hessenberg QR spectrum";
  for (const Complex& l : s.values)
    if (l.real() <= t) {
      r.verdicts["positive_stable"] = Verdict::No;
      r.witnesses["positive_stable"] = l;
      break;
    }

  const std::string suff_method =
      n <= opt.exact_max_n ? "orthant LP decision" : "budgeted orthant LP search";
  const VectorWitness cs = is_column_sufficient(m, opt, tol);
  r.verdicts["column_sufficient"] = cs.verdict;
  r.method["column_sufficient"] = suff_method;
  if (cs.witness) r.witnesses["column_sufficient"] = *cs.witness;
  const VectorWitness rs = is_row_sufficient(m, opt, tol);
  r.verdicts["row_sufficient"] = rs.verdict;
  r.method["row_sufficient"] = suff_method + " on transpose";
  if (rs.witness) r.witnesses["row_sufficient"] = *rs.witness;
  r.verdicts["sufficient"] = cs.verdict && rs.verdict;
  r.method["sufficient"] = "conjunction";
  return r;
}

}  // namespace pmkit
