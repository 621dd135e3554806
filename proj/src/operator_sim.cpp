#include "pmkit/operator_sim.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pmkit/errors.hpp"

namespace pmkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool dominant_positive_diagonal(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != i) off += std::abs(m(i, j));
    if (!(m(i, i) > off)) return false;
  }
  return true;
}

Verdict section_P_status(const Matrix& m, const Tolerances& tol) {
  if (dominant_positive_diagonal(m)) return Verdict::Yes;
  if (m.size() <= kMaxMinorEnumeration) return is_P_minors(m, tol).verdict;
  return Verdict::Unknown;
}

void check_order(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "section order must be >= 1");
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "section order must be <= 64");
}

// Every coordinate that is not identically zero on the kernel can be made
// nonzero simultaneously; returns such a combination when all coordinates qualify.
std::optional<Vector> strictly_nonzero_member(const std::vector<Vector>& kernel, double zero) {
  if (kernel.empty()) return std::nullopt;
  const std::size_t n = kernel[0].size();
  for (std::size_t k = 0; k < n; ++k) {
    double live = 0.0;
    for (const Vector& v : kernel) live = std::max(live, std::abs(v[k]));
    if (live <= zero) return std::nullopt;
  }
  for (int attempt = 0; attempt < 16; ++attempt) {
    Vector x(n, 0.0);
    for (std::size_t b = 0; b < kernel.size(); ++b) {
      const double w = 1.0 / std::sqrt(static_cast<double>(b + 1 + attempt * kernel.size()));
      for (std::size_t k = 0; k < n; ++k) x[k] += w * kernel[b][k];
    }
    const double s = norm_inf(x);
    for (double& v : x) v /= s;
    if (std::all_of(x.begin(), x.end(), [&](double v) { return std::abs(v) > zero; })) return x;
  }
  return std::nullopt;
}

// Real t > 0 making T + t D singular: t = s - 1/mu for real eigenvalues mu of
// (T + s D)^{-1} D. Empty when the pencil is singular for every shift tried.
std::optional<std::vector<double>> singular_shifts(const Matrix& t, const Matrix& d,
                                                   const Tolerances& tol) {
  for (double s : {1.0, 2.718281828, -1.414213562, 10.0, 0.3183098862}) {
    const Matrix base = t + s * d;
    if (is_singular(base, tol)) continue;
    const Matrix k = solve(base, d, tol);
    std::vector<double> out;
    const double kn = std::max(k.norm_inf(), 1e-300);
    for (const Complex& mu : eigenvalues(k, tol).values) {
      if (!tol.is_real(mu) || std::abs(mu.real()) <= 1e-12 * kn) continue;
      const double root = s - 1.0 / mu.real();
      if (root > 1e-12) out.push_back(root);
    }
    return out;
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Diagonal: return "diagonal";
    case OperatorKind::Banded: return "banded";
    case OperatorKind::DenseRule: return "dense-rule";
  }
  return "dense-rule";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view s) {
  if (s == "diagonal") return OperatorKind::Diagonal;
  if (s == "banded") return OperatorKind::Banded;
  if (s == "dense-rule") return OperatorKind::DenseRule;
  return std::nullopt;
}

std::string_view rule_name(const OperatorRule& r) {
  return std::visit(overloaded{
                        [](const rules::Identity&) { return std::string_view("identity"); },
                        [](const rules::InverseSquareDiagonal&) {
                          return std::string_view("inverse-square-diagonal");
                        },
                        [](const rules::Tridiag&) { return std::string_view("tridiag"); },
                        [](const rules::Hilbert&) { return std::string_view("hilbert"); },
                        [](const rules::MatrixLiteral&) { return std::string_view("matrix-literal"); },
                    },
                    r);
}

double coefficient(const OperatorSpec& spec, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) throw Error(ErrorCode::InvalidIndex, "basis indices are 1-based");
  return std::visit(
      overloaded{
          [&](const rules::Identity&) { return i == j ? 1.0 : 0.0; },
          [&](const rules::InverseSquareDiagonal& r) {
            if (i != j) return 0.0;
            if (auto it = r.overrides.find(i); it != r.overrides.end()) return it->second;
            return r.c / (static_cast<double>(i) * static_cast<double>(i));
          },
          [&](const rules::Tridiag& r) {
            if (i == j) return r.a;
            return (i + 1 == j || j + 1 == i) ? r.b : 0.0;
          },
          [&](const rules::Hilbert& r) { return r.c / static_cast<double>(i + j - 1); },
          [&](const rules::MatrixLiteral& r) {
            if (i <= r.m.size() && j <= r.m.size()) return r.m(i - 1, j - 1);
            return i == j ? 1.0 : 0.0;
          },
      },
      spec.rule);
}

bool decay_observed(const OperatorSpec& spec) {
  auto mag = [&](std::size_t k) {
    return std::max({std::abs(coefficient(spec, k, k)), std::abs(coefficient(spec, 1, k)),
                     std::abs(coefficient(spec, k, 1))});
  };
  const double head = std::max(mag(1), 1e-300);
  double prev = head;
  for (std::size_t k = 2; k <= 4096; k *= 2) {
    const double cur = mag(k);
    if (cur > prev * (1.0 + 1e-12)) return false;
    prev = cur;
  }
  return prev <= 1e-3 * head;
}

FiniteSection section(const OperatorSpec& spec, std::size_t n) {
  check_order(n);
  FiniteSection s{n, Matrix(n)};
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      const double v = coefficient(spec, i, j);
      if (!std::isfinite(v)) throw Error(ErrorCode::RuleUndefined, "rule produced a non-finite entry");
      const std::size_t dist = i > j ? i - j : j - i;
      const bool outside = (spec.kind == OperatorKind::Diagonal && dist > 0) ||
                           (spec.kind == OperatorKind::Banded && dist > 1);
      if (outside && v != 0.0)
        throw Error(ErrorCode::RuleUndefined, std::string(rule_name(spec.rule)) +
                                                  " leaves the declared " +
                                                  std::string(to_string(spec.kind)) + " band");
      s.matrix(i - 1, j - 1) = v;
    }
  return s;
}

Verdict is_P_operator_section(const OperatorSpec& spec, std::size_t n, const Tolerances& tol) {
  if (n > kMaxMinorEnumeration)
    throw Error(ErrorCode::DimensionTooLarge, "P test on sections limited to n <= 12");
  return is_P_minors(section(spec, n).matrix, tol).verdict;
}

EigenPositivityReport eigen_positivity_check(const OperatorSpec& spec,
                                             const std::vector<std::size_t>& orders,
                                             const Tolerances& tol) {
  EigenPositivityReport r;
  for (std::size_t n : orders) {
    const Matrix m = section(spec, n).matrix;
    OrderEigenReport o;
    o.order = n;
    const double t = tol.minor_threshold(m.norm_inf(), 1);
    for (const Complex& l : eigenvalues(m, tol).values) {
      if (!tol.is_real(l)) continue;
      o.real_eigenvalues.push_back(l.real());
      if (l.real() <= t) o.all_positive = false;
    }
    std::sort(o.real_eigenvalues.begin(), o.real_eigenvalues.end());
    o.section_is_P = section_P_status(m, tol);
    if (!o.all_positive && o.section_is_P == Verdict::Yes) ++r.contradictions;
    r.orders.push_back(std::move(o));
  }
  return r;
}

SqrtResult operator_sqrt(const OperatorSpec& spec, std::size_t n) {
  if (spec.kind != OperatorKind::Diagonal)
    throw Error(ErrorCode::NonDiagonalSpec, "square root needs a diagonal spec");
  const Matrix t = section(spec, n).matrix;
  Matrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t(i, i) > 0.0))
      throw Error(ErrorCode::NonPositiveEigenvalue,
                  "eigenvalue " + std::to_string(i + 1) + " is not positive");
    r(i, i) = std::sqrt(t(i, i));
  }
  SqrtResult out{{n, r}, (r * r - t).norm_inf()};
  return out;
}

bool sqrt_candidate_matches(const SqrtResult& r, const Matrix& candidate, double tol) {
  const Matrix& root = r.root.matrix;
  if (candidate.size() != root.size() || !candidate.is_diagonal()) return false;
  const Matrix t = root * root;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const double c = candidate(i, i);
    if (!(c > 0.0)) return false;
    if (std::abs(c * c - t(i, i)) > tol * (1.0 + t(i, i))) return false;
    if (std::abs(c - root(i, i)) > tol * (1.0 + root(i, i))) return false;
  }
  return true;
}

MinMaxReport minmax_rho(const Matrix& t, std::size_t samples, std::uint64_t seed) {
  const std::size_t n = t.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty section");
  // Nonnegative with a positive entry in every row keeps T x > 0 for x > 0.
  for (std::size_t i = 0; i < n; ++i) {
    double row_max = 0.0;
    for (double v : t.row(i)) {
      if (!(v >= 0.0)) throw Error(ErrorCode::NonPositiveSection, "section has a negative entry");
      row_max = std::max(row_max, v);
    }
    if (!(row_max > 0.0)) throw Error(ErrorCode::NonPositiveSection, "section has a zero row");
  }

  auto ratio_bounds = [&](const Vector& x) {
    const Vector y = t * x;
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      lo = std::min(lo, y[i] / x[i]);
      hi = std::max(hi, y[i] / x[i]);
    }
    return std::pair{lo, hi};
  };

  MinMaxReport r;
  Vector x(n, 1.0);
  constexpr std::size_t kMaxIterations = 1000000;
  for (;; ++r.iterations) {
    const auto [lo, hi] = ratio_bounds(x);
    if (hi - lo <= 1e-10 * hi) {
      r.rho = 0.5 * (lo + hi);
      break;
    }
    if (r.iterations == kMaxIterations)
      throw Error(ErrorCode::NoConvergence, "power iteration did not converge");
    Vector y = t * x;
    const double s = norm_inf(y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / s;
  }
  r.perron = x;

  const auto [plo, phi] = ratio_bounds(x);
  r.sup_inf = plo;
  r.inf_sup = phi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(std::log(0.1), std::log(10.0));
  Vector v(n);
  for (std::size_t k = 0; k < samples; ++k) {
    for (double& c : v) c = std::exp(u(rng));
    const auto [lo, hi] = ratio_bounds(v);
    r.sup_inf = std::max(r.sup_inf, lo);
    r.inf_sup = std::min(r.inf_sup, hi);
  }
  r.samples = samples + 1;
  return r;
}

MinMaxReport minmax_rho(const OperatorSpec& spec, std::size_t n, std::size_t samples,
                        std::uint64_t seed) {
  return minmax_rho(section(spec, n).matrix, samples, seed);
}

InterpReport diag_interp_check(const Matrix& s, const Matrix& t, DiagRule rule, std::size_t trials,
                               std::uint64_t seed, const Tolerances& tol) {
  const std::size_t n = t.size();
  if (s.size() != n) throw Error(ErrorCode::InvalidArgument, "S and T sections differ in size");
  if (n > kMaxMinorEnumeration)
    throw Error(ErrorCode::DimensionTooLarge, "interpolation check limited to n <= 12");
  if (is_singular(t, tol))
    throw Error(ErrorCode::PreconditionNotEstablished, "T section is singular");
  InterpReport r;
  r.case1 = is_P_minors(s * inverse(t, tol), tol).verdict == Verdict::Yes;
  r.case2 = !is_singular(s, tol) && is_P_minors(inverse(s, tol) * t, tol).verdict == Verdict::Yes;
  if (!r.case1 && !r.case2)
    throw Error(ErrorCode::PreconditionNotEstablished, "neither S T^-1 nor S^-1 T is a P-matrix");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  const Matrix id = Matrix::identity(n);
  Vector d(n);
  for (std::size_t k = 0; k < trials; ++k) {
    DiagRule mode = rule;
    if (rule == DiagRule::Mixed) mode = k % 2 == 0 ? DiagRule::Uniform : DiagRule::Binary;
    for (std::size_t i = 0; i < n; ++i) {
      if (k == 0) d[i] = 0.0;
      else if (k == 1) d[i] = 1.0;
      else if (mode == DiagRule::Binary) d[i] = coin(rng) ? 1.0 : 0.0;
      else d[i] = u(rng);
    }
    const Matrix dm = Matrix::diagonal(d);
    ++r.trials;
    auto probe = [&](const Matrix& combo) {
      ++r.checks;
      if (is_singular(combo, tol)) {
        ++r.violations;
        if (!r.violating_d) r.violating_d = d;
      }
    };
    if (r.case1) probe(dm * t + (id - dm) * s);
    if (r.case2) probe(t * dm + s * (id - dm));
  }
  return r;
}

InterpReport diag_interp_check(const OperatorSpec& s, const OperatorSpec& t, DiagRule rule,
                               std::size_t n, std::size_t trials, std::uint64_t seed,
                               const Tolerances& tol) {
  return diag_interp_check(section(s, n).matrix, section(t, n).matrix, rule, trials, seed, tol);
}

CSuffReport csufficient_kernel_search(const Matrix& t, const std::vector<double>& grid,
                                      const Tolerances& tol) {
  const std::size_t n = t.size();
  if (n > 8) throw Error(ErrorCode::DimensionTooLarge, "kernel search limited to n <= 8");
  if (std::any_of(grid.begin(), grid.end(), [](double g) { return !(g >= 0.0); }))
    throw Error(ErrorCode::InvalidArgument, "D grid values must be nonnegative");
  std::vector<double> positive;
  for (double g : grid)
    if (g > 0.0) positive.push_back(g);

  CSuffReport r;
  for (unsigned long long mask = 1; mask < (1ULL << n) && !r.refutation; ++mask) {
    const IndexSet alpha = IndexSet::from_mask(mask, n);
    const std::size_t k = alpha.size();
    const Matrix ta = principal_submatrix(t, alpha);

    std::vector<Vector> dirs;
    if (std::pow(static_cast<double>(grid.size()), static_cast<double>(k)) <= 4096.0) {
      std::vector<std::size_t> digit(k, 0);
      for (;;) {
        Vector d(k);
        for (std::size_t i = 0; i < k; ++i) d[i] = grid[digit[i]];
        if (norm_inf(d) > 0.0) dirs.push_back(std::move(d));
        std::size_t i = 0;
        while (i < k && ++digit[i] == grid.size()) digit[i++] = 0;
        if (i == k) break;
      }
    } else {
      for (double g : positive) {
        dirs.emplace_back(k, g);
        for (std::size_t i = 0; i < k; ++i) {
          Vector d(k, 0.0);
          d[i] = g;
          dirs.push_back(std::move(d));
        }
      }
    }
    Vector targeted(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) targeted[i] = std::max(0.0, -ta(i, i));
    if (norm_inf(targeted) > 0.0) dirs.push_back(targeted);

    for (const Vector& d : dirs) {
      ++r.systems;
      const Matrix dm = Matrix::diagonal(d);
      const auto shifts = singular_shifts(ta, dm, tol);
      const std::vector<double> ts = shifts ? *shifts : std::vector<double>{1.0};
      for (double s : ts) {
        const auto kernel = kernel_basis(ta + s * dm, tol);
        if (kernel.empty()) continue;
        ++r.singular;
        auto x = strictly_nonzero_member(kernel, tol.zero);
        if (x && !strictly_reverses_sign(ta, *x, tol)) x.reset();
        if (x) {
          Vector scaled(k);
          for (std::size_t i = 0; i < k; ++i) scaled[i] = s * d[i];
          r.refutation = KernelWitness{alpha, std::move(scaled), std::move(*x)};
          break;
        }
      }
      if (r.refutation) break;
    }
  }
  r.classifier = is_column_sufficient(t, {}, tol);
  r.agrees = r.refutation ? r.classifier.verdict == Verdict::No
                          : r.classifier.verdict != Verdict::No;
  return r;
}

CSuffReport csufficient_kernel_search(const OperatorSpec& spec, std::size_t n,
                                      const std::vector<double>& grid, const Tolerances& tol) {
  return csufficient_kernel_search(section(spec, n).matrix, grid, tol);
}

RevQuery rev_membership(const Matrix& t, std::span<const double> x, const Tolerances& tol) {
  if (x.size() != t.size()) throw Error(ErrorCode::InvalidArgument, "x length must equal the order");
  RevQuery q;
  q.x.assign(x.begin(), x.end());
  const Vector tx = t * x;
  q.products.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) q.products[i] = x[i] * tx[i];
  const double xn = norm_inf(x);
  const double threshold = tol.product(t.norm_inf()) * xn * xn;
  q.in_rev = std::all_of(q.products.begin(), q.products.end(),
                         [&](double p) { return p <= threshold; });
  return q;
}

RevQuery rev_membership(const OperatorSpec& spec, std::size_t n, std::span<const double> x,
                        const Tolerances& tol) {
  return rev_membership(section(spec, n).matrix, x, tol);
}

EigvecRevReport eigvec_rev_check(const Matrix& t, const Tolerances& tol) {
  EigvecRevReport r;
  r.column_sufficient = is_column_sufficient(t, {}, tol).verdict;
  if (r.column_sufficient == Verdict::No) {
    r.skipped = true;
    return r;
  }
  const std::size_t n = t.size();
  const double floor = tol.minor_threshold(t.norm_inf(), 1);
  std::vector<double> seen;
  Tolerances loose = tol;
  loose.zero = std::max(tol.zero, 1e-7);
  for (const Complex& l : eigenvalues(t, tol).values) {
    if (!tol.is_real(l) || std::abs(l.real()) <= floor) continue;
    const double lam = l.real();
    if (std::any_of(seen.begin(), seen.end(),
                    [&](double s) { return std::abs(s - lam) <= 1e-8 * (1.0 + std::abs(lam)); }))
      continue;
    seen.push_back(lam);
    ++r.eigenpairs;
    std::vector<Vector> vecs = kernel_basis(t - lam * Matrix::identity(n), loose);
    if (vecs.size() > 1) {
      Vector sum(n, 0.0);
      for (std::size_t b = 0; b < vecs.size(); ++b)
        for (std::size_t i = 0; i < n; ++i) sum[i] += vecs[b][i] / static_cast<double>(b + 1);
      vecs.push_back(std::move(sum));
    }
    for (const Vector& v : vecs) {
      ++r.vectors_checked;
      if (rev_membership(t, v, tol).in_rev) ++r.violations;
    }
  }
  return r;
}

EigvecRevReport eigvec_rev_check(const OperatorSpec& spec, std::size_t n, const Tolerances& tol) {
  return eigvec_rev_check(section(spec, n).matrix, tol);
}

}  // namespace pmkit
