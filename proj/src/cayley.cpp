#include "pmkit/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"

namespace pmkit {

namespace {

Verdict minors_verdict(const Matrix& m, const Tolerances& tol) {
  if (m.size() > kMaxMinorEnumeration) return Verdict::Unknown;
  return is_P_minors(m, tol).verdict;
}

void require_P(const Matrix& a, const Tolerances& tol) {
  if (a.size() > kMaxMinorEnumeration)
    throw Error(ErrorCode::DimensionTooLarge, "P test limited to n <= 12");
  if (is_P_minors(a, tol).verdict != Verdict::Yes)
    throw Error(ErrorCode::NotAPMatrix, "input is not a P-matrix");
}

Matrix positive_diagonal(const Matrix& d, const char* name) {
  if (!d.is_diagonal())
    throw Error(ErrorCode::NonPositiveDiagonal, std::string(name) + " is not diagonal");
  for (double v : d.diag())
    if (!(v > 0.0))
      throw Error(ErrorCode::NonPositiveDiagonal, std::string(name) + " has a non-positive entry");
  return d;
}

Matrix random_P_by_rejection(std::size_t n, std::mt19937_64& rng, const Tolerances& tol) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), diag(0.0, 1.0);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? diag(rng) : 2.0 * u(rng);
    if (is_P_minors(m, tol).verdict == Verdict::Yes) return m;
  }
  return generate({ClassTag::PDiagDom, n, rng(), 1.0});
}

// I + c C with C the cyclic shift; P for odd n and every c > 0.
Matrix cyclic_P(std::size_t n, double c) {
  Matrix m = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) m(i, (i + 1) % n) += c;
  return m;
}

}  // namespace

Matrix cayley_u(const Matrix& a, const Tolerances& tol) {
  const Matrix id = Matrix::identity(a.size());
  return solve(id + a, id - a, tol);
}

double verify_involution(const Matrix& a, const Tolerances& tol) {
  const Matrix uu = cayley_u(cayley_u(a, tol), tol);
  return (uu - a).norm_fro() / (1.0 + a.norm_fro());
}

IdentityResiduals verify_identities(const Matrix& a, const Tolerances& tol) {
  const std::size_t n = a.size();
  const Matrix id = Matrix::identity(n);
  const Matrix u = cayley_u(a, tol);
  const Matrix inv_plus = inverse(id + a, tol);
  IdentityResiduals r;
  r.plus = (id + u - 2.0 * inv_plus).norm_fro();
  if (!is_singular(a, tol)) {
    const Matrix rhs = 2.0 * inverse(id + inverse(a, tol), tol);
    r.minus = (id - u - rhs).norm_fro();
  }
  return r;
}

FactorizationResult factor_p(const Matrix& a, const Tolerances& tol) {
  require_P(a, tol);
  const std::size_t n = a.size();
  const Matrix id = Matrix::identity(n);
  FactorizationResult f;
  f.u = cayley_u(a, tol);
  f.factor_left = 0.5 * (id + a);
  f.factor_right = 2.0 * solve(id + a, a, tol);
  const double norm = a.norm_fro();
  f.residual = (f.factor_left * f.factor_right - a).norm_fro() / (norm > 0.0 ? norm : 1.0);
  f.path_residual = (inverse(id + f.u, tol) - f.factor_left).norm_fro() /
                    (1.0 + f.factor_left.norm_fro());
  f.left_is_P = minors_verdict(f.factor_left, tol);
  f.right_is_P = minors_verdict(f.factor_right, tol);
  return f;
}

ScaledFactorReport scaled_stable_factor(const Matrix& a, const Matrix& s_diag,
                                        const Matrix& t_diag, const Tolerances& tol) {
  const std::size_t n = a.size();
  if (s_diag.size() != n || t_diag.size() != n)
    throw Error(ErrorCode::InvalidArgument, "diagonal scalings must match the matrix dimension");
  const Matrix s = positive_diagonal(s_diag, "S");
  const Matrix t = positive_diagonal(t_diag, "T");
  require_P(a, tol);
  const Matrix id = Matrix::identity(n);
  const Matrix u = cayley_u(a, tol);
  ScaledFactorReport r;
  r.left = inverse((id + u) * s, tol);
  r.right = (id - u) * t;
  const Matrix target = inverse(s, tol) * a * t;
  r.residual = (r.left * r.right - target).norm_fro() / (1.0 + target.norm_fro());
  r.left_stable = is_positive_stable(r.left, tol);
  r.left_P = minors_verdict(r.left, tol);
  r.right_stable = is_positive_stable(r.right, tol);
  r.right_P = minors_verdict(r.right, tol);
  r.a_t_stable = is_positive_stable(a * t, tol);
  return r;
}

bool routh_hurwitz_positive(const Polynomial& p) {
  // Roots of p with positive real part are roots of mu^n + c1 mu^{n-1} + ... + cn
  // with negative real part.
  const std::size_t n = p.degree();
  if (n == 0) return true;
  std::vector<long double> a(p.c.begin(), p.c.end());
  std::vector<long double> prev, cur;
  for (std::size_t k = 0; k <= n; k += 2) prev.push_back(a[k]);
  for (std::size_t k = 1; k <= n; k += 2) cur.push_back(a[k]);
  if (!(prev[0] > 0)) return false;
  for (std::size_t row = 1; row <= n; ++row) {
    if (cur.empty() || !(cur[0] > 0)) return false;
    std::vector<long double> next;
    for (std::size_t j = 0; j + 1 < prev.size(); ++j) {
      const long double b = j + 1 < cur.size() ? cur[j + 1] : 0.0L;
      next.push_back((cur[0] * prev[j + 1] - prev[0] * b) / cur[0]);
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return true;
}

bool StabilityProbeLog::all_revalidated() const {
  return std::all_of(counterexamples.begin(), counterexamples.end(),
                     [](const StabilityProbeEntry& e) { return e.revalidated; });
}

StabilityProbeLog ad_stability_probe(std::size_t trials, std::uint64_t seed, std::size_t max_n,
                 const Tolerances& tol) {
  if (max_n < 2) throw Error(ErrorCode::InvalidArgument, "max_n must be >= 2");
  StabilityProbeLog log;
  log.trials = trials;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, max_n);
  std::uniform_real_distribution<double> coef(0.5, 4.0), logd(std::log(0.1), std::log(10.0));
  for (std::size_t i = 0; i < trials; ++i) {
    StabilityProbeEntry e;
    e.trial = i;
    std::size_t n = dim(rng);
    switch (i % 3) {
      case 0:
        n = (max_n >= 5 && rng() % 2 == 0) ? 5 : 3;
        e.source = "cyclic";
        e.a = cyclic_P(n, coef(rng));
        break;
      case 1:
        e.source = "rejection";
        e.a = random_P_by_rejection(n, rng, tol);
        break;
      default:
        e.source = "P-diagdom";
        e.a = generate({ClassTag::PDiagDom, n, rng(), 1.0});
        break;
    }
    e.d.resize(n);
    for (double& v : e.d) v = std::exp(logd(rng));
    const Matrix ad = e.a * Matrix::diagonal(e.d);
    const Spectrum sp = eigenvalues(ad, tol);
    e.eigenvalue = *std::min_element(sp.values.begin(), sp.values.end(),
                                     [](Complex x, Complex y) { return x.real() < y.real(); });
    const double t = tol.minor_threshold(ad.norm_inf(), 1);
    if (e.eigenvalue.real() > t) continue;
    if (e.eigenvalue.real() > -t) {
      ++log.borderline;
      continue;
    }
    e.residual = eigen_residual(ad, e.eigenvalue);
    e.routh_unstable = !routh_hurwitz_positive(charpoly(ad));
    e.revalidated = e.routh_unstable && e.residual <= 1e-6;
    log.counterexamples.push_back(std::move(e));
  }
  return log;
}

}  // namespace pmkit
