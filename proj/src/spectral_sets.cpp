#include "pmkit/spectral_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"

namespace pmkit {

namespace {

using LComplex = std::complex<long double>;

// partner[k] = conjugate index or -1 for real members; nullopt when unpaired.
std::optional<std::vector<int>> pair_up(const std::vector<Complex>& v, const Tolerances& tol) {
  std::vector<int> partner(v.size(), -1);
  std::vector<bool> real(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) real[k] = tol.is_real(v[k]);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (real[k] || partner[k] >= 0) continue;
    std::size_t best = v.size();
    double best_d = 1e300;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j == k || real[j] || partner[j] >= 0) continue;
      const double d = std::abs(v[j] - std::conj(v[k]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == v.size() || best_d > tol.conj(v[k])) return std::nullopt;
    partner[k] = static_cast<int>(best);
    partner[best] = static_cast<int>(k);
  }
  return partner;
}

// Real coefficient expansion of prod (x + lambda_i), with the companion
// expansion over |lambda_i| used for thresholds.
struct RealExpansion {
  std::vector<long double> coef{1.0L};
  std::vector<long double> mag{1.0L};
  long double unit = 1.0L;  // image of the constant 1 under rescale()

  void multiply_linear(long double t) {  // (x + t), t > 0
    coef.push_back(0.0L);
    mag.push_back(0.0L);
    for (std::size_t k = coef.size() - 1; k >= 1; --k) {
      coef[k] += t * coef[k - 1];
      mag[k] += t * mag[k - 1];
    }
  }

  void rescale(long double f) {
    for (auto& v : coef) v *= f;
    for (auto& v : mag) v *= f;
    unit *= f;
  }

  bool strictly_positive(double minor) const {
    for (std::size_t k = 1; k < coef.size(); ++k)
      if (!(coef[k] > minor * (unit + mag[k]))) return false;
    return true;
  }
};

RealExpansion expand(const std::vector<Complex>& values, const Tolerances& tol) {
  std::vector<LComplex> p{LComplex(1.0L)};
  std::vector<long double> mag{1.0L};
  for (const Complex& l : values) {
    const LComplex lambda(l.real(), l.imag());
    const long double a = std::abs(lambda);
    p.push_back(LComplex(0.0L));
    mag.push_back(0.0L);
    for (std::size_t k = p.size() - 1; k >= 1; --k) {
      p[k] += lambda * p[k - 1];
      mag[k] += a * mag[k - 1];
    }
  }
  RealExpansion r;
  r.coef.resize(p.size());
  r.mag = mag;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (std::abs(p[k].imag()) > tol.conjugate * (1.0L + mag[k]))
      throw Error(ErrorCode::NotConjugationClosed, "imaginary residue in symmetric function");
    r.coef[k] = p[k].real();
  }
  return r;
}

void require_closed(const CandidateSpectrum& s, const Tolerances& tol) {
  if (!pair_up(s.values, tol))
    throw Error(ErrorCode::NotConjugationClosed, "non-real values must come in conjugate pairs");
}

double wedge_bound(std::size_t n) {
  return static_cast<double>(n - 1) * std::numbers::pi / static_cast<double>(n);
}

}  // namespace

bool CandidateSpectrum::closed_under_conjugation(const Tolerances& tol) const {
  return pair_up(values, tol).has_value();
}

SymmetricFunctions sigma_all(const CandidateSpectrum& s, const Tolerances& tol) {
  require_closed(s, tol);
  const RealExpansion e = expand(s.values, tol);
  SymmetricFunctions out;
  for (std::size_t k = 1; k < e.coef.size(); ++k) {
    out.sigma.push_back(static_cast<double>(e.coef[k]));
    out.scale.push_back(static_cast<double>(e.mag[k]));
  }
  return out;
}

// Long double comparison keeps large unions (thousands of members) in range.
Verdict is_P_set(const CandidateSpectrum& s, const Tolerances& tol) {
  require_closed(s, tol);
  const RealExpansion e = expand(s.values, tol);
  return e.strictly_positive(tol.minor) ? Verdict::Yes : Verdict::No;
}

Verdict is_P0_set(const CandidateSpectrum& s, const Tolerances& tol) {
  require_closed(s, tol);
  const RealExpansion e = expand(s.values, tol);
  for (std::size_t k = 1; k < e.coef.size(); ++k)
    if (!(e.coef[k] >= -tol.minor * (1.0L + e.mag[k]))) return Verdict::No;
  return Verdict::Yes;
}

WedgeReport wedge_check(const CandidateSpectrum& s, SetClass variant, const Tolerances& tol) {
  const std::size_t n = s.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty candidate set");
  require_closed(s, tol);
  WedgeReport r;
  r.bound = wedge_bound(n);
  for (const Complex& l : s.values) {
    if (variant == SetClass::P0 && std::abs(l) <= tol.minor)
      throw Error(ErrorCode::ZeroElementInP0Check, "P0 wedge bound needs nonzero members");
    // A real member carries argument exactly 0 or pi.
    const double arg = tol.is_real(l) ? (l.real() < 0 ? std::numbers::pi : 0.0)
                                      : std::abs(std::arg(l));
    r.max_arg = std::max(r.max_arg, arg);
  }
  constexpr double angle_tol = 1e-9;
  if (variant == SetClass::P) {
    // With n = 1 the bound degenerates to 0 and the statement reduces to lambda > 0.
    const bool ok = n == 1 ? r.max_arg == 0.0 : r.max_arg < r.bound;
    r.verdict = ok ? Verdict::Yes : Verdict::No;
    return r;
  }
  r.verdict = r.max_arg <= r.bound + angle_tol ? Verdict::Yes : Verdict::No;
  r.equality_attained = std::abs(r.max_arg - r.bound) <= angle_tol;
  const SymmetricFunctions f = sigma_all(s, tol);
  bool cond = f.sigma.back() > tol.minor * (1.0 + f.scale.back());
  for (std::size_t k = 0; k + 1 < n; ++k)
    cond = cond && std::abs(f.sigma[k]) <= tol.minor * (1.0 + f.scale[k]);
  r.equality_sigma_condition = cond;
  return r;
}

void WedgeTally::record(const Spectrum& s) {
  const std::size_t n = s.size();
  if (n == 0) return;
  ++matrices;
  const double bound = wedge_bound(n);
  for (const Complex& l : s.values) {
    ++eigenvalues;
    const double arg = std::abs(std::arg(l));
    const double margin = n == 1 ? (l.real() > 0 ? 0.0 : -1.0) : bound - arg;
    min_margin = std::min(min_margin, margin);
    if (n == 1 ? l.real() <= 0.0 : !(arg < bound)) ++violations;
  }
}

std::optional<Augmentation> augment_to_P_set(const CandidateSpectrum& c, const AugmentOptions& opt,
                                             const Tolerances& tol) {
  if (!pair_up(c.values, tol))
    throw Error(ErrorCode::PreconditionViolated, "unpaired complex value");
  for (const Complex& l : c.values)
    if (tol.is_real(l) && !(l.real() > 0.0))
      throw Error(ErrorCode::PreconditionViolated, "real members must be positive");

  auto finish = [&](std::vector<double> adds) -> std::optional<Augmentation> {
    CandidateSpectrum u = c;
    for (double t : adds) u.values.emplace_back(t, 0.0);
    if (is_P_set(u, tol) != Verdict::Yes) return std::nullopt;
    return Augmentation{std::move(adds), sigma_all(u, tol)};
  };
  if (c.values.empty() || is_P_set(c, tol) == Verdict::Yes) return finish({});

  double radius = 0.0;
  for (const Complex& l : c.values) radius = std::max(radius, std::abs(l));
  std::vector<Complex> normalized;
  for (const Complex& l : c.values) normalized.push_back(l / radius);
  const RealExpansion base = expand(normalized, tol);

  // Grid in original units: steps of 0.25 up to 4R, then geometric tails.
  std::vector<double> grid;
  const double top = std::max(4.0 * radius, 1.0);
  for (double t = 0.25; t <= top + 1e-12; t += 0.25) grid.push_back(t);
  for (double t = 0.25 * 0.7; t >= 1e-3 * radius; t *= 0.7) grid.push_back(t);
  for (double t = top * 1.3; t <= 1e3 * radius; t *= 1.3) grid.push_back(t);

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> log_u(std::log(1e-2), std::log(1e2));
  constexpr std::size_t kRandomUpTo = 24;

  // equal[g] holds base * (x + grid[g]/R)^m for the current m.
  const std::size_t small = std::min(opt.max_additions, kRandomUpTo);
  std::vector<RealExpansion> equal(grid.size(), base);
  for (std::size_t m = 1; m <= small; ++m) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      equal[g].multiply_linear(grid[g] / radius);
      if (equal[g].strictly_positive(tol.minor))
        if (auto a = finish(std::vector<double>(m, grid[g]))) return a;
    }
    for (std::size_t trial = 0; trial < opt.random_trials; ++trial) {
      std::vector<double> adds(m);
      for (double& t : adds) t = std::exp(log_u(rng)) * radius;
      std::sort(adds.begin(), adds.end());
      RealExpansion e = base;
      for (double t : adds) e.multiply_linear(t / radius);
      if (e.strictly_positive(tol.minor))
        if (auto a = finish(adds)) return a;
    }
  }

  // Large counts: equal copies on a coarse geometric grid. Positivity is kept
  // under further multiplication, so the first hit per x is minimal for that x.
  std::size_t best_m = opt.max_additions + 1;
  double best_x = 0.0;
  std::vector<double> coarse;
  for (double x = 0.05 * radius; x <= 20.0 * radius; x *= 1.25) coarse.push_back(x);
  // Values near the radius first so the pruning bound tightens early.
  std::sort(coarse.begin(), coarse.end(), [&](double a, double b) {
    return std::abs(std::log(a / radius)) < std::abs(std::log(b / radius));
  });
  for (double x : coarse) {
    RealExpansion e = base;
    for (std::size_t m = 1; m < best_m; ++m) {
      e.multiply_linear(x / radius);
      e.rescale(1.0L / (1.0L + x / radius));
      if (m > small && e.strictly_positive(tol.minor)) {
        best_m = m;
        best_x = x;
        break;
      }
    }
  }
  for (; best_m <= opt.max_additions; ++best_m)
    if (auto a = finish(std::vector<double>(best_m, best_x))) return a;
  return std::nullopt;
}

namespace {

Matrix real_block_form(const CandidateSpectrum& s, const std::vector<int>& partner) {
  const std::size_t n = s.size();
  Matrix b(n);
  std::vector<bool> placed(n, false);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (placed[k]) continue;
    if (partner[k] < 0) {
      b(pos, pos) = s.values[k].real();
      ++pos;
    } else {
      const double a = s.values[k].real();
      const double w = std::abs(s.values[k].imag());
      b(pos, pos) = a;
      b(pos, pos + 1) = w;
      b(pos + 1, pos) = -w;
      b(pos + 1, pos + 1) = a;
      pos += 2;
      placed[static_cast<std::size_t>(partner[k])] = true;
    }
    placed[k] = true;
  }
  return b;
}

// Smallest principal minor relative to its positivity threshold; > 1 means P.
double p_margin(const Matrix& m, const Tolerances& tol) {
  const std::size_t n = m.size();
  const double norm = m.norm_inf();
  double worst = 1e300;
  for (unsigned long long mask = 1; mask < (1ULL << n); ++mask) {
    const IndexSet a = IndexSet::from_mask(mask, n);
    const double d = det(principal_submatrix(m, a));
    worst = std::min(worst, d / tol.minor_threshold(norm, a.size()));
  }
  return worst;
}

}  // namespace

std::optional<Matrix> realize_P_set(const CandidateSpectrum& s, std::size_t budget,
                                    std::uint64_t seed, const Tolerances& tol) {
  const std::size_t n = s.size();
  if (n > kMaxMinorEnumeration)
    throw Error(ErrorCode::DimensionTooLarge, "realization limited to n <= 12");
  if (is_P_set(s, tol) != Verdict::Yes) throw Error(ErrorCode::NotAPSet, "some sigma_k <= 0");
  const auto partner = pair_up(s.values, tol);
  double radius = 0.0;
  for (const Complex& l : s.values) radius = std::max(radius, std::abs(l));

  auto accept = [&](const Matrix& m) {
    if (is_P_minors(m, tol).verdict != Verdict::Yes) return false;
    return spectrum_distance(eigenvalues(m, tol).values, s.values) <= 1e-6 * (1.0 + radius);
  };

  const Matrix b = real_block_form(s, *partner);
  if (accept(b)) return b;

  std::mt19937_64 rng(seed);
  Matrix best_t = Matrix::identity(n);
  double best_margin = -1e300;
  const std::size_t random_phase = (budget + 1) / 2;
  for (std::size_t k = 0; k < random_phase; ++k) {
    const Matrix q = random_orthogonal(n, rng);
    const Matrix m = q * b * q.transposed();
    if (accept(m)) return m;
    const double margin = p_margin(m, tol);
    if (margin > best_margin) {
      best_margin = margin;
      best_t = q;
    }
  }
  // Hill-climb over general similarities T B T^-1 starting from the best rotation.
  std::normal_distribution<double> g(0.0, 1.0);
  double step = 0.3;
  for (std::size_t k = random_phase; k < budget; ++k) {
    Matrix t = best_t;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) += step * g(rng);
    Matrix m;
    try {
      m = t * b * inverse(t, tol);
    } catch (const Error&) {
      continue;
    }
    if (!m.all_finite()) continue;
    if (accept(m)) return m;
    const double margin = p_margin(m, tol);
    if (margin > best_margin) {
      best_margin = margin;
      best_t = t;
    } else {
      step = std::max(step * 0.98, 1e-3);
    }
  }
  return std::nullopt;
}

ExtremalReport extremal_spectrum_search(std::size_t n, std::size_t budget, std::uint64_t seed,
                                        const Tolerances& tol) {
  if (n < 2 || n > 8) throw Error(ErrorCode::InvalidArgument, "extremal search needs 2 <= n <= 8");
  ExtremalReport r;
  r.n = n;
  if (budget == 0) return r;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-1.0, 1.0), on(0.05, 1.0);
  std::normal_distribution<double> g(0.0, 0.15);
  std::pair<std::size_t, double> best_score{0, 0.0};

  auto score = [&](const Spectrum& s) {
    std::size_t lhp = 0;
    double arg = 0.0;
    for (const Complex& l : s.values) {
      if (l.real() < 0.0) ++lhp;
      arg = std::max(arg, std::abs(std::arg(l)));
    }
    return std::pair{lhp, arg};
  };

  for (std::size_t k = 0; k < budget; ++k) {
    Matrix m(n);
    if (!r.best || k % 2 == 0) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = i == j ? on(rng) : off(rng);
    } else {
      m = *r.best;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += g(rng);
    }
    ++r.evaluated;
    if (is_P_minors(m, tol).verdict != Verdict::Yes) continue;
    ++r.p_matrices;
    const Spectrum s = eigenvalues(m, tol);
    r.wedge.record(s);
    const auto [lhp, arg] = score(s);
    r.max_abs_arg = std::max(r.max_abs_arg, arg);
    if (!r.best || std::pair{lhp, arg} >= best_score) {
      r.best = m;
      best_score = {lhp, arg};
      r.max_left_half_plane = std::max(r.max_left_half_plane, lhp);
    }
  }
  return r;
}

}  // namespace pmkit
