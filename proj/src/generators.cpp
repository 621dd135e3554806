#include "pmkit/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/linalg.hpp"

namespace pmkit {

namespace {

constexpr std::array<std::pair<ClassTag, std::string_view>, 7> kTagNames{{
    {ClassTag::PDiagDom, "P-diagdom"},
    {ClassTag::MMatrix, "M-matrix"},
    {ClassTag::SymPD, "sym-PD"},
    {ClassTag::Z, "Z"},
    {ClassTag::PSD, "PSD"},
    {ClassTag::NonP, "non-P"},
    {ClassTag::Arbitrary, "arbitrary"},
}};

bool strictly_diagonally_dominant(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (j != i) off += std::abs(m(i, j));
    if (!(m(i, i) > off)) return false;
  }
  return true;
}

bool symmetric(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

double min_real_eigenvalue(const Matrix& m) {
  double lo = 1e300;
  for (const Complex& l : eigenvalues(m).values) lo = std::min(lo, l.real());
  return lo;
}

Matrix diag_dominant(std::size_t n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> off(-1.0, 1.0), margin(0.1, 1.0);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      m(i, j) = scale * off(rng);
      sum += std::abs(m(i, j));
    }
    m(i, i) = sum + scale * margin(rng);
  }
  return m;
}

// G^T G with G of shape rows x n and entries of order 1/sqrt(n).
Matrix gram(std::size_t rows, std::size_t n, double scale, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> g(rows * n);
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : g) v = s * u(rng);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < rows; ++k) acc += g[k * n + i] * g[k * n + j];
      m(i, j) = m(j, i) = scale * acc;
    }
  return m;
}

void validate(const GenSpec& g, const Matrix& m) {
  const std::size_t n = m.size();
  const bool small = n <= kMaxMinorEnumeration;
  bool ok = m.all_finite();
  switch (g.tag) {
    case ClassTag::PDiagDom:
      ok = ok && (small ? is_P_minors(m).verdict == Verdict::Yes : strictly_diagonally_dominant(m));
      break;
    case ClassTag::MMatrix:
      ok = ok && is_Z(m) == Verdict::Yes && is_P_via_Z_spectrum(m) == Verdict::Yes &&
           (!small || is_P_minors(m).verdict == Verdict::Yes);
      break;
    case ClassTag::SymPD:
      ok = ok && symmetric(m) &&
           (small ? is_P_minors(m).verdict == Verdict::Yes : min_real_eigenvalue(m) > 0.0);
      break;
    case ClassTag::Z:
      ok = ok && is_Z(m) == Verdict::Yes;
      break;
    case ClassTag::PSD:
      ok = ok && symmetric(m) && min_real_eigenvalue(m) >= -1e-10 * (1.0 + m.norm_inf());
      break;
    case ClassTag::NonP: {
      if (small) {
        const MinorTest t = is_P_minors(m);
        ok = ok && t.verdict == Verdict::No && t.witness && t.witness->size() == 1;
      } else {
        const Vector d = m.diag();
        ok = ok && std::any_of(d.begin(), d.end(), [](double v) { return v < 0.0; });
      }
      break;
    }
    case ClassTag::Arbitrary:
      break;
  }
  if (!ok)
    throw Error(ErrorCode::ValidationFailed,
                "generated " + std::string(to_string(g.tag)) + " matrix failed its class oracle");
}

}  // namespace

std::string_view to_string(ClassTag tag) {
  for (const auto& [t, name] : kTagNames)
    if (t == tag) return name;
  return "unknown";
}

std::optional<ClassTag> parse_class_tag(std::string_view name) {
  for (const auto& [t, n] : kTagNames)
    if (n == name) return t;
  return std::nullopt;
}

Matrix random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Vector> cols(n, Vector(n));
  for (auto& c : cols)
    for (double& v : c) v = g(rng);
  // Modified Gram-Schmidt; the implicit R has a positive diagonal.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      const double r = dot(cols[j], cols[k]);
      for (std::size_t i = 0; i < n; ++i) cols[k][i] -= r * cols[j][i];
    }
    const double norm = std::sqrt(dot(cols[k], cols[k]));
    for (double& v : cols[k]) v /= norm;
  }
  Matrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = cols[j][i];
  return q;
}

Matrix generate(const GenSpec& g) {
  const std::size_t n = g.n;
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "n must be <= 64");
  if (!(g.scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "scale must be positive");
  std::mt19937_64 rng(g.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n);
  switch (g.tag) {
    case ClassTag::PDiagDom:
      m = diag_dominant(n, g.scale, rng);
      break;
    case ClassTag::MMatrix: {
      std::uniform_real_distribution<double> pos(0.0, 1.0), shift(0.5, 2.0);
      Matrix b(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = g.scale * pos(rng);
      double rho = 0.0;
      for (const Complex& l : eigenvalues(b).values) rho = std::max(rho, std::abs(l));
      const double s = rho + g.scale * shift(rng);
      m = s * Matrix::identity(n) - b;
      break;
    }
    case ClassTag::SymPD:
      m = gram(n, n, g.scale, rng);
      for (std::size_t i = 0; i < n; ++i) m(i, i) += 0.5 * g.scale;
      break;
    case ClassTag::Z: {
      std::uniform_real_distribution<double> off(-1.0, 0.0), on(-1.0, 2.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = g.scale * (i == j ? on(rng) : off(rng));
      break;
    }
    case ClassTag::PSD: {
      std::uniform_int_distribution<std::size_t> rank(1, n);
      m = gram(rank(rng), n, g.scale, rng);
      break;
    }
    case ClassTag::NonP: {
      m = diag_dominant(n, g.scale, rng);
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      const std::size_t k = pick(rng);
      m(k, k) = -m(k, k);
      break;
    }
    case ClassTag::Arbitrary:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = g.scale * u(rng);
      break;
  }
  validate(g, m);
  return m;
}

}  // namespace pmkit
