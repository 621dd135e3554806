#include "pmkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pmkit/errors.hpp"

namespace pmkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NotConjugationClosed: return "NotConjugationClosed";
    case ErrorCode::ZeroElementInP0Check: return "ZeroElementInP0Check";
    case ErrorCode::NotAPSet: return "NotAPSet";
    case ErrorCode::NotAPMatrix: return "NotAPMatrix";
    case ErrorCode::NonPositiveDiagonal: return "NonPositiveDiagonal";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::RuleUndefined: return "RuleUndefined";
    case ErrorCode::NonDiagonalSpec: return "NonDiagonalSpec";
    case ErrorCode::NonPositiveEigenvalue: return "NonPositiveEigenvalue";
    case ErrorCode::NonPositiveSection: return "NonPositiveSection";
    case ErrorCode::PreconditionNotEstablished: return "PreconditionNotEstablished";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t n, double fill) : n_(n), a_(n * n, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : n_(rows.size()) {
  a_.reserve(n_ * n_);
  for (const auto& r : rows) {
    if (r.size() != n_) throw Error(ErrorCode::InvalidMatrix, "rows must have length n");
    a_.insert(a_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorCode::InvalidMatrix, "entries must be finite");
}

Matrix::Matrix(std::size_t n, std::vector<double> row_major) : n_(n), a_(std::move(row_major)) {
  if (a_.size() != n_ * n_) throw Error(ErrorCode::InvalidMatrix, "entry count must be n*n");
  if (!all_finite()) throw Error(ErrorCode::InvalidMatrix, "entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::diagonal(std::initializer_list<double> d) {
  return diagonal(std::span<const double>(d.begin(), d.size()));
}

Matrix Matrix::transposed() const {
  Matrix t(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Vector Matrix::diag() const {
  Vector d(n_);
  for (std::size_t i = 0; i < n_; ++i) d[i] = (*this)(i, i);
  return d;
}

double Matrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (double v : row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double Matrix::norm_fro() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

double Matrix::max_abs() const {
  double s = 0.0;
  for (double v : a_) s = std::max(s, std::abs(v));
  return s;
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && (*this)(i, j) != 0.0) return false;
  return true;
}

bool Matrix::all_finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.n_ != n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.n_ != n_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (x.size() != a.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  Vector y(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double norm_inf(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

// -------------------------------------------------------------- IndexSet

IndexSet::IndexSet(std::initializer_list<std::size_t> members)
    : IndexSet(std::vector<std::size_t>(members)) {}

IndexSet::IndexSet(std::vector<std::size_t> members) : m_(std::move(members)) {
  for (std::size_t k = 1; k < m_.size(); ++k)
    if (m_[k] <= m_[k - 1])
      throw Error(ErrorCode::InvalidIndex, "index set members must be strictly increasing");
}

IndexSet IndexSet::full(std::size_t n) {
  std::vector<std::size_t> m(n);
  std::iota(m.begin(), m.end(), std::size_t{0});
  return IndexSet(std::move(m));
}

IndexSet IndexSet::from_mask(unsigned long long mask, std::size_t n) {
  std::vector<std::size_t> m;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (1ULL << i)) m.push_back(i);
  return IndexSet(std::move(m));
}

std::vector<std::size_t> IndexSet::one_based() const {
  std::vector<std::size_t> out(m_);
  for (auto& v : out) ++v;
  return out;
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(m_.begin(), m_.end(), i);
}

// ------------------------------------------------------------- Spectrum

Complex Spectrum::product() const {
  Complex p{1.0, 0.0};
  for (auto v : values) p *= v;
  return p;
}

Complex Spectrum::sum() const {
  Complex s{0.0, 0.0};
  for (auto v : values) s += v;
  return s;
}

// ------------------------------------------------------------------ LU

LuFactors lu_factor(const Matrix& m, const Tolerances& tol) {
  const std::size_t n = m.size();
  LuFactors f{m, std::vector<std::size_t>(n), 1, std::numeric_limits<double>::infinity(), false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  const double threshold = tol.sing(m.norm_inf());
  Matrix& a = f.lu;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(f.perm[k], f.perm[p]);
      f.sign = -f.sign;
    }
    const double pivot = a(k, k);
    f.min_pivot = std::min(f.min_pivot, std::abs(pivot));
    if (std::abs(pivot) <= threshold) {
      f.singular = true;
      if (pivot == 0.0) continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / pivot;
      a(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
    }
  }
  if (n == 0) f.min_pivot = 0.0;
  return f;
}

double det(const Matrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1.0;
  // A zero pivot means exact singularity; the threshold only flags near-singularity.
  Tolerances exact;
  exact.singular = 0.0;
  const LuFactors f = lu_factor(m, exact);
  double d = f.sign;
  for (std::size_t i = 0; i < n; ++i) d *= f.lu(i, i);
  return d;
}

namespace {

Vector lu_solve(const LuFactors& f, std::span<const double> b) {
  const std::size_t n = f.lu.size();
  Vector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
    x[i] /= f.lu(i, i);
  }
  return x;
}

}  // namespace

bool is_singular(const Matrix& m, const Tolerances& tol) {
  return m.size() > 0 && lu_factor(m, tol).singular;
}

Vector solve(const Matrix& m, std::span<const double> b, const Tolerances& tol) {
  if (b.size() != m.size()) throw Error(ErrorCode::InvalidArgument, "rhs length mismatch");
  const LuFactors f = lu_factor(m, tol);
  if (f.singular) throw Error(ErrorCode::Singular, "pivot below tolerance during elimination");
  return lu_solve(f, b);
}

Matrix solve(const Matrix& m, const Matrix& b, const Tolerances& tol) {
  const std::size_t n = m.size();
  if (b.size() != n) throw Error(ErrorCode::InvalidArgument, "rhs dimension mismatch");
  const LuFactors f = lu_factor(m, tol);
  if (f.singular) throw Error(ErrorCode::Singular, "pivot below tolerance during elimination");
  Matrix x(n);
  Vector col(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    const Vector xj = lu_solve(f, col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = xj[i];
  }
  return x;
}

Matrix inverse(const Matrix& m, const Tolerances& tol) {
  return solve(m, Matrix::identity(m.size()), tol);
}

// ---------------------------------------------------------- eigenvalues

namespace {

// Householder reduction to upper Hessenberg form, in place.
void reduce_to_hessenberg(Matrix& h) {
  const std::size_t n = h.size();
  if (n < 3) return;
  Vector ort(n, 0.0);
  for (std::size_t m = 1; m + 1 < n; ++m) {
    double scale = 0.0;
    for (std::size_t i = m; i < n; ++i) scale += std::abs(h(i, m - 1));
    if (scale == 0.0) continue;
    double hh = 0.0;
    for (std::size_t i = n; i-- > m;) {
      ort[i] = h(i, m - 1) / scale;
      hh += ort[i] * ort[i];
    }
    double g = std::sqrt(hh);
    if (ort[m] > 0) g = -g;
    hh -= ort[m] * g;
    ort[m] -= g;
    for (std::size_t j = m; j < n; ++j) {
      double f = 0.0;
      for (std::size_t i = n; i-- > m;) f += ort[i] * h(i, j);
      f /= hh;
      for (std::size_t i = m; i < n; ++i) h(i, j) -= f * ort[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0.0;
      for (std::size_t j = n; j-- > m;) f += ort[j] * h(i, j);
      f /= hh;
      for (std::size_t j = m; j < n; ++j) h(i, j) -= f * ort[j];
    }
    ort[m] *= scale;
    h(m, m - 1) = scale * g;
    for (std::size_t i = m + 1; i < n; ++i) h(i, m - 1) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix (values only).
// Indices inside are 1-based to keep the deflation bookkeeping readable.
void hessenberg_qr(Matrix& hm, Vector& wr, Vector& wi) {
  const int n = static_cast<int>(hm.size());
  auto a = [&hm](int i, int j) -> double& { return hm(i - 1, j - 1); };
  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 30 * n;
  int sweeps = 0;

  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::abs(a(i, j));

  int nn = n;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        wr[nn - 1] = x + t;
        wi[nn - 1] = 0.0;
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wr[nn - 2] = wr[nn - 1] = x + z;
            if (z != 0.0) wr[nn - 1] = x - w / z;
            wi[nn - 2] = wi[nn - 1] = 0.0;
          } else {
            wr[nn - 2] = wr[nn - 1] = x + p;
            wi[nn - 2] = z;
            wi[nn - 1] = -z;
          }
          nn -= 2;
        } else {
          if (++sweeps > max_sweeps)
            throw Error(ErrorCode::NoConvergence, "QR iteration exceeded 30*n sweeps");
          if (its == 10 || its == 20) {
            // exceptional shift
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) +
                                      std::abs(a(m + 1, m + 1)));
            if (u <= eps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k != nn - 1) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k != nn - 1) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = std::min(nn, k + 3);
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k != nn - 1) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (nn >= 1 && l < nn - 1);
  }
}

}  // namespace

Spectrum eigenvalues(const Matrix& m, const Tolerances& tol) {
  const std::size_t n = m.size();
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "eigenvalues: n > 64");
  Spectrum spec;
  if (n == 0) return spec;
  Matrix h = m;
  reduce_to_hessenberg(h);
  Vector wr(n, 0.0), wi(n, 0.0);
  hessenberg_qr(h, wr, wi);

  spec.values.resize(n);
  spec.partner.assign(n, -1);
  for (std::size_t k = 0; k < n; ++k) spec.values[k] = {wr[k], wi[k]};
  // Pairs come out adjacent as (a+bi, a-bi); snap them to exact conjugates.
  for (std::size_t k = 0; k < n; ++k) {
    if (spec.values[k].imag() == 0.0 || spec.partner[k] >= 0) continue;
    std::size_t best = n;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k || spec.partner[j] >= 0 || spec.values[j].imag() == 0.0) continue;
      const double d = std::abs(spec.values[j] - std::conj(spec.values[k]));
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    if (best == n || best_d > tol.conj(spec.values[k]))
      throw Error(ErrorCode::NoConvergence, "unpaired complex eigenvalue");
    const Complex mid = 0.5 * (spec.values[k] + std::conj(spec.values[best]));
    spec.values[k] = mid;
    spec.values[best] = std::conj(mid);
    spec.partner[k] = static_cast<int>(best);
    spec.partner[best] = static_cast<int>(k);
  }

  // Sampled residual check: first, middle and last eigenvalue.
  for (std::size_t k : {std::size_t{0}, n / 2, n - 1}) {
    if (eigen_residual(m, spec.values[k]) > 1e-6)
      throw Error(ErrorCode::NoConvergence, "eigenvalue residual check failed");
  }
  return spec;
}

Complex complex_det(std::vector<Complex> a, std::size_t n) {
  Complex d{1.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a[i * n + k]) > std::abs(a[p * n + k])) p = i;
    if (a[p * n + k] == Complex{}) return {};
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      d = -d;
    }
    const Complex pivot = a[k * n + k];
    d *= pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex l = a[i * n + k] / pivot;
      for (std::size_t j = k + 1; j < n; ++j) a[i * n + j] -= l * a[k * n + j];
    }
  }
  return d;
}

double eigen_residual(const Matrix& m, Complex lambda) {
  const std::size_t n = m.size();
  const double scale = m.norm_inf() + std::abs(lambda);
  if (n == 0 || scale == 0.0) return 0.0;
  std::vector<Complex> a(n * n);
  // Scale to unit size so the determinant neither overflows nor underflows.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i * n + j] = (Complex(m(i, j)) - (i == j ? lambda : Complex{})) / scale;
  return std::abs(complex_det(std::move(a), n));
}

Polynomial charpoly(const Matrix& m) {
  const std::size_t n = m.size();
  if (n > kMaxDimension) throw Error(ErrorCode::DimensionTooLarge, "charpoly: n > 64");
  Polynomial p;
  p.c.assign(n + 1, 0.0);
  p.c[0] = 1.0;
  // Standard form lambda^n + a1 lambda^(n-1) + ... ; c_k = (-1)^k a_k.
  Matrix mk = Matrix::identity(n);
  double ak = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    if (k > 1) {
      mk = m * mk;
      for (std::size_t i = 0; i < n; ++i) mk(i, i) += ak;
    }
    const Matrix amk = m * mk;
    ak = -amk.trace() / static_cast<double>(k);
    p.c[k] = (k % 2 == 0) ? ak : -ak;
  }
  return p;
}

Matrix principal_submatrix(const Matrix& m, const IndexSet& a) {
  for (std::size_t i : a)
    if (i >= m.size()) throw Error(ErrorCode::InvalidIndex, "index outside 1..n");
  Matrix s(a.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c) s(r, c) = m(a[r], a[c]);
  return s;
}

Matrix power(const Matrix& m, unsigned k) {
  Matrix r = Matrix::identity(m.size());
  for (unsigned i = 0; i < k; ++i) r = r * m;
  return r;
}

std::vector<Vector> kernel_basis(const Matrix& m, const Tolerances& tol) {
  const std::size_t n = m.size();
  std::vector<Vector> basis;
  if (n == 0) return basis;
  Matrix a = m;
  std::vector<std::size_t> col(n);
  std::iota(col.begin(), col.end(), std::size_t{0});
  const double threshold = tol.zero * std::max(m.norm_inf(), std::numeric_limits<double>::min());
  std::size_t rank = 0;
  for (; rank < n; ++rank) {
    // complete pivoting
    std::size_t pr = rank, pc = rank;
    double best = 0.0;
    for (std::size_t i = rank; i < n; ++i)
      for (std::size_t j = rank; j < n; ++j)
        if (std::abs(a(i, j)) > best) {
          best = std::abs(a(i, j));
          pr = i;
          pc = j;
        }
    if (best <= threshold) break;
    for (std::size_t j = 0; j < n; ++j) std::swap(a(rank, j), a(pr, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, rank), a(i, pc));
    std::swap(col[rank], col[pc]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      const double l = a(i, rank) / a(rank, rank);
      for (std::size_t j = rank; j < n; ++j) a(i, j) -= l * a(rank, j);
    }
  }
  for (std::size_t f = rank; f < n; ++f) {
    Vector y(n, 0.0);
    y[f] = 1.0;
    for (std::size_t i = rank; i-- > 0;) {
      double s = 0.0;
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * y[j];
      y[i] = -s / a(i, i);
    }
    Vector x(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) x[col[k]] = y[k];
    const double s = norm_inf(x);
    for (double& v : x) v /= s;
    basis.push_back(std::move(x));
  }
  return basis;
}

double spectrum_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    used[best] = true;
    worst = std::max(worst, best_d);
  }
  return worst;
}

}  // namespace pmkit
