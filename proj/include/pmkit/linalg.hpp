#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pmkit/matrix.hpp"
#include "pmkit/tolerances.hpp"

namespace pmkit {

using Complex = std::complex<double>;

inline constexpr std::size_t kMaxDimension = 64;

/// Eigenvalues with their conjugate pairing. partner[k] is the index of the
/// conjugate of values[k], or -1 when values[k] is real.
struct Spectrum {
  std::vector<Complex> values;
  std::vector<int> partner;

  std::size_t size() const noexcept { return values.size(); }
  Complex product() const;
  Complex sum() const;
};

/// Monic characteristic polynomial lambda^n - c1 lambda^(n-1) + c2 lambda^(n-2) - ...
/// stored as c[0] = 1, c[1..n]; c[k] is the k-th elementary symmetric
/// function of the eigenvalues.
struct Polynomial {
  std::vector<double> c;

  std::size_t degree() const noexcept { return c.empty() ? 0 : c.size() - 1; }
};

/// Result of an LU factorization with partial pivoting, PA = LU packed in `lu`.
struct LuFactors {
  Matrix lu;
  std::vector<std::size_t> perm;
  int sign = 1;
  double min_pivot = 0.0;
  bool singular = false;
};

LuFactors lu_factor(const Matrix& m, const Tolerances& tol = {});

double det(const Matrix& m);
Vector solve(const Matrix& m, std::span<const double> b, const Tolerances& tol = {});
/// Solves m X = b column by column.
Matrix solve(const Matrix& m, const Matrix& b, const Tolerances& tol = {});
Matrix inverse(const Matrix& m, const Tolerances& tol = {});
bool is_singular(const Matrix& m, const Tolerances& tol = {});

/// Hessenberg reduction followed by Francis double-shift QR with deflation.
Spectrum eigenvalues(const Matrix& m, const Tolerances& tol = {});
/// Faddeev-LeVerrier trace recursion.
Polynomial charpoly(const Matrix& m);

Matrix principal_submatrix(const Matrix& m, const IndexSet& a);
Matrix power(const Matrix& m, unsigned k);

/// |det(m - lambda I)| scaled by (||m||_inf + |lambda|)^n; small for eigenvalues.
double eigen_residual(const Matrix& m, Complex lambda);
Complex complex_det(std::vector<Complex> a, std::size_t n);

/// Orthonormal-free kernel basis via column-pivoted elimination; columns whose
/// pivot falls below tol.zero * ||m||_inf are treated as free.
std::vector<Vector> kernel_basis(const Matrix& m, const Tolerances& tol = {});

/// Pairs a with b as multisets by greedy nearest matching; returns the largest
/// matched distance, or +inf if sizes differ.
double spectrum_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace pmkit
