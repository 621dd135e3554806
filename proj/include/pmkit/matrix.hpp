#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pmkit {

using Vector = std::vector<double>;

/// Dense real square matrix, row-major, with finite entries.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);
  Matrix(std::size_t n, std::vector<double> row_major);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> d);
  static Matrix diagonal(std::initializer_list<double> d);

  std::size_t size() const noexcept { return n_; }
  bool empty() const noexcept { return n_ == 0; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  std::span<const double> row(std::size_t i) const { return {a_.data() + i * n_, n_}; }
  std::span<const double> data() const noexcept { return a_; }

  Matrix transposed() const;
  Vector diag() const;
  double trace() const;
  double norm_inf() const;
  double norm_fro() const;
  double max_abs() const;
  bool is_diagonal() const;
  bool all_finite() const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double norm_inf(std::span<const double> x);
double dot(std::span<const double> x, std::span<const double> y);

/// Strictly increasing, zero-based member list. Reports print members 1-based.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> members);
  explicit IndexSet(std::vector<std::size_t> members);

  static IndexSet full(std::size_t n);
  /// Members given by the set bits of `mask`.
  static IndexSet from_mask(unsigned long long mask, std::size_t n);

  std::size_t size() const noexcept { return m_.size(); }
  bool empty() const noexcept { return m_.empty(); }
  std::size_t operator[](std::size_t k) const { return m_[k]; }
  auto begin() const { return m_.begin(); }
  auto end() const { return m_.end(); }
  const std::vector<std::size_t>& members() const noexcept { return m_; }
  std::vector<std::size_t> one_based() const;
  bool contains(std::size_t i) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> m_;
};

}  // namespace pmkit
