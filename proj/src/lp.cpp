#include "pmkit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmkit/errors.hpp"

namespace pmkit::lp {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  // Row `rows_` holds reduced costs (minimization form) and -objective value.
  double& cost(std::size_t c) { return at(rows_, c); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t r, std::size_t c) {
    const double p = at(r, c);
    for (std::size_t j = 0; j <= cols_; ++j) at(r, j) /= p;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      const double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
    }
    basis_[r] = c;
  }

  // Minimizes the cost row over columns allowed by `allowed`. Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed, double eps) {
    const std::size_t cap = 50 * (rows_ + cols_) + 1000;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && cost(j) < -eps) {
          enter = j;  // Bland: lowest index
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        const double a = at(i, enter);
        if (a <= eps) continue;
        const double ratio = rhs(i) / a;
        if (ratio < best - eps || (ratio <= best + eps && leave < rows_ && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorCode::CycleDetected, "simplex iteration cap reached");
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem, double eps) {
  const std::size_t n = problem.num_vars;
  const std::size_t m = problem.constraints.size();
  std::size_t slacks = 0;
  for (const auto& c : problem.constraints)
    if (c.rel != Relation::Equal) ++slacks;
  // Columns: structural | slack | artificial.
  const std::size_t cols = n + slacks + m;
  Tableau tab(m, cols);
  std::size_t s = n;
  for (std::size_t i = 0; i < m; ++i) {
    const Constraint& c = problem.constraints[i];
    const double sign = c.rhs < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n && j < c.coeffs.size(); ++j) tab.at(i, j) = sign * c.coeffs[j];
    if (c.rel == Relation::LessEqual) tab.at(i, s++) = sign;
    if (c.rel == Relation::GreaterEqual) tab.at(i, s++) = -sign;
    tab.rhs(i) = sign * c.rhs;
    tab.at(i, n + slacks + i) = 1.0;
    tab.basis()[i] = n + slacks + i;
  }

  // Phase 1: minimize the sum of artificials.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n + slacks || j == cols) tab.cost(j) -= tab.at(i, j);
  std::vector<bool> allowed(cols, true);
  tab.optimize(allowed, eps);

  Solution sol;
  double scale = 1.0;
  for (std::size_t i = 0; i < m; ++i) scale = std::max(scale, std::abs(problem.constraints[i].rhs));
  if (-tab.cost(cols) > 1e3 * eps * scale) {
    sol.status = Status::Infeasible;
    return sol;
  }
  // Drive remaining artificials out of the basis.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis()[i] < n + slacks) continue;
    for (std::size_t j = 0; j < n + slacks; ++j)
      if (std::abs(tab.at(i, j)) > 1e3 * eps) {
        tab.pivot(i, j);
        break;
      }
  }
  for (std::size_t j = n + slacks; j < cols; ++j) allowed[j] = false;

  // Phase 2 on the real objective, written as minimization of -objective.
  for (std::size_t j = 0; j <= cols; ++j) tab.cost(j) = 0.0;
  for (std::size_t j = 0; j < n && j < problem.objective.size(); ++j)
    tab.cost(j) = -problem.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis()[i];
    const double f = tab.cost(b);
    if (f == 0.0) continue;
    for (std::size_t j = 0; j <= cols; ++j) tab.cost(j) -= f * tab.at(i, j);
  }
  if (!tab.optimize(allowed, eps)) {
    sol.status = Status::Unbounded;
    return sol;
  }
  sol.status = Status::Optimal;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis()[i] < n) sol.x[tab.basis()[i]] = std::max(0.0, tab.rhs(i));
  sol.value = 0.0;
  for (std::size_t j = 0; j < n && j < problem.objective.size(); ++j)
    sol.value += problem.objective[j] * sol.x[j];
  return sol;
}

}  // namespace pmkit::lp
