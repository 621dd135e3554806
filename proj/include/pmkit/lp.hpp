#pragma once

#include <vector>

namespace pmkit::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEqual;
  double rhs = 0.0;
};

/// maximize objective . x  subject to constraints, x >= 0.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<double> objective;  // empty: pure feasibility
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule. Meant for the tiny programs
/// (tens of rows) produced by the orthant decompositions.
Solution solve(const Problem& problem, double eps = 1e-10);

}  // namespace pmkit::lp
