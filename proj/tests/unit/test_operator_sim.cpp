#include "doctest.h"
#include "pmkit/errors.hpp"
#include "pmkit/operator_sim.hpp"

using namespace pmkit;

namespace {

OperatorSpec inverse_square(double c = 1.0) {
  return {OperatorKind::Diagonal, rules::InverseSquareDiagonal{c, {}}, true};
}
const OperatorSpec kIdentity{OperatorKind::Diagonal, rules::Identity{}, false};
const OperatorSpec kTridiag{OperatorKind::Banded, rules::Tridiag{2.0, -1.0}, false};

OperatorSpec literal(Matrix m) { return {OperatorKind::DenseRule, rules::MatrixLiteral{std::move(m)}, false}; }

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("sections follow their rules") {
  const Matrix d = section(inverse_square(), 3).matrix;
  CHECK(d(0, 0) == 1.0);
  CHECK(d(1, 1) == doctest::Approx(0.25));
  CHECK(d(2, 2) == doctest::Approx(1.0 / 9.0));
  CHECK(d.is_diagonal());
  CHECK(section(kIdentity, 5).matrix == Matrix::identity(5));
  CHECK(section(kTridiag, 2).matrix == Matrix{{2, -1}, {-1, 2}});
  CHECK(section(literal(Matrix{{-1, -1}, {4, 3}}), 3).matrix == Matrix{{-1, -1, 0}, {4, 3, 0}, {0, 0, 1}});
  CHECK(coefficient(kTridiag, 3, 2) == -1.0);
  CHECK(coefficient({OperatorKind::DenseRule, rules::Hilbert{2.0}, true}, 2, 3) == doctest::Approx(0.5));

  CHECK(code_of([] { section(kIdentity, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { section({OperatorKind::Diagonal, rules::Tridiag{}, false}, 3); }) ==
        ErrorCode::RuleUndefined);
  CHECK(to_string(OperatorKind::DenseRule) == "dense-rule");
  CHECK(parse_operator_kind("banded") == OperatorKind::Banded);
  CHECK_FALSE(parse_operator_kind("sparse"));
}

TEST_CASE("decay tags") {
  CHECK(decay_observed(inverse_square()));
  CHECK_FALSE(decay_observed(kIdentity));
  CHECK_FALSE(decay_observed(kTridiag));
}

TEST_CASE("P sections") {
  for (std::size_t n : {1, 2, 5, 8}) CHECK(is_P_operator_section(inverse_square(), n) == Verdict::Yes);
  for (std::size_t n : {1, 2, 6, 12}) CHECK(is_P_operator_section(kTridiag, n) == Verdict::Yes);
  OperatorSpec bad = inverse_square();
  std::get<rules::InverseSquareDiagonal>(bad.rule).overrides[3] = -1.0;
  CHECK(is_P_operator_section(bad, 2) == Verdict::Yes);
  CHECK(is_P_operator_section(bad, 3) == Verdict::No);
  CHECK(is_P_operator_section(bad, 6) == Verdict::No);
}

TEST_CASE("eigenvalue positivity across orders") {
  const EigenPositivityReport d = eigen_positivity_check(inverse_square(), {2, 4, 8});
  for (const OrderEigenReport& o : d.orders) CHECK(o.all_positive);
  CHECK(d.contradictions == 0);

  const EigenPositivityReport t = eigen_positivity_check(kTridiag, {2});
  REQUIRE(t.orders[0].real_eigenvalues.size() == 2);
  std::vector<double> ev = t.orders[0].real_eigenvalues;
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(3.0));

  OperatorSpec bad = inverse_square();
  std::get<rules::InverseSquareDiagonal>(bad.rule).overrides[2] = -1.0;
  const EigenPositivityReport b = eigen_positivity_check(bad, {1, 2});
  CHECK(b.orders[0].all_positive);
  CHECK_FALSE(b.orders[1].all_positive);
}

TEST_CASE("square roots of diagonal operators") {
  const SqrtResult r = operator_sqrt(inverse_square(), 4);
  const Matrix want = Matrix::diagonal({1.0, 0.5, 1.0 / 3.0, 0.25});
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.root.matrix(i, i) == doctest::Approx(want(i, i)));
  CHECK(r.residual <= 1e-15);
  CHECK(sqrt_candidate_matches(r, want));

  CHECK(operator_sqrt(kIdentity, 3).root.matrix == Matrix::identity(3));

  const SqrtResult four = operator_sqrt(inverse_square(4.0), 16);
  for (std::size_t i = 0; i < 16; ++i)
    CHECK(four.root.matrix(i, i) == doctest::Approx(2.0 / static_cast<double>(i + 1)));
  CHECK(four.residual <= 1e-15);

  CHECK(code_of([] { operator_sqrt(kTridiag, 3); }) == ErrorCode::NonDiagonalSpec);
  OperatorSpec bad = inverse_square();
  std::get<rules::InverseSquareDiagonal>(bad.rule).overrides[2] = -1.0;
  CHECK(code_of([&] { operator_sqrt(bad, 3); }) == ErrorCode::NonPositiveEigenvalue);
}

TEST_CASE("min-max Perron estimates") {
  const MinMaxReport ones = minmax_rho(Matrix{{1, 1}, {1, 1}}, 50, 1);
  CHECK(ones.rho == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ones.sup_inf <= ones.rho + 1e-9);
  CHECK(ones.inf_sup >= ones.rho - 1e-9);
  CHECK(ones.inf_sup - ones.sup_inf <= 1e-6);
  CHECK(ones.perron[0] == doctest::Approx(ones.perron[1]));

  const MinMaxReport sym = minmax_rho(Matrix{{2, 1}, {1, 2}}, 50, 1);
  CHECK(sym.rho == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(sym.inf_sup - 3.0) <= 1e-6);
  CHECK(std::abs(sym.sup_inf - 3.0) <= 1e-6);

  const MinMaxReport id = minmax_rho(kIdentity, 4, 20, 1);
  CHECK(id.rho == doctest::Approx(1.0));
  CHECK(id.inf_sup == doctest::Approx(1.0));
  CHECK(id.sup_inf == doctest::Approx(1.0));

  CHECK(code_of([] { minmax_rho(Matrix{{1, -1}, {1, 1}}, 5, 1); }) == ErrorCode::NonPositiveSection);
}

TEST_CASE("diagonal interpolation") {
  const InterpReport id = diag_interp_check(kIdentity, kIdentity, DiagRule::Mixed, 4, 50, 1);
  CHECK(id.case1);
  CHECK(id.violations == 0);
  CHECK(id.trials == 50);

  const InterpReport s = diag_interp_check(Matrix{{2}}, Matrix{{1}}, DiagRule::Uniform, 100, 2);
  CHECK(s.violations == 0);

  CHECK(code_of([] { diag_interp_check(Matrix{{1}}, Matrix{{0}}, DiagRule::Mixed, 5, 1); }) ==
        ErrorCode::PreconditionNotEstablished);
  CHECK(code_of([] { diag_interp_check(Matrix{{-1}}, Matrix{{1}}, DiagRule::Mixed, 5, 1); }) ==
        ErrorCode::PreconditionNotEstablished);
}

TEST_CASE("kernel search for column sufficiency") {
  const CSuffReport neg = csufficient_kernel_search(Matrix::diagonal({1, -1}));
  REQUIRE(neg.refutation);
  CHECK(neg.refutation->alpha == IndexSet{1});
  CHECK(neg.classifier.verdict == Verdict::No);
  CHECK(neg.agrees);

  const CSuffReport zero = csufficient_kernel_search(Matrix::diagonal({1, 0}));
  CHECK_FALSE(zero.refutation);
  CHECK(zero.classifier.verdict == Verdict::Yes);
  CHECK(zero.agrees);

  const CSuffReport skew = csufficient_kernel_search(Matrix{{1, 2, 0}, {-2, 0, 1}, {0, -1, 0}});
  CHECK_FALSE(skew.refutation);
  CHECK(skew.agrees);

  CHECK_THROWS_AS(csufficient_kernel_search(Matrix::identity(9)), Error);
  CHECK_THROWS_AS(csufficient_kernel_search(Matrix::identity(2), {-1.0}), Error);
}

TEST_CASE("rev membership") {
  const RevQuery q = rev_membership(Matrix{{-1, -1}, {4, 3}}, Vector{1, -1});
  CHECK(q.products[0] == doctest::Approx(0.0));
  CHECK(q.products[1] == doctest::Approx(-1.0));
  CHECK(q.in_rev);
  CHECK_FALSE(rev_membership(Matrix::identity(2), Vector{1, 0}).in_rev);
  CHECK(rev_membership(Matrix::identity(2), Vector{0, 0}).in_rev);
}

TEST_CASE("eigenvectors and rev") {
  const EigvecRevReport ok = eigvec_rev_check(Matrix::diagonal({1, 0}));
  CHECK_FALSE(ok.skipped);
  CHECK(ok.vectors_checked > 0);
  CHECK(ok.violations == 0);

  const EigvecRevReport skip = eigvec_rev_check(Matrix::diagonal({1, -1}));
  CHECK(skip.skipped);
  CHECK(skip.column_sufficient == Verdict::No);
}
