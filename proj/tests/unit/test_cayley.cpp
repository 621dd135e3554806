#include <random>

#include "doctest.h"
#include "pmkit/cayley.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"

using namespace pmkit;

TEST_CASE("Cayley transform of scalars and the identity") {
  CHECK(cayley_u(Matrix{{3}})(0, 0) == doctest::Approx(-0.5));
  CHECK(cayley_u(Matrix(2)) == Matrix::identity(2));
  CHECK(cayley_u(Matrix::identity(2)).max_abs() == 0.0);
  CHECK_THROWS_AS(cayley_u(Matrix{{-1}}), Error);
}

TEST_CASE("involution") {
  CHECK(verify_involution(Matrix{{3}}) < 1e-15);
  CHECK(verify_involution(Matrix::identity(3)) == 0.0);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  for (int k = 0; k < 50; ++k) {
    Matrix a(5);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) = u(rng);
    CHECK(verify_involution(a) <= 1e-10);
  }
}

TEST_CASE("identities for I + U and I - U") {
  const IdentityResiduals s = verify_identities(Matrix{{3}});
  CHECK(s.plus < 1e-15);
  REQUIRE(s.minus);
  CHECK(*s.minus < 1e-15);

  const IdentityResiduals id = verify_identities(Matrix::identity(2));
  CHECK(id.plus == 0.0);

  const IdentityResiduals zero = verify_identities(Matrix{{0}});
  CHECK(zero.plus < 1e-15);
  CHECK_FALSE(zero.minus);
}

TEST_CASE("factorization of diagonal P-matrices") {
  const FactorizationResult id = factor_p(Matrix::identity(2));
  CHECK(id.factor_left == Matrix::identity(2));
  CHECK(id.factor_right == Matrix::identity(2));

  const FactorizationResult d = factor_p(Matrix::diagonal({2, 3}));
  CHECK(d.factor_left(0, 0) == doctest::Approx(1.5));
  CHECK(d.factor_left(1, 1) == doctest::Approx(2.0));
  CHECK(d.factor_right(0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(d.factor_right(1, 1) == doctest::Approx(1.5));
  CHECK(d.residual < 1e-15);
  CHECK(d.left_is_P == Verdict::Yes);
  CHECK(d.right_is_P == Verdict::Yes);

  CHECK_THROWS_AS(factor_p(Matrix{{-1, -1}, {4, 3}}), Error);
}

TEST_CASE("factorization of generated P-matrices") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix a = generate({ClassTag::PDiagDom, 1 + seed % 6, seed, 1.0});
    const FactorizationResult f = factor_p(a);
    CHECK(f.residual <= 1e-8);
    CHECK(f.path_residual <= 1e-8);
    CHECK(f.left_is_P == Verdict::Yes);
    CHECK(f.right_is_P == Verdict::Yes);
  }
}

TEST_CASE("scaled stable factors") {
  const ScaledFactorReport id =
      scaled_stable_factor(Matrix::identity(2), Matrix::identity(2), Matrix::identity(2));
  CHECK(id.left_stable == Verdict::Yes);
  CHECK(id.left_P == Verdict::Yes);
  CHECK(id.right_stable == Verdict::Yes);
  CHECK(id.right_P == Verdict::Yes);

  const Matrix s = Matrix::diagonal({1, 2});
  const ScaledFactorReport d = scaled_stable_factor(Matrix::diagonal({2, 3}), s, s);
  CHECK(d.left.is_diagonal());
  CHECK(d.right.is_diagonal());
  CHECK(d.left_P == Verdict::Yes);
  CHECK(d.right_P == Verdict::Yes);
  CHECK(d.residual < 1e-12);

  CHECK_THROWS_AS(scaled_stable_factor(Matrix::identity(2), Matrix::diagonal({1, -1}),
                                       Matrix::identity(2)),
                  Error);
}

TEST_CASE("Routh-Hurwitz") {
  CHECK(routh_hurwitz_positive(charpoly(Matrix::diagonal({1, 2, 3}))));
  CHECK_FALSE(routh_hurwitz_positive(charpoly(Matrix::diagonal({1, -2, 3}))));
  CHECK_FALSE(routh_hurwitz_positive(charpoly(Matrix{{0, -1}, {1, 0}})));
  CHECK(routh_hurwitz_positive(charpoly(Matrix{{1, -2}, {2, 1}})));
  // x^3 - x^2 + x - 1 has roots 1, +-i.
  CHECK_FALSE(routh_hurwitz_positive(Polynomial{{1, 1, 1, 1}}));
}

TEST_CASE("stability probe log re-validates") {
  const StabilityProbeLog log = ad_stability_probe(90, 7);
  CHECK(log.trials == 90);
  CHECK(log.all_revalidated());
  for (const StabilityProbeEntry& e : log.counterexamples) {
    CHECK(e.eigenvalue.real() < 0.0);
    CHECK(is_P_minors(e.a).verdict == Verdict::Yes);
    for (double v : e.d) CHECK(v > 0.0);
  }
  const StabilityProbeLog again = ad_stability_probe(90, 7);
  CHECK(again.counterexamples.size() == log.counterexamples.size());
}
