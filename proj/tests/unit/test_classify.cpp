#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"

using namespace pmkit;

namespace {

const Matrix kExample{{-1, -1}, {4, 3}};

Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = u(rng);
  return m;
}

}  // namespace

TEST_CASE("three-valued conjunction") {
  CHECK((Verdict::Yes && Verdict::Yes) == Verdict::Yes);
  CHECK((Verdict::Yes && Verdict::Unknown) == Verdict::Unknown);
  CHECK((Verdict::Unknown && Verdict::No) == Verdict::No);
  CHECK((Verdict::No && Verdict::Yes) == Verdict::No);
  CHECK(to_string(Verdict::Unknown) == "unknown");
}

TEST_CASE("minor test on the reference matrices") {
  const MinorTest ex = is_P_minors(kExample);
  CHECK(ex.verdict == Verdict::No);
  REQUIRE(ex.witness);
  CHECK(*ex.witness == IndexSet{0});
  CHECK(ex.witness_minor == doctest::Approx(-1.0));

  CHECK(is_P_minors(Matrix{{2, -1}, {-1, 2}}).verdict == Verdict::Yes);
  CHECK(is_P_minors(Matrix::diagonal({1, 0})).verdict == Verdict::No);
  CHECK(is_P0_minors(Matrix::diagonal({1, 0})).verdict == Verdict::Yes);
  CHECK(is_P0_minors(kExample).verdict == Verdict::No);
}

TEST_CASE("witnesses come smallest cardinality first") {
  // Every singleton is positive; only the full determinant fails.
  const MinorTest t = is_P_minors(Matrix{{1, 2}, {2, 1}});
  REQUIRE(t.witness);
  CHECK(*t.witness == IndexSet{0, 1});
  const MinorTest s = is_P_minors(Matrix::diagonal({1, 2, -3}));
  REQUIRE(s.witness);
  CHECK(*s.witness == IndexSet{2});
}

TEST_CASE("minor test matches the 2x2 closed form") {
  std::mt19937_64 rng(21);
  int checked = 0;
  for (int k = 0; k < 2000; ++k) {
    const Matrix m = random_matrix(2, rng);
    if (std::abs(oracle::min_principal_minor(m)) < 1e-6) continue;
    ++checked;
    CHECK((is_P_minors(m).verdict == Verdict::Yes) == oracle::p_2x2(m));
  }
  CHECK(checked > 1900);
}

TEST_CASE("minor test matches cofactor minors up to n = 6") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 6;
    Matrix m = random_matrix(n, rng);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.2;
    const double lo = oracle::min_principal_minor(m);
    if (std::abs(lo) < 1e-6) continue;
    CHECK((is_P_minors(m).verdict == Verdict::Yes) == (lo > 0));
  }
}

TEST_CASE("submatrix eigenvalue test") {
  CHECK(is_P_submatrix_eigen(kExample) == Verdict::No);
  CHECK(is_P_submatrix_eigen(Matrix{{0, -1}, {1, 0}}) == Verdict::No);
  CHECK(is_P_submatrix_eigen(Matrix{{2, -1}, {-1, 2}}) == Verdict::Yes);
  CHECK_THROWS_AS(is_P_submatrix_eigen(Matrix::identity(11)), Error);
}

TEST_CASE("sign reversal products") {
  const Vector p = reversal_products(kExample, Vector{1, -1});
  CHECK(p[0] == doctest::Approx(0.0));
  CHECK(p[1] == doctest::Approx(-1.0));
  CHECK(reverses_sign(kExample, Vector{1, -1}));
  CHECK(strictly_reverses_sign(Matrix{{0, 0}, {1, 0}}, Vector{1, -1}));
  CHECK_FALSE(reverses_sign(Matrix::identity(2), Vector{1, 1}));
  CHECK_FALSE(reverses_sign(Matrix::identity(2), Vector{0, 0}));
}

TEST_CASE("reversal witness exists exactly for non-P matrices") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + k % 5;
    Matrix m = random_matrix(n, rng);
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 0.8;
    const double lo = oracle::min_principal_minor(m);
    if (std::abs(lo) < 1e-6) continue;
    const auto x = find_reversal_witness(m, 64, k);
    CHECK(x.has_value() == (lo <= 0));
    if (x) CHECK(reverses_sign(m, *x));
  }
  CHECK_THROWS_AS(find_reversal_witness(kExample, 0, 1), Error);
}

TEST_CASE("Z and M classification") {
  CHECK(is_Z(Matrix{{2, -1}, {-1, 2}}) == Verdict::Yes);
  CHECK(is_Z(kExample) == Verdict::No);
  CHECK(is_P_via_Z_spectrum(Matrix{{2, -1}, {-1, 2}}) == Verdict::Yes);
  CHECK(is_P_via_Z_spectrum(Matrix{{0, -1}, {-1, 0}}) == Verdict::No);
  CHECK_THROWS_AS(is_P_via_Z_spectrum(kExample), Error);
}

TEST_CASE("positive stability") {
  CHECK(is_positive_stable(kExample) == Verdict::Yes);
  CHECK(is_positive_stable(Matrix{{0, -1}, {1, 0}}) == Verdict::No);
}

TEST_CASE("Z-matrices: P exactly when positive stable") {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = 1 + k % 6;
    Matrix m = random_matrix(n, rng, -1.0, 0.0);
    std::uniform_real_distribution<double> d(-0.5, 3.0);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = d(rng);
    if (std::abs(oracle::min_principal_minor(m)) < 1e-6) continue;
    const Spectrum s = eigenvalues(m);
    double min_re = 1e300;
    for (Complex v : s.values) min_re = std::min(min_re, v.real());
    if (std::abs(min_re) < 1e-6) continue;
    CHECK(is_P_via_Z_spectrum(m) == is_P_minors(m).verdict);
  }
}

TEST_CASE("column and row sufficiency examples") {
  const VectorWitness c = is_column_sufficient(Matrix{{0, 0}, {1, 0}});
  CHECK(c.verdict == Verdict::No);
  REQUIRE(c.witness);
  CHECK(strictly_reverses_sign(Matrix{{0, 0}, {1, 0}}, *c.witness));

  CHECK(is_column_sufficient(Matrix::diagonal({1, 0})).verdict == Verdict::Yes);
  CHECK(is_row_sufficient(Matrix::diagonal({1, 0})).verdict == Verdict::Yes);
  CHECK(is_sufficient(Matrix::diagonal({1, 0})) == Verdict::Yes);

  const VectorWitness r = is_row_sufficient(Matrix{{0, 1}, {0, 0}});
  CHECK(r.verdict == Verdict::No);
  CHECK(is_sufficient(Matrix{{0, 0}, {1, 0}}) == Verdict::No);

  CHECK(is_column_sufficient(Matrix::diagonal({1, -1})).verdict == Verdict::No);
  CHECK(is_column_sufficient(Matrix{{0, 1}, {-1, 0}}).verdict == Verdict::Yes);
}

TEST_CASE("P-matrices and PSD matrices are sufficient") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 1 + seed % 3;
    CHECK(is_sufficient(generate({ClassTag::PDiagDom, n, seed, 1.0})) == Verdict::Yes);
    CHECK(is_column_sufficient(generate({ClassTag::PSD, n, seed, 1.0})).verdict != Verdict::No);
  }
}

TEST_CASE("powers check") {
  const PowersReport tri = powers_P_check(Matrix{{1, 3}, {0, 1}}, 2);
  REQUIRE(tri.verdicts.size() == 2);
  CHECK(tri.verdicts[0] == Verdict::Yes);
  CHECK(tri.verdicts[1] == Verdict::Yes);
  REQUIRE(tri.all_eigenvalues_positive_real);
  CHECK(*tri.all_eigenvalues_positive_real);

  const PowersReport ex = powers_P_check(kExample, 1);
  CHECK(ex.verdicts == std::vector<Verdict>{Verdict::No});
  CHECK_FALSE(ex.all_eigenvalues_positive_real);
}

TEST_CASE("classify fills every verdict") {
  const ClassificationReport r = classify(kExample);
  CHECK(r.verdicts.at("P") == Verdict::No);
  CHECK(std::get<IndexSet>(r.witnesses.at("P")) == IndexSet{0});
  CHECK(r.verdicts.at("Z") == Verdict::No);
  CHECK(r.verdicts.at("M") == Verdict::No);
  CHECK(r.verdicts.at("positive_stable") == Verdict::Yes);
  for (const char* key : {"P0", "column_sufficient", "row_sufficient", "sufficient"})
    CHECK(r.verdicts.count(key) == 1);

  const ClassificationReport big = classify(Matrix::identity(14));
  CHECK(big.verdicts.at("P") == Verdict::Unknown);
  CHECK(big.verdicts.at("M") == Verdict::Yes);
}

TEST_CASE("P is preserved by adding nonnegative diagonals and by inversion") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix a = generate({ClassTag::PDiagDom, 1 + seed % 6, seed, 1.0});
    Vector d(a.size());
    for (double& v : d) v = u(rng);
    CHECK(oracle::min_principal_minor(a + Matrix::diagonal(d)) > 0);
    CHECK(is_P_minors(inverse(a)).verdict == Verdict::Yes);
  }
}
