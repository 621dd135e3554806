#include "doctest.h"
#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"

using namespace pmkit;

namespace {

constexpr ClassTag kTags[] = {ClassTag::PDiagDom, ClassTag::MMatrix, ClassTag::SymPD, ClassTag::Z,
                              ClassTag::PSD,      ClassTag::NonP,    ClassTag::Arbitrary};

}  // namespace

TEST_CASE("tag names round trip") {
  for (ClassTag t : kTags) CHECK(parse_class_tag(to_string(t)) == t);
  CHECK(to_string(ClassTag::PDiagDom) == "P-diagdom");
  CHECK_FALSE(parse_class_tag("totally-positive"));
}

TEST_CASE("generated matrices pass their class oracles") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::size_t n = 1 + seed % 8;
    const Matrix pd = generate({ClassTag::PDiagDom, n, seed, 1.0});
    CHECK(is_P_minors(pd).verdict == Verdict::Yes);
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) off += std::abs(pd(i, j));
      CHECK(pd(i, i) > off);
    }

    const Matrix m = generate({ClassTag::MMatrix, n, seed, 2.0});
    CHECK(is_Z(m) == Verdict::Yes);
    CHECK(is_P_via_Z_spectrum(m) == Verdict::Yes);
    CHECK(is_P_minors(m).verdict == Verdict::Yes);

    const Matrix s = generate({ClassTag::SymPD, n, seed, 1.0});
    CHECK(s == s.transposed());
    CHECK(is_P_minors(s).verdict == Verdict::Yes);

    CHECK(is_Z(generate({ClassTag::Z, n, seed, 1.0})) == Verdict::Yes);

    const Matrix np = generate({ClassTag::NonP, n, seed, 1.0});
    const MinorTest t = is_P_minors(np);
    CHECK(t.verdict == Verdict::No);
    REQUIRE(t.witness);
    CHECK(t.witness->size() == 1);

    const Matrix a = generate({ClassTag::Arbitrary, n, seed, 0.5});
    CHECK(a.max_abs() <= 0.5);
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Matrix p = generate({ClassTag::PSD, 1 + seed % 3, seed, 1.0});
    CHECK(p == p.transposed());
    CHECK(is_column_sufficient(p).verdict != Verdict::No);
  }
}

TEST_CASE("generation is deterministic") {
  for (ClassTag t : kTags) {
    CHECK(generate({t, 5, 42, 1.0}) == generate({t, 5, 42, 1.0}));
    CHECK_FALSE(generate({t, 5, 42, 1.0}) == generate({t, 5, 43, 1.0}));
  }
  CHECK(generate({ClassTag::PDiagDom, 1, 3, 1.0})(0, 0) > 0.0);
}

TEST_CASE("generator arguments are checked") {
  CHECK_THROWS_AS(generate({ClassTag::PDiagDom, 0, 1, 1.0}), Error);
  CHECK_THROWS_AS(generate({ClassTag::PDiagDom, 65, 1, 1.0}), Error);
  CHECK_THROWS_AS(generate({ClassTag::PDiagDom, 3, 1, 0.0}), Error);
}

TEST_CASE("random orthogonal matrices") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1, 2, 5, 9}) {
    const Matrix q = random_orthogonal(n, rng);
    CHECK((q * q.transposed() - Matrix::identity(n)).max_abs() < 1e-12);
  }
}
