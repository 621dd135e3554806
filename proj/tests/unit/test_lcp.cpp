#include <random>

#include "doctest.h"
#include "pmkit/classify.hpp"
#include "pmkit/errors.hpp"
#include "pmkit/generators.hpp"
#include "pmkit/lcp.hpp"

using namespace pmkit;

namespace {

void check_vec(const Vector& got, const Vector& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]));
}

}  // namespace

TEST_CASE("Lemke on small instances") {
  auto a = lemke_solve({Matrix::identity(2), {-1, 2}});
  REQUIRE(a);
  check_vec(a->z, {1, 0});
  check_vec(a->w, {0, 2});

  auto b = lemke_solve({Matrix{{2, -1}, {-1, 2}}, {-3, -3}});
  REQUIRE(b);
  check_vec(b->z, {3, 3});
  check_vec(b->w, {0, 0});

  auto c = lemke_solve({Matrix::identity(2), {1, 1}});
  REQUIRE(c);
  check_vec(c->z, {0, 0});
  check_vec(c->w, {1, 1});
}

TEST_CASE("Lemke ray termination") {
  // z - w = ... has no feasible point: m = -I, q = (-1).
  CHECK_FALSE(lemke_solve({Matrix{{-1}}, {-1}}).has_value());
}

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(validate_instance({Matrix::identity(2), {1}}), Error);
  CHECK_THROWS_AS(lemke_solve({Matrix::identity(33), Vector(33, 1.0)}), Error);
  CHECK_THROWS_AS(enumerate_solutions({Matrix::identity(13), Vector(13, 1.0)}), Error);
}

TEST_CASE("check_solution catches each violated condition") {
  const LCPInstance inst{Matrix::identity(2), {-1, 2}};
  CHECK_FALSE(check_solution(inst, {{1, 0}, {0, 2}, IndexSet{0}}));
  CHECK(check_solution(inst, {{-1, 0}, {-2, 2}, {}}));
  CHECK(check_solution(inst, {{2, 0}, {1, 2}, {}}));
  CHECK(check_solution(inst, {{1, 0}, {0, 3}, {}}));
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_solutions({Matrix::identity(2), {-1, 2}}).solutions.size() == 1);
  CHECK(enumerate_solutions({Matrix::identity(2), {1, 1}}).solutions.size() == 1);
  // With q = (1) and m = (-1) both z = 0 and z = 1 are solutions.
  CHECK(enumerate_solutions({Matrix{{-1}}, {1}}).solutions.size() == 2);
  const Enumeration e = enumerate_solutions({Matrix{{0, 0}, {1, 0}}, {0, -1}});
  CHECK(e.solutions.size() != 1);
  CHECK(e.skipped > 0);
}

TEST_CASE("P-matrices give unique solutions found by Lemke") {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Matrix m = generate({ClassTag::PDiagDom, 1 + seed % 6, seed, 1.0});
    for (int k = 0; k < 5; ++k) {
      Vector q(m.size());
      for (double& v : q) v = u(rng);
      const LCPInstance inst{m, q};
      const Enumeration e = enumerate_solutions(inst);
      REQUIRE(e.solutions.size() == 1);
      CHECK_FALSE(check_solution(inst, e.solutions[0]));
      const auto l = lemke_solve(inst);
      REQUIRE(l);
      CHECK_FALSE(check_solution(inst, *l));
      for (std::size_t i = 0; i < m.size(); ++i)
        CHECK(std::abs(l->z[i] - e.solutions[0].z[i]) <= 1e-6);
    }
  }
}

TEST_CASE("census") {
  const CensusReport id = uniqueness_census(Matrix::identity(2), 100, 1);
  CHECK(id.one == 100);
  CHECK(id.verdict == CensusVerdict::ConsistentWithP);
  CHECK(uniqueness_census(Matrix::identity(3), 50, 2).one == 50);

  const CensusReport ex = uniqueness_census(Matrix{{-1, -1}, {4, 3}}, 200, 3);
  CHECK(ex.one < 200);
  CHECK(ex.verdict == CensusVerdict::Violation);
  CHECK(ex.violating_q);
  CHECK(to_string(CensusVerdict::Inconclusive) == "inconclusive");
}
