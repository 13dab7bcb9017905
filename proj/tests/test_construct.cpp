#include <doctest.h>

#include <algorithm>
#include <random>

#include "tdf/closure.hpp"
#include "tdf/construct.hpp"
#include "tdf/primes.hpp"

using namespace tdf;
using namespace tdf::construct;
using polyfield::PolyZ;

TEST_CASE("worked example with q = 3") {
  ConstructConfig cfg;
  cfg.q = 3;
  auto fc = construct_field(2, {7}, {5}, cfg);
  CHECK(fc.f == PolyZ::from_longs({147, 90, 1}));
  CHECK(fc.disc == 7512);
  CHECK(fc.eisenstein);
  CHECK(polyfield::root_count(fc.f.reduce(7)) == 2);
  CHECK(polyfield::is_irreducible(fc.f.reduce(5)));
  CHECK(verify(fc));
}

TEST_CASE("vacuous constraints") {
  auto fc = construct_field(2, {}, {});
  CHECK(fc.q == 2);
  CHECK(fc.f == PolyZ::from_longs({2, 0, 1}));
  CHECK(verify(fc));
}

TEST_CASE("preconditions") {
  CHECK_NOTHROW(construct_field(2, {3}, {5}));
  CHECK_THROWS_AS(construct_field(3, {3}, {5}), std::invalid_argument);
  CHECK_THROWS_AS(construct_field(1, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(construct_field(2, {7}, {7}), std::invalid_argument);
  CHECK_THROWS_AS(construct_field(2, {9}, {}), std::invalid_argument);
  ConstructConfig bad;
  bad.q = 7;
  CHECK_THROWS_AS(construct_field(2, {7}, {}, bad), std::invalid_argument);
  ConstructConfig tiny;
  tiny.t_cap = 2;
  CHECK_THROWS_AS(construct_field(2, {}, {3, 5, 7}, tiny), primes::CapacityError);
}

TEST_CASE("tampered output fails verification") {
  auto fc = construct_field(2, {7, 11}, {5});
  REQUIRE(verify(fc));
  auto c = fc.f.coeffs();
  c[0] += 1;
  fc.f = PolyZ(c);
  CHECK_FALSE(verify(fc));
}

TEST_CASE("random round trips") {
  std::mt19937_64 rng(2024);
  std::vector<uint64_t> pool;
  for (uint64_t p = 5; p < 200; ++p)
    if (primes::is_prime(p)) pool.push_back(p);
  for (int t = 0; t < 30; ++t) {
    int s = 2 + t % 2;
    std::shuffle(pool.begin(), pool.end(), rng);
    size_t ns = rng() % 5, nt = rng() % 5;
    std::vector<uint64_t> S(pool.begin(), pool.begin() + ns), T(pool.begin() + ns, pool.begin() + ns + nt);
    auto fc = construct_field(s, S, T);
    REQUIRE(verify(fc));
    CHECK(fc.f.degree() == s);
    for (auto& e : fc.evidence) {
      CHECK(e.matches);
      CHECK(e.disc_coprime);
      CHECK(e.degrees == (e.role == 'S' ? std::map<int, int>{{1, s}} : std::map<int, int>{{s, 1}}));
    }
  }
}

TEST_CASE("quadratic ramified table") {
  auto f = PolyZ::from_longs({147, 90, 1});
  auto tab = quadratic_ramified_table(f, 1000);
  // 7512 = 2^3 3 313; 2 divides the index
  std::vector<uint64_t> ps;
  for (auto& c : tab) ps.push_back(c.p);
  CHECK(ps == std::vector<uint64_t>{2, 3, 313});
  for (auto& c : tab) CHECK(c.e * c.f * c.g == 2);
}

TEST_CASE("realize r = 3, s = 2") {
  auto one = realize_components(3, 2, 1);
  CHECK(one.certified);
  CHECK(one.lower_bound == 2);
  REQUIRE(one.K.has_value());
  CHECK(closure::compute_closure(*one.K, characters::principal_character(1), 3).count >= 2);

  auto two = realize_components(3, 2, 2);
  CHECK(two.certified);
  CHECK(two.lower_bound == 3);
  REQUIRE(two.certificates.size() == 2);
  for (auto& c : two.certificates) CHECK(c.verdict);
  for (auto& g : two.gaps) CHECK(g.disjoint);
  CHECK(verify(two.field));
}

TEST_CASE("realize, degree 3 through local splitting") {
  auto r = realize_components(2, 3, 1);
  CHECK(r.certified);
  CHECK_FALSE(r.K.has_value());
  CHECK(r.field.f.degree() == 3);
}

TEST_CASE("realize stage errors") {
  try {
    realize_components(2, 1, 1);
    FAIL("expected StageError");
  } catch (const StageError& e) {
    CHECK(e.kind() == StageError::Kind::Input);
  }
}
