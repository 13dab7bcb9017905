#include <doctest.h>

#include <set>

#include "tdf/closure.hpp"
#include "tdf/mighty.hpp"
#include "tdf/primes.hpp"

using namespace tdf;
using namespace tdf::mighty;
using numberfield::FieldSpec;

TEST_CASE("mighty norms over Q") {
  auto c = is_mighty(FieldSpec::rational(), 10, 2);
  CHECK(c.verdict);
  CHECK(c.rhs.lo_double() > 1.0);
  CHECK(c.rhs.hi_double() < 1.0 + 2e-5);
  CHECK(c.rhs.hi_double() > 1.0 + 1.5e-5);
  CHECK_FALSE(is_mighty(FieldSpec::rational(), rigor::parse_rational("1.1"), 2).verdict);
}

TEST_CASE("a mighty norm gives a second component") {
  REQUIRE(is_mighty(FieldSpec::rational(), 10, 2).verdict);
  CHECK(closure::compute_closure(FieldSpec::rational(), characters::principal_character(1), 10).count >= 2);
}

TEST_CASE("local-splitting route agrees with the field route") {
  auto K = FieldSpec::quadratic(-1);
  LocalSplitting split = [&](uint64_t p) -> std::optional<std::vector<int>> {
    auto c = K.decompose(p);
    return std::vector<int>(c.g, c.f);
  };
  for (uint64_t d : {2u, 5u, 9u, 13u}) {
    auto a = is_mighty(K, 6, d), b = is_mighty(2, split, 6, d);
    CHECK(a.verdict == b.verdict);
  }
  // 3 is inert in Q(i): no prime ideal of norm 3
  CHECK_THROWS(is_mighty(2, split, 6, 3));
}

TEST_CASE("small-x log inequalities") {
  rigor::Enclosure x(mpq_class(1, 1'000'000));
  CHECK(rigor::certainly_le(rigor::neg_log1m(x), x * rigor::Enclosure(2L)));
  CHECK(rigor::certainly_le(x / rigor::Enclosure(2L), rigor::log1p(x)));
}

TEST_CASE("technical sequence, r = 2, s = 2, M = 1") {
  auto t = build_technical_sequence(2, 2, 1);
  REQUIRE(t.p.size() == 1);
  CHECK(t.p[0] > 4);
  CHECK(primes::is_prime(t.p[0]));
  CHECK(t.p[0] == 5);
  CHECK(t.S[0] == std::vector<uint64_t>{3, 5});
  CHECK(t.X == 103);
  CHECK(t.X_enumerated);
  CHECK(t.all_hold());
}

TEST_CASE("technical sequence, r = 3, s = 2, M = 2") {
  auto t = build_technical_sequence(3, 2, 2);
  REQUIRE(t.p.size() == 2);
  CHECK(t.p[1] > t.p[0] * t.p[0]);
  CHECK(t.all_hold());
  std::set<uint64_t> seen;
  for (auto& S : t.S)
    for (uint64_t q : S) REQUIRE(seen.insert(q).second);
  for (auto& c : t.conditions) CHECK(c.holds);
}

TEST_CASE("p_2 beyond the enumeration limit is a capacity error") {
  CHECK_THROWS_AS(build_technical_sequence(rigor::parse_rational("1.5"), 3, 2), primes::CapacityError);
}

TEST_CASE("input checks") {
  CHECK_THROWS_AS(build_technical_sequence(2, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_technical_sequence(2, 2, 0), std::invalid_argument);
  CHECK_THROWS(is_mighty(FieldSpec::rational(), 2, 4));
}

TEST_CASE("prime power tail") {
  auto t = prime_power_tail(100, 10'000, 2, 128);
  double s = 0;
  primes::for_each_prime(101, 10'000'000, [&](uint64_t p) { s += 1.0 / (double(p) * double(p)); });
  CHECK(t.hi_double() >= s);
}
