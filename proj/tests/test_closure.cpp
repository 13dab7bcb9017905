#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "tdf/closure.hpp"
#include "tdf/primes.hpp"

using namespace tdf;
using namespace tdf::closure;
using numberfield::FieldSpec;

namespace {

Interval I(const mpq_class& a, const mpq_class& b) { return {Enclosure(a), Enclosure(b)}; }

const double kPi = 3.14159265358979323846;

bool gaps_positive(const ClosureResult& c) {
  for (size_t k = 1; k < c.intervals.size(); ++k)
    if (!certainly_lt(c.intervals[k - 1].hi, c.intervals[k].lo)) return false;
  return true;
}

}  // namespace

TEST_CASE("zeta tails") {
  ClosureEngine E(FieldSpec::rational(), 2);
  auto z = E.zeta_tail(1, 0);
  CHECK(z.value.lo_double() <= kPi * kPi / 6);
  CHECK(z.value.hi_double() >= kPi * kPi / 6 - 1e-15);
  CHECK(z.value.width_double() < 1e-6);
  CHECK(std::abs(z.value.mid_double() - ref::mpfr_zeta_ui(2)) < 1e-6);

  auto z2 = E.zeta_tail(2, 1);
  CHECK(z2.value.lo_double() <= kPi * kPi / 8 + 1e-15);
  CHECK(z2.value.hi_double() >= kPi * kPi / 8 - 1e-15);
}

TEST_CASE("analytic and Euler-product zeta tails overlap") {
  ClosureEngine E(FieldSpec::rational(), 3);
  for (size_t i : {0u, 1u, 2u, 5u}) {
    auto a = E.zeta_tail(1, i).value;
    auto b = rational_zeta_tail(3, i, 128);
    CHECK(a.lo_double() <= b.hi_double());
    CHECK(b.lo_double() <= a.hi_double());
  }
}

TEST_CASE("j search") {
  ClosureEngine E(FieldSpec::rational(), 2);
  auto j = E.compute_j(characters::principal_character(1));
  CHECK(j.j0 == 2);
  CHECK(j.j_plus == 1);
  CHECK(j.j0 >= j.j_plus);
  CHECK(j.tail_criterion_holds);
  CHECK(E.compute_j(characters::principal_character(2)).j_plus == 2);
}

TEST_CASE("base interval") {
  ClosureEngine E(FieldSpec::rational(), 2);
  auto [c, d] = E.base_interval(characters::principal_character(1), 2);
  CHECK(c.is_exact());
  CHECK(c.exact_value() == 1);
  // zeta(2) (1 - 1/4) (1 - 1/9) = pi^2 / 9
  CHECK(d.lo_double() <= kPi * kPi / 9 + 1e-15);
  CHECK(d.hi_double() >= kPi * kPi / 9 - 1e-15);

  auto chi = characters::kronecker_character(-4);
  auto j = E.compute_j(chi);
  auto [c4, d4] = E.base_interval(chi, j.j0);
  CHECK(c4.hi_double() < 1.0);
  CHECK(d4.lo_double() > 1.0);
}

TEST_CASE("expand_prime and merge") {
  IntervalUnion u{I(1, mpq_class(11, 10))};
  Enclosure x(mpq_class(1, 4));
  CHECK(expand_prime(u, 0, x).size() == 1);
  auto v = expand_prime(u, 1, x);
  REQUIRE(v.size() == 2);
  CHECK(v[0].lo.contains(mpq_class(1)));
  CHECK(v[0].hi.contains(mpq_class(11, 10)));
  CHECK(v[1].lo.contains(mpq_class(5, 4)));
  CHECK(v[1].hi.contains(mpq_class(4, 3) * mpq_class(11, 10)));

  // wide enough that the first copy already overlaps
  IntervalUnion w{I(1, 2)};
  auto m = expand_prime(w, 1, x);
  REQUIRE(m.size() == 1);
  CHECK(m[0].hi.contains(mpq_class(8, 3)));

  IntervalUnion pieces{I(3, 4), I(1, 2), I(2, 3)};
  auto mm = merge(pieces);
  REQUIRE(mm.size() == 1);
  CHECK(mm[0].hi.contains(mpq_class(4)));
}

TEST_CASE("component counts over Q") {
  ClosureEngine E(FieldSpec::rational(), 2);
  auto a = E.compute_closure(characters::principal_character(1));
  CHECK(a.count == 3);
  CHECK(gaps_positive(a));
  auto b = E.compute_closure(characters::principal_character(5));
  CHECK(b.count == 3);
  CHECK(gaps_positive(b));
  auto k = E.compute_closure(characters::kronecker_character(-4));
  CHECK(k.count >= 1);
  CHECK(gaps_positive(k));
}

TEST_CASE("count 1 past r0") {
  mpq_class r = 10;
  ClosureEngine E(FieldSpec::rational(), r);
  auto fp = formula_params(E);
  REQUIRE(fp.j1 >= 1);
  mpz_class m = 1;
  for (size_t k = 1; k <= fp.j1; ++k) m *= static_cast<unsigned long>(primes::nth_prime(k));
  CHECK_FALSE(m.fits_ulong_p());
  CHECK(E.compute_closure(characters::principal_character(m)).count == 1);
  CHECK(E.compute_closure(characters::principal_character(closure::m_i(fp.ell, fp.j1))).count == 2);
}

TEST_CASE("formula matches the algorithm at r = 3") {
  ClosureEngine E(FieldSpec::rational(), 3);
  auto fp = formula_params(E);
  uint64_t prev = 0;
  for (size_t i = fp.i0; i <= fp.i0 + 2; ++i) {
    uint64_t f = formula_count(E, i);
    CHECK(f == E.compute_closure(characters::principal_character(m_i(fp.ell, i))).count);
    if (prev) CHECK((f == prev || f == prev + 1));
    prev = f;
  }
}

TEST_CASE("check_r0") {
  CHECK(check_r0(10).holds);
  CHECK_FALSE(check_r0(rigor::parse_rational("1.05")).holds);
  CHECK_FALSE(check_r0(2).holds);
}

TEST_CASE("closure contains direct sigma values") {
  ClosureEngine E(FieldSpec::rational(), 2);
  auto c = E.compute_closure(characters::principal_character(1));
  auto S = numberfield::norm_stream(FieldSpec::rational(), 2000);
  Enclosure r(2L);
  for (uint64_t n = 1; n <= 2000; ++n) {
    auto v = numberfield::sigma(S, characters::principal_character(1), r, numberfield::ideal_of_integer(S, n));
    bool in = false;
    for (auto& iv : c.intervals)
      if (certainly_le(iv.lo, v) && certainly_le(v, iv.hi)) in = true;
    REQUIRE(in);
  }
}

TEST_CASE("complex characters are rejected") {
  auto all = characters::enumerate_characters(5, false);
  for (auto& chi : all)
    if (!chi.is_real()) CHECK_THROWS(compute_closure(FieldSpec::rational(), chi, 2));
}

TEST_CASE("prime tail bound dominates a long explicit sum") {
  Enclosure t = prime_tail_bound(1000, 2, 128);
  double s = 0;
  for (uint64_t p : ref::sieve(2'000'000))
    if (p > 1000) s += 1.0 / (double(p) * double(p));
  CHECK(t.hi_double() >= s);
  CHECK(t.hi_double() < 3 * s);
}

TEST_CASE("interval cap raises a capacity error") {
  ClosureConfig cfg;
  cfg.max_intervals = 2000;
  ClosureEngine E(FieldSpec::rational(), 50, cfg);
  auto j = E.compute_j(characters::principal_character(1));
  MESSAGE("j0 at r = 50: " << j.j0);
  CHECK(j.j0 > 20);
  CHECK_THROWS_AS(E.compute_closure(characters::principal_character(1)), primes::CapacityError);
}
