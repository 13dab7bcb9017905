#include <doctest.h>

#include <cmath>

#include "tdf/bounds.hpp"
#include "tdf/closure.hpp"

using namespace tdf;
using namespace tdf::bounds;
using numberfield::FieldSpec;

TEST_CASE("lower_bound_pi") {
  CHECK(lower_bound_pi(3, 1) == 2);
  CHECK(lower_bound_pi(3, 2) == 2);
  CHECK(lower_bound_pi(6, 1) == 8);
  CHECK(lower_bound_pi_exponent(6, 1) == 3);
  CHECK_THROWS(lower_bound_pi(2, 1));
}

TEST_CASE("tail lemma") {
  CHECK(tail_lemma_check(2, 3, false));
  CHECK(tail_lemma_check(3, rigor::parse_rational("2.5"), true));
  CHECK_THROWS_AS(tail_lemma_check(5, 3, false), std::invalid_argument);
  // 2^-3 against a direct partial sum of n^-3, n >= 3
  double s = 0;
  for (int n = 3; n < 200000; ++n) s += 1.0 / (double(n) * n * n);
  CHECK(s < 0.125);
  CHECK(s > 0.0769);
}

TEST_CASE("separation") {
  auto s = separation_check(1, 2, 3, characters::principal_character(1));
  CHECK(s.separated);
  CHECK(s.d0 == 2);
  auto k = separation_check(1, 3, 3, characters::kronecker_character(-4));
  CHECK(k.separated);
  CHECK(k.d0 == 3);
  CHECK(k.theta == characters::RootValue::make(1, 2));
  CHECK_THROWS_AS(separation_check(4, 4, 3, characters::principal_character(1)), std::invalid_argument);
}

TEST_CASE("signatures are distinct on a small range") {
  for (uint64_t x = 1; x <= 40; ++x)
    for (uint64_t y = x + 1; y <= 40; ++y) {
      if (signature(x, 4, 1) == signature(y, 4, 1)) continue;
      REQUIRE(separation_check(x, y, 4, characters::principal_character(1)).separated);
    }
}

TEST_CASE("eta constant") {
  CHECK(eta_constant(1, 1).contains(mpq_class(1)));
  auto e1 = eta_constant(2, 1);
  CHECK(e1.lo_double() >= 1.0);
  auto d2 = numberfield::d_s_table(2, 1'000'000);
  for (uint64_t n = 1; n <= 10'000; ++n) REQUIRE(double(d2[n]) <= e1.lo_double() * double(n));
  auto eh = eta_constant(2, mpq_class(1, 2));
  double worst = 0;
  for (uint64_t n = 1; n <= 1'000'000; ++n) worst = std::max(worst, double(d2[n]) / std::sqrt(double(n)));
  // attained at n = 12: d(12)/sqrt(12) = sqrt(3)
  CHECK((eh * eh).contains(mpq_class(3)));
  CHECK(worst <= eh.hi_double());
}

TEST_CASE("h values") {
  auto hq = h_value(FieldSpec::rational(), 5, 1);
  CHECK(hq.h >= 4);
  CHECK(hq.certified);
  auto hi = h_value(FieldSpec::quadratic(-1), 10, 1);
  CHECK(hi.h >= 2);
  CHECK(hi.h == std::max(hi.h_formula, hi.h_scan));
  CHECK_THROWS(h_value(FieldSpec::rational(), 2, 1));
}

TEST_CASE("partition product") {
  CHECK(partition_product(FieldSpec::rational(), 1) == 1);
  CHECK(partition_product(FieldSpec::rational(), 4) == 4);
  CHECK(partition_product(FieldSpec::quadratic(-1), 2) == 2);
}

TEST_CASE("bounds never exceed exact counts") {
  for (int r : {3, 4}) {
    closure::ClosureEngine E(FieldSpec::rational(), r);
    for (uint64_t m : {1u, 2u, 3u}) {
      auto lb = lower_bound_pi(r, m);
      for (auto& chi : characters::enumerate_characters(m, true)) CHECK(lb <= E.compute_closure(chi).count);
    }
  }
  for (auto K : {FieldSpec::rational(), FieldSpec::quadratic(-1)}) {
    auto c = closure::compute_closure(K, characters::principal_character(1), 4);
    CHECK(partition_lower_bound(K, 4, 1) <= c.count);
  }
}
