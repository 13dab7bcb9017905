#include <doctest.h>

#include "support.hpp"
#include "tdf/numberfield.hpp"

using namespace tdf;
using namespace tdf::numberfield;

TEST_CASE("norm streams") {
  auto q = norm_stream(FieldSpec::rational(), 10);
  REQUIRE(q.size() == 4);
  for (uint64_t n : {2u, 3u, 5u, 7u}) CHECK(q.multiplicity(n) == 1);

  auto gi = norm_stream(FieldSpec::quadratic(-1), 10);
  CHECK(gi.multiplicity(2) == 1);
  CHECK(gi.at(gi.index_of(2)).e == 2);
  CHECK(gi.multiplicity(5) == 2);
  CHECK(gi.multiplicity(9) == 1);
  CHECK(gi.multiplicity(3) == 0);
  CHECK(gi.multiplicity(4) == 0);

  auto z5 = norm_stream(FieldSpec::cyclotomic(5), 20);
  CHECK(z5.multiplicity(5) == 1);
  CHECK(z5.multiplicity(11) == 4);
  CHECK(z5.multiplicity(16) == 1);
  CHECK(z5.multiplicity(2) == 0);
}

TEST_CASE("streams are ordered by norm") {
  for (auto K : {FieldSpec::quadratic(5), FieldSpec::cyclotomic(7), FieldSpec::quadratic(-3)}) {
    auto S = norm_stream(K, 5000);
    for (size_t k = 2; k <= S.size(); ++k) REQUIRE(S.norm(k - 1) <= S.norm(k));
  }
}

TEST_CASE("splitting degrees sum to the field degree") {
  for (auto K : {FieldSpec::quadratic(-5), FieldSpec::cyclotomic(5), FieldSpec::cyclotomic(8)})
    for (uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 41u}) {
      auto c = K.decompose(p);
      REQUIRE(c.e * c.f * c.g == K.degree());
    }
}

TEST_CASE("a_K") {
  auto gi = FieldSpec::quadratic(-1);
  CHECK(a_K(FieldSpec::rational(), 1) == 1);
  CHECK(a_K(gi, 1) == 1);
  CHECK(ref::gaussian_ideals(25) == 3);
  CHECK(a_K(gi, 25) == 3);
  CHECK(a_K(gi, 3) == 0);
  auto t = a_K_table(gi, 2000);
  for (uint64_t n = 1; n <= 2000; ++n) REQUIRE(t[n] == ref::gaussian_ideals(n));
}

TEST_CASE("b_K") {
  CHECK(b_K(FieldSpec::rational(), 7) == 1);
  CHECK(b_K(FieldSpec::quadratic(-1), 5) == 2);
  CHECK(b_K(FieldSpec::quadratic(-1), 4) == 0);
  CHECK(b_K(FieldSpec::quadratic(-1), 2) == 1);
}

TEST_CASE("d_s") {
  CHECK(d_s(3, 1) == 1);
  CHECK(d_s(2, 12) == 6);
  CHECK(ref::ordered_factorizations(3, 4) == 6);
  CHECK(d_s(3, 4) == 6);
  auto t = d_s_table(3, 500);
  for (uint64_t n = 1; n <= 500; ++n) REQUIRE(t[n] == ref::ordered_factorizations(3, n));
}

TEST_CASE("a_K is dominated by d_s") {
  const uint64_t N = 10'000;
  for (auto K : {FieldSpec::rational(), FieldSpec::quadratic(-1), FieldSpec::quadratic(5), FieldSpec::cyclotomic(5)}) {
    auto a = a_K_table(K, N);
    auto d = d_s_table(K.degree(), N);
    for (uint64_t n = 1; n <= N; ++n) REQUIRE(a[n] <= d[n]);
  }
}

TEST_CASE("sigma") {
  auto chi = characters::principal_character(1);
  rigor::Enclosure r(2L);
  auto Q = norm_stream(FieldSpec::rational(), 100);
  CHECK(sigma(Q, chi, r, IdealFactorization{}).contains(mpq_class(1)));
  CHECK(sigma(Q, chi, r, ideal_of_integer(Q, 6)).contains(mpq_class(25, 18)));

  auto G = norm_stream(FieldSpec::quadratic(-1), 100);
  IdealFactorization p5{{{G.index_of(5, 0), 1}}};
  CHECK(sigma(G, chi, r, p5).contains(mpq_class(26, 25)));
}

TEST_CASE("m_I") {
  auto G = norm_stream(FieldSpec::quadratic(-1), 100);
  CHECK(m_I(G, IdealFactorization{}, 1) == 1);
  IdealFactorization both{{{G.index_of(5, 0), 1}, {G.index_of(5, 1), 1}}};
  CHECK(m_I(G, both, 5) == 2);
  CHECK(m_I(G, both, 25) == 1);
  CHECK(m_I(G, both, 1) == 1);
  CHECK(ideal_norm(G, both) == 25);
}

TEST_CASE("field validation") {
  CHECK_THROWS(FieldSpec::quadratic(4));
  CHECK_THROWS(FieldSpec::quadratic(1));
  CHECK(FieldSpec::cyclotomic(2).degree() == 1);
  CHECK(FieldSpec::cyclotomic(6).degree() == 2);
  CHECK_THROWS(FieldSpec::cyclotomic(0));
  CHECK(FieldSpec::cyclotomic(5).degree() == 4);
  CHECK(FieldSpec::quadratic(-1).quadratic_discriminant() == -4);
  CHECK(FieldSpec::quadratic(5).quadratic_discriminant() == 5);
}

TEST_CASE("tie permutation keeps the multiset of norms") {
  auto K = FieldSpec::cyclotomic(5);
  auto a = norm_stream(K, 3000), b = norm_stream(K, 3000, 17);
  REQUIRE(a.size() == b.size());
  for (size_t k = 1; k <= a.size(); ++k) REQUIRE(a.norm(k) == b.norm(k));
}
