#include <doctest.h>

#include <random>

#include "tdf/characters.hpp"

using namespace tdf::characters;

TEST_CASE("principal characters") {
  auto c1 = principal_character(1);
  CHECK(c1.is_principal());
  CHECK(c1.real_value(12345) == 1);
  auto c5 = principal_character(5);
  CHECK(c5.real_value(10) == 0);
  CHECK(c5.real_value(7) == 1);
}

TEST_CASE("kronecker characters") {
  auto k = kronecker_character(-4);
  CHECK(k.real_value(3) == -1);
  CHECK(k.real_value(2) == 0);
  CHECK(k.real_value(5) == 1);
  CHECK(kronecker_character(5).real_value(4) == 1);
  CHECK_THROWS(kronecker_character(-3 * 4));
}

TEST_CASE("kronecker symbol against quadratic residues") {
  // odd prime moduli: Legendre symbol by brute force
  for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
    for (long a = 1; a < p; ++a) {
      bool square = false;
      for (long x = 1; x < p; ++x)
        if ((x * x) % p == a) square = true;
      CHECK(kronecker_symbol(a, p) == (square ? 1 : -1));
    }
  }
}

TEST_CASE("enumerate_characters") {
  CHECK(enumerate_characters(1, false).size() == 1);
  auto all5 = enumerate_characters(5, false);
  CHECK(all5.size() == 4);
  CHECK(enumerate_characters(5, true).size() == 2);
  auto all8 = enumerate_characters(8, false);
  CHECK(all8.size() == 4);
  for (auto& c : all8) CHECK(c.is_real());
  CHECK(enumerate_characters(15, false).size() == 8);
}

TEST_CASE("complete multiplicativity") {
  std::mt19937_64 rng(3);
  for (uint64_t m : {5u, 7u, 8u, 12u, 21u}) {
    auto all = enumerate_characters(m, false);
    std::uniform_int_distribution<uint64_t> d(1, 10'000);
    for (auto& chi : all)
      for (int t = 0; t < 10'000 / static_cast<int>(all.size()); ++t) {
        uint64_t a = d(rng), b = d(rng);
        REQUIRE(chi.value(a * b) == chi.value(a) * chi.value(b));
      }
  }
}

TEST_CASE("table_character rejects non-multiplicative tables") {
  std::map<uint64_t, RootValue> bad{{1, RootValue::make(0, 1)}, {2, RootValue::make(0, 1)},
                                    {3, RootValue::make(1, 2)}, {4, RootValue::make(0, 1)}};
  CHECK_THROWS(table_character(5, bad));
  std::map<uint64_t, RootValue> good{{1, RootValue::make(0, 1)}, {2, RootValue::make(1, 2)},
                                     {3, RootValue::make(1, 2)}, {4, RootValue::make(0, 1)}};
  auto chi = table_character(5, good);
  CHECK(chi.is_real());
  CHECK(chi.real_value(2) == -1);
}

TEST_CASE("complex values lie on the unit circle") {
  auto all = enumerate_characters(7, false);
  for (auto& chi : all) {
    auto [re, im] = chi.complex_value(3, 128);
    auto norm = re * re + im * im;
    CHECK(norm.contains(mpq_class(1)));
  }
}

TEST_CASE("principal characters with wide moduli") {
  mpz_class m("1922760350154212639070");  // 2 3 5 ... 59
  auto chi = principal_character(m);
  CHECK(chi.modulus() == 0);
  CHECK(chi.modulus_string() == m.get_str());
  CHECK(chi.prime_divisors().size() == 17);
  CHECK(chi.real_value(59) == 0);
  CHECK(chi.real_value(61) == 1);
  CHECK(principal_character(mpz_class(30)).modulus() == 30);
  CHECK_THROWS(principal_character(mpz_class("1000000000000000000000000000000000039") * 1000003));
}
