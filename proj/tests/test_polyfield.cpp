#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tdf/polyfield.hpp"

using namespace tdf::polyfield;

namespace {

std::map<int, int> degrees(uint64_t p, std::vector<uint64_t> c) { return factor_degrees(PolyFp(p, std::move(c))); }

// irreducible iff no monic factor of degree <= n/2, by exhaustive division
bool brute_irreducible(const PolyFp& f) {
  int n = f.degree();
  uint64_t p = f.p();
  for (int d = 1; d <= n / 2; ++d) {
    std::vector<uint64_t> c(d + 1, 0);
    c[d] = 1;
    for (;;) {
      PolyFp q(p, c), r(p, {});
      PolyFp quo(p, {});
      divmod(f, PolyFp(p, c), quo, r);
      if (r.is_zero()) return false;
      int k = 0;
      while (k < d && ++c[k] == p) c[k++] = 0;
      if (k == d) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("factor_degrees") {
  CHECK(degrees(5, {1, 0, 1}) == std::map<int, int>{{1, 2}});
  CHECK(degrees(3, {1, 0, 1}) == std::map<int, int>{{2, 1}});
  CHECK(degrees(7, {0, 1}) == std::map<int, int>{{1, 1}});
}

TEST_CASE("is_irreducible") {
  CHECK(is_irreducible(PolyFp(2, {1, 1, 1})));
  CHECK_FALSE(is_irreducible(PolyFp(2, {1, 0, 1})));
  PolyFp f(5, {1, 2, 0, 1});
  CHECK(is_irreducible(f) == brute_irreducible(f));
  std::mt19937_64 rng(5);
  for (uint64_t p : {2u, 3u, 5u, 7u})
    for (int t = 0; t < 40; ++t) {
      int n = 2 + t % 4;
      std::vector<uint64_t> c(n + 1);
      for (auto& x : c) x = rng() % p;
      c[n] = 1;
      PolyFp g(p, c);
      REQUIRE(is_irreducible(g) == brute_irreducible(g));
    }
}

TEST_CASE("degree sum matches the degree") {
  std::mt19937_64 rng(9);
  for (uint64_t p : {2u, 3u, 11u, 101u})
    for (int t = 0; t < 50; ++t) {
      int n = 1 + t % 7;
      std::vector<uint64_t> c(n + 1);
      for (auto& x : c) x = rng() % p;
      c[n] = 1;
      PolyFp g(p, c);
      if (!is_squarefree(g)) continue;
      int total = 0;
      for (auto [d, k] : factor_degrees(g)) total += d * k;
      REQUIRE(total == n);
    }
}

TEST_CASE("find_irreducible") {
  CHECK(find_irreducible(2, 2) == PolyFp(2, {1, 1, 1}));
  CHECK(find_irreducible(5, 1) == PolyFp(5, {0, 1}));
  CHECK(find_irreducible(3, 2) == PolyFp(3, {1, 0, 1}));
  for (uint64_t p : {2u, 3u, 5u, 7u, 13u})
    for (int s = 2; s <= 4; ++s) CHECK(brute_irreducible(find_irreducible(p, s)));
}

TEST_CASE("split_polynomial") {
  CHECK(split_polynomial(5, 2) == PolyFp(5, {0, 4, 1}));
  CHECK(split_polynomial(7, 3) == PolyFp(7, {0, 2, 4, 1}));
  CHECK_THROWS(split_polynomial(3, 3));
  CHECK(root_count(split_polynomial(11, 4)) == 4);
}

TEST_CASE("discriminant") {
  CHECK(discriminant(PolyZ::from_longs({1, 0, 1})) == -4);
  CHECK(discriminant(PolyZ::from_longs({-5, 0, 1})) == 20);
  // x^3 + 90x^2 + 147, frozen from the Sylvester determinant
  auto f = PolyZ::from_longs({147, 0, 90, 1});
  mpz_class sylv = ref::sylvester_resultant(f.coeffs(), f.derivative().coeffs());
  CHECK(sylv == mpz_class("429235443"));
  CHECK(discriminant(f) == -sylv);
  CHECK(discriminant(PolyZ::from_longs({147, 90, 1})) == 7512);
}

TEST_CASE("resultant agrees with Sylvester on random inputs") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 60; ++t) {
    std::vector<long> a(2 + t % 4), b(2 + (t / 4) % 4);
    for (auto& x : a) x = static_cast<long>(rng() % 41) - 20;
    for (auto& x : b) x = static_cast<long>(rng() % 41) - 20;
    if (a.back() == 0) a.back() = 1;
    if (b.back() == 0) b.back() = 3;
    PolyZ A = PolyZ::from_longs(a), B = PolyZ::from_longs(b);
    REQUIRE(resultant(A, B) == ref::sylvester_resultant(A.coeffs(), B.coeffs()));
  }
}

TEST_CASE("Eisenstein and irreducibility over Q") {
  auto f = PolyZ::from_longs({147, 90, 1});
  CHECK(is_eisenstein(f, 3));
  CHECK_FALSE(is_eisenstein(f, 7));
  CHECK(certify_irreducible_over_q(f, discriminant(f)));
  auto g = PolyZ::from_longs({-1, 0, 1});
  CHECK_FALSE(certify_irreducible_over_q(g, discriminant(g)));
}
