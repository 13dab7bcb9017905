#include <doctest.h>

#include "support.hpp"
#include "tdf/primes.hpp"

using namespace tdf::primes;

TEST_CASE("pi") {
  CHECK(pi(uint64_t{1}) == 0);
  CHECK(pi(uint64_t{10}) == 4);
  CHECK(pi(10.9) == 4);
  // frozen from ref::sieve
  CHECK(ref::sieve(1'000'000).size() == 78498);
  CHECK(pi(uint64_t{1'000'000}) == 78498);
}

TEST_CASE("pi agrees with trial division on small ranges") {
  for (uint64_t n = 0; n <= 3000; n += 37) CHECK(pi(n) == ref::slow_pi(n));
}

TEST_CASE("segmented counts beyond the stored table") {
  uint64_t lo = 2'000'000'000ULL, hi = lo + 100'000;
  uint64_t n = 0;
  for (uint64_t k = lo; k <= hi; ++k) n += is_prime(k);
  CHECK(count_primes(lo, hi) == n);
}

TEST_CASE("pi_m") {
  CHECK(pi_m(10.0, 1) == 4);
  CHECK(pi_m(10.0, 6) == 2);
  CHECK(pi_m(4.0, 2) == 1);
}

TEST_CASE("nth_prime") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(4) == 7);
  CHECK(ref::sieve(8000)[999] == 7919);
  CHECK(nth_prime(1000) == 7919);
  CHECK_THROWS(nth_prime(0));
}

TEST_CASE("Bertrand gaps across the table") {
  auto ps = ref::sieve(2'000'000);
  for (size_t j = 0; j + 1 < ps.size(); ++j) REQUIRE(ps[j + 1] < 2 * ps[j]);
  for (uint64_t j = 1; j < 5000; ++j) REQUIRE(nth_prime(j + 1) < 2 * nth_prime(j));
}

TEST_CASE("factorize") {
  auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<uint64_t, int>{2, 3});
  CHECK(f[1] == std::pair<uint64_t, int>{3, 2});
  CHECK(f[2] == std::pair<uint64_t, int>{5, 1});
  CHECK(factorize(1).empty());
  CHECK(next_prime_after(13) == 17);
  CHECK(is_prime(1'000'000'007ULL));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("enumeration beyond capacity throws") {
  CHECK_THROWS_AS(for_each_prime(kCountCapacity, kCountCapacity + 10, [](uint64_t) {}), CapacityError);
}
