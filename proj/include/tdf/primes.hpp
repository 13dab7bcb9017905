#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tdf::primes {

/// Largest limit the stored table may reach.
inline constexpr uint64_t kTableCapacity = 1'000'000'000ULL;
/// Largest argument accepted by the counting functions.
inline constexpr uint64_t kCountCapacity = 100'000'000'000ULL;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PrimeTable {
  uint64_t limit = 0;
  std::vector<uint32_t> primes;

  /// Number of primes <= x for x <= limit.
  uint64_t count_upto(uint64_t x) const;
};

/// Immutable snapshot covering at least [2, limit].
std::shared_ptr<const PrimeTable> table(uint64_t limit);

/// Calls f(p) for each prime p in [lo, hi], in increasing order.
template <class F>
void for_each_prime(uint64_t lo, uint64_t hi, F&& f);

/// Counts primes in [lo, hi] without storing them.
uint64_t count_primes(uint64_t lo, uint64_t hi);

uint64_t pi(double x);
uint64_t pi(uint64_t x);
/// Primes p <= x with p not dividing m.
uint64_t pi_m(double x, uint64_t m);
/// p_1 = 2.
uint64_t nth_prime(uint64_t j);

bool is_prime(uint64_t n);
std::vector<std::pair<uint64_t, int>> factorize(uint64_t n);
uint64_t next_prime_after(uint64_t n);
uint64_t gcd(uint64_t a, uint64_t b);

// --- implementation of the template ---
void sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& base, std::vector<uint8_t>& composite);

template <class F>
void for_each_prime(uint64_t lo, uint64_t hi, F&& f) {
  if (hi < 2 || lo > hi) return;
  if (lo < 2) lo = 2;
  auto t = table(0);
  if (hi <= t->limit) {
    auto it = std::lower_bound(t->primes.begin(), t->primes.end(), lo);
    for (; it != t->primes.end() && *it <= hi; ++it) f(static_cast<uint64_t>(*it));
    return;
  }
  if (hi <= kTableCapacity) {
    t = table(hi);
    auto it = std::lower_bound(t->primes.begin(), t->primes.end(), lo);
    for (; it != t->primes.end() && *it <= hi; ++it) f(static_cast<uint64_t>(*it));
    return;
  }
  if (hi > kCountCapacity) throw CapacityError("prime enumeration beyond capacity");
  uint64_t root = 1;
  while ((root + 1) * (root + 1) <= hi) ++root;
  auto base = table(root);
  std::vector<uint8_t> comp;
  const uint64_t seg = 1 << 20;
  for (uint64_t a = lo; a <= hi; a += seg) {
    uint64_t b = std::min(hi, a + seg - 1);
    sieve_segment(a, b, base->primes, comp);
    for (uint64_t n = a; n <= b; ++n)
      if (!comp[n - a]) f(n);
  }
}

}  // namespace tdf::primes
