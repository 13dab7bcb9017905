#include "tdf/primes.hpp"

#include <cmath>
#include <mutex>
#include <string>

namespace tdf::primes {

namespace {

std::mutex g_mutex;
std::shared_ptr<const PrimeTable> g_table;

uint64_t isqrt(uint64_t n) {
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<uint32_t> simple_sieve(uint64_t limit) {
  std::vector<uint8_t> comp(limit + 1, 0);
  std::vector<uint32_t> out;
  for (uint64_t i = 2; i <= limit; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<uint32_t>(i));
    for (uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
  }
  return out;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return static_cast<unsigned __int128>(a) * b % m; }

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

void sieve_segment(uint64_t lo, uint64_t hi, const std::vector<uint32_t>& base, std::vector<uint8_t>& composite) {
  composite.assign(hi - lo + 1, 0);
  for (uint64_t n = lo; n <= hi && n < 2; ++n) composite[n - lo] = 1;
  for (uint32_t p32 : base) {
    uint64_t p = p32;
    if (p * p > hi) break;
    uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
    for (uint64_t j = start; j <= hi; j += p) composite[j - lo] = 1;
  }
}

uint64_t PrimeTable::count_upto(uint64_t x) const {
  return static_cast<uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) - primes.begin());
}

std::shared_ptr<const PrimeTable> table(uint64_t limit) {
  std::lock_guard<std::mutex> lock(g_mutex);
  if (!g_table) {
    auto t = std::make_shared<PrimeTable>();
    t->limit = 1 << 16;
    t->primes = simple_sieve(t->limit);
    g_table = t;
  }
  if (limit <= g_table->limit) return g_table;
  if (limit > kTableCapacity)
    throw CapacityError("prime table limit " + std::to_string(limit) + " exceeds capacity " +
                        std::to_string(kTableCapacity));
  uint64_t target = std::min<uint64_t>(kTableCapacity, std::max(limit, g_table->limit * 2));
  auto next = std::make_shared<PrimeTable>();
  next->primes = g_table->primes;
  next->limit = target;
  auto base = simple_sieve(isqrt(target) + 1);
  std::vector<uint8_t> comp;
  const uint64_t seg = 1 << 20;
  for (uint64_t a = g_table->limit + 1; a <= target; a += seg) {
    uint64_t b = std::min(target, a + seg - 1);
    sieve_segment(a, b, base, comp);
    for (uint64_t n = a; n <= b; ++n)
      if (!comp[n - a]) next->primes.push_back(static_cast<uint32_t>(n));
  }
  g_table = next;
  return g_table;
}

uint64_t count_primes(uint64_t lo, uint64_t hi) {
  if (hi < 2 || lo > hi) return 0;
  if (hi > kCountCapacity) throw CapacityError("prime count beyond capacity " + std::to_string(kCountCapacity));
  auto t = table(0);
  if (hi <= t->limit || hi <= (1u << 24)) {
    t = table(hi);
    return t->count_upto(hi) - (lo > 0 ? t->count_upto(lo - 1) : 0);
  }
  uint64_t total = 0;
  auto base = table(isqrt(hi) + 1);
  if (lo <= t->limit) {
    total += t->count_upto(t->limit) - (lo > 0 ? t->count_upto(lo - 1) : 0);
    lo = t->limit + 1;
  }
  std::vector<uint8_t> comp;
  const uint64_t seg = 1 << 20;
  for (uint64_t a = lo; a <= hi; a += seg) {
    uint64_t b = std::min(hi, a + seg - 1);
    sieve_segment(a, b, base->primes, comp);
    for (uint8_t c : comp) total += !c;
  }
  return total;
}

uint64_t pi(uint64_t x) { return count_primes(2, x); }

uint64_t pi(double x) {
  if (!(x >= 0)) throw std::invalid_argument("pi requires x >= 0");
  if (x < 2) return 0;
  if (x > static_cast<double>(kCountCapacity)) throw CapacityError("pi argument beyond capacity");
  return pi(static_cast<uint64_t>(std::floor(x)));
}

uint64_t pi_m(double x, uint64_t m) {
  if (m == 0) throw std::invalid_argument("pi_m requires m >= 1");
  uint64_t c = pi(x);
  uint64_t xi = x < 2 ? 0 : static_cast<uint64_t>(std::floor(x));
  for (auto [p, e] : factorize(m))
    if (p <= xi) --c;
  return c;
}

uint64_t nth_prime(uint64_t j) {
  if (j == 0) throw std::invalid_argument("nth_prime index starts at 1");
  auto t = table(0);
  while (t->primes.size() < j) {
    if (t->limit >= kTableCapacity) throw CapacityError("nth_prime beyond table capacity");
    t = table(t->limit * 2);
  }
  return t->primes[j - 1];
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool comp = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        comp = false;
        break;
      }
    }
    if (comp) return false;
  }
  return true;
}

std::vector<std::pair<uint64_t, int>> factorize(uint64_t n) {
  std::vector<std::pair<uint64_t, int>> out;
  if (n < 2) return out;
  auto push = [&](uint64_t p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  auto t = table(0);
  for (uint32_t p : t->primes) {
    if (static_cast<uint64_t>(p) * p > n) break;
    push(p);
  }
  if (n > 1 && static_cast<uint64_t>(t->limit) * t->limit < n && !is_prime(n)) {
    for (uint64_t p = t->limit + 1; p * p <= n; p += 2)
      if (n % p == 0) push(p);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

uint64_t next_prime_after(uint64_t n) {
  uint64_t c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

uint64_t gcd(uint64_t a, uint64_t b) {
  while (b) {
    uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace tdf::primes
