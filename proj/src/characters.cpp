#include "tdf/characters.hpp"

#include <numeric>

#include "tdf/primes.hpp"

namespace tdf::characters {

namespace {

long pos_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = static_cast<unsigned __int128>(r) * a % m;
    a = static_cast<unsigned __int128>(a) * a % m;
    e >>= 1;
  }
  return r;
}

bool squarefree(long n) {
  if (n < 0) n = -n;
  for (auto [p, e] : primes::factorize(static_cast<uint64_t>(n)))
    if (e > 1) return false;
  return true;
}

// A cyclic factor of the unit group mod m: generator g (as a residue mod m),
// its order, and the discrete log of every residue mod m in this factor.
struct CyclicFactor {
  long order;
  std::vector<long> dlog;  // indexed by residue mod m; -1 off units
};

std::vector<CyclicFactor> unit_group(uint64_t m) {
  std::vector<CyclicFactor> out;
  for (auto [p, k] : primes::factorize(m)) {
    uint64_t q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    auto lift = [&](std::vector<long> local, long order) {
      CyclicFactor f{order, std::vector<long>(m, -1)};
      for (uint64_t a = 0; a < m; ++a)
        if (primes::gcd(a, m) == 1) f.dlog[a] = local[a % q];
      out.push_back(std::move(f));
    };
    if (p == 2) {
      if (k == 1) continue;
      std::vector<long> sign(q, -1);
      for (uint64_t a = 1; a < q; a += 2) sign[a] = (a % 4 == 1) ? 0 : 1;
      lift(sign, 2);
      if (k >= 3) {
        long ord = static_cast<long>(q / 4);
        std::vector<long> lg(q, -1);
        uint64_t x = 1;
        for (long t = 0; t < ord; ++t) {
          lg[x] = t;
          lg[q - x] = t;
          x = x * 5 % q;
        }
        lift(lg, ord);
      }
      continue;
    }
    uint64_t phi = q / p * (p - 1);
    auto phi_factors = primes::factorize(phi);
    uint64_t g = 2;
    for (;; ++g) {
      if (g % p == 0) continue;
      bool ok = true;
      for (auto [r, e] : phi_factors)
        if (powmod(g, phi / r, q) == 1) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    std::vector<long> lg(q, -1);
    uint64_t x = 1;
    for (uint64_t t = 0; t < phi; ++t) {
      lg[x] = static_cast<long>(t);
      x = x * g % q;
    }
    lift(lg, static_cast<long>(phi));
  }
  return out;
}

}  // namespace

RootValue RootValue::make(long k, long n) {
  if (n <= 0) throw CharacterError("root of unity denominator must be positive");
  k = pos_mod(k, n);
  long g = std::gcd(k, n);
  if (k == 0) return RootValue{false, 0, 1};
  return RootValue{false, k / g, n / g};
}

int RootValue::as_int() const {
  if (zero) return 0;
  if (n == 1) return 1;
  if (n == 2) return -1;
  throw CharacterError("character value " + to_string() + " is not real");
}

RootValue RootValue::operator*(const RootValue& o) const {
  if (zero || o.zero) return RootValue{true, 0, 1};
  long l = std::lcm(n, o.n);
  return make(k * (l / n) + o.k * (l / o.n), l);
}

std::string RootValue::to_string() const {
  if (zero) return "0";
  if (k == 0) return "1";
  if (n == 2) return "-1";
  return "e(" + std::to_string(k) + "/" + std::to_string(n) + ")";
}

DirichletCharacter::DirichletCharacter(uint64_t modulus, long den, std::vector<long> exps, std::string label)
    : m_(modulus), den_(den), exps_(std::move(exps)), label_(std::move(label)) {
  if (m_ == 0) throw CharacterError("modulus must be positive");
  if (exps_.size() != m_) throw CharacterError("value table size mismatch");
  for (auto [q, k] : primes::factorize(m_)) divisors_.push_back(q);
  m_text_ = std::to_string(m_);
  long g = den_;
  for (long e : exps_)
    if (e >= 0) g = std::gcd(g, e);
  order_ = den_ / (g == 0 ? den_ : g);
  if (order_ == 0) order_ = 1;
}

DirichletCharacter DirichletCharacter::principal(uint64_t modulus) {
  if (modulus == 0) throw CharacterError("modulus must be positive");
  DirichletCharacter c;
  c.m_ = modulus;
  c.compact_ = true;
  c.exps_.clear();
  for (auto [q, k] : primes::factorize(modulus)) c.divisors_.push_back(q);
  c.label_ = "principal:" + std::to_string(modulus);
  c.m_text_ = std::to_string(modulus);
  return c;
}

DirichletCharacter DirichletCharacter::principal(const mpz_class& modulus) {
  if (modulus <= 0) throw CharacterError("modulus must be positive");
  if (modulus.fits_ulong_p()) return principal(modulus.get_ui());
  DirichletCharacter c;
  c.m_ = 0;
  c.compact_ = true;
  c.exps_.clear();
  mpz_class rest = modulus;
  const uint64_t trial = 1'000'000;
  primes::for_each_prime(2, trial, [&](uint64_t q) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
      c.divisors_.push_back(q);
      while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) rest /= static_cast<unsigned long>(q);
    }
  });
  // a cofactor below trial^2 with no small factor is prime
  if (rest > 1) {
    if (rest >= mpz_class(trial) * trial) throw CharacterError("modulus has an unfactored part " + rest.get_str());
    c.divisors_.push_back(rest.get_ui());
  }
  c.m_text_ = modulus.get_str();
  c.label_ = "principal:" + c.m_text_;
  return c;
}

RootValue DirichletCharacter::value(uint64_t n) const {
  if (compact_) {
    for (uint64_t q : divisors_)
      if (n % q == 0) return RootValue{true, 0, 1};
    return RootValue{false, 0, 1};
  }
  long e = exps_[n % m_];
  if (e < 0) return RootValue{true, 0, 1};
  return RootValue::make(e, den_);
}

int DirichletCharacter::real_value(uint64_t n) const { return value(n).as_int(); }

std::pair<rigor::Enclosure, rigor::Enclosure> DirichletCharacter::complex_value(uint64_t n, int prec) const {
  RootValue v = value(n);
  if (v.zero) return {rigor::Enclosure(0L, prec), rigor::Enclosure(0L, prec)};
  return unit_circle(v.k, v.n, prec);
}

std::pair<rigor::Enclosure, rigor::Enclosure> unit_circle(long k, long n, int prec) {
  RootValue v = RootValue::make(k, n);
  if (v.n == 1) return {rigor::Enclosure(1L, prec), rigor::Enclosure(0L, prec)};
  if (v.n == 2) return {rigor::Enclosure(-1L, prec), rigor::Enclosure(0L, prec)};
  if (v.n == 4) {
    long s = v.k == 1 ? 1 : -1;
    return {rigor::Enclosure(0L, prec), rigor::Enclosure(s, prec)};
  }
  int wp = prec + 32;
  rigor::Mp angle(wp), c(wp), s(wp), d(wp);
  mpfr_const_pi(angle.get(), MPFR_RNDN);
  mpfr_mul_si(angle.get(), angle.get(), 2 * v.k, MPFR_RNDN);
  mpfr_div_si(angle.get(), angle.get(), v.n, MPFR_RNDN);
  mpfr_cos(c.get(), angle.get(), MPFR_RNDN);
  mpfr_sin(s.get(), angle.get(), MPFR_RNDN);
  // angle carries at most a few ulps of error at wp bits; cos and sin are
  // 1-Lipschitz, so a 2^-prec radius is ample.
  mpfr_set_ui_2exp(d.get(), 1, -prec, MPFR_RNDU);
  auto widen = [&](const rigor::Mp& x) {
    rigor::Mp lo(prec), hi(prec);
    mpfr_sub(lo.get(), x.get(), d.get(), MPFR_RNDD);
    mpfr_add(hi.get(), x.get(), d.get(), MPFR_RNDU);
    return rigor::Enclosure(std::move(lo), std::move(hi), prec);
  };
  return {widen(c), widen(s)};
}

DirichletCharacter principal_character(uint64_t m) { return DirichletCharacter::principal(m); }
DirichletCharacter principal_character(const mpz_class& m) { return DirichletCharacter::principal(m); }

bool is_fundamental_discriminant(long D) {
  if (D == 1) return true;
  if (D == 0) return false;
  long r = pos_mod(D, 4);
  if (r == 1) return squarefree(D);
  if (r != 0) return false;
  long d = D / 4;
  long r4 = pos_mod(d, 4);
  return (r4 == 2 || r4 == 3) && squarefree(d);
}

int kronecker_symbol(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v > 0) {
    if (a % 2 == 0) return 0;
    long a8 = pos_mod(a, 8);
    if ((v & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  // Jacobi symbol (a | n) for odd n > 0
  long x = pos_mod(a, n);
  long y = n;
  while (x != 0) {
    while (x % 2 == 0) {
      x /= 2;
      long y8 = y % 8;
      if (y8 == 3 || y8 == 5) result = -result;
    }
    std::swap(x, y);
    if (x % 4 == 3 && y % 4 == 3) result = -result;
    x %= y;
  }
  return y == 1 ? result : 0;
}

DirichletCharacter kronecker_character(long D) {
  if (!is_fundamental_discriminant(D)) throw CharacterError("not a fundamental discriminant: " + std::to_string(D));
  uint64_t m = static_cast<uint64_t>(D < 0 ? -D : D);
  std::vector<long> exps(m);
  for (uint64_t a = 0; a < m; ++a) {
    int k = kronecker_symbol(D, static_cast<long>(a == 0 ? m : a));
    if (m == 1) k = 1;
    exps[a] = k == 0 ? -1 : (k == 1 ? 0 : 1);
  }
  return DirichletCharacter(m, 2, std::move(exps), "kronecker:" + std::to_string(D));
}

DirichletCharacter table_character(uint64_t m, const std::map<uint64_t, RootValue>& values) {
  if (m == 0) throw CharacterError("modulus must be positive");
  long den = 1;
  for (auto& [a, v] : values) {
    if (a >= m) throw CharacterError("residue " + std::to_string(a) + " out of range");
    bool unit = primes::gcd(a, m) == 1;
    if (v.zero && unit) throw CharacterError("unit residue " + std::to_string(a) + " mapped to 0");
    if (!v.zero && !unit) throw CharacterError("non-unit residue " + std::to_string(a) + " mapped to nonzero");
    if (!v.zero) den = std::lcm(den, v.n);
  }
  std::vector<long> exps(m, -1);
  for (uint64_t a = 0; a < m; ++a) {
    if (primes::gcd(a, m) != 1) continue;
    auto it = values.find(a);
    if (it == values.end()) throw CharacterError("missing value for unit residue " + std::to_string(a));
    exps[a] = it->second.k * (den / it->second.n);
  }
  if (m > 1 && exps[1 % m] != 0) throw CharacterError("value at 1 must be 1");
  DirichletCharacter chi(m, den, exps, "table:" + std::to_string(m));
  for (uint64_t a = 1; a < m; ++a) {
    if (exps[a] < 0) continue;
    for (uint64_t b = a; b < m; ++b) {
      if (exps[b] < 0) continue;
      if (!(chi.value(a * b % m) == chi.value(a) * chi.value(b)))
        throw CharacterError("table is not multiplicative at (" + std::to_string(a) + ", " + std::to_string(b) + ")");
    }
  }
  return chi;
}

std::vector<DirichletCharacter> enumerate_characters(uint64_t m, bool real_only) {
  if (m == 0) throw CharacterError("modulus must be positive");
  if (m > kEnumerationLimit) throw CharacterError("modulus too large to enumerate: " + std::to_string(m));
  auto factors = unit_group(m);
  long den = 1;
  for (auto& f : factors) den = std::lcm(den, f.order);
  std::vector<DirichletCharacter> out;
  std::vector<long> t(factors.size(), 0);
  size_t index = 0;
  while (true) {
    bool real = true;
    for (size_t i = 0; i < factors.size(); ++i)
      if ((2 * t[i]) % factors[i].order != 0) real = false;
    if (!real_only || real) {
      std::vector<long> exps(m, -1);
      for (uint64_t a = 0; a < m; ++a) {
        if (primes::gcd(a, m) != 1) continue;
        long e = 0;
        for (size_t i = 0; i < factors.size(); ++i)
          e += t[i] * factors[i].dlog[a] % factors[i].order * (den / factors[i].order);
        exps[a] = e % den;
      }
      out.emplace_back(m, den, std::move(exps), "index:" + std::to_string(m) + ":" + std::to_string(index));
    }
    ++index;
    size_t i = 0;
    while (i < factors.size() && ++t[i] == factors[i].order) t[i++] = 0;
    if (i == factors.size()) break;
  }
  return out;
}

}  // namespace tdf::characters
