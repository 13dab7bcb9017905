#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tdf/rigor.hpp"

namespace tdf::characters {

inline constexpr uint64_t kEnumerationLimit = 5000;

class CharacterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Zero, or the root of unity exp(2 pi i k / n) with 0 <= k < n, gcd(k, n) = 1.
struct RootValue {
  bool zero = false;
  long k = 0;
  long n = 1;

  static RootValue make(long k, long n);
  bool is_one() const { return !zero && k == 0; }
  /// -1, 0 or 1; throws for non-real values.
  int as_int() const;
  RootValue operator*(const RootValue& o) const;
  bool operator==(const RootValue& o) const { return zero == o.zero && (zero || (k == o.k && n == o.n)); }
  std::string to_string() const;
};

class DirichletCharacter {
 public:
  DirichletCharacter() = default;
  /// exps[a] = exponent over the common denominator `den`, or -1 for gcd(a, m) > 1.
  DirichletCharacter(uint64_t modulus, long den, std::vector<long> exps, std::string label);
  /// Principal character without a value table; any modulus.
  static DirichletCharacter principal(uint64_t modulus);
  /// Principal character for a modulus of any size.
  static DirichletCharacter principal(const mpz_class& modulus);

  /// 0 when the modulus does not fit in 64 bits (principal characters only).
  uint64_t modulus() const { return m_; }
  const std::string& modulus_string() const { return m_text_; }
  /// Rational primes dividing the modulus, increasing.
  const std::vector<uint64_t>& prime_divisors() const { return divisors_; }
  RootValue value(uint64_t n) const;
  /// Real characters only: value in {-1, 0, 1}.
  int real_value(uint64_t n) const;
  long order() const { return order_; }
  bool is_real() const { return order_ <= 2; }
  bool is_principal() const { return order_ == 1; }
  const std::string& label() const { return label_; }

  /// Enclosures of the real and imaginary parts of value(n).
  std::pair<rigor::Enclosure, rigor::Enclosure> complex_value(uint64_t n, int prec) const;

 private:
  uint64_t m_ = 1;
  long den_ = 1;
  long order_ = 1;
  std::vector<long> exps_{0};
  std::string label_ = "principal:1";
  bool compact_ = false;
  std::vector<uint64_t> divisors_;
  std::string m_text_ = "1";
};

DirichletCharacter principal_character(uint64_t m);
DirichletCharacter principal_character(const mpz_class& m);
bool is_fundamental_discriminant(long D);
int kronecker_symbol(long a, long n);
DirichletCharacter kronecker_character(long D);
/// Builds a character from residue -> value pairs; every unit residue must
/// be listed.  Rejects tables that are not completely multiplicative.
DirichletCharacter table_character(uint64_t m, const std::map<uint64_t, RootValue>& values);
std::vector<DirichletCharacter> enumerate_characters(uint64_t m, bool real_only);

/// Enclosures of cos(2 pi k / n) and sin(2 pi k / n).
std::pair<rigor::Enclosure, rigor::Enclosure> unit_circle(long k, long n, int prec);

}  // namespace tdf::characters
