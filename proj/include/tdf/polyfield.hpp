#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdf::polyfield {

class PolyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Polynomial over F_p, coefficients low degree first, normalized.
class PolyFp {
 public:
  PolyFp(uint64_t p, std::vector<uint64_t> coeffs);
  static PolyFp monomial(uint64_t p, int deg, uint64_t c = 1);

  uint64_t p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  uint64_t coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  PolyFp monic() const;
  PolyFp derivative() const;
  std::string to_string() const;

  friend PolyFp operator+(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator-(const PolyFp& a, const PolyFp& b);
  friend PolyFp operator*(const PolyFp& a, const PolyFp& b);
  friend bool operator==(const PolyFp& a, const PolyFp& b) { return a.p_ == b.p_ && a.c_ == b.c_; }

 private:
  void normalize();
  uint64_t p_;
  std::vector<uint64_t> c_;
};

uint64_t mod_inverse(uint64_t a, uint64_t p);
void divmod(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r);
PolyFp mod(const PolyFp& a, const PolyFp& b);
PolyFp gcd(const PolyFp& a, const PolyFp& b);
/// base^e mod m.
PolyFp powmod(const PolyFp& base, const mpz_class& e, const PolyFp& m);

/// Degree -> number of irreducible factors of that degree.
std::map<int, int> factor_degrees(const PolyFp& f);
bool is_squarefree(const PolyFp& f);
bool is_irreducible(const PolyFp& f);
/// First monic irreducible of degree s, ordering coefficient vectors
/// (c_{s-1}, ..., c_0) lexicographically.
PolyFp find_irreducible(uint64_t p, int s);
/// x (x - 1) ... (x - s + 1) mod p; requires p > s.
PolyFp split_polynomial(uint64_t p, int s);
/// Number of distinct roots in F_p.
int root_count(const PolyFp& f);

/// Integer polynomial, coefficients low degree first.
class PolyZ {
 public:
  PolyZ() = default;
  explicit PolyZ(std::vector<mpz_class> coeffs);
  static PolyZ from_longs(const std::vector<long>& coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  const mpz_class& lead() const { return c_.back(); }
  PolyZ derivative() const;
  mpz_class content() const;
  PolyFp reduce(uint64_t p) const;
  std::string to_string() const;
  bool operator==(const PolyZ& o) const { return c_ == o.c_; }

 private:
  void normalize();
  std::vector<mpz_class> c_;
};

/// Resultant by the subresultant pseudo-remainder sequence.
mpz_class resultant(const PolyZ& a, const PolyZ& b);
/// (-1)^{n(n-1)/2} res(f, f') / lc(f).
mpz_class discriminant(const PolyZ& f);
/// Eisenstein at q: q | all non-leading coefficients, q^2 does not divide the constant term.
bool is_eisenstein(const PolyZ& f, const mpz_class& q);
/// Attempts to prove irreducibility over Q (monic f) from factor-degree
/// patterns modulo unramified primes or a shifted Eisenstein criterion.
bool certify_irreducible_over_q(const PolyZ& f, const mpz_class& disc);

}  // namespace tdf::polyfield
