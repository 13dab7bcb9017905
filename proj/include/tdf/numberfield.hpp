#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tdf/characters.hpp"
#include "tdf/polyfield.hpp"
#include "tdf/rigor.hpp"

namespace tdf::numberfield {

class FieldError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RamifiedUndeclared : public FieldError {
 public:
  explicit RamifiedUndeclared(uint64_t p);
  uint64_t p;
};

class NonGalois : public FieldError {
 public:
  NonGalois(uint64_t p, const std::string& pattern);
  uint64_t p;
};

/// Splitting type of a rational prime: g primes of norm p^f, ramification e.
struct PrimeIdealClass {
  uint64_t p = 0;
  int e = 1;
  int f = 1;
  int g = 1;
};

enum class FieldKind { Rational, Quadratic, Cyclotomic, Polynomial };

class FieldSpec {
 public:
  static FieldSpec rational();
  /// Q(sqrt d), d squarefree and != 0, 1.
  static FieldSpec quadratic(long d);
  /// Q(zeta_m), m >= 3.
  static FieldSpec cyclotomic(uint64_t m);
  /// Q(alpha) for a monic irreducible f asserted Galois; primes dividing
  /// disc(f) must appear in `ramified` before the stream reaches them.
  static FieldSpec polynomial(const polyfield::PolyZ& f, std::vector<PrimeIdealClass> ramified = {});

  FieldKind kind() const { return kind_; }
  int degree() const { return degree_; }
  long quadratic_d() const { return d_; }
  uint64_t cyclotomic_m() const { return m_; }
  const polyfield::PolyZ& poly() const { return poly_; }
  const mpz_class& poly_disc() const { return disc_; }
  const std::map<uint64_t, PrimeIdealClass>& ramified() const { return ramified_; }
  /// Field discriminant for the quadratic variant.
  long quadratic_discriminant() const;

  PrimeIdealClass decompose(uint64_t p) const;
  std::string name() const;

 private:
  FieldKind kind_ = FieldKind::Rational;
  int degree_ = 1;
  long d_ = 0;
  uint64_t m_ = 1;
  polyfield::PolyZ poly_;
  mpz_class disc_ = 1;
  std::map<uint64_t, PrimeIdealClass> ramified_;
};

/// Splitting type of p in Q(sqrt Delta) for any non-square discriminant Delta of a
/// monic quadratic, including primes dividing the index.
PrimeIdealClass quadratic_local_class(const mpz_class& delta, uint64_t p);

struct StreamEntry {
  uint64_t norm;
  uint64_t p;
  int f;
  int e;
  int conj;       // which of the g conjugate primes above p
  int tie_rank;   // position among equal norms
};

/// Prime ideals of norm <= up_to, ordered by (norm, p, tie_rank); index k is 1-based.
class NormStream {
 public:
  uint64_t up_to = 0;
  int degree = 1;
  std::vector<StreamEntry> entries;
  /// Primes p <= up_to whose prime ideals all have norm > up_to.
  std::vector<PrimeIdealClass> overflow;

  size_t size() const { return entries.size(); }
  const StreamEntry& at(size_t k) const { return entries.at(k - 1); }
  uint64_t norm(size_t k) const { return entries.at(k - 1).norm; }
  /// Stream index of the conj-th prime above p, or 0.
  size_t index_of(uint64_t p, int conj = 0) const;
  /// Number of prime ideals of norm exactly n.
  int multiplicity(uint64_t n) const;

 private:
  friend NormStream norm_stream(const FieldSpec&, uint64_t, std::optional<uint64_t>);
  std::unordered_map<uint64_t, size_t> first_of_p_;
};

/// tie_seed, when given, permutes the conjugate ranks used to order equal norms.
NormStream norm_stream(const FieldSpec& K, uint64_t up_to_norm, std::optional<uint64_t> tie_seed = std::nullopt);

uint64_t a_K(const FieldSpec& K, uint64_t n);
/// a_K(n) for 0 <= n <= N (index 0 unused).
std::vector<uint64_t> a_K_table(const FieldSpec& K, uint64_t N);
uint64_t b_K(const FieldSpec& K, uint64_t n);
uint64_t d_s(int s, uint64_t n);
std::vector<uint64_t> d_s_table(int s, uint64_t N);
uint64_t binomial(uint64_t n, uint64_t k);

/// I = prod 𝔭_k^{e_k}; empty is the unit ideal.
struct IdealFactorization {
  std::vector<std::pair<size_t, int>> factors;
};

IdealFactorization ideal_of_integer(const NormStream& S, uint64_t n);
mpz_class ideal_norm(const NormStream& S, const IdealFactorization& I);
void validate(const NormStream& S, const IdealFactorization& I);

/// Euler-factor base chi(N) N^{-r} of the k-th prime ideal for real chi.
rigor::Enclosure twisted_power(uint64_t norm, int chi_value, const rigor::Enclosure& r);

rigor::Enclosure sigma(const NormStream& S, const characters::DirichletCharacter& chi, const rigor::Enclosure& r,
                       const IdealFactorization& I);
/// Real and imaginary parts of sigma for an arbitrary character.
std::pair<rigor::Enclosure, rigor::Enclosure> sigma_complex(const NormStream& S,
                                                            const characters::DirichletCharacter& chi,
                                                            const rigor::Enclosure& r, const IdealFactorization& I);

uint64_t m_I(const NormStream& S, const IdealFactorization& I, uint64_t n);

}  // namespace tdf::numberfield
