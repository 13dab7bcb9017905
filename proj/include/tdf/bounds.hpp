#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <string>

#include "tdf/characters.hpp"
#include "tdf/numberfield.hpp"
#include "tdf/rigor.hpp"

namespace tdf::bounds {

using rigor::Enclosure;

/// 2^{pi_m(2r-2) - delta_m}, delta_m = 1 for odd m and 0 for even m; r >= 3.
mpz_class lower_bound_pi(const mpq_class& r, uint64_t m);
/// The exponent pi_m(2r-2) - delta_m.
uint64_t lower_bound_pi_exponent(const mpq_class& r, uint64_t m);

/// (1) d^{-r} > sum_{n > d} n^{-r} for 0 < d <= r-1;
/// (2) d^{-r} > sum_{odd n >= d+2} n^{-r} for odd d <= 2r-2.
/// Throws std::invalid_argument outside those ranges.
bool tail_lemma_check(uint64_t d, const mpq_class& r, bool odd_variant, rigor::PrecisionPolicy policy = {});

struct PartitionSignature {
  std::set<uint64_t> B1, B2;
  bool operator==(const PartitionSignature& o) const { return B1 == o.B1 && B2 == o.B2; }
  bool operator!=(const PartitionSignature& o) const { return !(*this == o); }
  std::string to_string() const;
};

PartitionSignature signature(uint64_t n, const mpq_class& r, uint64_t m);

struct Separation {
  bool separated = false;
  bool via_b2 = false;
  uint64_t d0 = 0;
  /// The input whose signature contains d0.
  uint64_t upper = 0;
  characters::RootValue theta;
  /// d0^{-r} minus the relevant tail; a lower bound for the Re_theta gap over both classes.
  Enclosure gap_bound;
  /// Re_theta(sigma(upper) - sigma(other)) for the concrete pair.
  Enclosure concrete_gap;
};

/// Throws std::invalid_argument when the signatures agree.
Separation separation_check(uint64_t x, uint64_t y, const mpq_class& r, const characters::DirichletCharacter& chi,
                            rigor::PrecisionPolicy policy = {});

/// prod_p max_{e >= 0} binom(e+s-1, s-1) / p^{eps e}; only primes with p^eps < s contribute.
Enclosure eta_constant(int s, const mpq_class& eps, int prec = rigor::kDefaultPrecision);

struct HResult {
  uint64_t h = 1;
  uint64_t h_formula = 0;
  uint64_t h_scan = 1;
  mpq_class epsilon;
  Enclosure eta;
  bool certified = false;
};

/// Largest h certified to satisfy d^{-r} > sum_{n > d} a_K(n) n^{-r} for all 2 <= d <= h.
HResult h_value(const numberfield::FieldSpec& K, const mpq_class& r, const mpq_class& eps, uint64_t table_size = 100'000,
                rigor::PrecisionPolicy policy = {});

/// prod_{n=2}^{h} (b_K(n) + 1).
mpz_class partition_product(const numberfield::FieldSpec& K, uint64_t h);
mpz_class partition_lower_bound(const numberfield::FieldSpec& K, const mpq_class& r, const mpq_class& eps,
                                HResult* detail = nullptr);

}  // namespace tdf::bounds
