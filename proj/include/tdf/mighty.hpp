#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tdf/numberfield.hpp"
#include "tdf/rigor.hpp"

namespace tdf::mighty {

using rigor::Enclosure;

struct MightyConfig {
  /// Primes up to this bound are summed explicitly; 0 picks max(1000, 16 d).
  uint64_t cutoff = 0;
  uint64_t max_cutoff = 1ULL << 26;
  rigor::PrecisionPolicy precision;
};

struct MightyCertificate {
  uint64_t d = 0;
  mpq_class r;
  /// 1 + d^{-r}
  Enclosure lhs;
  /// prod_{N(p) > d} (1 - N(p)^{-r})^{-1}
  Enclosure rhs;
  bool verdict = false;
  uint64_t cutoff = 0;
  int precision = 0;
  /// Bound used for the primes above the cutoff, in log form.
  Enclosure tail_log;
  /// Primes <= cutoff whose splitting was bounded rather than read off.
  size_t unresolved_primes = 0;
};

/// Inertia degrees of the prime ideals above p, or nullopt when only the degree bound is usable.
using LocalSplitting = std::function<std::optional<std::vector<int>>(uint64_t p)>;

MightyCertificate is_mighty(const numberfield::FieldSpec& K, const mpq_class& r, uint64_t d,
                            const MightyConfig& cfg = {});
/// Same test for a degree-s field given only local splitting data.
MightyCertificate is_mighty(int degree, const LocalSplitting& split, const mpq_class& r, uint64_t d,
                            const MightyConfig& cfg = {});

struct ConditionCheck {
  std::string name;
  size_t i = 0;
  size_t j = 0;
  Enclosure lhs, rhs;
  bool holds = false;
};

struct SequenceConfig {
  /// Largest prime the p_i searches and explicit sums may reach.
  uint64_t enumeration_limit = 100'000'000;
  rigor::PrecisionPolicy precision;
};

struct TechnicalSequence {
  mpq_class r;
  int s = 0;
  int M = 0;
  std::vector<uint64_t> p;
  /// S[i] = primes q with p_i^{1/s} < q <= p_i.
  std::vector<std::vector<uint64_t>> S;
  uint64_t X = 0;
  /// X certified with explicit prime sums; false means from the analytic tail alone.
  bool X_enumerated = true;
  std::vector<ConditionCheck> conditions;
  bool all_hold() const;
};

TechnicalSequence build_technical_sequence(const mpq_class& r, int s, int M, const SequenceConfig& cfg = {});

/// Upper bound for sum_{q > a} q^{-e} over primes, explicit up to y.
Enclosure prime_power_tail(uint64_t a, uint64_t y, const mpq_class& e, int prec);

}  // namespace tdf::mighty
