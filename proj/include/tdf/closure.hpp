#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdf/characters.hpp"
#include "tdf/numberfield.hpp"
#include "tdf/rigor.hpp"

namespace tdf::closure {

using rigor::Enclosure;

struct ClosureConfig {
  /// Conditions of the j-search are scanned exactly over prime ideals of norm <= horizon.
  uint64_t horizon = 1'000'000;
  /// Euler products are summed explicitly to this norm; 0 means 4 * horizon.
  uint64_t truncation = 0;
  uint64_t max_truncation = 64'000'000;
  /// Largest interval union kept while expanding.
  size_t max_intervals = 2'000'000;
  rigor::PrecisionPolicy precision;
  std::optional<uint64_t> tie_seed;
};

struct ZetaTail {
  uint64_t m = 1;
  size_t i = 0;
  Enclosure value;
  uint64_t truncation_norm = 0;
  Enclosure tail_bound_log;
};

struct JResult {
  size_t j0 = 0;
  size_t j_plus = 0;
  /// q_index[j] = stream index of 𝔮_j (0 when undefined), j <= scanned_to.
  std::vector<size_t> q_index;
  size_t scanned_to = 0;
  uint64_t horizon_norm = 0;
  /// Condition (1) certified at the horizon, i.e. y_j >= 1 there.
  bool tail_criterion_holds = false;
  /// N(𝔔)/N(𝔮) < 2^{1/r} for every consecutive pair of chi = 1 norms in the top window.
  bool ratio_witness = false;
  size_t witness_pairs = 0;
  /// Largest index failing condition (1) or (2), 0 if none.
  size_t last_bad = 0;
};

struct Interval {
  Enclosure lo, hi;
};

using IntervalUnion = std::vector<Interval>;

struct ClosureResult {
  IntervalUnion intervals;
  size_t count = 0;
  JResult j;
  Enclosure c, d;
  int precision_used = 0;
  uint64_t truncation_used = 0;
};

/// Upper bound for sum_{p > X} p^{-r} over rational primes (X >= 30, r > 1).
Enclosure prime_tail_bound(uint64_t X, const mpq_class& r, int prec);

/// The multipliers sigma(𝔭^a) for a prime ideal with chi(N) = chi_value and x = N^{-r}.
IntervalUnion expand_prime(IntervalUnion u, int chi_value, const Enclosure& x, bool tail_limited = false);

/// Sorts by left endpoint and merges certified-touching pieces; throws on ambiguity.
IntervalUnion merge(IntervalUnion pieces, bool tail_limited = false);

/// Holds the Euler data of one (K, r) pair, reused across characters.
class ClosureEngine {
 public:
  ClosureEngine(numberfield::FieldSpec K, mpq_class r, ClosureConfig cfg = {});
  ~ClosureEngine();
  ClosureEngine(const ClosureEngine&) = delete;
  ClosureEngine& operator=(const ClosureEngine&) = delete;

  const numberfield::FieldSpec& field() const;
  const mpq_class& r() const;
  const numberfield::NormStream& stream() const;
  int precision() const;
  uint64_t truncation() const;

  ZetaTail zeta_tail(uint64_t m, size_t i);
  JResult compute_j(const characters::DirichletCharacter& chi);
  std::pair<Enclosure, Enclosure> base_interval(const characters::DirichletCharacter& chi, size_t j0);
  ClosureResult compute_closure(const characters::DirichletCharacter& chi);

 private:
  struct Data;
  template <class F>
  auto escalate(F&& f) -> decltype(f());
  void rebuild();

  numberfield::FieldSpec K_;
  mpq_class r_;
  ClosureConfig cfg_;
  int prec_;
  uint64_t X_;
  std::unique_ptr<Data> data_;
};

ClosureResult compute_closure(const numberfield::FieldSpec& K, const characters::DirichletCharacter& chi,
                              const mpq_class& r, const ClosureConfig& cfg = {});

/// zeta_{Q,i}(r) = zeta(r) prod_{k <= i} (1 - p_k^{-r}), from the analytic zeta function.
Enclosure rational_zeta_tail(const mpq_class& r, size_t i, int prec);

struct FormulaParams {
  size_t j1 = 0;
  size_t ell = 0;
  size_t i0 = 0;
};

FormulaParams formula_params(ClosureEngine& rational_engine);
/// (prod_{p <= p_i} p) / p_ell.
mpz_class m_i(size_t ell, size_t i);
/// Closed-form component count for the principal character mod m_i.
uint64_t formula_count(const mpq_class& r, size_t i, const FormulaParams& fp,
                       rigor::PrecisionPolicy policy = {});
uint64_t formula_count(ClosureEngine& rational_engine, size_t i);

struct R0Check {
  bool holds = false;
  Enclosure sum_from_3, sum_from_4, two_r, three_r;
  /// The integral bound 3^{-r}(1 + 3/(r-1)) alone already certifies the first inequality.
  bool integral_bound_certifies = false;
};

R0Check check_r0(const mpq_class& r, rigor::PrecisionPolicy policy = {});

}  // namespace tdf::closure
