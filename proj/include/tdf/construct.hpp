#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdf/mighty.hpp"
#include "tdf/numberfield.hpp"
#include "tdf/polyfield.hpp"

namespace tdf::construct {

struct PrimeEvidence {
  uint64_t p = 0;
  char role = 'S';  // 'S' split completely, 'T' inert
  std::map<int, int> degrees;
  bool matches = false;
  bool disc_coprime = false;
};

struct FieldConstruction {
  int s = 0;
  std::vector<uint64_t> S, T;
  uint64_t q = 0;
  polyfield::PolyZ f;
  mpz_class disc;
  std::vector<PrimeEvidence> evidence;
  bool eisenstein = false;
};

struct ConstructConfig {
  /// Auxiliary Eisenstein prime; default is the least prime outside S and T.
  std::optional<uint64_t> q;
  /// Largest |T| accepted.
  size_t t_cap = 5000;
};

FieldConstruction construct_field(int s, std::vector<uint64_t> S, std::vector<uint64_t> T,
                                  const ConstructConfig& cfg = {});

/// Recomputes every local fact from f alone.
bool verify(const FieldConstruction& fc);

/// Declared splitting types of the primes p <= bound dividing disc(f), f monic quadratic.
std::vector<numberfield::PrimeIdealClass> quadratic_ramified_table(const polyfield::PolyZ& f, uint64_t bound);

class StageError : public std::runtime_error {
 public:
  enum class Kind { Input, Ambiguity, Capacity, Internal };
  StageError(std::string stage, Kind kind, const std::string& what);
  const std::string& stage() const { return stage_; }
  Kind kind() const { return kind_; }

 private:
  std::string stage_;
  Kind kind_;
};

struct RealizeConfig {
  ConstructConfig construct;
  mighty::SequenceConfig sequence;
  mighty::MightyConfig mighty;
  /// Splitting of primes dividing disc(f) is declared up to this bound (s = 2).
  uint64_t declare_up_to = 64'000'000;
};

using rigor::Enclosure;

struct GapCheck {
  size_t i = 0, j = 0;
  /// 1 + d_j^{-r}, the top of the j-th gap.
  Enclosure top_j;
  /// The tail product past d_i, the bottom of the i-th gap.
  Enclosure bottom_i;
  bool disjoint = false;
};

struct Realization {
  mighty::TechnicalSequence sequence;
  FieldConstruction field;
  /// The field as a stream source; present for s = 2.
  std::optional<numberfield::FieldSpec> K;
  std::vector<mighty::MightyCertificate> certificates;
  std::vector<GapCheck> gaps;
  /// M + 1 when every p_i is certified mighty, else 1.
  uint64_t lower_bound = 1;
  bool certified = false;
};

Realization realize_components(const mpq_class& r, int s, int M, const RealizeConfig& cfg = {});

}  // namespace tdf::construct
