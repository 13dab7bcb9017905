#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tdf/characters.hpp"
#include "tdf/closure.hpp"
#include "tdf/numberfield.hpp"
#include "tdf/rigor.hpp"

namespace tdf::oracle {

/// A sigma value rounded outward to doubles; im_* stay zero for real characters.
struct Sample {
  uint64_t n = 0;
  double lo = 0, hi = 0;
  double im_lo = 0, im_hi = 0;
};

struct SampleSet {
  numberfield::FieldSpec K;
  characters::DirichletCharacter chi;
  mpq_class r;
  uint64_t max_norm = 0;
  /// Values came from exact rational arithmetic.
  bool exact = false;
  bool complex = false;
  /// For K = Q, n is the input integer; otherwise the ideal norm.
  std::vector<Sample> samples;
  /// Aligned with samples when K != Q.
  std::vector<numberfield::IdealFactorization> ideals;
  numberfield::NormStream stream;

  size_t size() const { return samples.size(); }
};

/// sigma for every n <= max_norm (K = Q) or every ideal of norm <= max_norm.
SampleSet sample_image(const numberfield::FieldSpec& K, const characters::DirichletCharacter& chi, const mpq_class& r,
                       uint64_t max_norm, uint64_t budget = 20'000'000);

/// Direct divisor sum over d | n, for cross-checks.
rigor::Enclosure naive_sigma(uint64_t n, const characters::DirichletCharacter& chi, const mpq_class& r,
                             int prec = rigor::kDefaultPrecision);

struct VerifyReport {
  size_t samples = 0;
  std::vector<size_t> hits;
  size_t outside = 0;
  size_t class_mismatch = 0;
  size_t classes = 0;
  bool contained = false;
  bool all_hit = false;
  bool classes_match = false;
  std::vector<std::string> witnesses;
  bool passed() const { return contained && all_hit && classes_match; }
};

/// (a) containment, (b) every interval hit, (c) the exponent pattern on the
/// first j0 prime ideals predicts the interval of each sample.
VerifyReport verify_against_closure(const SampleSet& s, const closure::ClosureResult& c);

enum class FigureFormat { Csv, Svg };

void emit_figure(const SampleSet& s, const std::string& path, FigureFormat fmt);

}  // namespace tdf::oracle
