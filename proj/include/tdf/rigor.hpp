#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace tdf::rigor {

inline constexpr int kDefaultPrecision = 128;
inline constexpr int kMaxPrecision = 4096;

enum class Verdict { True, False, Unknown };

const char* to_string(Verdict v);

class AmbiguousComparison : public std::runtime_error {
 public:
  AmbiguousComparison(const std::string& what, std::string lhs, std::string rhs, int precision,
                      bool tail_limited = false);
  const std::string& lhs() const { return lhs_; }
  const std::string& rhs() const { return rhs_; }
  int precision() const { return precision_; }
  bool tail_limited() const { return tail_limited_; }
  bool exhausted() const { return exhausted_; }
  void mark_exhausted() { exhausted_ = true; }

 private:
  std::string lhs_, rhs_;
  int precision_;
  bool tail_limited_;
  bool exhausted_ = false;
};

class PrecisionOverflow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Owning mpfr_t with value semantics.
class Mp {
 public:
  explicit Mp(int prec = kDefaultPrecision) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mp(const Mp& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Mp(Mp&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Mp& operator=(const Mp& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mp& operator=(Mp&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mp() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

/// Certified real interval [lo, hi].  When the represented value is a known
/// rational it is carried exactly and lo/hi are its outward roundings.
class Enclosure {
 public:
  Enclosure();
  explicit Enclosure(long v, int prec = kDefaultPrecision);
  explicit Enclosure(const mpz_class& v, int prec = kDefaultPrecision);
  explicit Enclosure(const mpq_class& v, int prec = kDefaultPrecision);

  /// Builds [lo, hi] re-rounded outward to `prec` bits.
  static Enclosure from_bounds(mpfr_srcptr lo, mpfr_srcptr hi, int prec);
  /// Accepts "3", "-2/7", "1.05", "1e-3".
  static Enclosure from_string(const std::string& s, int prec = kDefaultPrecision);

  int precision() const { return prec_; }
  bool is_exact() const { return exact_.has_value(); }
  const mpq_class& exact_value() const { return *exact_; }
  mpfr_srcptr lo() const { return lo_.get(); }
  mpfr_srcptr hi() const { return hi_.get(); }

  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  /// Upper bound for hi - lo.
  double width_double() const;
  /// log2 of the relative width, or -inf for width zero.
  double rel_width_log2() const;

  bool contains(const mpq_class& q) const;
  bool contains(mpfr_srcptr x) const;
  bool contains(const Enclosure& inner) const;
  bool is_positive() const { return mpfr_sgn(lo_.get()) > 0; }

  /// Same value at a different working precision; never narrower than the
  /// information carried.
  Enclosure with_precision(int prec) const;

  std::string lo_string(int digits = 25) const;
  std::string hi_string(int digits = 25) const;
  std::string to_string(int digits = 25) const;

  /// Midpoint decimal and a rigorous radius bound so that [dec-err, dec+err]
  /// covers the enclosure.
  std::pair<std::string, std::string> dec_err(int digits = 20) const;

  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a);

  Enclosure& operator+=(const Enclosure& b) { return *this = *this + b; }
  Enclosure& operator-=(const Enclosure& b) { return *this = *this - b; }
  Enclosure& operator*=(const Enclosure& b) { return *this = *this * b; }
  Enclosure& operator/=(const Enclosure& b) { return *this = *this / b; }

  // internal constructor used by the arithmetic kernels
  Enclosure(Mp lo, Mp hi, int prec, std::optional<mpq_class> exact = std::nullopt);

 private:
  void set_from_exact();

  Mp lo_, hi_;
  int prec_;
  std::optional<mpq_class> exact_;
};

Enclosure exp(const Enclosure& x);
Enclosure log(const Enclosure& x);
/// log(1 + x), x > -1.
Enclosure log1p(const Enclosure& x);
/// -log(1 - x) for x < 1, i.e. log of the Euler factor 1/(1-x).
Enclosure neg_log1m(const Enclosure& x);
Enclosure sqrt(const Enclosure& x);
Enclosure pow(const Enclosure& base, const Enclosure& exponent);
Enclosure pow_int(const Enclosure& base, long n);
Enclosure hull(const Enclosure& a, const Enclosure& b);
Enclosure max(const Enclosure& a, const Enclosure& b);
Enclosure min(const Enclosure& a, const Enclosure& b);
/// Adds [0, t] where t >= 0 is an upper bound of an omitted nonnegative term.
Enclosure widen_up(const Enclosure& x, const Enclosure& t);

/// base^exponent for an integer base >= 1.
Enclosure enc_pow(const mpz_class& base, const Enclosure& exponent);
Enclosure enc_pow(const mpz_class& base, const mpq_class& exponent, int prec = kDefaultPrecision);

/// True when a < b is certified, False when a > b is certified.
Verdict enc_compare(const Enclosure& a, const Enclosure& b);

/// Sum_{k=0}^{terms} x^k, or 1/(1-x) when terms is empty.
Enclosure enc_geom_tail(const Enclosure& x, std::optional<unsigned long> terms);

enum class Order { Less, Equal, Greater, Unknown };
/// Three-way comparison; Equal only when equality is certified.
Order compare(const Enclosure& a, const Enclosure& b);
bool certainly_lt(const Enclosure& a, const Enclosure& b);
bool certainly_le(const Enclosure& a, const Enclosure& b);

/// Certified a < b.  Throws AmbiguousComparison if undecidable.
bool decide_lt(const Enclosure& a, const Enclosure& b, const char* what);
/// Certified a <= b (touching allowed).  Throws if undecidable.
bool decide_le(const Enclosure& a, const Enclosure& b, const char* what);

mpq_class parse_rational(const std::string& s);
std::string rational_to_string(const mpq_class& q);

struct PrecisionPolicy {
  int start = kDefaultPrecision;
  int max = kMaxPrecision;
};

/// Runs f(prec) at doubling precisions until no comparison is ambiguous.
template <class F>
auto with_escalation(F&& f, PrecisionPolicy policy = {}) -> decltype(f(0)) {
  for (int prec = policy.start;; prec *= 2) {
    try {
      return f(prec);
    } catch (AmbiguousComparison& e) {
      if (prec * 2 > policy.max) {
        e.mark_exhausted();
        throw;
      }
    }
  }
}

}  // namespace tdf::rigor
