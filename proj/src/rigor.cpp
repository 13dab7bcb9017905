#include "tdf/rigor.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace tdf::rigor {

namespace {

constexpr size_t kExactBitsCap = 1 << 11;

bool small_enough(const mpq_class& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2) <= kExactBitsCap;
}

std::optional<mpq_class> keep_exact(mpq_class q) {
  if (!small_enough(q)) return std::nullopt;
  return q;
}

std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  if (rnd == MPFR_RNDD)
    mpfr_asprintf(&buf, "%.*RDe", digits - 1, x);
  else if (rnd == MPFR_RNDU)
    mpfr_asprintf(&buf, "%.*RUe", digits - 1, x);
  else
    mpfr_asprintf(&buf, "%.*RNe", digits - 1, x);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Enclosure point(mpfr_srcptr x, int prec) { return Enclosure::from_bounds(x, x, prec); }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
  }
}

AmbiguousComparison::AmbiguousComparison(const std::string& what, std::string lhs, std::string rhs,
                                         int precision, bool tail_limited)
    : std::runtime_error("ambiguous comparison: " + what + " (" + lhs + " vs " + rhs + " at " +
                         std::to_string(precision) + " bits)"),
      lhs_(std::move(lhs)),
      rhs_(std::move(rhs)),
      precision_(precision),
      tail_limited_(tail_limited) {}

Enclosure::Enclosure() : Enclosure(0L) {}

Enclosure::Enclosure(long v, int prec) : lo_(prec), hi_(prec), prec_(prec), exact_(mpq_class(v)) {
  set_from_exact();
}

Enclosure::Enclosure(const mpz_class& v, int prec) : lo_(prec), hi_(prec), prec_(prec), exact_(mpq_class(v)) {
  set_from_exact();
}

Enclosure::Enclosure(const mpq_class& v, int prec) : lo_(prec), hi_(prec), prec_(prec), exact_(v) {
  exact_->canonicalize();
  set_from_exact();
}

Enclosure::Enclosure(Mp lo, Mp hi, int prec, std::optional<mpq_class> exact)
    : lo_(std::move(lo)), hi_(std::move(hi)), prec_(prec), exact_(std::move(exact)) {
  if (exact_) set_from_exact();
}

void Enclosure::set_from_exact() {
  mpfr_set_prec(lo_.get(), prec_);
  mpfr_set_prec(hi_.get(), prec_);
  mpfr_set_q(lo_.get(), exact_->get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_.get(), exact_->get_mpq_t(), MPFR_RNDU);
}

Enclosure Enclosure::from_bounds(mpfr_srcptr lo, mpfr_srcptr hi, int prec) {
  Mp l(prec), h(prec);
  mpfr_set(l.get(), lo, MPFR_RNDD);
  mpfr_set(h.get(), hi, MPFR_RNDU);
  return Enclosure(std::move(l), std::move(h), prec);
}

Enclosure Enclosure::from_string(const std::string& s, int prec) { return Enclosure(parse_rational(s), prec); }

double Enclosure::lo_double() const { return mpfr_get_d(lo_.get(), MPFR_RNDD); }
double Enclosure::hi_double() const { return mpfr_get_d(hi_.get(), MPFR_RNDU); }
double Enclosure::mid_double() const { return 0.5 * (mpfr_get_d(lo_.get(), MPFR_RNDN) + mpfr_get_d(hi_.get(), MPFR_RNDN)); }

double Enclosure::width_double() const {
  if (exact_) return 0.0;
  Mp w(prec_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

double Enclosure::rel_width_log2() const {
  if (exact_ || mpfr_equal_p(lo_.get(), hi_.get())) return -std::numeric_limits<double>::infinity();
  Mp w(prec_), m(prec_);
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  mpfr_add(m.get(), hi_.get(), lo_.get(), MPFR_RNDN);
  mpfr_abs(m.get(), m.get(), MPFR_RNDN);
  if (mpfr_zero_p(m.get())) return 0.0;
  mpfr_div(w.get(), w.get(), m.get(), MPFR_RNDU);
  mpfr_mul_2ui(w.get(), w.get(), 1, MPFR_RNDU);
  mpfr_log2(w.get(), w.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

bool Enclosure::contains(const mpq_class& q) const {
  if (exact_) return *exact_ == q;
  return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
}

bool Enclosure::contains(mpfr_srcptr x) const {
  return mpfr_cmp(lo_.get(), x) <= 0 && mpfr_cmp(hi_.get(), x) >= 0;
}

bool Enclosure::contains(const Enclosure& inner) const {
  if (exact_ && inner.exact_) return *exact_ == *inner.exact_;
  return mpfr_cmp(lo_.get(), inner.lo()) <= 0 && mpfr_cmp(hi_.get(), inner.hi()) >= 0;
}

Enclosure Enclosure::with_precision(int prec) const {
  if (exact_) return Enclosure(*exact_, prec);
  return from_bounds(lo_.get(), hi_.get(), prec);
}

std::string Enclosure::lo_string(int digits) const { return format(lo_.get(), digits, MPFR_RNDD); }
std::string Enclosure::hi_string(int digits) const { return format(hi_.get(), digits, MPFR_RNDU); }
std::string Enclosure::to_string(int digits) const {
  return "[" + lo_string(digits) + ", " + hi_string(digits) + "]";
}

std::pair<std::string, std::string> Enclosure::dec_err(int digits) const {
  int wp = prec_ + 64;
  Mp mid(wp);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  std::string dec = format(mid.get(), digits, MPFR_RNDN);
  Mp dlo(wp), dhi(wp), e1(wp), e2(wp);
  mpfr_set_str(dlo.get(), dec.c_str(), 10, MPFR_RNDD);
  mpfr_set_str(dhi.get(), dec.c_str(), 10, MPFR_RNDU);
  mpfr_sub(e1.get(), hi_.get(), dlo.get(), MPFR_RNDU);
  mpfr_sub(e2.get(), dhi.get(), lo_.get(), MPFR_RNDU);
  mpfr_max(e1.get(), e1.get(), e2.get(), MPFR_RNDU);
  if (mpfr_sgn(e1.get()) < 0) mpfr_set_zero(e1.get(), 1);
  return {dec, format(e1.get(), 3, MPFR_RNDU)};
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  int prec = std::max(a.prec_, b.prec_);
  if (a.exact_ && b.exact_) {
    if (auto q = keep_exact(*a.exact_ + *b.exact_)) return Enclosure(Mp(prec), Mp(prec), prec, q);
  }
  Mp lo(prec), hi(prec);
  mpfr_add(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure operator-(const Enclosure& a) {
  if (a.exact_) return Enclosure(Mp(a.prec_), Mp(a.prec_), a.prec_, mpq_class(-*a.exact_));
  Mp lo(a.prec_), hi(a.prec_);
  mpfr_neg(lo.get(), a.hi(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), a.prec_);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  int prec = std::max(a.prec_, b.prec_);
  if (a.exact_ && b.exact_) {
    if (auto q = keep_exact(*a.exact_ - *b.exact_)) return Enclosure(Mp(prec), Mp(prec), prec, q);
  }
  Mp lo(prec), hi(prec);
  mpfr_sub(lo.get(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(hi.get(), a.hi(), b.lo(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  int prec = std::max(a.prec_, b.prec_);
  if (a.exact_ && b.exact_) {
    if (auto q = keep_exact(*a.exact_ * *b.exact_)) return Enclosure(Mp(prec), Mp(prec), prec, q);
  }
  Mp lo(prec), hi(prec);
  if (mpfr_sgn(a.lo()) >= 0 && mpfr_sgn(b.lo()) >= 0) {
    mpfr_mul(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
    mpfr_mul(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi), prec);
  }
  mpfr_srcptr as[2] = {a.lo(), a.hi()};
  mpfr_srcptr bs[2] = {b.lo(), b.hi()};
  Mp t(prec);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (auto x : as)
    for (auto y : bs) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  int prec = std::max(a.prec_, b.prec_);
  if (b.exact_ && *b.exact_ == 0) throw DomainError("division by zero");
  if (a.exact_ && b.exact_) {
    if (auto q = keep_exact(*a.exact_ / *b.exact_)) return Enclosure(Mp(prec), Mp(prec), prec, q);
  }
  if (mpfr_sgn(b.lo()) <= 0 && mpfr_sgn(b.hi()) >= 0) throw DomainError("division by an enclosure containing zero");
  Mp lo(prec), hi(prec);
  if (mpfr_sgn(a.lo()) >= 0 && mpfr_sgn(b.lo()) > 0) {
    mpfr_div(lo.get(), a.lo(), b.hi(), MPFR_RNDD);
    mpfr_div(hi.get(), a.hi(), b.lo(), MPFR_RNDU);
    return Enclosure(std::move(lo), std::move(hi), prec);
  }
  mpfr_srcptr as[2] = {a.lo(), a.hi()};
  mpfr_srcptr bs[2] = {b.lo(), b.hi()};
  Mp t(prec);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  for (auto x : as)
    for (auto y : bs) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure exp(const Enclosure& x) {
  int prec = x.precision();
  if (x.is_exact() && x.exact_value() == 0) return Enclosure(1L, prec);
  Mp lo(prec), hi(prec);
  mpfr_exp(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_exp(hi.get(), x.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure log(const Enclosure& x) {
  int prec = x.precision();
  if (mpfr_sgn(x.lo()) <= 0) throw DomainError("log of a non-positive enclosure");
  if (x.is_exact() && x.exact_value() == 1) return Enclosure(0L, prec);
  Mp lo(prec), hi(prec);
  mpfr_log(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure log1p(const Enclosure& x) {
  int prec = x.precision();
  if (mpfr_cmp_si(x.lo(), -1) <= 0) throw DomainError("log1p argument <= -1");
  if (x.is_exact() && x.exact_value() == 0) return Enclosure(0L, prec);
  Mp lo(prec), hi(prec);
  mpfr_log1p(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_log1p(hi.get(), x.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure neg_log1m(const Enclosure& x) {
  int prec = x.precision();
  if (mpfr_cmp_si(x.hi(), 1) >= 0) throw DomainError("Euler factor argument >= 1");
  if (x.is_exact() && x.exact_value() == 0) return Enclosure(0L, prec);
  Mp lo(prec), hi(prec), t(prec);
  mpfr_neg(t.get(), x.lo(), MPFR_RNDN);
  mpfr_log1p(lo.get(), t.get(), MPFR_RNDU);
  mpfr_neg(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_neg(t.get(), x.hi(), MPFR_RNDN);
  mpfr_log1p(hi.get(), t.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), hi.get(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure sqrt(const Enclosure& x) {
  int prec = x.precision();
  if (mpfr_sgn(x.lo()) < 0) throw DomainError("sqrt of a negative enclosure");
  Mp lo(prec), hi(prec);
  mpfr_sqrt(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), x.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure pow_int(const Enclosure& base, long n) {
  int prec = base.precision();
  if (n == 0) return Enclosure(1L, prec);
  if (base.is_exact()) {
    const mpq_class& q = base.exact_value();
    if (q == 0 && n < 0) throw DomainError("zero to a negative power");
    mpz_class num, den;
    unsigned long k = static_cast<unsigned long>(n < 0 ? -n : n);
    mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), k);
    mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), k);
    mpq_class r(n < 0 ? den : num, n < 0 ? num : den);
    r.canonicalize();
    if (small_enough(r)) return Enclosure(r, prec);
  }
  if (n < 0) return Enclosure(1L, prec) / pow_int(base, -n);
  Mp lo(prec), hi(prec);
  if (n % 2 == 1 || mpfr_sgn(base.lo()) >= 0) {
    mpfr_pow_si(lo.get(), base.lo(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), base.hi(), n, MPFR_RNDU);
  } else if (mpfr_sgn(base.hi()) <= 0) {
    mpfr_pow_si(lo.get(), base.hi(), n, MPFR_RNDD);
    mpfr_pow_si(hi.get(), base.lo(), n, MPFR_RNDU);
  } else {
    Mp a(prec), b(prec);
    mpfr_abs(a.get(), base.lo(), MPFR_RNDU);
    mpfr_abs(b.get(), base.hi(), MPFR_RNDU);
    mpfr_max(a.get(), a.get(), b.get(), MPFR_RNDU);
    mpfr_set_zero(lo.get(), 1);
    mpfr_pow_si(hi.get(), a.get(), n, MPFR_RNDU);
  }
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure pow(const Enclosure& base, const Enclosure& exponent) {
  int prec = std::max(base.precision(), exponent.precision());
  if (exponent.is_exact() && exponent.exact_value().get_den() == 1 && exponent.exact_value().get_num().fits_slong_p())
    return pow_int(base.with_precision(prec), exponent.exact_value().get_num().get_si());
  if (base.is_exact() && base.exact_value() == 1) return Enclosure(1L, prec);
  if (mpfr_sgn(base.lo()) <= 0) throw DomainError("pow with non-positive base");
  Mp lo(prec), hi(prec), t(prec);
  mpfr_set_inf(lo.get(), 1);
  mpfr_set_inf(hi.get(), -1);
  mpfr_srcptr bs[2] = {base.lo(), base.hi()};
  mpfr_srcptr es[2] = {exponent.lo(), exponent.hi()};
  for (auto b : bs)
    for (auto e : es) {
      mpfr_pow(t.get(), b, e, MPFR_RNDD);
      mpfr_min(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_pow(t.get(), b, e, MPFR_RNDU);
      mpfr_max(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact() && a.exact_value() == b.exact_value()) return a;
  int prec = std::max(a.precision(), b.precision());
  Mp lo(prec), hi(prec);
  mpfr_min(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure max(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() >= b.exact_value() ? a : b;
  if (certainly_le(b, a)) return a;
  if (certainly_le(a, b)) return b;
  int prec = std::max(a.precision(), b.precision());
  Mp lo(prec), hi(prec);
  mpfr_max(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure min(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() <= b.exact_value() ? a : b;
  if (certainly_le(a, b)) return a;
  if (certainly_le(b, a)) return b;
  int prec = std::max(a.precision(), b.precision());
  Mp lo(prec), hi(prec);
  mpfr_min(lo.get(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_min(hi.get(), a.hi(), b.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure widen_up(const Enclosure& x, const Enclosure& t) {
  if (t.is_exact() && t.exact_value() == 0) return x;
  int prec = std::max(x.precision(), t.precision());
  Mp lo(prec), hi(prec);
  mpfr_set(lo.get(), x.lo(), MPFR_RNDD);
  mpfr_add(hi.get(), x.hi(), t.hi(), MPFR_RNDU);
  return Enclosure(std::move(lo), std::move(hi), prec);
}

Enclosure enc_pow(const mpz_class& base, const Enclosure& exponent) {
  if (base < 1) throw DomainError("enc_pow base must be >= 1");
  int prec = exponent.precision();
  if (base == 1) return Enclosure(1L, prec);
  if (exponent.is_exact()) {
    const mpq_class& e = exponent.exact_value();
    if (e == 0) return Enclosure(1L, prec);
    if (e.get_den() == 1 && e.get_num().fits_slong_p()) return pow_int(Enclosure(base, prec), e.get_num().get_si());
  }
  if (!mpfr_number_p(exponent.lo()) || !mpfr_number_p(exponent.hi())) throw DomainError("exponent not finite");
  return pow(Enclosure(base, prec), exponent);
}

Enclosure enc_pow(const mpz_class& base, const mpq_class& exponent, int prec) {
  return enc_pow(base, Enclosure(exponent, prec));
}

Verdict enc_compare(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.exact_value(), b.exact_value());
    return c < 0 ? Verdict::True : c > 0 ? Verdict::False : Verdict::Unknown;
  }
  if (mpfr_less_p(a.hi(), b.lo())) return Verdict::True;
  if (mpfr_greater_p(a.lo(), b.hi())) return Verdict::False;
  return Verdict::Unknown;
}

Order compare(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) {
    int c = cmp(a.exact_value(), b.exact_value());
    return c < 0 ? Order::Less : c > 0 ? Order::Greater : Order::Equal;
  }
  if (mpfr_less_p(a.hi(), b.lo())) return Order::Less;
  if (mpfr_greater_p(a.lo(), b.hi())) return Order::Greater;
  if (mpfr_equal_p(a.lo(), a.hi()) && mpfr_equal_p(b.lo(), b.hi()) && mpfr_equal_p(a.lo(), b.lo()))
    return Order::Equal;
  return Order::Unknown;
}

bool certainly_lt(const Enclosure& a, const Enclosure& b) { return compare(a, b) == Order::Less; }

bool certainly_le(const Enclosure& a, const Enclosure& b) {
  if (a.is_exact() && b.is_exact()) return a.exact_value() <= b.exact_value();
  return mpfr_lessequal_p(a.hi(), b.lo());
}

bool decide_lt(const Enclosure& a, const Enclosure& b, const char* what) {
  if (certainly_lt(a, b)) return true;
  if (certainly_le(b, a)) return false;
  throw AmbiguousComparison(what, a.to_string(), b.to_string(), std::max(a.precision(), b.precision()));
}

bool decide_le(const Enclosure& a, const Enclosure& b, const char* what) {
  if (certainly_le(a, b)) return true;
  if (certainly_lt(b, a)) return false;
  throw AmbiguousComparison(what, a.to_string(), b.to_string(), std::max(a.precision(), b.precision()));
}

Enclosure enc_geom_tail(const Enclosure& x, std::optional<unsigned long> terms) {
  int prec = x.precision();
  if (mpfr_cmp_si(x.hi(), 1) >= 0) throw DomainError("geometric ratio must satisfy x.hi < 1");
  if (!terms && mpfr_cmp_si(x.lo(), -1) <= 0) throw DomainError("geometric series diverges");
  Enclosure one(1L, prec);
  auto closed = [&](const Enclosure& y) {
    if (!terms) return one / (one - y);
    return (one - pow_int(y, static_cast<long>(*terms) + 1)) / (one - y);
  };
  if (x.is_exact()) {
    if (terms && *terms < 64) {
      mpq_class s = 1, p = 1;
      for (unsigned long k = 0; k < *terms; ++k) {
        p *= x.exact_value();
        s += p;
      }
      return Enclosure(s, prec);
    }
    if (x.exact_value() == 1) throw DomainError("geometric ratio 1");
    return closed(x);
  }
  if (mpfr_sgn(x.lo()) >= 0) {
    Enclosure at_lo = closed(point(x.lo(), prec));
    Enclosure at_hi = closed(point(x.hi(), prec));
    return Enclosure::from_bounds(at_lo.lo(), at_hi.hi(), prec);
  }
  return closed(x);
}

mpq_class parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty number");
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  if (slash != std::string::npos) {
    std::string n = s.substr(0, slash), d = s.substr(slash + 1);
    if (!is_int(n) || !is_int(d)) throw std::invalid_argument("malformed rational: " + raw);
    if (n[0] == '+') n.erase(0, 1);
    if (d[0] == '+') d.erase(0, 1);
    mpz_class den(d);
    if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
    mpq_class q(mpz_class(n), den);
    q.canonicalize();
    return q;
  }
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    char c = s[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + raw);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (seen_dot) --scale;
    } else {
      throw std::invalid_argument("malformed decimal: " + raw);
    }
  }
  if (!any) throw std::invalid_argument("malformed decimal: " + raw);
  if (i < s.size()) {
    std::string ex = s.substr(i + 1);
    if (!is_int(ex) || ex.size() > 6) throw std::invalid_argument("malformed exponent: " + raw);
    scale += std::stol(ex);
  }
  mpz_class num(digits), ten = 10, p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale >= 0 ? mpq_class(num * p) : mpq_class(num, p);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace tdf::rigor
