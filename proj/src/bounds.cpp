#include "tdf/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "tdf/closure.hpp"
#include "tdf/primes.hpp"

namespace tdf::bounds {

using rigor::Mp;

namespace {

mpz_class floor_q(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Enclosure inv_pow(uint64_t n, const mpq_class& r, int prec) {
  return rigor::enc_pow(mpz_class(static_cast<unsigned long>(n)), mpq_class(-r), prec);
}

// sum_{n > d} n^{-r}
Enclosure tail_all(uint64_t d, const mpq_class& r, int prec) {
  Enclosure s = closure::rational_zeta_tail(r, 0, prec);
  for (uint64_t n = 1; n <= d; ++n) s -= inv_pow(n, r, prec);
  return s;
}

// sum_{odd n > d} n^{-r}
Enclosure tail_odd(uint64_t d, const mpq_class& r, int prec) {
  Enclosure one(1L, prec);
  Enclosure s = closure::rational_zeta_tail(r, 0, prec) * (one - inv_pow(2, r, prec));
  for (uint64_t n = 1; n <= d; n += 2) s -= inv_pow(n, r, prec);
  return s;
}

std::vector<uint64_t> divisors(uint64_t n) {
  std::vector<uint64_t> ds{1};
  for (auto [p, k] : primes::factorize(n)) {
    size_t cur = ds.size();
    uint64_t pk = 1;
    for (int e = 1; e <= k; ++e) {
      pk *= p;
      for (size_t i = 0; i < cur; ++i) ds.push_back(ds[i] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

uint64_t min_symdiff(const std::set<uint64_t>& a, const std::set<uint64_t>& b, bool& in_a) {
  uint64_t best = 0;
  for (uint64_t v : a)
    if (!b.count(v)) {
      best = v;
      in_a = true;
      break;
    }
  for (uint64_t v : b)
    if (!a.count(v)) {
      if (!best || v < best) {
        best = v;
        in_a = false;
      }
      break;
    }
  return best;
}

}  // namespace

uint64_t lower_bound_pi_exponent(const mpq_class& r, uint64_t m) {
  if (r < 3) throw std::invalid_argument("the pi lower bound needs r >= 3");
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  mpz_class x = floor_q(2 * r - 2);
  uint64_t c = primes::pi_m(x.get_d(), m);
  return c - (m % 2 == 1 ? 1 : 0);
}

mpz_class lower_bound_pi(const mpq_class& r, uint64_t m) {
  mpz_class b;
  mpz_ui_pow_ui(b.get_mpz_t(), 2, lower_bound_pi_exponent(r, m));
  return b;
}

bool tail_lemma_check(uint64_t d, const mpq_class& r, bool odd_variant, rigor::PrecisionPolicy policy) {
  if (r <= 1) throw std::invalid_argument("tail lemma needs r > 1");
  if (d < 1) throw std::invalid_argument("tail lemma needs d >= 1");
  if (!odd_variant && mpq_class(d) > r - 1) throw std::invalid_argument("part (1) needs d <= r - 1");
  if (odd_variant && (d % 2 == 0 || mpq_class(d) > 2 * r - 2))
    throw std::invalid_argument("part (2) needs odd d <= 2r - 2");
  return rigor::with_escalation(
      [&](int prec) {
        Enclosure lhs = inv_pow(d, r, prec);
        Enclosure rhs = odd_variant ? tail_odd(d + 1, r, prec) : tail_all(d, r, prec);
        return rigor::decide_lt(rhs, lhs, "tail lemma");
      },
      policy);
}

std::string PartitionSignature::to_string() const {
  std::ostringstream os;
  auto put = [&](const std::set<uint64_t>& s) {
    os << '{';
    bool first = true;
    for (auto v : s) os << (first ? "" : ",") << v, first = false;
    os << '}';
  };
  os << '(';
  put(B1);
  os << ',';
  put(B2);
  os << ')';
  return os.str();
}

PartitionSignature signature(uint64_t n, const mpq_class& r, uint64_t m) {
  if (n == 0) throw std::invalid_argument("signature needs n >= 1");
  PartitionSignature s;
  mpq_class lo1 = r - 1, hi2 = 2 * r - 2;
  for (uint64_t d : divisors(n))
    if (mpq_class(d) <= lo1 && primes::gcd(d, m) == 1) s.B1.insert(d);
  if (!s.B1.count(2)) {
    for (uint64_t d : divisors(n))
      if (mpq_class(d) >= lo1 && mpq_class(d) <= hi2 && primes::gcd(d, 2 * m) == 1) s.B2.insert(d);
  }
  return s;
}

Separation separation_check(uint64_t x, uint64_t y, const mpq_class& r, const characters::DirichletCharacter& chi,
                            rigor::PrecisionPolicy policy) {
  if (r <= 1) throw std::invalid_argument("separation needs r > 1");
  uint64_t m = chi.modulus();
  if (m == 0) throw std::invalid_argument("separation needs a 64-bit modulus");
  auto sx = signature(x, r, m), sy = signature(y, r, m);
  if (sx == sy) throw std::invalid_argument("inputs share the signature " + sx.to_string());
  Separation out;
  bool in_x = false;
  if (sx.B1 != sy.B1) {
    out.d0 = min_symdiff(sx.B1, sy.B1, in_x);
  } else {
    out.via_b2 = true;
    out.d0 = min_symdiff(sx.B2, sy.B2, in_x);
  }
  out.upper = in_x ? x : y;
  uint64_t lower = in_x ? y : x;
  out.theta = chi.value(out.d0);
  return rigor::with_escalation(
      [&](int prec) {
        Separation s = out;
        Enclosure tail = s.via_b2 ? tail_odd(s.d0 + 1, r, prec) : tail_all(s.d0, r, prec);
        s.gap_bound = inv_pow(s.d0, r, prec) - tail;
        auto [tr, ti] = chi.complex_value(s.d0, prec);
        auto re_theta = [&](uint64_t n) {
          Enclosure acc(0L, prec);
          for (uint64_t d : divisors(n)) {
            auto [cr, ci] = chi.complex_value(d, prec);
            acc += (cr * tr + ci * ti) * inv_pow(d, r, prec);
          }
          return acc;
        };
        s.concrete_gap = re_theta(s.upper) - re_theta(lower);
        bool pos = rigor::decide_lt(Enclosure(0L, prec), s.gap_bound, "separation gap");
        s.separated = pos && !rigor::certainly_lt(s.concrete_gap, s.gap_bound);
        return s;
      },
      policy);
}

Enclosure eta_constant(int s, const mpq_class& eps, int prec) {
  if (s < 1) throw std::invalid_argument("eta needs s >= 1");
  if (eps <= 0) throw std::invalid_argument("eta needs eps > 0");
  if (!eps.get_num().fits_ulong_p() || !eps.get_den().fits_ulong_p()) throw std::invalid_argument("eps too large");
  unsigned long a = eps.get_num().get_ui(), b = eps.get_den().get_ui();
  mpz_class sb;
  mpz_ui_pow_ui(sb.get_mpz_t(), static_cast<unsigned long>(s), b);
  Enclosure eta(1L, prec);
  const Enclosure one(1L, prec);
  for (uint64_t p = 2;; p = primes::next_prime_after(p)) {
    mpz_class pa;
    mpz_ui_pow_ui(pa.get_mpz_t(), p, a);
    if (pa >= sb) break;
    Enclosure peps = rigor::enc_pow(mpz_class(static_cast<unsigned long>(p)), eps, prec);
    Enclosure term = one, best = one;
    for (long e = 0;; ++e) {
      Enclosure ratio = Enclosure(mpq_class(e + s, e + 1), prec) / peps;
      if (mpfr_cmp_ui(ratio.hi(), 1) < 0) break;
      term *= ratio;
      best = rigor::max(best, term);
    }
    eta *= best;
  }
  return eta;
}

HResult h_value(const numberfield::FieldSpec& K, const mpq_class& r, const mpq_class& eps, uint64_t table_size,
                rigor::PrecisionPolicy policy) {
  if (eps <= 0) throw std::invalid_argument("h needs eps > 0");
  if (r <= eps + 1) throw std::invalid_argument("h needs r > eps + 1");
  if (table_size < 10) throw std::invalid_argument("table too small");
  auto a = numberfield::a_K_table(K, table_size);
  return rigor::with_escalation(
      [&](int prec) {
        HResult h;
        h.epsilon = eps;
        h.eta = eta_constant(K.degree(), eps, prec);
        Enclosure base = Enclosure(mpq_class(r - eps - 1), prec) / h.eta;
        Enclosure v = rigor::pow(base, Enclosure(mpq_class(1 / (1 + eps)), prec));
        Mp f1(prec), f2(prec);
        mpfr_floor(f1.get(), v.lo());
        mpfr_floor(f2.get(), v.hi());
        if (!mpfr_equal_p(f1.get(), f2.get()))
          throw rigor::AmbiguousComparison("floor in h formula", v.lo_string(), v.hi_string(), prec);
        h.h_formula = mpfr_get_ui(f1.get(), MPFR_RNDN);

        // direct scan with the exact table and an eta tail beyond it
        const uint64_t N = table_size;
        Enclosure tail = h.eta / Enclosure(mpq_class(r - eps - 1), prec) *
                         rigor::enc_pow(mpz_class(static_cast<unsigned long>(N)), mpq_class(1 + eps - r), prec);
        std::vector<Enclosure> terms(N + 1, Enclosure(0L, prec));
        Enclosure sum = tail;
        for (uint64_t n = N; n >= 3; --n) {
          if (!a[n]) continue;
          terms[n] = Enclosure(static_cast<long>(a[n]), prec) * inv_pow(n, r, prec);
          sum += terms[n];
        }
        // sum now covers n >= 3, i.e. the tail for d = 2
        h.h_scan = 1;
        for (uint64_t d = 2; d + 1 < N; ++d) {
          if (d > 2) sum -= terms[d];
          if (!rigor::certainly_lt(sum, inv_pow(d, r, prec))) break;
          h.h_scan = d;
        }
        h.h = std::max<uint64_t>({1, h.h_formula, h.h_scan});
        h.certified = true;
        return h;
      },
      policy);
}

mpz_class partition_product(const numberfield::FieldSpec& K, uint64_t h) {
  mpz_class prod = 1;
  for (uint64_t n = 2; n <= h; ++n) prod *= static_cast<unsigned long>(numberfield::b_K(K, n) + 1);
  return prod;
}

mpz_class partition_lower_bound(const numberfield::FieldSpec& K, const mpq_class& r, const mpq_class& eps,
                                HResult* detail) {
  HResult h = h_value(K, r, eps);
  if (detail) *detail = h;
  return partition_product(K, h.h);
}

}  // namespace tdf::bounds
