#include "tdf/closure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdf/primes.hpp"

namespace tdf::closure {

using characters::DirichletCharacter;
using numberfield::FieldSpec;
using numberfield::NormStream;
using rigor::AmbiguousComparison;
using rigor::Mp;

namespace {

// Rosser-Schoenfeld: pi(x) < 1.25506 x / log x for x > 1.
const mpq_class kPiUpper(125506, 100000);
// above this the pi(X) correction is skipped
constexpr uint64_t kCountedTail = 100'000'000;
constexpr uint64_t kClassSumModulusLimit = 100'000;
constexpr int kMaxCopies = 1'000'000;

uint64_t capped_pow(uint64_t p, int f, uint64_t cap) {
  uint64_t v = 1;
  for (int i = 0; i < f; ++i) {
    if (v > cap / p) return 0;
    v *= p;
  }
  return v;
}

[[noreturn]] void ambiguous(const char* what, const Enclosure& a, const Enclosure& b, bool tail) {
  throw AmbiguousComparison(what, a.to_string(), b.to_string(), std::max(a.precision(), b.precision()), tail);
}

bool le_or_gap(const Enclosure& a, const Enclosure& b, const char* what, bool tail) {
  if (rigor::certainly_le(a, b)) return true;
  if (rigor::certainly_lt(b, a)) return false;
  ambiguous(what, a, b, tail);
}

}  // namespace

Enclosure prime_tail_bound(uint64_t X, const mpq_class& r, int prec) {
  if (r <= 1) throw std::invalid_argument("tail bound needs r > 1");
  if (X < 2) throw std::invalid_argument("tail bound needs X >= 2");
  mpz_class Xz(std::to_string(X));
  Enclosure rm1(mpq_class(r - 1), prec);
  Enclosure xr = rigor::enc_pow(Xz, mpq_class(-r), prec);
  Enclosure x1r = rigor::enc_pow(Xz, mpq_class(1 - r), prec);
  // every integer n > X
  Enclosure best = x1r / rm1;
  if (X >= 30) {
    // primes > 5 sit in 8 residue classes mod 30
    Enclosure wheel = Enclosure(8L, prec) * xr + Enclosure(mpq_class(8, 30), prec) * x1r / rm1;
    best = rigor::min(best, wheel);
  }
  {
    Enclosure logx = rigor::log(Enclosure(Xz, prec));
    Enclosure ps = Enclosure(mpq_class(kPiUpper * r), prec) * x1r / (rm1 * logx);
    if (X <= kCountedTail) ps -= Enclosure(mpz_class(static_cast<unsigned long>(primes::pi(X))), prec) * xr;
    if (ps.is_positive()) best = rigor::min(best, ps);
  }
  return best;
}

IntervalUnion merge(IntervalUnion pieces, bool tail_limited) {
  if (pieces.empty()) return pieces;
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& a, const Interval& b) { return mpfr_less_p(a.lo.lo(), b.lo.lo()); });
  // compact in place
  size_t w = 0;
  for (size_t i = 1; i < pieces.size(); ++i) {
    if (le_or_gap(pieces[i].lo, pieces[w].hi, "interval merge", tail_limited)) {
      pieces[w].hi = rigor::max(pieces[w].hi, pieces[i].hi);
    } else if (++w != i) {
      pieces[w] = std::move(pieces[i]);
    }
  }
  pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(w + 1), pieces.end());
  return pieces;
}

IntervalUnion expand_prime(IntervalUnion u, int chi_value, const Enclosure& x, bool tail_limited) {
  if (chi_value == 0) return u;
  int prec = x.precision();
  const Enclosure one(1L, prec);
  IntervalUnion pieces;
  if (chi_value == 1) {
    Enclosure inf = one / (one - x);
    for (const auto& iv : u) {
      Enclosure s = one, pw = one;
      for (int a = 0;; ++a) {
        if (a > kMaxCopies) throw std::runtime_error("expand_prime: too many copies");
        pw = pw * x;
        Enclosure next = s + pw;
        if (le_or_gap(next * iv.lo, s * iv.hi, "copy overlap", tail_limited)) {
          pieces.push_back({s * iv.lo, inf * iv.hi});
          break;
        }
        pieces.push_back({s * iv.lo, s * iv.hi});
        s = next;
      }
    }
  } else if (chi_value == -1) {
    Enclosure lim = one / (one + x);
    Enclosure negx = -x;
    for (const auto& iv : u) {
      Enclosure s = one, pw = one;
      pieces.push_back({iv.lo, iv.hi});
      for (int a = 0;; ++a) {
        if (a > kMaxCopies) throw std::runtime_error("expand_prime: too many copies");
        pw = pw * negx;
        Enclosure next = s + pw;
        pieces.push_back({next * iv.lo, next * iv.hi});
        const Enclosure& big = (a % 2 == 0) ? s : next;
        const Enclosure& small = (a % 2 == 0) ? next : s;
        if (le_or_gap(big * iv.lo, small * iv.hi, "copy overlap", tail_limited)) break;
        s = next;
      }
      pieces.push_back({lim * iv.lo, lim * iv.hi});
    }
  } else {
    throw std::invalid_argument("character value must be -1, 0 or 1");
  }
  IntervalUnion().swap(u);
  return merge(std::move(pieces), tail_limited);
}

struct ClosureEngine::Data {
  NormStream S;
  std::vector<Enclosure> L;   // -log(1 - N_k^{-r})
  std::vector<Enclosure> Lp;  // log(1 + N_k^{-r})
  Enclosure region;           // sum over prime ideals with horizon < N <= X
  Enclosure tail;             // bound for prime ideals with N > X
  bool tail_dominant = false;
  std::map<uint64_t, std::vector<Enclosure>> class_sums;
};

ClosureEngine::ClosureEngine(FieldSpec K, mpq_class r, ClosureConfig cfg)
    : K_(std::move(K)), r_(std::move(r)), cfg_(cfg), prec_(cfg.precision.start) {
  if (r_ <= 1) throw std::invalid_argument("r must exceed 1");
  if (cfg_.horizon < 30) throw std::invalid_argument("horizon must be at least 30");
  X_ = cfg_.truncation ? cfg_.truncation : 4 * cfg_.horizon;
  if (X_ <= cfg_.horizon) throw std::invalid_argument("truncation must exceed the horizon");
  rebuild();
}

ClosureEngine::~ClosureEngine() = default;

const FieldSpec& ClosureEngine::field() const { return K_; }
const mpq_class& ClosureEngine::r() const { return r_; }
const NormStream& ClosureEngine::stream() const { return data_->S; }
int ClosureEngine::precision() const { return prec_; }
uint64_t ClosureEngine::truncation() const { return X_; }

void ClosureEngine::rebuild() {
  auto d = std::make_unique<Data>();
  const int prec = prec_;
  const uint64_t H = cfg_.horizon;
  const Enclosure neg_r(mpq_class(-r_), prec);
  d->S = numberfield::norm_stream(K_, H, cfg_.tie_seed);
  d->L.reserve(d->S.size());
  d->Lp.reserve(d->S.size());
  uint64_t last = 0;
  for (const auto& e : d->S.entries) {
    if (e.norm == last) {
      d->L.push_back(d->L.back());
      d->Lp.push_back(d->Lp.back());
      continue;
    }
    last = e.norm;
    Enclosure x = rigor::enc_pow(mpz_class(static_cast<unsigned long>(e.norm)), neg_r);
    d->L.push_back(rigor::neg_log1m(x));
    d->Lp.push_back(rigor::log1p(x));
  }
  Enclosure region(0L, prec), explicit_tail(0L, prec);
  primes::for_each_prime(2, X_, [&](uint64_t p) {
    auto c = K_.decompose(p);
    uint64_t N = capped_pow(p, c.f, X_);
    if (N != 0 && N <= H) return;
    mpz_class Nz;
    mpz_ui_pow_ui(Nz.get_mpz_t(), p, static_cast<unsigned long>(c.f));
    Enclosure v = Enclosure(static_cast<long>(c.g), prec) * rigor::neg_log1m(rigor::enc_pow(Nz, neg_r));
    if (N == 0)
      explicit_tail += v;
    else
      region += v;
  });
  mpz_class Xz(std::to_string(X_));
  Enclosure xr = rigor::enc_pow(Xz, neg_r);
  Enclosure one(1L, prec);
  d->tail = Enclosure(static_cast<long>(K_.degree()), prec) * prime_tail_bound(X_, r_, prec) / (one - xr) +
            explicit_tail;
  d->region = region;
  double t = d->tail.hi_double();
  d->tail_dominant = t > std::ldexp(1.0, 16 - prec);
  data_ = std::move(d);
}

template <class F>
auto ClosureEngine::escalate(F&& f) -> decltype(f()) {
  for (;;) {
    try {
      return f();
    } catch (AmbiguousComparison& e) {
      if (e.tail_limited()) {
        if (X_ * 4 <= cfg_.max_truncation) {
          X_ *= 4;
          rebuild();
          continue;
        }
      } else if (prec_ * 2 <= cfg_.precision.max) {
        prec_ *= 2;
        rebuild();
        continue;
      }
      e.mark_exhausted();
      throw;
    }
  }
}

namespace {

// sum of the region (horizon, X] restricted to norms coprime to m
Enclosure region_coprime(const FieldSpec& K, const Enclosure& region, const std::vector<uint64_t>& m_primes,
                         uint64_t H, uint64_t X, const mpq_class& r, int prec) {
  Enclosure out = region;
  const Enclosure neg_r(mpq_class(-r), prec);
  for (uint64_t p : m_primes) {
    auto c = K.decompose(p);
    uint64_t N = capped_pow(p, c.f, X);
    if (N == 0 || N <= H) continue;
    out -= Enclosure(static_cast<long>(c.g), prec) *
           rigor::neg_log1m(rigor::enc_pow(mpz_class(static_cast<unsigned long>(N)), neg_r));
  }
  return out;
}

}  // namespace

ZetaTail ClosureEngine::zeta_tail(uint64_t m, size_t i) {
  return escalate([&] {
    const Data& d = *data_;
    ZetaTail z;
    z.m = m;
    z.i = i;
    z.truncation_norm = X_;
    z.tail_bound_log = d.tail;
    std::vector<uint64_t> mp;
    for (auto [p, k] : primes::factorize(m)) mp.push_back(p);
    Enclosure s = region_coprime(K_, d.region, mp, cfg_.horizon, X_, r_, prec_);
    if (i > d.S.size()) {
      Enclosure zero(0L, prec_);
      z.value = rigor::exp(rigor::hull(zero, widen_up(s, d.tail)));
      return z;
    }
    for (size_t k = d.S.size(); k > i; --k)
      if (primes::gcd(d.S.norm(k), m) == 1) s += d.L[k - 1];
    z.value = rigor::exp(widen_up(s, d.tail));
    return z;
  });
}

namespace {

std::vector<int> character_values(const NormStream& S, const DirichletCharacter& chi) {
  if (!chi.is_real()) throw std::invalid_argument("the closure algorithm needs a real character");
  std::vector<int> cv(S.size() + 1, 0);
  uint64_t last = 0;
  int lv = 0;
  for (size_t k = 1; k <= S.size(); ++k) {
    uint64_t N = S.norm(k);
    if (N != last) {
      last = N;
      lv = chi.real_value(N);
    }
    cv[k] = lv;
  }
  return cv;
}

}  // namespace

JResult ClosureEngine::compute_j(const DirichletCharacter& chi) {
  return escalate([&] {
    const Data& d = *data_;
    const size_t J = d.S.size();
    auto cv = character_values(d.S, chi);
    JResult res;
    res.horizon_norm = cfg_.horizon;
    res.scanned_to = J;
    res.q_index.assign(J + 1, 0);
    size_t last = 0;
    for (size_t k = 1; k <= J; ++k) {
      if (cv[k] == 1) {
        last = k;
        if (!res.j_plus) res.j_plus = k;
      }
      res.q_index[k] = last;
    }
    if (!res.j_plus)
      throw std::runtime_error("no prime ideal with character value 1 below the horizon " +
                               std::to_string(cfg_.horizon));

    Enclosure suf = region_coprime(K_, d.region, chi.prime_divisors(), cfg_.horizon, X_, r_, prec_);
    bool first = true;
    for (size_t j = J; j > res.j_plus; --j) {
      if (cv[j] == 0) continue;
      const Enclosure& rhs = d.Lp[res.q_index[j] - 1];
      bool bad = false;
      // condition (1): log zeta_{K,j,m} >= log(1 + N(q_j)^{-r})
      if (rigor::certainly_le(rhs, suf)) {
      } else if (mpfr_less_p(widen_up(suf, d.tail).hi(), rhs.lo())) {
        bad = true;
      } else {
        bool tail = mpfr_less_p(suf.hi(), rhs.lo());
        ambiguous("zeta tail vs 1 + N(q_j)^{-r}", widen_up(suf, d.tail), rhs, tail);
      }
      if (first) {
        res.tail_criterion_holds = !bad;
        first = false;
      }
      // condition (2)
      if (!bad && cv[j] == -1) {
        const Enclosure& lj = d.L[j - 1];
        if (rigor::certainly_lt(lj, rhs)) {
        } else if (rigor::certainly_le(rhs, lj)) {
          bad = true;
        } else {
          ambiguous("Euler factor vs 1 + N(q_j)^{-r}", lj, rhs, false);
        }
      }
      if (bad) {
        res.last_bad = j;
        break;
      }
      suf += d.L[j - 1];
    }
    res.j0 = std::max(res.j_plus, res.last_bad);

    // norm ratio witness over the top of the scanned range
    std::vector<uint64_t> qs;
    for (size_t k = J; k >= 1 && qs.size() <= 1000; --k)
      if (cv[k] == 1 && (qs.empty() || qs.back() != d.S.norm(k))) qs.push_back(d.S.norm(k));
    unsigned long a = r_.get_num().get_ui(), b = r_.get_den().get_ui();
    bool ok = qs.size() >= 2;
    mpz_class lhs, rhs, two_b;
    mpz_ui_pow_ui(two_b.get_mpz_t(), 2, b);
    for (size_t t = 0; ok && t + 1 < qs.size(); ++t) {
      mpz_ui_pow_ui(lhs.get_mpz_t(), qs[t], a);
      mpz_ui_pow_ui(rhs.get_mpz_t(), qs[t + 1], a);
      if (!(lhs < two_b * rhs)) ok = false;
      ++res.witness_pairs;
    }
    res.ratio_witness = ok;
    return res;
  });
}

namespace {

// (sum over chi = 1, sum over chi = -1) of the region (horizon, X]
std::pair<Enclosure, Enclosure> region_split(const FieldSpec& K, const DirichletCharacter& chi, const Enclosure& region,
                                             std::map<uint64_t, std::vector<Enclosure>>& cache, uint64_t H,
                                             uint64_t X, const mpq_class& r, int prec) {
  Enclosure zero(0L, prec);
  if (chi.is_principal()) return {region_coprime(K, region, chi.prime_divisors(), H, X, r, prec), zero};
  const Enclosure neg_r(mpq_class(-r), prec);
  auto contribution = [&](uint64_t p, uint64_t& N) -> std::optional<Enclosure> {
    auto c = K.decompose(p);
    N = capped_pow(p, c.f, X);
    if (N == 0 || N <= H) return std::nullopt;
    return Enclosure(static_cast<long>(c.g), prec) *
           rigor::neg_log1m(rigor::enc_pow(mpz_class(static_cast<unsigned long>(N)), neg_r));
  };
  Enclosure plus = zero, minus = zero;
  const uint64_t m = chi.modulus();
  if (m <= kClassSumModulusLimit) {
    auto it = cache.find(m);
    if (it == cache.end()) {
      std::vector<Enclosure> cs(m, zero);
      primes::for_each_prime(2, X, [&](uint64_t p) {
        uint64_t N;
        if (auto v = contribution(p, N)) cs[N % m] += *v;
      });
      it = cache.emplace(m, std::move(cs)).first;
    }
    for (uint64_t a = 0; a < m; ++a) {
      int c = chi.real_value(a);
      if (c == 1) plus += it->second[a];
      if (c == -1) minus += it->second[a];
    }
    return {plus, minus};
  }
  primes::for_each_prime(2, X, [&](uint64_t p) {
    uint64_t N;
    if (auto v = contribution(p, N)) {
      int c = chi.real_value(N);
      if (c == 1) plus += *v;
      if (c == -1) minus += *v;
    }
  });
  return {plus, minus};
}

}  // namespace

std::pair<Enclosure, Enclosure> ClosureEngine::base_interval(const DirichletCharacter& chi, size_t j0) {
  return escalate([&] {
    Data& d = *data_;
    auto cv = character_values(d.S, chi);
    auto [plus, minus] = region_split(K_, chi, d.region, d.class_sums, cfg_.horizon, X_, r_, prec_);
    for (size_t k = d.S.size(); k > j0; --k) {
      if (cv[k] == 1) plus += d.L[k - 1];
      if (cv[k] == -1) minus += d.L[k - 1];
    }
    Enclosure c = chi.is_principal() ? Enclosure(1L, prec_) : rigor::exp(-widen_up(minus, d.tail));
    Enclosure dd = rigor::exp(widen_up(plus, d.tail));
    return std::make_pair(c, dd);
  });
}

ClosureResult ClosureEngine::compute_closure(const DirichletCharacter& chi) {
  if (!chi.is_real()) throw std::invalid_argument("the closure algorithm needs a real character");
  return escalate([&] {
    ClosureResult res;
    res.j = compute_j(chi);
    auto [c, d] = base_interval(chi, res.j.j0);
    res.c = c;
    res.d = d;
    const Data& data = *data_;
    IntervalUnion u{{c, d}};
    const Enclosure neg_r(mpq_class(-r_), prec_);
    auto capacity = [&](size_t j) {
      throw primes::CapacityError("closure exceeds " + std::to_string(cfg_.max_intervals) + " intervals at prime index " +
                                  std::to_string(j));
    };
    for (size_t j = res.j.j0; j >= 1; --j) {
      uint64_t N = data.S.norm(j);
      int v = chi.real_value(N);
      if (v == 0) continue;
      if (2 * u.size() > cfg_.max_intervals) capacity(j);
      Enclosure x = rigor::enc_pow(mpz_class(static_cast<unsigned long>(N)), neg_r);
      u = expand_prime(std::move(u), v, x, data.tail_dominant);
      if (u.size() > cfg_.max_intervals) capacity(j);
    }
    res.intervals = std::move(u);
    res.count = res.intervals.size();
    res.precision_used = prec_;
    res.truncation_used = X_;
    return res;
  });
}

ClosureResult compute_closure(const FieldSpec& K, const DirichletCharacter& chi, const mpq_class& r,
                              const ClosureConfig& cfg) {
  ClosureEngine e(K, r, cfg);
  return e.compute_closure(chi);
}

Enclosure rational_zeta_tail(const mpq_class& r, size_t i, int prec) {
  if (r <= 1) throw std::invalid_argument("zeta needs r > 1");
  Enclosure re(r, prec);
  Mp lo(prec), hi(prec);
  // zeta is decreasing on (1, inf)
  mpfr_zeta(lo.get(), re.hi(), MPFR_RNDD);
  mpfr_zeta(hi.get(), re.lo(), MPFR_RNDU);
  Enclosure z = Enclosure::from_bounds(lo.get(), hi.get(), prec);
  Enclosure one(1L, prec);
  for (size_t k = 1; k <= i; ++k)
    z *= one - rigor::enc_pow(mpz_class(static_cast<unsigned long>(primes::nth_prime(k))), mpq_class(-r), prec);
  return z;
}

FormulaParams formula_params(ClosureEngine& Q) {
  if (Q.field().kind() != numberfield::FieldKind::Rational)
    throw std::invalid_argument("formula parameters live over the rationals");
  FormulaParams fp;
  fp.j1 = Q.compute_j(characters::principal_character(1)).j0;
  fp.ell = std::max<size_t>(2, fp.j1);
  if (fp.j1 >= 2) {
    fp.i0 = fp.j1;
    return fp;
  }
  const mpq_class r = Q.r();
  fp.i0 = rigor::with_escalation([&](int prec) {
    Enclosure bound = Enclosure(1L, prec) + rigor::enc_pow(mpz_class(3), mpq_class(-r), prec);
    for (size_t i = 1;; ++i) {
      if (i > 100000) throw std::runtime_error("i0 search did not terminate");
      if (rigor::decide_lt(rational_zeta_tail(r, i, prec), bound, "zeta_{Q,i} vs 1 + 3^{-r}")) return i;
    }
  });
  return fp;
}

mpz_class m_i(size_t ell, size_t i) {
  if (ell < 1 || ell > i) throw std::invalid_argument("m_i needs 1 <= ell <= i");
  mpz_class m = 1;
  for (size_t k = 1; k <= i; ++k)
    if (k != ell) m *= static_cast<unsigned long>(primes::nth_prime(k));
  return m;
}

uint64_t formula_count(const mpq_class& r, size_t i, const FormulaParams& fp, rigor::PrecisionPolicy policy) {
  if (i < fp.i0) throw std::invalid_argument("formula_count needs i >= i0 = " + std::to_string(fp.i0));
  return rigor::with_escalation(
      [&](int prec) -> uint64_t {
        Enclosure z = rational_zeta_tail(r, i, prec);
        Enclosure x = rigor::enc_pow(mpz_class(static_cast<unsigned long>(primes::nth_prime(fp.ell))), mpq_class(-r), prec);
        Enclosure one(1L, prec);
        Enclosure v = rigor::log((z - one) / (z - x)) / rigor::log(x);
        Mp a(prec), b(prec);
        mpfr_ceil(a.get(), v.lo());
        mpfr_ceil(b.get(), v.hi());
        if (!mpfr_equal_p(a.get(), b.get())) throw AmbiguousComparison("ceiling in closed formula", v.lo_string(), v.hi_string(), prec);
        if (mpfr_sgn(a.get()) <= 0) throw std::runtime_error("closed formula produced a non-positive count");
        return mpfr_get_ui(a.get(), MPFR_RNDN);
      },
      policy);
}

uint64_t formula_count(ClosureEngine& Q, size_t i) {
  FormulaParams fp = formula_params(Q);
  return formula_count(Q.r(), i, fp);
}

R0Check check_r0(const mpq_class& r, rigor::PrecisionPolicy policy) {
  return rigor::with_escalation(
      [&](int prec) {
        R0Check c;
        Enclosure z = rational_zeta_tail(r, 0, prec);
        Enclosure one(1L, prec);
        c.two_r = rigor::enc_pow(mpz_class(2), mpq_class(-r), prec);
        c.three_r = rigor::enc_pow(mpz_class(3), mpq_class(-r), prec);
        c.sum_from_3 = z - one - c.two_r;
        c.sum_from_4 = c.sum_from_3 - c.three_r;
        bool a = rigor::decide_lt(c.sum_from_3, c.two_r, "sum_{n>=3} n^{-r} vs 2^{-r}");
        bool b = rigor::decide_lt(c.sum_from_4, c.three_r, "sum_{n>=4} n^{-r} vs 3^{-r}");
        c.holds = a && b;
        Enclosure integral = c.three_r * (one + Enclosure(mpq_class(3), prec) / Enclosure(mpq_class(r - 1), prec));
        c.integral_bound_certifies = rigor::certainly_lt(integral, c.two_r);
        return c;
      },
      policy);
}

}  // namespace tdf::closure
