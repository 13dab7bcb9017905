#include "tdf/mighty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tdf/closure.hpp"
#include "tdf/primes.hpp"

namespace tdf::mighty {

namespace {

mpz_class Z(uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

Enclosure inv_pow(uint64_t n, const mpq_class& e, int prec) { return rigor::enc_pow(Z(n), mpq_class(-e), prec); }

double inv_pow_d(uint64_t n, double e) { return std::exp(-e * std::log(static_cast<double>(n))); }

// q^s <= n without overflow
bool pow_le(uint64_t q, int s, uint64_t n) {
  uint64_t v = 1;
  for (int k = 0; k < s; ++k) {
    if (v > n / q) return false;
    v *= q;
  }
  return v <= n;
}

uint64_t checked_pow(uint64_t b, int e) {
  uint64_t v = 1;
  for (int k = 0; k < e; ++k) {
    if (v > UINT64_MAX / b) throw primes::CapacityError("power exceeds 64 bits");
    v *= b;
  }
  return v;
}

enum class State { True, False, Unknown };

struct Eval {
  MightyCertificate cert;
  State state = State::Unknown;
};

Eval evaluate(int degree, const LocalSplitting& split, const mpq_class& r, uint64_t d, uint64_t Y, int prec) {
  Eval ev;
  auto& c = ev.cert;
  c.d = d;
  c.r = r;
  c.cutoff = Y;
  c.precision = prec;
  const Enclosure one(1L, prec);
  const mpz_class dz = Z(d);
  c.lhs = one + inv_pow(d, r, prec);

  Enclosure logsum(0L, prec), unresolved(0L, prec);
  primes::for_each_prime(2, Y, [&](uint64_t p) {
    auto fs = split(p);
    if (fs) {
      for (int f : *fs) {
        mpz_class N;
        mpz_ui_pow_ui(N.get_mpz_t(), p, f);
        if (N > dz) logsum += rigor::neg_log1m(rigor::enc_pow(N, mpq_class(-r), prec));
      }
      return;
    }
    // at most `degree` ideals, each of norm p^f > d for the least such f
    mpz_class N = Z(p);
    while (N <= dz) N *= static_cast<unsigned long>(p);
    unresolved += Enclosure(static_cast<long>(degree), prec) * rigor::neg_log1m(rigor::enc_pow(N, mpq_class(-r), prec));
    ++c.unresolved_primes;
  });
  Enclosure yr = inv_pow(Y, r, prec);
  c.tail_log = Enclosure(static_cast<long>(degree), prec) * closure::prime_tail_bound(Y, r, prec) / (one - yr);
  Enclosure lg = rigor::widen_up(rigor::widen_up(logsum, unresolved), c.tail_log);
  c.rhs = rigor::exp(lg);
  if (rigor::certainly_lt(c.rhs, c.lhs))
    ev.state = State::True;
  else if (rigor::certainly_le(c.lhs, c.rhs))
    ev.state = State::False;
  c.verdict = ev.state == State::True;
  return ev;
}

void check_is_norm(const LocalSplitting& split, uint64_t d) {
  if (d < 2) throw std::invalid_argument("a prime-ideal norm is at least 2");
  auto fac = primes::factorize(d);
  if (fac.size() != 1) throw std::invalid_argument(std::to_string(d) + " is not a prime power");
  auto [p, k] = fac.front();
  auto fs = split(p);
  if (!fs) throw std::invalid_argument("splitting of " + std::to_string(p) + " is unknown; cannot confirm the norm");
  if (std::find(fs->begin(), fs->end(), k) == fs->end())
    throw std::invalid_argument(std::to_string(d) + " is not the norm of a prime ideal");
}

}  // namespace

bool TechnicalSequence::all_hold() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionCheck& c) { return c.holds; });
}

Enclosure prime_power_tail(uint64_t a, uint64_t y, const mpq_class& e, int prec) {
  y = std::max<uint64_t>({y, a, 30});
  Enclosure s(0L, prec);
  primes::for_each_prime(a + 1, y, [&](uint64_t q) { s += inv_pow(q, e, prec); });
  return s + closure::prime_tail_bound(y, e, prec);
}

MightyCertificate is_mighty(int degree, const LocalSplitting& split, const mpq_class& r, uint64_t d,
                            const MightyConfig& cfg) {
  if (r <= 1) throw std::invalid_argument("mighty norms need r > 1");
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  check_is_norm(split, d);
  uint64_t Y = cfg.cutoff ? cfg.cutoff : std::max<uint64_t>(1000, 16 * d);
  Y = std::max<uint64_t>(Y, 30);
  int prec = cfg.precision.start;
  for (;;) {
    Eval ev = evaluate(degree, split, r, d, Y, prec);
    if (ev.state != State::Unknown) return ev.cert;
    double tail = ev.cert.tail_log.hi_double();
    bool tail_limited = tail > std::ldexp(1.0, 16 - prec) || ev.cert.unresolved_primes > 0;
    if (tail_limited && Y * 8 <= cfg.max_cutoff) {
      Y *= 8;
    } else if (prec * 2 <= cfg.precision.max) {
      prec *= 2;
    } else if (Y * 8 <= cfg.max_cutoff) {
      Y *= 8;
    } else {
      rigor::AmbiguousComparison e("mighty norm test", ev.cert.lhs.to_string(), ev.cert.rhs.to_string(), prec,
                                   tail_limited);
      e.mark_exhausted();
      throw e;
    }
  }
}

MightyCertificate is_mighty(const numberfield::FieldSpec& K, const mpq_class& r, uint64_t d,
                            const MightyConfig& cfg) {
  LocalSplitting split = [&K](uint64_t p) -> std::optional<std::vector<int>> {
    auto c = K.decompose(p);
    return std::vector<int>(c.g, c.f);
  };
  return is_mighty(K.degree(), split, r, d, cfg);
}

TechnicalSequence build_technical_sequence(const mpq_class& r, int s, int M, const SequenceConfig& cfg) {
  if (r <= 1) throw std::invalid_argument("the sequence needs r > 1");
  if (s < 2) throw std::invalid_argument("the sequence needs s >= 2");
  if (M < 1) throw std::invalid_argument("the sequence needs M >= 1");
  const int prec = cfg.precision.start;
  const uint64_t lim = cfg.enumeration_limit;
  const Enclosure one(1L, prec), twelve(12L, prec), sE(static_cast<long>(s), prec);
  const double rd = r.get_d();
  const mpq_class sr = r * s;

  TechnicalSequence ts;
  ts.r = r;
  ts.s = s;
  ts.M = M;
  auto log = [&](std::string name, size_t i, size_t j, Enclosure lhs, Enclosure rhs, bool holds) {
    ts.conditions.push_back({std::move(name), i, j, std::move(lhs), std::move(rhs), holds});
  };

  // (4): sum_{q > p} q^{-sr} < p^{-r}/12
  auto cond4 = [&](uint64_t p, Enclosure& lhs, Enclosure& rhs) {
    rhs = inv_pow(p, r, prec) / twelve;
    for (uint64_t mult : {4ULL, 64ULL}) {
      uint64_t y = std::min<uint64_t>(std::max<uint64_t>(p * mult, 1000), std::max(lim, p));
      lhs = prime_power_tail(p, y, sr, prec);
      if (rigor::certainly_lt(lhs, rhs)) return true;
    }
    return false;
  };

  auto members = [&](uint64_t p) {
    std::vector<uint64_t> S;
    primes::for_each_prime(2, p, [&](uint64_t q) {
      if (!pow_le(q, s, p)) S.push_back(q);
    });
    return S;
  };

  // p_1
  const uint64_t base = checked_pow(std::max(2, s), s);
  for (uint64_t p = primes::next_prime_after(base);; p = primes::next_prime_after(p)) {
    if (p > lim) throw primes::CapacityError("no admissible p_1 below the enumeration limit");
    Enclosure x = inv_pow(p, r, prec);
    Enclosure b_l = rigor::neg_log1m(x), b_r = Enclosure(2L, prec) * x;
    Enclosure c_l = rigor::log1p(x), c_r = x / Enclosure(2L, prec);
    bool b = rigor::certainly_le(b_l, b_r), c = rigor::certainly_le(c_r, c_l);
    Enclosure l4, r4;
    if (!b || !c || !cond4(p, l4, r4)) continue;
    ts.p.push_back(p);
    log("(1a) p_1 > max(2,s)^s", 1, 0, Enclosure(Z(p), prec), Enclosure(Z(base), prec), true);
    log("(1b) log(1-x)^{-1} <= 2x", 1, 0, b_l, b_r, true);
    log("(1c) log(1+x) >= x/2", 1, 0, c_l, c_r, true);
    log("(4) sum_{q>p_i} q^{-sr} < p_i^{-r}/12", 1, 0, l4, r4, true);
    break;
  }

  for (int i = 2; i <= M; ++i) {
    const uint64_t prev = ts.p.back();
    const uint64_t lower = checked_pow(prev, s);
    if (lower >= lim) throw primes::CapacityError("p_" + std::to_string(i) + " would exceed the enumeration limit");
    const double target = inv_pow_d(prev, rd) / (12.0 * M) / s;
    const Enclosure Mq(static_cast<long>(M), prec);

    uint64_t hi = std::min<uint64_t>(lim, std::max<uint64_t>(uint64_t(1) << 20, 4 * lower));
    auto t = primes::table(hi);
    double A = 0, B = 0;
    size_t a = 0, b = 0;
    while (a < t->primes.size() && t->primes[a] <= lower) A += inv_pow_d(t->primes[a++], rd);
    uint64_t found = 0;
    while (!found) {
      for (; a < t->primes.size() && t->primes[a] <= hi; ++a) {
        uint64_t p = t->primes[a];
        A += inv_pow_d(p, rd);
        while (b < a && pow_le(t->primes[b], s, p)) B += inv_pow_d(t->primes[b++], rd);
        if (A - B >= target * (1 - 1e-9)) continue;
        // certify (3) against every earlier p_j, then (4)
        Enclosure sum(0L, prec);
        for (size_t k = b; k <= a; ++k) sum += inv_pow(t->primes[k], r, prec);
        Enclosure lhs3 = sE * sum;
        std::vector<ConditionCheck> c3;
        bool ok = true;
        for (size_t j = 0; j + 1 < static_cast<size_t>(i) && ok; ++j) {
          Enclosure rhs3 = inv_pow(ts.p[j], r, prec) / (twelve * Mq);
          ok = rigor::certainly_lt(lhs3, rhs3);
          c3.push_back({"(3) s sum_{S_i} q^{-r} < p_j^{-r}/(12M)", static_cast<size_t>(i), j + 1, lhs3, rhs3, ok});
        }
        Enclosure l4, r4;
        if (!ok || !cond4(p, l4, r4)) continue;
        found = p;
        log("(2) p_i^{1/s} > p_{i-1}", i, i - 1, Enclosure(Z(p), prec), Enclosure(Z(lower), prec), true);
        for (auto& c : c3) ts.conditions.push_back(std::move(c));
        log("(4) sum_{q>p_i} q^{-sr} < p_i^{-r}/12", i, 0, l4, r4, true);
        break;
      }
      if (found) break;
      if (hi >= lim) throw primes::CapacityError("no admissible p_" + std::to_string(i) + " below the enumeration limit");
      hi = std::min(lim, hi * 8);
      t = primes::table(hi);
    }
    ts.p.push_back(found);
  }
  for (uint64_t p : ts.p) ts.S.push_back(members(p));

  // X: s sum_{q > X} q^{-r} < p_M^{-r}/12
  const uint64_t pM = ts.p.back();
  const Enclosure rhsX = inv_pow(pM, r, prec) / twelve;
  const double targetX = inv_pow_d(pM, rd) / 12.0 / s;
  double lo_l = std::log(static_cast<double>(pM)), hi_l = 44.0;
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (lo_l + hi_l);
    double est = std::exp((1 - rd) * m) / ((rd - 1) * m);
    (est > targetX ? lo_l : hi_l) = m;
  }
  const double X_est = std::exp(hi_l);
  if (X_est * 4 <= static_cast<double>(lim)) {
    uint64_t Y = std::min<uint64_t>(lim, std::max<uint64_t>(1000, static_cast<uint64_t>(X_est * 64)));
    Y = std::max(Y, pM + 1);
    double R = closure::prime_tail_bound(Y, r, 53).hi_double();
    std::vector<uint64_t> qs;
    primes::for_each_prime(pM + 1, Y, [&](uint64_t q) {
      qs.push_back(q);
      R += inv_pow_d(q, rd);
    });
    for (size_t k = 0; k < qs.size(); ++k) {
      R -= inv_pow_d(qs[k], rd);
      if (R >= targetX * (1 - 1e-9)) continue;
      Enclosure lhs = sE * prime_power_tail(qs[k], Y, r, prec);
      if (!rigor::certainly_lt(lhs, rhsX)) continue;
      ts.X = qs[k];
      log("(X) s sum_{q>X} q^{-r} < p_M^{-r}/12", M, 0, lhs, rhsX, true);
      break;
    }
  }
  if (!ts.X) {
    ts.X_enumerated = false;
    auto ok = [&](uint64_t X) { return rigor::certainly_lt(sE * closure::prime_tail_bound(X, r, prec), rhsX); };
    uint64_t lo = std::max<uint64_t>(pM, 30), hi = std::max<uint64_t>(lo + 1, static_cast<uint64_t>(X_est));
    while (!ok(hi)) {
      if (hi > (uint64_t(1) << 62)) throw primes::CapacityError("X exceeds 64 bits");
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      uint64_t m = lo + (hi - lo) / 2;
      (ok(m) ? hi : lo) = m;
    }
    ts.X = hi;
    log("(X) s sum_{q>X} q^{-r} < p_M^{-r}/12", M, 0, sE * closure::prime_tail_bound(hi, r, prec), rhsX, true);
  }
  return ts;
}

}  // namespace tdf::mighty
