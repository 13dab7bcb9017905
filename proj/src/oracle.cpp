#include "tdf/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "tdf/primes.hpp"

namespace tdf::oracle {

using rigor::Enclosure;

namespace {

constexpr int kPrec = rigor::kDefaultPrecision;
// exponents at or above this are lumped together when predicting classes
constexpr int kExponentCap = 40;

mpz_class Z(uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

void outward(const mpq_class& q, double& lo, double& hi) {
  rigor::Mp t(53);
  mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDD);
  lo = mpfr_get_d(t.get(), MPFR_RNDD);
  mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDU);
  hi = mpfr_get_d(t.get(), MPFR_RNDU);
}

void outward(const Enclosure& e, double& lo, double& hi) {
  lo = mpfr_get_d(e.lo(), MPFR_RNDD);
  hi = mpfr_get_d(e.hi(), MPFR_RNDU);
}

struct Value {
  mpq_class q;
  Enclosure re, im;
};

// sigma of the a-th power of a prime ideal of norm N, memoized on (N, a)
class FactorTable {
 public:
  FactorTable(const characters::DirichletCharacter& chi, const mpq_class& r, bool exact, bool cplx)
      : chi_(chi), r_(r), exact_(exact), cplx_(cplx) {}

  const Value& get(uint64_t N, int a) {
    auto key = std::make_pair(N, a);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Value v;
    if (exact_) {
      int c = chi_.real_value(N);
      mpz_class Nr;
      mpz_pow_ui(Nr.get_mpz_t(), Z(N).get_mpz_t(), r_.get_num().get_ui());
      mpq_class x(c, 1);
      x /= Nr;
      mpq_class s = 1, pw = 1;
      for (int i = 1; i <= a; ++i) s += (pw *= x);
      v.q = s;
    } else if (!cplx_) {
      int c = chi_.real_value(N);
      Enclosure x = Enclosure(static_cast<long>(c), kPrec) * rigor::enc_pow(Z(N), mpq_class(-r_), kPrec);
      Enclosure s(1L, kPrec), pw(1L, kPrec);
      for (int i = 1; i <= a; ++i) s += (pw *= x);
      v.re = s;
      v.im = Enclosure(0L, kPrec);
    } else {
      characters::RootValue w = chi_.value(N), pw = characters::RootValue::make(0, 1);
      Enclosure xr = rigor::enc_pow(Z(N), mpq_class(-r_), kPrec), mag(1L, kPrec);
      Enclosure re(1L, kPrec), im(0L, kPrec);
      for (int i = 1; i <= a; ++i) {
        pw = pw * w;
        mag *= xr;
        if (pw.zero) break;
        auto [c, s] = characters::unit_circle(pw.k, pw.n, kPrec);
        re += c * mag;
        im += s * mag;
      }
      v.re = re;
      v.im = im;
    }
    return memo_.emplace(key, std::move(v)).first->second;
  }

 private:
  characters::DirichletCharacter chi_;
  mpq_class r_;
  bool exact_, cplx_;
  std::map<std::pair<uint64_t, int>, Value> memo_;
};

// running product of factors, in exact, real or complex form
struct Acc {
  bool exact, cplx;
  mpq_class q = 1;
  Enclosure re{1L, kPrec}, im{0L, kPrec};

  void mul(const Value& v) {
    if (exact) {
      q *= v.q;
    } else if (!cplx) {
      re *= v.re;
    } else {
      Enclosure nr = re * v.re - im * v.im;
      im = re * v.im + im * v.re;
      re = nr;
    }
  }
  void store(Sample& s) const {
    if (exact) {
      outward(q, s.lo, s.hi);
    } else {
      outward(re, s.lo, s.hi);
      if (cplx) outward(im, s.im_lo, s.im_hi);
    }
  }
};

}  // namespace

Enclosure naive_sigma(uint64_t n, const characters::DirichletCharacter& chi, const mpq_class& r, int prec) {
  if (n == 0) throw std::invalid_argument("sigma needs n >= 1");
  Enclosure s(0L, prec);
  for (uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    for (uint64_t e : {d, n / d}) {
      int c = chi.real_value(e);
      if (c) s += Enclosure(static_cast<long>(c), prec) * rigor::enc_pow(Z(e), mpq_class(-r), prec);
      if (d * d == n) break;
    }
  }
  return s;
}

SampleSet sample_image(const numberfield::FieldSpec& K, const characters::DirichletCharacter& chi, const mpq_class& r,
                       uint64_t max_norm, uint64_t budget) {
  if (r <= 0) throw std::invalid_argument("sampling needs r > 0");
  if (max_norm == 0) throw std::invalid_argument("max_norm must be positive");
  if (max_norm > budget) throw primes::CapacityError("max_norm exceeds the sampling budget");
  SampleSet out;
  out.K = K;
  out.chi = chi;
  out.r = r;
  out.max_norm = max_norm;
  out.complex = !chi.is_real();
  out.exact = !out.complex && r.get_den() == 1 && r.get_num().fits_ulong_p();
  FactorTable table(chi, r, out.exact, out.complex);

  if (K.kind() == numberfield::FieldKind::Rational) {
    std::vector<uint32_t> spf(max_norm + 1, 0);
    for (uint64_t i = 2; i <= max_norm; ++i)
      if (!spf[i])
        for (uint64_t j = i; j <= max_norm; j += i)
          if (!spf[j]) spf[j] = static_cast<uint32_t>(i);
    out.samples.resize(max_norm);
    for (uint64_t n = 1; n <= max_norm; ++n) {
      Acc acc{out.exact, out.complex};
      uint64_t m = n;
      while (m > 1) {
        uint64_t p = spf[m];
        int a = 0;
        while (m % p == 0) m /= p, ++a;
        acc.mul(table.get(p, a));
      }
      Sample& s = out.samples[n - 1];
      s.n = n;
      acc.store(s);
    }
    return out;
  }

  out.stream = numberfield::norm_stream(K, max_norm);
  const auto& st = out.stream;
  struct Item {
    uint64_t norm;
    numberfield::IdealFactorization I;
  };
  std::vector<Item> items;
  numberfield::IdealFactorization cur;
  std::function<void(size_t, uint64_t)> walk = [&](size_t k, uint64_t norm) {
    if (items.size() >= budget) throw primes::CapacityError("ideal enumeration exceeds the sampling budget");
    items.push_back({norm, cur});
    for (size_t j = k; j <= st.size(); ++j) {
      uint64_t N = st.norm(j);
      if (N > max_norm / norm) break;
      uint64_t nn = norm;
      for (int a = 1; nn <= max_norm / N; ++a) {
        nn *= N;
        cur.factors.push_back({j, a});
        walk(j + 1, nn);
        cur.factors.pop_back();
      }
    }
  };
  walk(1, 1);
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.norm < b.norm; });
  out.samples.resize(items.size());
  out.ideals.reserve(items.size());
  for (size_t i = 0; i < items.size(); ++i) {
    Acc acc{out.exact, out.complex};
    for (auto [k, a] : items[i].I.factors) acc.mul(table.get(st.norm(k), a));
    out.samples[i].n = items[i].norm;
    acc.store(out.samples[i]);
    out.ideals.push_back(std::move(items[i].I));
  }
  return out;
}

VerifyReport verify_against_closure(const SampleSet& s, const closure::ClosureResult& c) {
  if (s.complex) throw std::invalid_argument("closure comparison needs a real character");
  VerifyReport rep;
  rep.samples = s.size();
  const auto& iv = c.intervals;
  rep.hits.assign(iv.size(), 0);
  auto witness = [&](std::string w) {
    if (rep.witnesses.size() < 20) rep.witnesses.push_back(std::move(w));
  };
  auto locate = [&](double lo, double hi) -> long {
    for (size_t k = 0; k < iv.size(); ++k)
      if (mpfr_cmp_d(iv[k].lo.lo(), lo) <= 0 && mpfr_cmp_d(iv[k].hi.hi(), hi) >= 0) return static_cast<long>(k);
    return -1;
  };
  // values sitting on an endpoint need more than 53 bits
  FactorTable fine(s.chi, s.r, s.exact, false);
  auto relocate = [&](size_t i) -> long {
    Enclosure v(1L, iv.empty() ? kPrec : iv.front().lo.precision());
    auto mul = [&](uint64_t N, int a) {
      const Value& f = fine.get(N, a);
      v *= s.exact ? Enclosure(f.q, v.precision()) : f.re;
    };
    if (s.K.kind() == numberfield::FieldKind::Rational) {
      for (auto [p, a] : primes::factorize(s.samples[i].n)) mul(p, a);
    } else {
      for (auto [k, a] : s.ideals[i].factors) mul(s.stream.norm(k), a);
    }
    for (size_t k = 0; k < iv.size(); ++k)
      if (mpfr_cmp(iv[k].lo.lo(), v.lo()) <= 0 && mpfr_cmp(iv[k].hi.hi(), v.hi()) >= 0) return static_cast<long>(k);
    return -1;
  };

  // class prediction over the first J prime ideals
  const size_t J = c.j.j0;
  std::vector<uint64_t> norms;
  if (s.K.kind() == numberfield::FieldKind::Rational) {
    for (size_t k = 1; k <= J; ++k) norms.push_back(primes::nth_prime(k));
  } else {
    for (size_t k = 1; k <= J && k <= s.stream.size(); ++k) norms.push_back(s.stream.norm(k));
  }
  const int prec = c.c.precision();
  const Enclosure one(1L, prec);
  auto factor_range = [&](uint64_t N, int e) {
    int v = s.chi.real_value(N);
    Enclosure x = Enclosure(static_cast<long>(v), prec) * rigor::enc_pow(Z(N), mpq_class(-s.r), prec);
    auto partial = [&](int a) {
      Enclosure t(1L, prec), pw(1L, prec);
      for (int i = 1; i <= a; ++i) t += (pw *= x);
      return t;
    };
    if (v == 0) return std::make_pair(one, one);
    if (e < kExponentCap) {
      Enclosure t = partial(e);
      return std::make_pair(t, t);
    }
    Enclosure a = partial(kExponentCap);
    if (v == 1) return std::make_pair(a, one / (one - x));
    Enclosure b = partial(kExponentCap + 1);
    return std::make_pair(rigor::min(a, b), rigor::max(a, b));
  };
  std::map<std::vector<int>, long> predicted;
  auto predict = [&](const std::vector<int>& key) {
    auto it = predicted.find(key);
    if (it != predicted.end()) return it->second;
    Enclosure lo = c.c, hi = c.d;
    for (size_t k = 0; k < key.size(); ++k) {
      auto [a, b] = factor_range(norms[k], key[k]);
      lo *= a;
      hi *= b;
    }
    long idx = -1;
    for (size_t k = 0; k < iv.size(); ++k)
      if (mpfr_cmp(iv[k].lo.lo(), lo.lo()) <= 0 && mpfr_cmp(iv[k].hi.hi(), hi.hi()) >= 0) idx = static_cast<long>(k);
    return predicted[key] = idx;
  };

  const bool rational = s.K.kind() == numberfield::FieldKind::Rational;
  std::vector<int> key(norms.size());
  for (size_t i = 0; i < s.size(); ++i) {
    const Sample& x = s.samples[i];
    long k = locate(x.lo, x.hi);
    if (k < 0) k = relocate(i);
    if (k < 0) {
      ++rep.outside;
      witness("input " + std::to_string(x.n) + " value near " + std::to_string(x.lo) + " lies in no interval");
      continue;
    }
    ++rep.hits[k];
    std::fill(key.begin(), key.end(), 0);
    if (rational) {
      uint64_t n = x.n;
      for (size_t j = 0; j < norms.size(); ++j)
        while (n % norms[j] == 0) n /= norms[j], key[j] = std::min(key[j] + 1, kExponentCap);
    } else {
      for (auto [idx, a] : s.ideals[i].factors)
        if (idx <= norms.size()) key[idx - 1] = std::min(a, kExponentCap);
    }
    long p = predict(key);
    if (p != k) {
      ++rep.class_mismatch;
      witness("input " + std::to_string(x.n) + " sits in interval " + std::to_string(k + 1) +
              " but its class predicts " + (p < 0 ? std::string("no single interval") : std::to_string(p + 1)));
    }
  }
  rep.classes = predicted.size();
  rep.contained = rep.outside == 0;
  rep.all_hit = !iv.empty() && std::all_of(rep.hits.begin(), rep.hits.end(), [](size_t h) { return h > 0; });
  for (size_t k = 0; k < iv.size(); ++k)
    if (!rep.hits[k]) witness("interval " + std::to_string(k + 1) + " has no sample");
  if (iv.empty()) witness("closure has no intervals");
  rep.classes_match = rep.class_mismatch == 0 && rep.contained;
  return rep;
}

void emit_figure(const SampleSet& s, const std::string& path, FigureFormat fmt) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  if (fmt == FigureFormat::Csv) {
    // plotting data: midpoints of the enclosures
    out << (s.complex ? "n,re,im\n" : "n,sigma\n");
    char buf[128];
    for (const auto& x : s.samples) {
      if (s.complex)
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g\n", static_cast<unsigned long long>(x.n),
                      0.5 * (x.lo + x.hi), 0.5 * (x.im_lo + x.im_hi));
      else
        std::snprintf(buf, sizeof buf, "%llu,%.17g\n", static_cast<unsigned long long>(x.n), 0.5 * (x.lo + x.hi));
      out << buf;
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    return;
  }

  const int W = 800, H = 500, L = 70, B = 40, T = 20, R = 20;
  if (s.samples.empty()) throw std::invalid_argument("no samples to plot");
  // real characters: n against sigma; complex: the planar image
  auto xv = [&](const Sample& p) { return s.complex ? 0.5 * (p.lo + p.hi) : static_cast<double>(p.n); };
  auto yv = [&](const Sample& p) { return s.complex ? 0.5 * (p.im_lo + p.im_hi) : 0.5 * (p.lo + p.hi); };
  double x0 = xv(s.samples[0]), x1 = x0, y0 = yv(s.samples[0]), y1 = y0;
  for (const auto& p : s.samples) {
    x0 = std::min(x0, xv(p)), x1 = std::max(x1, xv(p));
    y0 = std::min(y0, yv(p)), y1 = std::max(y1, yv(p));
  }
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const int pw = W - L - R, ph = H - T - B;
  std::set<std::pair<int, int>> cells;
  for (const auto& p : s.samples) {
    int cx = static_cast<int>((xv(p) - x0) / (x1 - x0) * pw);
    int cy = static_cast<int>((y1 - yv(p)) / (y1 - y0) * ph);
    cells.insert({cx, cy});
  }
  char buf[512];
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n"
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                L, T + ph, L + pw, T + ph, L, T, L, T + ph);
  out << buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n"
                "<text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n"
                "<text x=\"%d\" y=\"%d\" font-size=\"12\">%.6g</text>\n"
                "<text x=\"%d\" y=\"%d\" font-size=\"12\" text-anchor=\"end\">%.6g</text>\n",
                L - 4, T + ph, y0, L - 4, T + 10, y1, L, T + ph + 16, x0, L + pw, T + ph + 16, x1);
  out << buf;
  out << "<g fill=\"#1f4e8c\">\n";
  for (auto [cx, cy] : cells) {
    std::snprintf(buf, sizeof buf, "<rect x=\"%d\" y=\"%d\" width=\"1\" height=\"1\"/>\n", L + cx, T + cy);
    out << buf;
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tdf::oracle
