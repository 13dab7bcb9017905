#include "tdf/numberfield.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "tdf/primes.hpp"

namespace tdf::numberfield {

using rigor::Enclosure;

RamifiedUndeclared::RamifiedUndeclared(uint64_t p_)
    : FieldError("prime " + std::to_string(p_) + " divides the polynomial discriminant but has no declared splitting type"),
      p(p_) {}

NonGalois::NonGalois(uint64_t p_, const std::string& pattern)
    : FieldError("field is not Galois: factor degrees mod " + std::to_string(p_) + " are " + pattern), p(p_) {}

namespace {

uint64_t phi(uint64_t n) {
  uint64_t r = n;
  for (auto [q, k] : primes::factorize(n)) r = r / q * (q - 1);
  return r;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) { return static_cast<unsigned __int128>(a) * b % m; }

uint64_t mult_order(uint64_t a, uint64_t m) {
  if (m == 1) return 1;
  uint64_t ord = phi(m);
  for (auto [q, k] : primes::factorize(ord)) {
    for (int i = 0; i < k; ++i) {
      uint64_t cand = ord / q;
      uint64_t x = 1, b = a % m, e = cand;
      while (e) {
        if (e & 1) x = mulmod(x, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
      }
      if (x != 1) break;
      ord = cand;
    }
  }
  return ord;
}

// p^f, or 0 when it exceeds cap
uint64_t capped_pow(uint64_t p, int f, uint64_t cap) {
  uint64_t v = 1;
  for (int i = 0; i < f; ++i) {
    if (v > cap / p) return 0;
    v *= p;
  }
  return v <= cap ? v : 0;
}

uint64_t coefficient(int f, int g, int k) {
  if (k % f) return 0;
  return binomial(static_cast<uint64_t>(k / f + g - 1), static_cast<uint64_t>(g - 1));
}

}  // namespace

uint64_t binomial(uint64_t n, uint64_t k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  if (!mpz_fits_ulong_p(b.get_mpz_t())) throw std::overflow_error("binomial coefficient overflows 64 bits");
  return b.get_ui();
}

FieldSpec FieldSpec::rational() { return FieldSpec(); }

FieldSpec FieldSpec::quadratic(long d) {
  if (d == 0 || d == 1) throw FieldError("quadratic field needs d != 0, 1");
  for (auto [q, k] : primes::factorize(static_cast<uint64_t>(d < 0 ? -d : d)))
    if (k > 1) throw FieldError("quadratic field needs squarefree d, got " + std::to_string(d));
  FieldSpec K;
  K.kind_ = FieldKind::Quadratic;
  K.degree_ = 2;
  K.d_ = d;
  return K;
}

FieldSpec FieldSpec::cyclotomic(uint64_t m) {
  if (m < 1) throw FieldError("cyclotomic field needs m >= 1");
  if (m % 4 == 2) m /= 2;
  if (m == 1) return rational();
  FieldSpec K;
  K.kind_ = FieldKind::Cyclotomic;
  K.m_ = m;
  K.degree_ = static_cast<int>(phi(m));
  return K;
}

FieldSpec FieldSpec::polynomial(const polyfield::PolyZ& f, std::vector<PrimeIdealClass> ramified) {
  if (f.degree() < 1) throw FieldError("defining polynomial must have degree >= 1");
  if (!f.is_monic()) throw FieldError("defining polynomial must be monic");
  if (f.degree() == 1) return rational();
  FieldSpec K;
  K.kind_ = FieldKind::Polynomial;
  K.degree_ = f.degree();
  K.poly_ = f;
  K.disc_ = polyfield::discriminant(f);
  if (K.disc_ == 0) throw FieldError("defining polynomial is not squarefree");
  if (!polyfield::certify_irreducible_over_q(f, K.disc_))
    throw FieldError("could not certify irreducibility of " + f.to_string());
  for (const auto& c : ramified) {
    if (c.e * c.f * c.g != K.degree_)
      throw FieldError("declared splitting type at " + std::to_string(c.p) + " has e*f*g != degree");
    K.ramified_[c.p] = c;
  }
  return K;
}

long FieldSpec::quadratic_discriminant() const {
  long m4 = ((d_ % 4) + 4) % 4;
  return m4 == 1 ? d_ : 4 * d_;
}

PrimeIdealClass FieldSpec::decompose(uint64_t p) const {
  PrimeIdealClass c;
  c.p = p;
  switch (kind_) {
    case FieldKind::Rational:
      return c;
    case FieldKind::Quadratic: {
      long D = quadratic_discriminant();
      if (D % static_cast<long>(p) == 0) return {p, 2, 1, 1};
      int k = characters::kronecker_symbol(D, static_cast<long>(p));
      return k == 1 ? PrimeIdealClass{p, 1, 1, 2} : PrimeIdealClass{p, 1, 2, 1};
    }
    case FieldKind::Cyclotomic: {
      uint64_t mp = m_, pk = 1;
      while (mp % p == 0) {
        mp /= p;
        pk *= p;
      }
      c.e = static_cast<int>(pk == 1 ? 1 : phi(pk));
      c.f = static_cast<int>(mult_order(p, mp));
      c.g = static_cast<int>(phi(mp) / c.f);
      return c;
    }
    case FieldKind::Polynomial: {
      auto it = ramified_.find(p);
      if (it != ramified_.end()) return it->second;
      if (mpz_divisible_ui_p(disc_.get_mpz_t(), p)) throw RamifiedUndeclared(p);
      auto degs = polyfield::factor_degrees(poly_.reduce(p));
      if (degs.size() != 1) {
        std::ostringstream os;
        bool first = true;
        for (auto [d, n] : degs) {
          for (int i = 0; i < n; ++i) os << (first ? "" : ",") << d, first = false;
        }
        throw NonGalois(p, os.str());
      }
      c.f = degs.begin()->first;
      c.g = degs.begin()->second;
      return c;
    }
  }
  return c;
}

std::string FieldSpec::name() const {
  switch (kind_) {
    case FieldKind::Rational:
      return "Q";
    case FieldKind::Quadratic:
      return "Q(sqrt(" + std::to_string(d_) + "))";
    case FieldKind::Cyclotomic:
      return "Q(zeta_" + std::to_string(m_) + ")";
    case FieldKind::Polynomial:
      return "Q[x]/(" + poly_.to_string() + ")";
  }
  return "?";
}

PrimeIdealClass quadratic_local_class(const mpz_class& delta, uint64_t p) {
  if (delta == 0) throw FieldError("quadratic discriminant is zero");
  mpz_class D = delta;
  if (p == 2) {
    auto m4 = [](const mpz_class& x) { return static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 4)); };
    while (m4(D) == 0) {
      mpz_class q = D / 4;
      int r = m4(q);
      if (r == 0 || r == 1)
        D = q;
      else
        break;
    }
    if (m4(D) == 0) return {2, 2, 1, 1};
    int r8 = static_cast<int>(mpz_fdiv_ui(D.get_mpz_t(), 8));
    if (r8 == 1) return {2, 1, 1, 2};
    if (r8 == 5) return {2, 1, 2, 1};
    throw FieldError("not a quadratic discriminant: " + delta.get_str());
  }
  int v = 0;
  while (mpz_divisible_ui_p(D.get_mpz_t(), p)) {
    D /= p;
    ++v;
  }
  if (v % 2) return {p, 2, 1, 1};
  mpz_class P = p;
  int k = mpz_legendre(D.get_mpz_t(), P.get_mpz_t());
  return k == 1 ? PrimeIdealClass{p, 1, 1, 2} : PrimeIdealClass{p, 1, 2, 1};
}

size_t NormStream::index_of(uint64_t p, int conj) const {
  auto it = first_of_p_.find(p);
  if (it == first_of_p_.end()) return 0;
  for (size_t k = it->second; k <= entries.size() && entries[k - 1].p == p; ++k)
    if (entries[k - 1].conj == conj) return k;
  return 0;
}

int NormStream::multiplicity(uint64_t n) const {
  auto lo = std::lower_bound(entries.begin(), entries.end(), n,
                             [](const StreamEntry& e, uint64_t v) { return e.norm < v; });
  int c = 0;
  for (; lo != entries.end() && lo->norm == n; ++lo) ++c;
  return c;
}

NormStream norm_stream(const FieldSpec& K, uint64_t up_to_norm, std::optional<uint64_t> tie_seed) {
  NormStream S;
  S.up_to = up_to_norm;
  S.degree = K.degree();
  std::mt19937_64 rng(tie_seed.value_or(0));
  primes::for_each_prime(2, up_to_norm, [&](uint64_t p) {
    PrimeIdealClass c = K.decompose(p);
    uint64_t N = capped_pow(p, c.f, up_to_norm);
    if (N == 0) {
      S.overflow.push_back(c);
      return;
    }
    std::vector<int> rank(c.g);
    std::iota(rank.begin(), rank.end(), 0);
    if (tie_seed) std::shuffle(rank.begin(), rank.end(), rng);
    for (int j = 0; j < c.g; ++j) S.entries.push_back({N, p, c.f, c.e, j, rank[j]});
  });
  std::sort(S.entries.begin(), S.entries.end(), [](const StreamEntry& a, const StreamEntry& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (a.p != b.p) return a.p < b.p;
    return a.tie_rank < b.tie_rank;
  });
  for (size_t k = S.entries.size(); k >= 1; --k) S.first_of_p_[S.entries[k - 1].p] = k;
  return S;
}

uint64_t a_K(const FieldSpec& K, uint64_t n) {
  if (n == 0) throw std::invalid_argument("a_K needs n >= 1");
  uint64_t r = 1;
  for (auto [p, k] : primes::factorize(n)) {
    auto c = K.decompose(p);
    r *= coefficient(c.f, c.g, k);
    if (r == 0) return 0;
  }
  return r;
}

std::vector<uint64_t> a_K_table(const FieldSpec& K, uint64_t N) {
  std::vector<uint64_t> a(N + 1, 0);
  if (N == 0) return a;
  std::vector<uint32_t> spf(N + 1, 0);
  for (uint64_t i = 2; i <= N; ++i) {
    if (spf[i]) continue;
    for (uint64_t j = i; j <= N; j += i)
      if (!spf[j]) spf[j] = static_cast<uint32_t>(i);
  }
  std::unordered_map<uint64_t, std::pair<int, int>> fg;
  a[1] = 1;
  for (uint64_t n = 2; n <= N; ++n) {
    uint64_t p = spf[n], rest = n;
    int k = 0;
    while (rest % p == 0) rest /= p, ++k;
    auto it = fg.find(p);
    if (it == fg.end()) {
      auto c = K.decompose(p);
      it = fg.emplace(p, std::make_pair(c.f, c.g)).first;
    }
    a[n] = a[rest] * coefficient(it->second.first, it->second.second, k);
  }
  return a;
}

uint64_t b_K(const FieldSpec& K, uint64_t n) {
  if (n < 2) return 0;
  auto fac = primes::factorize(n);
  if (fac.size() != 1) return 0;
  auto c = K.decompose(fac[0].first);
  return fac[0].second == c.f ? static_cast<uint64_t>(c.g) : 0;
}

uint64_t d_s(int s, uint64_t n) {
  if (s < 1 || n == 0) throw std::invalid_argument("d_s needs s >= 1 and n >= 1");
  uint64_t r = 1;
  for (auto [p, k] : primes::factorize(n)) r *= binomial(k + s - 1, s - 1);
  return r;
}

std::vector<uint64_t> d_s_table(int s, uint64_t N) {
  if (s < 1) throw std::invalid_argument("d_s needs s >= 1");
  std::vector<uint64_t> d(N + 1, 0);
  if (N == 0) return d;
  std::fill(d.begin() + 1, d.end(), 1);
  std::vector<uint8_t> comp(N + 1, 0);
  for (uint64_t p = 2; p <= N; ++p) {
    if (comp[p]) continue;
    for (uint64_t j = p * p; j <= N; j += p) comp[j] = 1;
    for (uint64_t j = p; j <= N; j += p) {
      uint64_t t = j;
      int k = 0;
      while (t % p == 0) t /= p, ++k;
      d[j] *= binomial(k + s - 1, s - 1);
    }
  }
  return d;
}

void validate(const NormStream& S, const IdealFactorization& I) {
  std::vector<size_t> seen;
  for (auto [k, e] : I.factors) {
    if (k < 1 || k > S.size())
      throw std::invalid_argument("prime index " + std::to_string(k) + " outside the stream (size " +
                                  std::to_string(S.size()) + ")");
    if (e < 0) throw std::invalid_argument("negative exponent in ideal factorization");
    seen.push_back(k);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::invalid_argument("repeated prime index in ideal factorization");
}

IdealFactorization ideal_of_integer(const NormStream& S, uint64_t n) {
  if (n == 0) throw std::invalid_argument("the zero ideal has no factorization");
  IdealFactorization I;
  for (auto [p, v] : primes::factorize(n)) {
    size_t k0 = S.index_of(p, 0);
    if (k0 == 0) throw std::invalid_argument("prime " + std::to_string(p) + " lies beyond the stream");
    for (size_t k = k0; k <= S.size() && S.at(k).p == p; ++k) I.factors.push_back({k, S.at(k).e * v});
  }
  return I;
}

mpz_class ideal_norm(const NormStream& S, const IdealFactorization& I) {
  validate(S, I);
  mpz_class N = 1, t;
  for (auto [k, e] : I.factors) {
    mpz_ui_pow_ui(t.get_mpz_t(), S.norm(k), static_cast<unsigned long>(e));
    N *= t;
  }
  return N;
}

Enclosure twisted_power(uint64_t norm, int chi_value, const Enclosure& r) {
  Enclosure x = rigor::enc_pow(mpz_class(norm), -r);
  if (chi_value == 0) return Enclosure(0L, r.precision());
  return chi_value > 0 ? x : -x;
}

Enclosure sigma(const NormStream& S, const characters::DirichletCharacter& chi, const Enclosure& r,
                const IdealFactorization& I) {
  validate(S, I);
  Enclosure acc(1L, r.precision());
  for (auto [k, e] : I.factors) {
    if (e == 0) continue;
    uint64_t N = S.norm(k);
    int c = chi.real_value(N);
    if (c == 0) continue;
    acc *= rigor::enc_geom_tail(twisted_power(N, c, r), static_cast<unsigned long>(e));
  }
  return acc;
}

std::pair<Enclosure, Enclosure> sigma_complex(const NormStream& S, const characters::DirichletCharacter& chi,
                                              const Enclosure& r, const IdealFactorization& I) {
  validate(S, I);
  int prec = r.precision();
  Enclosure re(1L, prec), im(0L, prec);
  for (auto [k, e] : I.factors) {
    if (e == 0) continue;
    uint64_t N = S.norm(k);
    if (chi.value(N).zero) continue;
    auto [wr, wi] = chi.complex_value(N, prec);
    Enclosure x = rigor::enc_pow(mpz_class(N), -r);
    Enclosure zr = wr * x, zi = wi * x;
    Enclosure sr(1L, prec), si(0L, prec), tr(1L, prec), ti(0L, prec);
    for (int a = 1; a <= e; ++a) {
      Enclosure nr = tr * zr - ti * zi;
      Enclosure ni = tr * zi + ti * zr;
      tr = nr, ti = ni;
      sr += tr, si += ti;
    }
    Enclosure nr = re * sr - im * si;
    Enclosure ni = re * si + im * sr;
    re = nr, im = ni;
  }
  return {re, im};
}

uint64_t m_I(const NormStream& S, const IdealFactorization& I, uint64_t n) {
  validate(S, I);
  if (n == 0) return 0;
  std::map<uint64_t, uint64_t> ways{{1, 1}};
  for (auto [k, e] : I.factors) {
    uint64_t N = S.norm(k);
    std::map<uint64_t, uint64_t> next;
    for (auto [v, c] : ways) {
      uint64_t w = v;
      for (int a = 0; a <= e; ++a) {
        if (n % w) break;
        next[w] += c;
        if (a < e) {
          if (w > n / N) break;
          w *= N;
        }
      }
    }
    ways.swap(next);
  }
  auto it = ways.find(n);
  return it == ways.end() ? 0 : it->second;
}

}  // namespace tdf::numberfield
