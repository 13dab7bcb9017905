#include "tdf/polyfield.hpp"

#include <algorithm>
#include <set>

#include "tdf/primes.hpp"

namespace tdf::polyfield {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) { return static_cast<unsigned __int128>(a) * b % p; }

using ZVec = std::vector<mpz_class>;

void trim(ZVec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

int zdeg(const ZVec& v) { return static_cast<int>(v.size()) - 1; }

mpz_class zcontent(const ZVec& v) {
  mpz_class g = 0;
  for (auto& c : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

// lc(b)^{deg a - deg b + 1} a mod b over Z.
ZVec prem(ZVec a, const ZVec& b) {
  int db = zdeg(b);
  const mpz_class& lb = b.back();
  int delta = zdeg(a) - db + 1;
  while (zdeg(a) >= db && !a.empty()) {
    mpz_class la = a.back();
    int shift = zdeg(a) - db;
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --delta;
  }
  if (delta > 0) {
    mpz_class f;
    mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(delta));
    for (auto& c : a) c *= f;
  }
  return a;
}

mpz_class zpow(const mpz_class& b, long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::set<int> subset_sums(const std::vector<int>& parts) {
  std::set<int> s{0};
  for (int d : parts) {
    std::set<int> t = s;
    for (int x : s) t.insert(x + d);
    s.swap(t);
  }
  return s;
}

PolyZ taylor_shift(const PolyZ& f, long a) {
  ZVec c = f.coeffs();
  int n = zdeg(c);
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) c[j] += a * c[j + 1];
  return PolyZ(c);
}

}  // namespace

PolyFp::PolyFp(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw PolyError("modulus must be a prime");
  for (auto& c : c_) c %= p_;
  normalize();
}

PolyFp PolyFp::monomial(uint64_t p, int deg, uint64_t c) {
  std::vector<uint64_t> v(deg + 1, 0);
  v[deg] = c;
  return PolyFp(p, v);
}

void PolyFp::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

uint64_t mod_inverse(uint64_t a, uint64_t p) {
  __int128 t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw PolyError("element not invertible");
  if (t < 0) t += p;
  return static_cast<uint64_t>(t);
}

PolyFp PolyFp::monic() const {
  if (c_.empty()) return *this;
  uint64_t inv = mod_inverse(lead(), p_);
  std::vector<uint64_t> v(c_);
  for (auto& c : v) c = mulmod(c, inv, p_);
  return PolyFp(p_, v);
}

PolyFp PolyFp::derivative() const {
  std::vector<uint64_t> v;
  for (size_t i = 1; i < c_.size(); ++i) v.push_back(mulmod(c_[i], i % p_, p_));
  return PolyFp(p_, v);
}

std::string PolyFp::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    if (!s.empty()) s += " + ";
    if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s + " (mod " + std::to_string(p_) + ")";
}

PolyFp operator+(const PolyFp& a, const PolyFp& b) {
  std::vector<uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return PolyFp(a.p_, v);
}

PolyFp operator-(const PolyFp& a, const PolyFp& b) {
  std::vector<uint64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (size_t i = 0; i < v.size(); ++i) v[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
  return PolyFp(a.p_, v);
}

PolyFp operator*(const PolyFp& a, const PolyFp& b) {
  if (a.is_zero() || b.is_zero()) return PolyFp(a.p_, {});
  std::vector<uint64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] = (v[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
  return PolyFp(a.p_, v);
}

void divmod(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r) {
  if (b.is_zero()) throw PolyError("polynomial division by zero");
  uint64_t p = a.p();
  std::vector<uint64_t> rem(a.coeffs());
  int db = b.degree();
  uint64_t inv = mod_inverse(b.lead(), p);
  std::vector<uint64_t> quo(std::max(0, a.degree() - db + 1), 0);
  for (int i = a.degree(); i >= db; --i) {
    uint64_t c = rem[i];
    if (c == 0) continue;
    uint64_t t = mulmod(c, inv, p);
    quo[i - db] = t;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = (rem[i - db + j] + p - mulmod(t, b.coeff(j), p)) % p;
  }
  q = PolyFp(p, quo);
  r = PolyFp(p, rem);
}

PolyFp mod(const PolyFp& a, const PolyFp& b) {
  PolyFp q(a.p(), {}), r(a.p(), {});
  divmod(a, b, q, r);
  return r;
}

PolyFp gcd(const PolyFp& a, const PolyFp& b) {
  PolyFp x = a, y = b;
  while (!y.is_zero()) {
    PolyFp r = mod(x, y);
    x = y;
    y = r;
  }
  return x.monic();
}

PolyFp powmod(const PolyFp& base, const mpz_class& e, const PolyFp& m) {
  PolyFp result(base.p(), {1});
  result = mod(result, m);
  PolyFp b = mod(base, m);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (size_t i = bits; i-- > 0;) {
    result = mod(result * result, m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(result * b, m);
  }
  return result;
}

bool is_squarefree(const PolyFp& f) {
  if (f.degree() <= 0) return true;
  PolyFp d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

std::map<int, int> factor_degrees(const PolyFp& f0) {
  if (f0.is_zero()) throw PolyError("factor_degrees of the zero polynomial");
  PolyFp f = f0.monic();
  std::map<int, int> out;
  if (f.degree() <= 0) return out;
  if (!is_squarefree(f)) {
    PolyFp d = f.derivative();
    PolyFp g = d.is_zero() ? f : gcd(f, d);
    throw PolyError("not squarefree: gcd(f, f') = " + g.to_string());
  }
  uint64_t p = f.p();
  PolyFp x = PolyFp::monomial(p, 1);
  PolyFp h = mod(x, f);
  mpz_class pz(static_cast<unsigned long>(p));
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = powmod(h, pz, f);
    PolyFp g = gcd(h - x, f);
    if (g.degree() > 0) {
      out[d] += g.degree() / d;
      PolyFp q(p, {}), r(p, {});
      divmod(f, g, q, r);
      f = q.monic();
      h = mod(h, f);
    }
  }
  if (f.degree() > 0) out[f.degree()] += 1;
  return out;
}

bool is_irreducible(const PolyFp& f0) {
  if (f0.degree() < 1) throw PolyError("is_irreducible requires degree >= 1");
  PolyFp f = f0.monic();
  int n = f.degree();
  if (n == 1) return true;
  uint64_t p = f.p();
  PolyFp x = PolyFp::monomial(p, 1);
  mpz_class pz(static_cast<unsigned long>(p));
  auto frob = [&](int k) {
    PolyFp h = mod(x, f);
    for (int i = 0; i < k; ++i) h = powmod(h, pz, f);
    return h;
  };
  if (!(frob(n) == mod(x, f))) return false;
  for (auto [q, e] : primes::factorize(static_cast<uint64_t>(n))) {
    PolyFp g = gcd(frob(n / static_cast<int>(q)) - x, f);
    if (g.degree() != 0) return false;
  }
  return true;
}

PolyFp find_irreducible(uint64_t p, int s) {
  if (s < 1) throw PolyError("degree must be >= 1");
  if (!primes::is_prime(p)) throw PolyError("modulus must be prime");
  std::vector<uint64_t> c(s + 1, 0);
  c[s] = 1;
  while (true) {
    PolyFp f(p, c);
    if (is_irreducible(f)) return f;
    int i = 0;
    while (i < s && ++c[i] == p) c[i++] = 0;
    if (i == s) throw PolyError("no irreducible polynomial found");
  }
}

PolyFp split_polynomial(uint64_t p, int s) {
  if (s < 1) throw PolyError("degree must be >= 1");
  if (p <= static_cast<uint64_t>(s)) throw PolyError("split polynomial needs p > s");
  PolyFp f(p, {1});
  for (int i = 0; i < s; ++i) f = f * PolyFp(p, {(p - static_cast<uint64_t>(i) % p) % p, 1});
  return f;
}

int root_count(const PolyFp& f) {
  if (f.degree() < 1) return 0;
  PolyFp fm = f.monic();
  PolyFp x = PolyFp::monomial(f.p(), 1);
  PolyFp h = powmod(x, mpz_class(static_cast<unsigned long>(f.p())), fm);
  return gcd(h - x, fm).degree();
}

PolyZ::PolyZ(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { normalize(); }

PolyZ PolyZ::from_longs(const std::vector<long>& coeffs) {
  std::vector<mpz_class> v;
  for (long c : coeffs) v.emplace_back(c);
  return PolyZ(v);
}

void PolyZ::normalize() { trim(c_); }

PolyZ PolyZ::derivative() const {
  std::vector<mpz_class> v;
  for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<unsigned long>(i));
  return PolyZ(v);
}

mpz_class PolyZ::content() const { return zcontent(c_); }

PolyFp PolyZ::reduce(uint64_t p) const {
  std::vector<uint64_t> v(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) v[i] = mpz_fdiv_ui(c_[i].get_mpz_t(), p);
  return PolyFp(p, v);
}

std::string PolyZ::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = c_[i];
    if (c == 0) continue;
    bool neg = c < 0;
    mpz_class a = neg ? mpz_class(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (a != 1 || i == 0) s += a.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

mpz_class resultant(const PolyZ& pa, const PolyZ& pb) {
  if (pa.is_zero() || pb.is_zero()) return 0;
  ZVec A = pa.coeffs(), B = pb.coeffs();
  int s = 1;
  if (zdeg(A) < zdeg(B)) {
    std::swap(A, B);
    if (zdeg(A) % 2 == 1 && zdeg(B) % 2 == 1) s = -1;
  }
  if (zdeg(B) == 0) return s * zpow(B[0], zdeg(A));
  mpz_class a = zcontent(A), b = zcontent(B);
  for (auto& c : A) c /= a;
  for (auto& c : B) c /= b;
  mpz_class g = 1, h = 1;
  mpz_class t = zpow(a, zdeg(B)) * zpow(b, zdeg(A));
  while (true) {
    int delta = zdeg(A) - zdeg(B);
    if (zdeg(A) % 2 == 1 && zdeg(B) % 2 == 1) s = -s;
    ZVec R = prem(A, B);
    A = B;
    if (R.empty()) return 0;
    mpz_class div = g * zpow(h, delta);
    for (auto& c : R) c /= div;
    B = R;
    g = A.back();
    if (delta > 0) h = zpow(g, delta) / zpow(h, delta - 1);
    if (zdeg(B) <= 0) break;
  }
  int da = zdeg(A);
  mpz_class hh = zpow(B[0], da);
  if (da >= 1)
    hh /= zpow(h, da - 1);
  else
    hh *= h;
  return s * t * hh;
}

mpz_class discriminant(const PolyZ& f) {
  int n = f.degree();
  if (n < 1) throw PolyError("discriminant requires degree >= 1");
  if (n == 1) return 1;
  mpz_class r = resultant(f, f.derivative());
  mpz_class d = r / f.lead();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

bool is_eisenstein(const PolyZ& f, const mpz_class& q) {
  if (f.degree() < 1 || q < 2) return false;
  if (mpz_divisible_p(f.lead().get_mpz_t(), q.get_mpz_t())) return false;
  for (int i = 0; i < f.degree(); ++i)
    if (!mpz_divisible_p(f.coeffs()[i].get_mpz_t(), q.get_mpz_t())) return false;
  mpz_class q2 = q * q;
  return !mpz_divisible_p(f.coeffs()[0].get_mpz_t(), q2.get_mpz_t());
}

bool certify_irreducible_over_q(const PolyZ& f, const mpz_class& disc) {
  if (!f.is_monic()) throw PolyError("irreducibility check expects a monic polynomial");
  int n = f.degree();
  if (n <= 1) return n == 1;
  if (disc == 0) return false;
  std::set<int> possible;
  for (int d = 1; d < n; ++d) possible.insert(d);
  auto t = primes::table(10000);
  int used = 0;
  for (uint32_t p : t->primes) {
    if (mpz_fdiv_ui(disc.get_mpz_t(), p) == 0) continue;
    std::vector<int> parts;
    for (auto [d, c] : factor_degrees(f.reduce(p)))
      for (int i = 0; i < c; ++i) parts.push_back(d);
    auto sums = subset_sums(parts);
    std::set<int> keep;
    for (int d : possible)
      if (sums.count(d)) keep.insert(d);
    possible.swap(keep);
    if (possible.empty()) return true;
    if (++used >= 400) break;
  }
  for (long a = -8; a <= 8; ++a) {
    PolyZ g = a == 0 ? f : taylor_shift(f, a);
    mpz_class G = 0;
    for (int i = 0; i < g.degree(); ++i) mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), g.coeffs()[i].get_mpz_t());
    if (G == 0) continue;
    G = abs(G);
    for (uint32_t q : t->primes) {
      if (G == 1) break;
      if (mpz_divisible_ui_p(G.get_mpz_t(), q)) {
        if (is_eisenstein(g, mpz_class(q))) return true;
        while (mpz_divisible_ui_p(G.get_mpz_t(), q)) G /= q;
      }
    }
    if (G > 1 && mpz_probab_prime_p(G.get_mpz_t(), 30) > 0 && is_eisenstein(g, G)) return true;
  }
  return false;
}

}  // namespace tdf::polyfield
