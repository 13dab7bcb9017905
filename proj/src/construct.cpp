#include "tdf/construct.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tdf/primes.hpp"

namespace tdf::construct {

using polyfield::PolyFp;
using polyfield::PolyZ;

namespace {

mpz_class Z(uint64_t n) { return mpz_class(static_cast<unsigned long>(n)); }

struct Crt {
  mpz_class x = 0, mod = 1;
  void add(const mpz_class& a, const mpz_class& m) {
    mpz_class diff = a - x, inv, t;
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
    mpz_class mm = mod % m;
    if (!mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), m.get_mpz_t())) throw std::logic_error("CRT moduli not coprime");
    t = diff * inv % m;
    x += mod * t;
    mod *= m;
  }
};

std::vector<uint64_t> normalized(std::vector<uint64_t> v, const char* name) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw std::invalid_argument(std::string(name) + " has a repeated prime");
  for (uint64_t p : v)
    if (!primes::is_prime(p)) throw std::invalid_argument(std::to_string(p) + " in " + name + " is not prime");
  return v;
}

std::map<int, int> expected(char role, int s) { return role == 'S' ? std::map<int, int>{{1, s}} : std::map<int, int>{{s, 1}}; }

PrimeEvidence evidence_for(const PolyZ& f, const mpz_class& disc, uint64_t p, char role, int s) {
  PrimeEvidence e;
  e.p = p;
  e.role = role;
  e.degrees = polyfield::factor_degrees(f.reduce(p));
  e.matches = e.degrees == expected(role, s);
  e.disc_coprime = mpz_fdiv_ui(disc.get_mpz_t(), p) != 0;
  return e;
}

template <class F>
auto staged(const char* stage, F&& f) -> decltype(f()) {
  using K = StageError::Kind;
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const primes::CapacityError& e) {
    throw StageError(stage, K::Capacity, e.what());
  } catch (const rigor::AmbiguousComparison& e) {
    throw StageError(stage, K::Ambiguity, e.what());
  } catch (const std::invalid_argument& e) {
    throw StageError(stage, K::Input, e.what());
  } catch (const std::exception& e) {
    throw StageError(stage, K::Internal, e.what());
  }
}

}  // namespace

StageError::StageError(std::string stage, Kind kind, const std::string& what)
    : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)), kind_(kind) {}

FieldConstruction construct_field(int s, std::vector<uint64_t> S, std::vector<uint64_t> T, const ConstructConfig& cfg) {
  if (s < 2) throw std::invalid_argument("degree s must be at least 2");
  S = normalized(std::move(S), "S");
  T = normalized(std::move(T), "T");
  if (T.size() > cfg.t_cap)
    throw primes::CapacityError("|T| = " + std::to_string(T.size()) + " exceeds the cap " + std::to_string(cfg.t_cap));
  std::set<uint64_t> used(S.begin(), S.end());
  for (uint64_t p : T)
    if (!used.insert(p).second) throw std::invalid_argument(std::to_string(p) + " lies in both S and T");
  for (uint64_t p : S)
    if (p <= static_cast<uint64_t>(s))
      throw std::invalid_argument("prime " + std::to_string(p) + " in S is not greater than s");

  FieldConstruction fc;
  fc.s = s;
  fc.S = S;
  fc.T = T;
  if (cfg.q) {
    if (!primes::is_prime(*cfg.q)) throw std::invalid_argument("q must be prime");
    if (used.count(*cfg.q)) throw std::invalid_argument("q must lie outside S and T");
    fc.q = *cfg.q;
  } else {
    fc.q = 2;
    while (used.count(fc.q)) fc.q = primes::next_prime_after(fc.q);
  }

  std::vector<std::pair<uint64_t, PolyFp>> local;
  for (uint64_t p : S) local.emplace_back(p, polyfield::split_polynomial(p, s));
  for (uint64_t p : T) local.emplace_back(p, polyfield::find_irreducible(p, s));

  const mpz_class q = Z(fc.q), q2 = q * q;
  std::vector<mpz_class> n(s + 1);
  for (int i = 0; i < s; ++i) {
    Crt crt;
    crt.add(i == 0 ? q : mpz_class(0), q2);
    for (auto& [p, fp] : local) crt.add(Z(fp.coeff(i)), Z(p));
    n[i] = crt.x;
  }
  n[s] = 1;
  fc.f = PolyZ(n);
  fc.disc = polyfield::discriminant(fc.f);
  fc.eisenstein = polyfield::is_eisenstein(fc.f, q);
  for (uint64_t p : S) fc.evidence.push_back(evidence_for(fc.f, fc.disc, p, 'S', s));
  for (uint64_t p : T) fc.evidence.push_back(evidence_for(fc.f, fc.disc, p, 'T', s));

  if (!fc.eisenstein) throw std::logic_error("constructed polynomial is not Eisenstein at q");
  for (auto& e : fc.evidence) {
    if (!e.matches) throw std::logic_error("wrong factorization type modulo " + std::to_string(e.p));
    if (!e.disc_coprime) throw std::logic_error(std::to_string(e.p) + " divides the discriminant");
  }
  return fc;
}

bool verify(const FieldConstruction& fc) {
  const PolyZ& f = fc.f;
  if (f.degree() != fc.s || !f.is_monic()) return false;
  if (!polyfield::is_eisenstein(f, Z(fc.q))) return false;
  mpz_class disc = polyfield::discriminant(f);
  if (disc != fc.disc || disc == 0) return false;
  auto check = [&](uint64_t p, char role) {
    if (mpz_fdiv_ui(disc.get_mpz_t(), p) == 0) return false;
    auto deg = polyfield::factor_degrees(f.reduce(p));
    if (deg != expected(role, fc.s)) return false;
    if (role == 'S') return polyfield::root_count(f.reduce(p)) == fc.s;
    return polyfield::is_irreducible(f.reduce(p));
  };
  for (uint64_t p : fc.S)
    if (!check(p, 'S')) return false;
  for (uint64_t p : fc.T)
    if (!check(p, 'T')) return false;
  return true;
}

std::vector<numberfield::PrimeIdealClass> quadratic_ramified_table(const PolyZ& f, uint64_t bound) {
  if (f.degree() != 2 || !f.is_monic()) throw std::invalid_argument("expected a monic quadratic");
  const mpz_class& b = f.coeffs()[1];
  const mpz_class& c = f.coeffs()[0];
  mpz_class delta = b * b - 4 * c;
  std::vector<numberfield::PrimeIdealClass> out;
  primes::for_each_prime(2, bound, [&](uint64_t p) {
    if (mpz_divisible_ui_p(delta.get_mpz_t(), p)) out.push_back(numberfield::quadratic_local_class(delta, p));
  });
  return out;
}

Realization realize_components(const mpq_class& r, int s, int M, const RealizeConfig& cfg) {
  if (r <= 1) throw StageError("input", StageError::Kind::Input, "r must exceed 1");
  if (s < 2) throw StageError("input", StageError::Kind::Input, "s must be at least 2");
  if (M < 1) throw StageError("input", StageError::Kind::Input, "M must be at least 1");
  Realization out;
  out.sequence = staged("sequence", [&] { return mighty::build_technical_sequence(r, s, M, cfg.sequence); });
  const auto& seq = out.sequence;

  std::vector<uint64_t> S, T;
  staged("assemble", [&] {
    for (const auto& Si : seq.S) S.insert(S.end(), Si.begin(), Si.end());
    std::sort(S.begin(), S.end());
    double X = static_cast<double>(seq.X);
    // pi(X) > X / log X for X >= 17
    if (X >= 17 && X / std::log(X) > static_cast<double>(cfg.construct.t_cap + S.size()))
      throw primes::CapacityError("T would hold about " + std::to_string(static_cast<uint64_t>(X / std::log(X))) +
                                  " primes below X = " + std::to_string(seq.X) + ", over the cap " +
                                  std::to_string(cfg.construct.t_cap));
    primes::for_each_prime(2, seq.X, [&](uint64_t q) {
      if (!std::binary_search(S.begin(), S.end(), q)) T.push_back(q);
    });
    return 0;
  });

  out.field = staged("construct", [&] { return construct_field(s, S, T, cfg.construct); });
  const auto& fc = out.field;

  mighty::MightyConfig mc = cfg.mighty;
  if (!mc.cutoff) mc.cutoff = std::max<uint64_t>(1000, 16 * seq.p.front());
  mc.cutoff = std::max<uint64_t>(mc.cutoff, 2 * seq.p.back());
  staged("mighty", [&] {
    if (s == 2) {
      out.K = numberfield::FieldSpec::polynomial(fc.f, quadratic_ramified_table(fc.f, cfg.declare_up_to));
      for (uint64_t p : seq.p) out.certificates.push_back(mighty::is_mighty(*out.K, r, p, mc));
    } else {
      const PolyZ& f = fc.f;
      const mpz_class& disc = fc.disc;
      const uint64_t q = fc.q;
      mighty::LocalSplitting split = [&f, &disc, q](uint64_t p) -> std::optional<std::vector<int>> {
        if (p == q) return std::vector<int>{1};
        if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) return std::nullopt;
        std::vector<int> fs;
        for (auto [d, c] : polyfield::factor_degrees(f.reduce(p)))
          for (int k = 0; k < c; ++k) fs.push_back(d);
        return fs;
      };
      for (uint64_t p : seq.p) out.certificates.push_back(mighty::is_mighty(s, split, r, p, mc));
    }
    return 0;
  });

  for (size_t i = 0; i < out.certificates.size(); ++i)
    for (size_t j = i + 1; j < out.certificates.size(); ++j) {
      GapCheck g;
      g.i = i + 1;
      g.j = j + 1;
      g.top_j = out.certificates[j].lhs;
      g.bottom_i = out.certificates[i].rhs;
      g.disjoint = rigor::certainly_lt(g.top_j, g.bottom_i);
      out.gaps.push_back(g);
    }
  bool all = std::all_of(out.certificates.begin(), out.certificates.end(),
                         [](const mighty::MightyCertificate& c) { return c.verdict; });
  bool gaps = std::all_of(out.gaps.begin(), out.gaps.end(), [](const GapCheck& g) { return g.disjoint; });
  out.certified = all && gaps;
  out.lower_bound = out.certified ? static_cast<uint64_t>(M) + 1 : 1;
  return out;
}

}  // namespace tdf::construct
