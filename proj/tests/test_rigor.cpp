#include <doctest.h>

#include <optional>
#include <random>

#include "tdf/rigor.hpp"

using namespace tdf::rigor;

TEST_CASE("enc_pow identities") {
  Enclosure one = enc_pow(mpz_class(2), mpq_class(0));
  CHECK(one.contains(mpq_class(1)));
  CHECK(one.width_double() == 0.0);

  Enclosure b1 = enc_pow(mpz_class(1), parse_rational("-3.7"));
  CHECK(b1.lo_double() == 1.0);
  CHECK(b1.hi_double() == 1.0);

  Enclosure ninth = enc_pow(mpz_class(3), mpq_class(-2), 64);
  CHECK(ninth.contains(mpq_class(1, 9)));
  CHECK(ninth.width_double() <= std::ldexp(1.0, -50));
}

TEST_CASE("enc_pow irrational exponent brackets the double value") {
  Enclosure v = enc_pow(mpz_class(2), mpq_class(3, 2), 128);
  CHECK(v.lo_double() <= std::sqrt(8.0));
  CHECK(v.hi_double() >= std::sqrt(8.0) * (1 - 1e-15));
  CHECK(v.rel_width_log2() < -100);
}

TEST_CASE("enc_compare") {
  auto I = [](long a, long b) {
    Mp lo, hi;
    mpfr_set_si(lo.get(), a, MPFR_RNDD);
    mpfr_set_si(hi.get(), b, MPFR_RNDU);
    return Enclosure::from_bounds(lo.get(), hi.get(), 64);
  };
  CHECK(enc_compare(I(1, 1), I(2, 2)) == Verdict::True);
  CHECK(enc_compare(I(1, 3), I(2, 4)) == Verdict::Unknown);
  CHECK(enc_compare(I(5, 6), I(1, 2)) == Verdict::False);
  CHECK_THROWS_AS(decide_lt(I(1, 3), I(2, 4), "overlap"), AmbiguousComparison);
  CHECK(decide_le(I(1, 2), I(2, 3), "touch"));
}

TEST_CASE("enc_geom_tail") {
  Enclosure half(mpq_class(1, 2));
  CHECK(enc_geom_tail(half, 1ul).contains(mpq_class(3, 2)));
  CHECK(enc_geom_tail(half, std::nullopt).contains(mpq_class(2)));
  Enclosure x = enc_pow(mpz_class(3), mpq_class(-2));
  CHECK(enc_geom_tail(x, 2ul).contains(mpq_class(91, 81)));
}

TEST_CASE("exact rationals propagate") {
  Enclosure a(mpq_class(1, 3)), b(mpq_class(2, 7));
  Enclosure c = a * b + a / b - b;
  REQUIRE(c.is_exact());
  CHECK(c.exact_value() == mpq_class(1, 3) * mpq_class(2, 7) + mpq_class(1, 3) / mpq_class(2, 7) - mpq_class(2, 7));
}

TEST_CASE("parse_rational") {
  CHECK(parse_rational("3") == 3);
  CHECK(parse_rational("-2/7") == mpq_class(-2, 7));
  CHECK(parse_rational("1.05") == mpq_class(21, 20));
  CHECK(parse_rational("1e-3") == mpq_class(1, 1000));
  CHECK_THROWS(parse_rational("abc"));
  CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("transcendental kernels against MPFR at 1024 bits") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1, 999), den(1, 97);
  for (int t = 0; t < 500; ++t) {
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    Enclosure x(q, 96);
    Mp ref(1024);
    mpfr_set_q(ref.get(), q.get_mpq_t(), MPFR_RNDN);
    Mp e(1024), l(1024);
    mpfr_exp(e.get(), ref.get(), MPFR_RNDN);
    mpfr_log(l.get(), ref.get(), MPFR_RNDN);
    CHECK(exp(x).contains(e.get()));
    CHECK(log(x).contains(l.get()));
  }
}

TEST_CASE("precision escalation stops at the policy maximum") {
  int calls = 0;
  auto f = [&](int prec) -> int {
    ++calls;
    throw AmbiguousComparison("always", "a", "b", prec);
  };
  try {
    with_escalation(f, PrecisionPolicy{128, 512});
    FAIL("expected AmbiguousComparison");
  } catch (const AmbiguousComparison& e) {
    CHECK(e.exhausted());
  }
  CHECK(calls == 3);
}

TEST_CASE("random chains stay inside their enclosures") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(1, 50), den(1, 20);
  std::uniform_int_distribution<int> op(0, 5);
  for (int chain = 0; chain < 2000; ++chain) {
    mpq_class q0(num(rng), den(rng));
    q0.canonicalize();
    Enclosure x(q0, 80);
    Mp ref(1024);
    mpfr_set_q(ref.get(), q0.get_mpq_t(), MPFR_RNDN);
    // exact while the chain stays rational
    std::optional<mpq_class> qref = q0;
    for (int step = 0; step < 6; ++step) {
      mpq_class q(num(rng), den(rng));
      q.canonicalize();
      Enclosure y(q, 80);
      Mp t(1024);
      mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDN);
      int o = op(rng);
      if (o >= 3) qref.reset();
      switch (o) {
        case 0: x = x + y; mpfr_add(ref.get(), ref.get(), t.get(), MPFR_RNDN); if (qref) *qref += q; break;
        case 1: x = x * y; mpfr_mul(ref.get(), ref.get(), t.get(), MPFR_RNDN); if (qref) *qref *= q; break;
        case 2: x = x / y; mpfr_div(ref.get(), ref.get(), t.get(), MPFR_RNDN); if (qref) *qref /= q; break;
        case 3: {
          Enclosure e(mpq_class(1, 3), 80);
          x = pow(x, e);
          mpfr_cbrt(ref.get(), ref.get(), MPFR_RNDN);
          break;
        }
        case 4: x = log(x + Enclosure(1L, 80)); mpfr_add_ui(ref.get(), ref.get(), 1, MPFR_RNDN); mpfr_log(ref.get(), ref.get(), MPFR_RNDN); break;
        default:
          x = exp(x / Enclosure(mpq_class(50), 80));
          mpfr_div_ui(ref.get(), ref.get(), 50, MPFR_RNDN);
          mpfr_exp(ref.get(), ref.get(), MPFR_RNDN);
      }
      if (qref) REQUIRE(x.contains(*qref));
      else REQUIRE(x.contains(ref.get()));
    }
  }
}
