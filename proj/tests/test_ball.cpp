#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "breathers/ball.hpp"
#include "breathers/rational.hpp"

using namespace breathers;
using BL = Ball<HwFloat>;

namespace {

// High-precision oracle: evaluate the same operation in 256-bit MPFR on point
// inputs sampled inside the argument balls and assert containment.
long double sample_in(std::mt19937_64& rng, const BL& b) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return b.mid + b.rad * (long double)u(rng);
}

}  // namespace

TEST_CASE("exact integer add") {
  BL three = BL::from_long(1) + BL::from_long(2);
  CHECK(three.contains(3.0L));
  CHECK(three.rad >= 0.0L);
}

TEST_CASE("mul endpoint analysis") {
  BL a = BL::hull(-1.0L, 1.0L);
  BL p = a * a;
  CHECK(p.contains(1.0L));
  CHECK(p.contains(-1.0L));
  CHECK(p.contains(0.0L));
}

TEST_CASE("sqrt containment around 2") {
  std::mt19937_64 rng(7);
  BL two{2.0L, 0x1p-20L};
  BL r = sqrt(two);
  CHECK(r.contains(1.41421356237309504880L));
  for (int i = 0; i < 2000; ++i) {
    long double x = sample_in(rng, two);
    MpPrecScope ps(256);
    MpReal mx(x);
    MpReal lo, hi;
    mpfr_sqrt(lo.v, mx.v, MPFR_RNDD);
    mpfr_sqrt(hi.v, mx.v, MPFR_RNDU);
    CHECK(mpfr_cmp_ld(lo.v, r.hi()) <= 0);
    CHECK(mpfr_cmp_ld(hi.v, r.lo()) >= 0);
  }
}

TEST_CASE("containment of ball ops under sampling vs mpfr oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> um(-3.0, 3.0);
  std::uniform_real_distribution<double> ur(0.0, 0.25);
  MpPrecScope ps(256);
  int n_checks = 10000;
  for (int i = 0; i < n_checks; ++i) {
    BL a{(long double)um(rng), (long double)ur(rng)};
    BL b{(long double)um(rng), (long double)ur(rng)};
    long double xa = sample_in(rng, a), xb = sample_in(rng, b);
    MpReal ma(xa), mb(xb), res;
    int op = i % 7;
    BL out;
    switch (op) {
      case 0: out = a + b; mpfr_add(res.v, ma.v, mb.v, MPFR_RNDN); break;
      case 1: out = a - b; mpfr_sub(res.v, ma.v, mb.v, MPFR_RNDN); break;
      case 2: out = a * b; mpfr_mul(res.v, ma.v, mb.v, MPFR_RNDN); break;
      case 3: {
        if (b.contains_zero()) { continue; }
        out = a / b; mpfr_div(res.v, ma.v, mb.v, MPFR_RNDN); break;
      }
      case 4: out = breathers::exp(a); mpfr_exp(res.v, ma.v, MPFR_RNDN); break;
      case 5: out = breathers::sin(a); mpfr_sin(res.v, ma.v, MPFR_RNDN); break;
      default: out = breathers::cos(a); mpfr_cos(res.v, ma.v, MPFR_RNDN); break;
    }
    // mpfr result at 256 bits differs from exact by far less than out's slack
    REQUIRE(mpfr_cmp_ld(res.v, out.hi()) <= 0);
    REQUIRE(mpfr_cmp_ld(res.v, out.lo()) >= 0);
  }
}

TEST_CASE("enclosure monotone under widening") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> um(-2.0, 2.0);
  std::uniform_real_distribution<double> ur(0.0, 0.1);
  for (int i = 0; i < 2000; ++i) {
    BL a{(long double)um(rng), (long double)ur(rng)};
    BL b{(long double)um(rng), (long double)ur(rng)};
    BL aw = a.widened(0.05L), bw = b.widened(0.05L);
    CHECK((a * b).subset_of(aw * bw));
    CHECK((a + b).subset_of(aw + bw));
  }
}

TEST_CASE("division by interval containing zero") {
  BL a = BL::from_long(1);
  BL b = BL::hull(-1.0L, 1.0L);
  CHECK_THROWS_AS(a / b, DomainViolation);
  CHECK_THROWS_AS(sqrt(BL::hull(-1.0L, 4.0L)), DomainViolation);
}

TEST_CASE("upward_sum basics and rational oracle") {
  std::vector<long double> empty;
  CHECK(upward_sum<HwFloat>(empty) == 0.0L);

  std::vector<long double> v{1.0L, 2.0L, 4.0L};
  CHECK(upward_sum<HwFloat>(v) >= 7.0L);

  // one million copies of pred(1): compare against the exact value n*pred(1)
  long double p1 = HwFloat::dn(1.0L);
  std::vector<long double> big(1000000, p1);
  long double s = upward_sum<HwFloat>(big);
  MpPrecScope ps(256);
  MpReal exact(p1);
  mpfr_mul_si(exact.v, exact.v, 1000000, MPFR_RNDU);
  CHECK(mpfr_cmp_ld(exact.v, s) <= 0);
}

TEST_CASE("upward_sum random nonnegative vs rational oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MpPrecScope ps(1024);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<long double> xs;
    MpReal exact;
    for (int i = 0; i < 200; ++i) {
      long double x = (long double)u(rng);
      xs.push_back(x);
      MpReal mx(x);
      mpfr_add(exact.v, exact.v, mx.v, MPFR_RNDN);  // exact at 1024 bits
    }
    CHECK(mpfr_cmp_ld(exact.v, upward_sum<HwFloat>(xs)) <= 0);
  }
}

TEST_CASE("pi enclosure") {
  BL p = ball_pi<HwFloat>();
  CHECK(p.contains(3.14159265358979323846L));
  CHECK(p.rad < 1e-18L);
}

TEST_CASE("acos encloses the numeric inverse") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.95, 0.95);
  for (int i = 0; i < 500; ++i) {
    long double x = (long double)u(rng);
    BL th = breathers::acos(BL::exact(x));
    MpPrecScope ps(256);
    MpReal mx(x), res;
    mpfr_acos(res.v, mx.v, MPFR_RNDN);
    REQUIRE(mpfr_cmp_ld(res.v, th.hi()) <= 0);
    REQUIRE(mpfr_cmp_ld(res.v, th.lo()) >= 0);
  }
}

TEST_CASE("rational parse and ball conversion") {
  Rat w = Rat::parse("32/5");
  CHECK(w.str() == "32/5");
  Rat w2 = w * w;
  CHECK(w2 == Rat(1024, 25));
  BL b = ball_of<HwFloat>(w2);
  CHECK(b.contains(40.96L));
  // dyadic rationals convert exactly
  BL d = ball_of<HwFloat>(Rat(1, 1048576));
  CHECK(d.rad == 0.0L);
  CHECK(d.mid == 0x1p-20L);
}

TEST_CASE("mp backend ball ops in 256 bits") {
  MpPrecScope ps(256);
  using BM = Ball<MpFloat>;
  BM a = BM::from_long(1) / BM::from_long(3);
  CHECK(a.rad > MpReal(0L));
  BM p = ball_pi<MpFloat>();
  BM s = breathers::sin(p);
  CHECK(s.contains(MpReal(0L)));
  CHECK(MpFloat::to_ld(s.mag()) < 1e-60L);
  BM e = breathers::exp(BM::from_long(1));
  CHECK(e.contains(MpReal(2.7182818284590452354L)) == false);  // e is not that long double
  MpReal elo, ehi;
  mpfr_set_ui(elo.v, 1, MPFR_RNDN);
  mpfr_exp(elo.v, elo.v, MPFR_RNDD);
  mpfr_set_ui(ehi.v, 1, MPFR_RNDN);
  mpfr_exp(ehi.v, ehi.v, MPFR_RNDU);
  CHECK(e.contains(elo));
  CHECK(e.contains(ehi));
}
