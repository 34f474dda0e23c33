#include <random>

#include "cfreal/errors.hpp"
#include "cfreal/homographic.hpp"
#include "cfreal/series.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cfr;
using support::first_terms;
using support::ints;

namespace {

Rational random_q(std::mt19937_64& rng, long range, long den) {
  std::uniform_int_distribution<long> n(-range * den, range * den), d(1, den);
  Rational v(n(rng), d(rng));
  v.canonicalize();
  return v;
}

}  // namespace

TEST_SUITE("homographic") {

TEST_CASE("ingest substitutes k + 1/x") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Homographic m(random_q(rng, 9, 1).get_num(), random_q(rng, 9, 1).get_num(),
                  random_q(rng, 9, 1).get_num(), random_q(rng, 9, 1).get_num());
    if (m.det() == 0) continue;
    Integer k = random_q(rng, 20, 1).get_num();
    Homographic n = h_ingest(k, m);
    CHECK(n.ix == Interval::tail());
    Rational x = random_q(rng, 50, 7);
    if (x == 0) continue;
    CHECK(n(x) == m(Rational(k + 1 / x)));
  }
}

TEST_CASE("produce subtracts and inverts") {
  Homographic m = Homographic::make(7, 3, 2, 1);
  Homographic n = h_produce(3, m);
  for (long x = 1; x < 20; ++x) {
    ExtRational before = m(Rational(x));
    CHECK(n(Rational(x)) == (before - ExtRational(3)).reciprocal());
  }
}

TEST_CASE("ingesting infinity takes the limit") {
  Homographic m = Homographic::make(3, 1, 2, 5);
  m.ingest_inf();
  CHECK(m.is_constant());
  CHECK(m(Rational(17)) == ExtRational(Rational(3, 2)));
  Homographic only_top = Homographic::make(1, 0, 0, 1);
  only_top.ix = Interval::tail();
  only_top.ingest_inf();
  CHECK(only_top.is_infinite());
}

TEST_CASE("singular matrices are rejected") {
  CHECK_THROWS_AS(Homographic::make(2, 4, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(h_apply(Homographic(2, 4, 1, 2), cf_from_rational(1, 1)), std::invalid_argument);
}

TEST_CASE("h_range contains every sampled value") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-30, 30), kind(0, 2);
  int violations = 0, checked = 0;
  for (int i = 0; i < 300; ++i) {
    Interval ix;
    int k = static_cast<int>(kind(rng));
    Rational a = random_q(rng, 10, 9), b = random_q(rng, 10, 9);
    if (b < a) std::swap(a, b);
    if (k == 0) ix = Interval(ExtRational(a), ExtRational(b));
    else if (k == 1) ix = Interval::tail();
    else ix = Interval(ExtRational(a), ExtRational::pos_inf());
    Homographic m(coef(rng), coef(rng), coef(rng), coef(rng), ix);
    if (m.det() == 0) continue;
    Interval range = h_range(m);
    Rational lo = ix.lo().value();
    Rational span = ix.hi().finite() ? Rational(ix.hi().value() - lo) : Rational(1000);
    for (int j = 0; j <= 50; ++j) {
      Rational x = lo + span * Rational(j, 50);
      ExtRational v = m(x);
      if (!v.finite()) continue;
      ++checked;
      if (!range.contains(v)) ++violations;
    }
  }
  CHECK(checked > 5000);
  CHECK(violations == 0);
}

TEST_CASE("a pole at the edge of the bound leaves the other side bounded") {
  // 1/(1 - x) on [3/4, 1] is [4, inf]; on [3/4, 2] it has a pole inside.
  Homographic m(0, 1, -1, 1, Interval(ExtRational(Rational(3, 4)), ExtRational(1)));
  CHECK(h_range(m) == Interval(ExtRational(4), ExtRational::pos_inf()));
  m.ix = Interval(ExtRational(Rational(3, 4)), ExtRational(2));
  CHECK(h_range(m) == Interval::full());
  Homographic n(0, -1, -1, 1, Interval(ExtRational(Rational(3, 4)), ExtRational(1)));
  CHECK(h_range(n) == Interval(ExtRational::neg_inf(), ExtRational(-4)));
}

TEST_CASE("pi halved") {
  auto half_pi = h_apply(Homographic::make(1, 0, 0, 2), pi_cf());
  CHECK(first_terms(half_pi, 5) == ints({1, 1, 1, 3, 31}));
}

TEST_CASE("quadratic irrationals through a homographic map") {
  auto sqrt7 = cf_from_terms(2, {}, ints({1, 1, 1, 4}));
  auto half = h_apply(Homographic::make(1, 0, 0, 2), sqrt7);
  CHECK(first_terms(half, 12) == ints({1, 3, 10, 3, 2, 3, 10, 3, 2, 3, 10, 3}));
  auto sqrt11 = cf_from_terms(3, {}, ints({3, 6}));
  auto half11 = h_apply(Homographic::make(1, 0, 0, 2), sqrt11);
  CHECK(first_terms(half11, 12) == ints({1, 1, 1, 1, 12, 1, 1, 1, 2, 1, 1, 1}));
}

TEST_CASE("rationals map to exact rationals") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coef(-12, 12);
  for (int i = 0; i < 300; ++i) {
    Homographic m(coef(rng), coef(rng), coef(rng), coef(rng));
    if (m.det() == 0) continue;
    Rational x = random_q(rng, 40, 13);
    ExtRational want = m(x);
    if (!want.finite()) continue;
    auto s = h_apply(m, cf_from_rational(x));
    auto p = support::read_all(s);
    REQUIRE(p.exact);
    CHECK(p.enclosure.lo() == want);
    CHECK(p.terms == rational_terms(want.value()));
  }
}

}  // TEST_SUITE
