#include <random>

#include "cfreal/bihomographic.hpp"
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

Stream sqrt2() { return cf_from_terms(1, {}, ints({2})); }

Interval iv(Rational lo, Rational hi) { return Interval(ExtRational(lo), ExtRational(hi)); }

}  // namespace

TEST_SUITE("bihomographic") {

TEST_CASE("ingestion substitutes in one variable") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coef(-9, 9);
  for (int i = 0; i < 200; ++i) {
    std::array<Integer, 8> e;
    for (auto& c : e) c = coef(rng);
    Bihomographic m(e);
    Integer k = coef(rng);
    Rational x = random_q(rng, 20, 7), y = random_q(rng, 20, 5);
    if (x == 0 || y == 0) continue;
    CHECK(b_ingest_x(k, m)(x, y) == m(Rational(k + 1 / x), y));
    CHECK(b_ingest_y(k, m)(x, y) == m(x, Rational(k + 1 / y)));
    ExtRational v = m(x, y);
    if (v.finite()) CHECK(b_produce(k, m)(x, y) == (v - ExtRational(k)).reciprocal());
  }
}

TEST_CASE("rho contains every sampled value") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> coef(-12, 12), kind(0, 1);
  int violations = 0, checked = 0;
  for (int i = 0; i < 300; ++i) {
    auto bound = [&] {
      if (kind(rng) == 1) return Interval::tail();
      Rational a = random_q(rng, 6, 5), b = random_q(rng, 6, 5);
      if (b < a) std::swap(a, b);
      return iv(a, b);
    };
    std::array<Integer, 8> e;
    for (auto& c : e) c = coef(rng);
    Bihomographic m(e, bound(), bound());
    Interval range = rho(m);
    auto samples = [](const Interval& b) {
      std::vector<Rational> out;
      Rational lo = b.lo().value();
      Rational span = b.hi().finite() ? Rational(b.hi().value() - lo) : Rational(500);
      for (int j = 0; j <= 14; ++j) out.push_back(lo + span * Rational(j * j, 196));
      return out;
    };
    for (const auto& x : samples(m.ix)) {
      for (const auto& y : samples(m.iy)) {
        ExtRational v = m(x, y);
        if (!v.finite()) continue;
        ++checked;
        if (!range.contains(v)) ++violations;
      }
    }
  }
  CHECK(checked > 30000);
  CHECK(violations == 0);
}

TEST_CASE("root two squared emits the shrinking bounds around 2") {
  auto z = mul(sqrt2(), sqrt2());
  CHECK(z.at(0).bound() == iv(Rational(16, 9), Rational(9, 4)));
  CHECK(z.at(1).bound() == iv(Rational(49, 25), Rational(100, 49)));
  CHECK(z.at(2).bound() == iv(Rational(576, 289), Rational(289, 144)));
  auto p = z.prefix(60);
  CHECK(validate_prefix(p));
  for (const auto& item : p) {
    CHECK_FALSE(item.term());
    CHECK(item.bound().contains(ExtRational(2)));
  }
}

TEST_CASE("root two squared extracts to 2 at every accuracy") {
  for (const Rational eps : {Rational(1), Rational(1, Integer("10000000000"))}) {
    auto p = approximate(mul(sqrt2(), sqrt2()), eps);
    CHECK(p.terms == ints({2}));
    CHECK(p.enclosure.width() <= ExtRational(eps));
  }
}

TEST_CASE("pi plus one half") {
  auto z = add(pi_cf(), cf_from_rational(1, 2));
  CHECK(first_terms(z, 15) == ints({3, 1, 1, 1, 3, 1, 3, 4, 73, 6, 3, 3, 2, 1, 3}));
}

TEST_CASE("rational arithmetic is exact") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 200; ++i) {
    Rational x = random_q(rng, 30, 17), y = random_q(rng, 30, 11);
    auto sx = cf_from_rational(x), sy = cf_from_rational(y);
    auto check = [](const Stream& s, const Rational& want) {
      auto p = support::read_all(s);
      REQUIRE(p.exact);
      CHECK(p.enclosure.lo() == ExtRational(want));
      CHECK(p.terms == rational_terms(want));
    };
    check(add(sx, sy), x + y);
    check(sub(sx, sy), x - y);
    check(mul(sx, sy), x * y);
    if (y != 0) check(div(sx, sy), x / y);
  }
}

TEST_CASE("chained exact operations end cleanly") {
  // 1 - (1/3 * 3) / 2 + 1/2, pulled only from the outermost stream: an inner
  // value pinned exactly by a bound and a term must end, not turn negative.
  auto q = [](long a, long b) { return cf_from_rational(a, b); };
  auto z = add(sub(q(1, 1), div(mul(q(1, 3), q(3, 1)), q(2, 1))), q(1, 2));
  auto p = support::read_all(z);
  CHECK(p.exact);
  CHECK(p.terms == ints({1}));
  std::mt19937_64 rng(31);
  for (int i = 0; i < 300; ++i) {
    Rational a = random_q(rng, 5, 4), b = random_q(rng, 5, 4), c = random_q(rng, 5, 4);
    if (c == 0) continue;
    auto chain = add(sub(cf_from_rational(a), div(mul(cf_from_rational(b), cf_from_rational(c)), cf_from_rational(c))),
                     cf_from_rational(b));
    auto r = support::read_all(chain);
    REQUIRE(r.exact);
    CHECK(r.enclosure.lo() == ExtRational(a));
  }
}

TEST_CASE("dividing by an exact zero fails") {
  auto z = div(cf_from_rational(3, 1), cf_from_rational(0, 1));
  CHECK_THROWS_AS(approximate(z, Rational(1, 100)), DivisionByZero);
}

TEST_CASE("dividing by a value that only approaches zero runs into the cap") {
  auto z = div(cf_from_rational(1, 1), sub(pi_cf(), pi_cf()));
  // Nothing is ever known about the quotient, and each element says so.
  for (const auto& item : z.prefix(40)) CHECK(item.bound() == Interval::full());
  CHECK_THROWS_AS(approximate(z, Rational(1, 100), 60), IterationCapExceeded);
  CHECK_THROWS_AS(to_decimal(tan_cf(h_apply(Homographic::make(1, 0, 0, 2), pi_cf())), 5, 60), IterationCapExceeded);
}

TEST_CASE("a quantity minus itself is zero") {
  auto x = cf_from_rational(22, 7);
  auto p = support::read_all(sub(x, x));
  CHECK(p.exact);
  CHECK(p.terms == ints({0}));
}

TEST_CASE("pi times root two") {
  CHECK(to_decimal(mul(pi_cf(), sqrt2()), 15) == "4.442882938158366");
  CHECK(to_decimal(add(pi_cf(), sqrt2()), 15) == "4.555806215962888");
}

}  // TEST_SUITE
