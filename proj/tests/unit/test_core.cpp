#include <random>
#include <stdexcept>
#include <thread>

#include "cfreal/errors.hpp"
#include "cfreal/rational.hpp"
#include "cfreal/stream.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace cfr;
using support::ints;

TEST_SUITE("core") {

TEST_CASE("floor and ceiling of negative fractions") {
  CHECK(floor_of(Rational(-7, 2)) == -4);
  CHECK(ceil_of(Rational(-7, 2)) == -3);
  CHECK(floor_of(Rational(7, 2)) == 3);
  CHECK(floor_of(Rational(4)) == 4);
  CHECK(ceil_of(Rational(4)) == 4);
}

TEST_CASE("decimal integers are never read as octal") {
  CHECK(parse_integer("09") == 9);
  CHECK(parse_integer("-0012") == -12);
  CHECK_THROWS_AS(parse_integer("1x"), std::invalid_argument);
}

TEST_CASE("extended rationals order infinities around every value") {
  auto inf = ExtRational::pos_inf(), ninf = ExtRational::neg_inf();
  CHECK(ninf < ExtRational(Rational(-1000000)));
  CHECK(ExtRational(Rational(1000000)) < inf);
  CHECK(ExtRational::fraction(6, -4) == ExtRational(Rational(-3, 2)));
  CHECK_THROWS(ExtRational::fraction(1, 0));
  CHECK(ExtRational(0).reciprocal().is_pos_inf());
  CHECK(inf.reciprocal() == ExtRational(0));
  CHECK_THROWS_AS(inf + ninf, std::domain_error);
  CHECK_THROWS_AS(inf * Rational(0), std::domain_error);
  CHECK((inf * Rational(-2)).is_neg_inf());
}

TEST_CASE("extended rational text round-trips") {
  for (const char* s : {"3/1", "-7/2", "inf", "-inf", "0/1"}) CHECK(ExtRational::parse(s).str() == s);
  CHECK(ExtRational::parse("5").str() == "5/1");
  CHECK(ExtRational::parse("+inf").is_pos_inf());
  CHECK_THROWS(ExtRational::parse("1/0/2"));
}

TEST_CASE("interval shapes") {
  CHECK(Interval::term(3).as_term() == Integer(3));
  CHECK_FALSE(Interval(ExtRational(3), ExtRational(Rational(7, 2))).as_term());
  CHECK(Interval(ExtRational(3), ExtRational(Rational(7, 2))).common_floor() == Integer(3));
  // The closure of [3, 4) contains 4, so its floor is not common.
  CHECK_FALSE(Interval::term(3).common_floor());
  CHECK_FALSE(Interval::tail().common_floor());
  CHECK_THROWS_AS(Interval(ExtRational(2), ExtRational(1)), std::invalid_argument);
}

TEST_CASE("intersection of disjoint bounds is a validity violation") {
  Interval a(ExtRational(1), ExtRational(2)), b(ExtRational(3), ExtRational(4));
  CHECK_THROWS_AS(intersect(a, b), ValidityViolation);
  Interval c(ExtRational(Rational(3, 2)), ExtRational::pos_inf());
  CHECK(intersect(a, c) == Interval(ExtRational(Rational(3, 2)), ExtRational(2)));
}

TEST_CASE("simplest_between picks the smallest denominator") {
  CHECK(simplest_between(Rational(31, 10), Rational(32, 10)) == Rational(16, 5));
  CHECK(simplest_between(Rational(-7, 2), Rational(-1, 3)) == -1);
  CHECK(simplest_between(Rational(-1, 2), Rational(1, 2)) == 0);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-500, 500), den(1, 60);
  for (int i = 0; i < 300; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    if (b < a) std::swap(a, b);
    Rational s = simplest_between(a, b);
    REQUIRE(a <= s);
    REQUIRE(s <= b);
    // No rational with a smaller denominator lies in [a, b].
    for (long q = 1; q < s.get_den().get_si(); ++q) {
      Integer lo = ceil_of(a * q);
      CHECK(Rational(lo, q) > b);
    }
  }
}

TEST_CASE("rational expansions are canonical") {
  CHECK(rational_terms(Rational(355, 113)) == ints({3, 7, 16}));
  CHECK(rational_terms(Rational(-7, 2)) == ints({-4, 2}));
  CHECK(rational_terms(Rational(5)) == ints({5}));
  CHECK(rational_terms(Rational(1, 2)) == ints({0, 2}));
  auto s = cf_from_rational(355, 113);
  auto p = s.prefix(10);
  REQUIRE(p.size() == 4);
  CHECK(p[2].term() == Integer(16));
  CHECK(p[3].is_end());
  CHECK(s.at(50).is_end());
  CHECK_THROWS_AS(cf_from_rational(1, 0), std::invalid_argument);
}

TEST_CASE("periodic literals repeat") {
  auto s = cf_from_terms(2, {}, ints({1, 1, 1, 4}));
  std::vector<Integer> got;
  for (std::size_t i = 0; i < 9; ++i) got.push_back(*s.at(i).term());
  CHECK(got == ints({2, 1, 1, 1, 4, 1, 1, 1, 4}));
  CHECK_THROWS_AS(cf_from_terms(1, ints({0})), std::invalid_argument);
  CHECK_THROWS_AS(cf_from_terms(1, {}, std::vector<Integer>{}), std::invalid_argument);
}

TEST_CASE("validate_prefix") {
  auto term = [](long a) { return Item::term(a); };
  auto bound = [](Rational lo, Rational hi) { return Item(Interval(ExtRational(lo), ExtRational(hi))); };
  std::vector<Item> good{bound(1, 5), bound(2, 4), term(3), bound(1, 2), term(1), Item::terminal()};
  CHECK(validate_prefix(good));
  std::vector<Item> widening{bound(2, 4), bound(1, 5)};
  CHECK_FALSE(validate_prefix(widening));
  std::vector<Item> outside{bound(2, Rational(5, 2)), term(5)};
  CHECK_FALSE(validate_prefix(outside));
  std::vector<Item> zero_term{term(3), term(0)};
  CHECK_FALSE(validate_prefix(zero_term));
  std::vector<Item> after_end{term(1), Item::terminal(), term(2)};
  CHECK_FALSE(validate_prefix(after_end));
  // A term [a, a+1) whose closure only touches the previous bound still meets it.
  std::vector<Item> touching{bound(Rational(3, 2), 2), term(2)};
  CHECK(validate_prefix(touching));
}

TEST_CASE("reader enclosure follows the convergents") {
  Reader r(cf_from_rational(355, 113));
  REQUIRE(r.advance());
  CHECK(r.enclosure() == Interval(ExtRational(3), ExtRational(4)));
  REQUIRE(r.advance());
  CHECK(r.enclosure() == Interval(ExtRational(Rational(25, 8)), ExtRational(Rational(22, 7))));
  while (r.advance()) {}
  CHECK(r.exact());
  CHECK(r.enclosure().is_point());
  CHECK(r.enclosure().lo() == ExtRational(Rational(355, 113)));
  CHECK(r.terms() == ints({3, 7, 16}));
}

namespace {
class Counting : public Generator {
 public:
  explicit Counting(int* calls) : calls_(calls) {}
  Item next() override {
    ++*calls_;
    if (*calls_ == 4) throw DomainError("boom");
    return Item::term(*calls_);
  }

 private:
  int* calls_;
};
}  // namespace

TEST_CASE("a term narrows the bound it follows") {
  // [3/2, 5/3] then the term 1: the tail 1/(x - 1) lies in [3/2, 2].
  std::vector<Item> items{Item(Interval(ExtRational(Rational(3, 2)), ExtRational(Rational(5, 3)))), Item::term(1)};
  class Fixed : public Generator {
   public:
    explicit Fixed(std::vector<Item> v) : v_(std::move(v)) {}
    Item next() override { return i_ < v_.size() ? v_[i_++] : Item(Interval::tail()); }

   private:
    std::vector<Item> v_;
    std::size_t i_ = 0;
  };
  Reader r(Stream(std::make_unique<Fixed>(items)));
  r.advance();
  r.advance();
  CHECK(r.tail() == Interval(ExtRational(Rational(3, 2)), ExtRational(2)));
  CHECK(r.enclosure() == Interval(ExtRational(Rational(3, 2)), ExtRational(Rational(5, 3))));
  r.advance();
  CHECK(r.tail() == Interval(ExtRational(Rational(3, 2)), ExtRational(2)));
}

TEST_CASE("streams memoize and rethrow generator errors") {
  int calls = 0;
  Stream s(std::make_unique<Counting>(&calls));
  Stream copy = s;
  CHECK(s.at(2).term() == Integer(3));
  CHECK(copy.at(1).term() == Integer(2));
  CHECK(calls == 3);
  CHECK(copy.same_as(s));
  CHECK_THROWS_AS(s.at(3), DomainError);
  CHECK_THROWS_AS(copy.at(5), DomainError);
  CHECK(s.generated() == 3);
}

TEST_CASE("concurrent readers see one sequence") {
  auto s = cf_from_terms(1, {}, ints({2}));
  std::vector<std::vector<Item>> seen(4);
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] { seen[t] = s.prefix(200); });
  }
  for (auto& th : threads) th.join();
  for (int t = 1; t < 4; ++t) CHECK(seen[t] == seen[0]);
  CHECK(s.generated() == 200);
}

}  // TEST_SUITE
