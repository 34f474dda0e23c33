#include "cfreal/rational.hpp"

#include <stdexcept>

#include "cfreal/errors.hpp"

namespace cfr {

Integer floor_of(const Rational& v) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& v) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
  return r;
}

Rational simplest_between(const Rational& a, const Rational& b) {
  Integer c = ceil_of(a);
  if (c <= b) {
    // Prefer the integer nearest zero.
    if (c <= 0) {
      Integer f = floor_of(b);
      return Rational(f < 0 ? f : Integer(0));
    }
    return Rational(c);
  }
  Integer f = floor_of(a);
  Rational inner = simplest_between(Rational(1 / (b - f)), Rational(1 / (a - f)));
  return Rational(f + 1 / inner);
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Integer r;
  if (s.empty() || r.set_str(s, 10) != 0) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return r;
}

ExtRational ExtRational::fraction(const Integer& p, const Integer& q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  return ExtRational(Rational(p, q));
}

ExtRational ExtRational::parse(std::string_view text) {
  if (text == "inf" || text == "+inf") return pos_inf();
  if (text == "-inf") return neg_inf();
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExtRational(parse_integer(text));
  return fraction(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

const Rational& ExtRational::value() const {
  if (!finite()) throw std::logic_error("value() of an infinite ExtRational");
  return value_;
}

int ExtRational::sign() const {
  switch (kind_) {
    case Kind::NegInf: return -1;
    case Kind::PosInf: return 1;
    default: return sgn(value_);
  }
}

ExtRational ExtRational::operator-() const {
  switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return ExtRational(Rational(-value_));
  }
}

ExtRational ExtRational::reciprocal() const {
  if (!finite()) return ExtRational(0);
  if (value_ == 0) return pos_inf();
  return ExtRational(Rational(1 / value_));
}

std::string ExtRational::str() const {
  switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    default: return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }
}

std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
  if (a.kind_ != b.kind_ || !a.finite()) {
    return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
  }
  int c = cmp(a.value_, b.value_);
  return c <=> 0;
}

ExtRational operator+(const ExtRational& a, const ExtRational& b) {
  if (a.finite() && b.finite()) return ExtRational(Rational(a.value() + b.value()));
  if (a.finite()) return b;
  if (b.finite()) return a;
  if (a.kind() != b.kind()) throw std::domain_error("inf - inf");
  return a;
}

ExtRational operator-(const ExtRational& a, const ExtRational& b) { return a + (-b); }

ExtRational operator*(const ExtRational& a, const Rational& b) {
  if (a.finite()) return ExtRational(Rational(a.value() * b));
  if (b == 0) throw std::domain_error("0 * inf");
  return sgn(b) > 0 ? a : -a;
}

Interval::Interval(ExtRational lo, ExtRational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (hi_ < lo_) throw std::invalid_argument("interval with lo > hi: [" + lo_.str() + ", " + hi_.str() + ")");
}

std::optional<Integer> Interval::as_term() const {
  if (!lo_.is_integer() || !hi_.is_integer()) return std::nullopt;
  if (hi_.value() - lo_.value() != 1) return std::nullopt;
  return lo_.value().get_num();
}

std::optional<Integer> Interval::common_floor() const {
  if (!finite()) return std::nullopt;
  Integer a = floor_of(lo_.value());
  if (a != floor_of(hi_.value())) return std::nullopt;
  return a;
}

std::string Interval::str() const {
  if (auto t = as_term()) return t->get_str();
  return "[" + lo_.str() + ", " + hi_.str() + ")";
}

Interval intersect(const Interval& a, const Interval& b) {
  const ExtRational& lo = a.lo() < b.lo() ? b.lo() : a.lo();
  const ExtRational& hi = a.hi() < b.hi() ? a.hi() : b.hi();
  if (hi < lo) {
    throw ValidityViolation("disjoint bounds " + a.str() + " and " + b.str());
  }
  return Interval(lo, hi);
}

}  // namespace cfr
