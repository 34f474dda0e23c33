#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace cfr {

using Integer = mpz_class;
using Rational = mpq_class;

Integer floor_of(const Rational& v);
Integer ceil_of(const Rational& v);
/// The rational with the smallest denominator in [a, b] (a <= b).
Rational simplest_between(const Rational& a, const Rational& b);
Integer parse_integer(std::string_view text);

/// A rational number or one of the two infinities. Finite values are kept in
/// lowest terms with a positive denominator.
class ExtRational {
 public:
  enum class Kind { NegInf, Finite, PosInf };

  ExtRational() = default;
  ExtRational(Rational v) : value_(std::move(v)) { value_.canonicalize(); }
  ExtRational(const Integer& v) : value_(v) {}
  ExtRational(long v) : value_(v) {}
  ExtRational(int v) : value_(v) {}

  static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
  static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }
  /// p/q with q != 0.
  static ExtRational fraction(const Integer& p, const Integer& q);
  /// Accepts "p/q", "p", "inf", "+inf", "-inf".
  static ExtRational parse(std::string_view text);

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_integer() const { return finite() && value_.get_den() == 1; }

  /// Precondition: finite().
  const Rational& value() const;

  int sign() const;
  ExtRational operator-() const;
  /// 1/0 is +inf and 1/(+-inf) is 0.
  ExtRational reciprocal() const;

  /// Exact "p/q" for finite values (the denominator is always written), and
  /// "inf" / "-inf" otherwise.
  std::string str() const;

  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b);
  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  explicit ExtRational(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_;
};

/// Sum; throws std::domain_error for +inf + -inf.
ExtRational operator+(const ExtRational& a, const ExtRational& b);
ExtRational operator-(const ExtRational& a, const ExtRational& b);
/// Product with a finite scalar; 0 * inf throws std::domain_error.
ExtRational operator*(const ExtRational& a, const Rational& b);

/// A bound on a real value, written [lo, hi). Explicit continued-fraction terms
/// are the intervals [a, a+1). Engines reason about the closure [lo, hi]; the
/// half-open reading only matters when an interval has the exact term shape.
/// Point intervals (lo == hi) appear only as range results for constant maps.
class Interval {
 public:
  /// The "no information" bound (-inf, +inf).
  Interval() : lo_(ExtRational::neg_inf()), hi_(ExtRational::pos_inf()) {}
  /// Throws std::invalid_argument unless lo <= hi.
  Interval(ExtRational lo, ExtRational hi);

  static Interval full() { return Interval(); }
  static Interval term(const Integer& a) { return Interval(ExtRational(a), ExtRational(Integer(a + 1))); }
  static Interval point(const ExtRational& v) { return Interval(v, v); }
  /// [1, +inf): the bound on any continued-fraction tail after an explicit term.
  static Interval tail() { return Interval(ExtRational(1), ExtRational::pos_inf()); }

  const ExtRational& lo() const { return lo_; }
  const ExtRational& hi() const { return hi_; }

  bool is_full() const { return lo_.is_neg_inf() && hi_.is_pos_inf(); }
  bool finite() const { return lo_.finite() && hi_.finite(); }
  bool is_point() const { return lo_ == hi_; }
  ExtRational width() const { return hi_ - lo_; }

  /// a iff the interval is exactly [a, a+1).
  std::optional<Integer> as_term() const;
  /// k iff every value of the closure [lo, hi] has floor k.
  std::optional<Integer> common_floor() const;

  bool contains(const ExtRational& v) const { return lo_ <= v && v <= hi_; }
  bool subset_of(const Interval& other) const { return other.lo_ <= lo_ && hi_ <= other.hi_; }

  std::string str() const;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  ExtRational lo_;
  ExtRational hi_;
};

/// Intersection of the closures. Throws ValidityViolation when they are
/// disjoint, since two sound bounds on the same value always overlap.
Interval intersect(const Interval& a, const Interval& b);

/// Free-function form of Interval::as_term.
inline std::optional<Integer> term_of(const Interval& i) { return i.as_term(); }

}  // namespace cfr
