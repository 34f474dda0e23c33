#pragma once

#include <array>
#include <string>

#include "cfreal/rational.hpp"
#include "cfreal/stream.hpp"

namespace cfr {

/// The map (a xy + b x + c y + d) / (e xy + f x + g y + h) with the current
/// bounds on the unread tails of x and y.
struct Bihomographic {
  std::array<Integer, 8> m;  // a b c d e f g h
  Interval ix;
  Interval iy;

  Bihomographic();
  Bihomographic(std::array<Integer, 8> entries, Interval ix_ = Interval::full(),
                Interval iy_ = Interval::full());
  static Bihomographic of(long a, long b, long c, long d, long e, long f, long g, long h);

  const Integer& a() const { return m[0]; }
  const Integer& b() const { return m[1]; }
  const Integer& c() const { return m[2]; }
  const Integer& d() const { return m[3]; }
  const Integer& e() const { return m[4]; }
  const Integer& f() const { return m[5]; }
  const Integer& g() const { return m[6]; }
  const Integer& h() const { return m[7]; }

  bool is_zero() const;
  bool is_infinite() const;
  bool depends_on_x() const { return a() != 0 || b() != 0 || e() != 0 || f() != 0; }
  bool depends_on_y() const { return a() != 0 || c() != 0 || e() != 0 || g() != 0; }
  /// Numerator row proportional to the denominator row: the map is constant
  /// wherever it is defined. Returns that constant.
  std::optional<Rational> constant_value() const;

  void ingest_x(const Integer& s);
  void ingest_y(const Integer& s);
  /// Limit x -> inf. When only the numerator depends on x the limit is
  /// infinite: accepted (the map becomes the infinite constant) if the
  /// denominator cannot vanish over iy, otherwise DivisionByZero.
  void ingest_x_inf();
  void ingest_y_inf();
  void produce(const Integer& k);
  void normalize();

  ExtRational operator()(const Rational& x, const Rational& y) const;

  std::string str() const;

  friend bool operator==(const Bihomographic& l, const Bihomographic& r) {
    return l.m == r.m && l.ix == r.ix && l.iy == r.iy;
  }
};

Bihomographic b_ingest_x(const Integer& s, Bihomographic m);
Bihomographic b_ingest_y(const Integer& s, Bihomographic m);
Bihomographic b_ingest_x_inf(Bihomographic m);
Bihomographic b_ingest_y_inf(Bihomographic m);
/// M <- 1/(M - k).
Bihomographic b_produce(const Integer& k, Bihomographic m);

/// Closed range of M over ix x iy, written [min, max). (-inf, inf) when the
/// denominator may change sign or vanish.
Interval rho(const Bihomographic& m);

/// The stream of M(x, y). Inputs are read in lockstep.
Stream arith(Stream x, Stream y, const Bihomographic& m0);

Stream add(Stream x, Stream y);
Stream sub(Stream x, Stream y);
Stream mul(Stream x, Stream y);
Stream div(Stream x, Stream y);

}  // namespace cfr
