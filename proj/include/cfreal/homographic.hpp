#pragma once

#include <string>

#include "cfreal/rational.hpp"
#include "cfreal/stream.hpp"

namespace cfr {

/// The map x -> (p x + q) / (r x + s) together with the current bound on the
/// unread tail of x. Entries are kept with gcd 1.
struct Homographic {
  Integer p, q, r, s;
  Interval ix;

  Homographic() : p(1), q(0), r(0), s(1) {}
  Homographic(Integer p_, Integer q_, Integer r_, Integer s_, Interval ix_ = Interval::full());

  /// Rejects a zero determinant with std::invalid_argument.
  static Homographic make(Integer p, Integer q, Integer r, Integer s);

  Integer det() const { return p * s - q * r; }
  /// No dependence on x: the map is the constant q/s.
  bool is_constant() const { return p == 0 && r == 0; }
  /// The constant map with value infinity, reached after the last term of a
  /// rational result has been produced.
  bool is_infinite() const { return r == 0 && s == 0 && (p != 0 || q != 0); }

  void ingest(const Integer& k);
  /// Limit as the tail goes to infinity. Throws DivisionByZero when p = r = 0.
  void ingest_inf();
  void produce(const Integer& k);
  /// Divide out the common factor of the four entries.
  void normalize();

  /// Value at a finite x (tests and oracles).
  ExtRational operator()(const Rational& x) const;

  std::string str() const;

  friend bool operator==(const Homographic& a, const Homographic& b) {
    return a.p == b.p && a.q == b.q && a.r == b.r && a.s == b.s && a.ix == b.ix;
  }
};

/// x <- k + 1/x; the tail bound becomes [1, inf).
Homographic h_ingest(const Integer& k, Homographic m);
Homographic h_ingest_inf(Homographic m);
/// M <- 1/(M - k).
Homographic h_produce(const Integer& k, Homographic m);

/// Closed range of M over its tail bound, written [min, max). (-inf, inf) when
/// the denominator may vanish; a point interval for constant maps.
Interval h_range(const Homographic& m);

/// The stream of M(x). Throws std::invalid_argument for a singular M.
Stream h_apply(const Homographic& m, Stream x);

}  // namespace cfr
