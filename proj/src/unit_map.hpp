#pragma once

#include <optional>
#include <vector>

#include "cfreal/rational.hpp"

namespace cfr::detail {

// x = (alpha x' + beta) / (gamma x' + delta) sweeps the bound as x' runs over
// [0, inf]; gamma x' + delta > 0 there. x' -> inf reaches lo, x' = 0 reaches hi
// (for half-infinite bounds the finite end sits at x' = 0).
struct UnitMap {
  Integer alpha, beta, gamma, delta;
};

// nullopt for the full interval, which has no such map.
inline std::optional<UnitMap> unit_map(const Interval& bound) {
  const auto& lo = bound.lo();
  const auto& hi = bound.hi();
  if (lo.finite() && hi.finite()) {
    const Rational& l = lo.value();
    const Rational& u = hi.value();
    if (l == u) return UnitMap{0, l.get_num(), 0, l.get_den()};
    Integer scale = l.get_den() * u.get_den();
    return UnitMap{l.get_num() * u.get_den(), u.get_num() * l.get_den(), scale, scale};
  }
  if (lo.finite()) {
    const Rational& l = lo.value();
    return UnitMap{l.get_den(), l.get_num(), 0, l.get_den()};
  }
  if (hi.finite()) {
    const Rational& u = hi.value();
    return UnitMap{-u.get_den(), u.get_num(), 0, u.get_den()};
  }
  return std::nullopt;
}

inline UnitMap constant_map() { return UnitMap{0, 1, 0, 1}; }

// Closed [min, max] over corner fractions num[i]/den[i]. The denominators are
// the coefficients of a polynomial in x', y' >= 0, so one shared weak sign
// means no sign change. 0/0 corners are ignored. At an n/0 corner the value
// runs off to one infinity, the one given by the signs of n and the shared
// denominator sign, so the range stays bounded on the other side unless two
// such corners disagree.
inline Interval corner_range(const std::vector<Integer>& num, const std::vector<Integer>& den) {
  bool any_pos = false;
  bool any_neg = false;
  for (const auto& d : den) {
    if (d > 0) any_pos = true;
    if (d < 0) any_neg = true;
  }
  if (any_pos == any_neg) return Interval::full();
  std::optional<Rational> lo, hi;
  int pole = 0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (den[i] == 0) {
      if (num[i] == 0) continue;
      int sign = (num[i] > 0) == any_pos ? 1 : -1;
      if (pole != 0 && pole != sign) return Interval::full();
      pole = sign;
      continue;
    }
    Rational v(num[i], den[i]);
    v.canonicalize();
    if (!lo || v < *lo) lo = v;
    if (!hi || v > *hi) hi = v;
  }
  if (!lo) return Interval::full();
  if (pole > 0) return Interval(ExtRational(*lo), ExtRational::pos_inf());
  if (pole < 0) return Interval(ExtRational::neg_inf(), ExtRational(*hi));
  return Interval(ExtRational(*lo), ExtRational(*hi));
}

}  // namespace cfr::detail
