#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "cfreal/bihomographic.hpp"
#include "cfreal/stream.hpp"

namespace cfr {

/// Level n of an infinitely nested series y_n = M_n(w, y_{n+1}).
struct SeriesLevel {
  /// M_n as a map of (w, y), with any leading terms already produced.
  Bihomographic matrix;
  /// Terms of y_n known before any input is read.
  std::vector<Integer> leading_terms;
  /// A bound on what remains of y_n after the leading terms.
  Interval tail_bound;
  /// Upper bound on |d y_n / d y_{n+1}|: how much the level shrinks the
  /// uncertainty in the level below.
  Rational contraction = 0;
};

using LevelFunction = std::function<SeriesLevel(long n)>;

/// The stream of y_start(w). Level n emits its leading terms and tail bound
/// without touching level n+1, then runs the two-input engine on M_n with
/// level n+1 as its second input. w may be absent for series with no argument.
Stream nested_eval(LevelFunction level, std::optional<Stream> w, long start = 1);

// Level definitions. `w_bounds` are certified bounds on the true argument.

/// 1 + w y / n, for the exponential series with 0 <= w.
SeriesLevel exp_level(long n, const Interval& w_bounds);
/// 1 + ((2n-1)/(2n+1)) w y; `ratio_bound` bounds w / (1 - w) from above.
SeriesLevel log_level(long n, const Rational& ratio_bound);
/// 1 - w y / (2n(2n-1)) for w = x^2 < 5/2. Levels n >= 2 start with 0, 1.
SeriesLevel cos_level(long n);
/// 1 + ((2n-1)^2 / (2n(2n+1))) w y for 0 <= w <= w_hi <= 1.
SeriesLevel arcsin_level(long n, const Rational& w_hi);
/// (5n-2) + n(2n-1) / (3(3n+1)(3n+2)) y.
SeriesLevel pi_level(long n);

/// C(2m, m) / (4^m (2m + 1)).
Rational arcsin_coefficient(long m);

/// Process-wide memoized constants.
Stream pi_cf();
Stream e_cf();
Stream sqrt_e_cf();

/// e^n for an integer n, by repeated squaring over mul with e.
Stream e_power(long n);

/// The bare exponential series for an argument with bounds inside [0, 2).
Stream exp_series(Stream r, const Interval& r_bounds);

/// Pull cap used while refining an argument to decide a domain or reduction
/// branch.
inline constexpr std::size_t kDefaultRefineCap = 100000;

Stream exp_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
/// Throws DomainError unless x > 0 can be established.
Stream log_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
Stream cos_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
Stream sin_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
Stream tan_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
/// Throws DomainError unless |x| <= 1 can be established.
Stream arcsin_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);
/// exp(log(x) / 2); requires x > 0.
Stream sqrt_cf(Stream x, std::size_t refine_cap = kDefaultRefineCap);

}  // namespace cfr
