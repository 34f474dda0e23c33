#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cfreal/rational.hpp"
#include "cfreal/stream.hpp"

namespace cfr {

inline constexpr std::size_t kDefaultIterationCap = 100000;

/// Value of [terms..., tail] evaluated from the bottom up. A tail of inf gives
/// the plain convergent.
ExtRational eval_prefix_with_tail(const std::vector<Integer>& terms, const ExtRational& tail);

struct TermPrefix {
  /// Terms certified by the stream, z_0 .. z_{k-1}.
  std::vector<Integer> certified;
  /// Bound on what follows them; [inf, inf] when the stream has ended.
  Interval tail;
  /// certified plus floor(u_k), with a trailing 1 folded into its predecessor.
  std::vector<Integer> terms;
  /// Closed rational enclosure of the value.
  Interval enclosure;
  bool exact = false;
  std::size_t pulls = 0;
};

/// Pulls z until the enclosure is at most eps wide. Throws
/// IterationCapExceeded after `cap` pulls.
TermPrefix approximate(const Stream& z, const Rational& eps, std::size_t cap = kDefaultIterationCap);

/// First `count` elements after which `count` terms are certified, or fewer if
/// the stream ends. The returned prefix's enclosure is that of those terms.
TermPrefix leading_terms(const Stream& z, std::size_t count, std::size_t cap = kDefaultIterationCap);

/// Truncated decimal expansion with `digits` fractional digits. When a digit
/// cannot be certified but the value is known to within 10^-(digits+2), the
/// rounded value is printed instead, followed by "~".
std::string to_decimal(const Stream& z, std::size_t digits, std::size_t cap = kDefaultIterationCap);

/// {"terms", "tail_lo", "tail_hi", "canonical", "decimal"} with exact "p/q"
/// strings.
std::string to_json(const TermPrefix& p, const std::string& decimal);

}  // namespace cfr
