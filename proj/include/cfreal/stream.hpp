#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "cfreal/rational.hpp"

namespace cfr {

/// One element of a continued-fraction stream: either a bound on the current
/// tail (an explicit term when the bound is [a, a+1)) or the terminal marker
/// that ends a rational expansion.
class Item {
 public:
  explicit Item(Interval bound) : bound_(std::move(bound)) {}
  static Item term(const Integer& a) { return Item(Interval::term(a)); }
  static Item terminal() { return Item(); }

  bool is_end() const { return end_; }
  std::optional<Integer> term() const { return end_ ? std::nullopt : bound_.as_term(); }
  const Interval& bound() const { return bound_; }

  std::string str() const { return end_ ? "inf" : bound_.str(); }

  friend bool operator==(const Item&, const Item&) = default;

 private:
  Item() : end_(true) {}

  Interval bound_;
  bool end_ = false;
};

/// Produces the elements of a stream one at a time. Called only by Stream,
/// never again after it has returned the terminal marker.
class Generator {
 public:
  virtual ~Generator() = default;
  virtual Item next() = 0;
};

/// A pull-based, memoizing, possibly infinite sequence of Items representing
/// one real number. Copies share the same memo, so every consumer sees the
/// same elements and each element is computed once. Extending the memo is
/// serialized per stream; reads of the memoized prefix may come from any
/// thread.
class Stream {
 public:
  explicit Stream(std::unique_ptr<Generator> gen);

  /// Element i, computing the prefix as needed. Past the terminal marker this
  /// keeps returning the terminal marker. An error raised while generating is
  /// rethrown on every later pull that needs the missing element.
  Item at(std::size_t i) const;

  /// Up to n elements, stopping after the terminal marker.
  std::vector<Item> prefix(std::size_t n) const;

  /// Number of elements generated so far.
  std::size_t generated() const;

  bool same_as(const Stream& other) const { return node_ == other.node_; }

 private:
  struct Node;
  std::shared_ptr<Node> node_;
};

/// Explicit terms a0, rest..., then either the period repeated forever or the
/// terminal marker. Throws std::invalid_argument for a term after the first
/// that is < 1, or an empty period.
Stream cf_from_terms(const Integer& a0, std::vector<Integer> rest = {},
                     std::optional<std::vector<Integer>> period = std::nullopt);

/// Canonical regular expansion of p/q (last term >= 2 unless it is the only
/// term), terminated. Throws std::invalid_argument if q <= 0.
Stream cf_from_rational(const Integer& p, const Integer& q);
Stream cf_from_rational(const Rational& v);

/// Canonical terms of p/q, without building a stream.
std::vector<Integer> rational_terms(Rational v);

/// Whether a finite prefix of a stream obeys the nesting rules: an ambiguous
/// bound is followed by a bound inside it or by a term whose interval meets
/// it; terms after the first are >= 1 and later bounds lie in [1, inf);
/// nothing follows the terminal marker.
bool validate_prefix(std::span<const Item> items);

/// Bound on the next position after the term a, given the bound the current
/// position had: x -> 1/(x - a) applied to the bound clipped to [a, a+1].
/// Throws ValidityViolation if the term lies outside the bound.
Interval tail_after_term(const Interval& bound, const Integer& a);

/// Walks a stream, keeping the certified term prefix and the bound on the
/// current tail, and exposes the resulting enclosure of the value.
class Reader {
 public:
  explicit Reader(Stream s);

  /// Pulls one element. Returns false (and pulls nothing) once the terminal
  /// marker has been read.
  bool advance();

  const Stream& stream() const { return stream_; }
  const std::vector<Integer>& terms() const { return terms_; }
  /// Bound on the tail after terms(). Right after a term this is [1, inf)
  /// narrowed by whatever the bound before the term allowed.
  const Interval& tail() const { return tail_; }
  bool exact() const { return ended_; }
  std::size_t pulls() const { return pulls_; }
  const std::optional<Item>& last() const { return last_; }

  /// Closed enclosure of the value; a point once the stream has ended.
  Interval enclosure() const;

 private:
  ExtRational value_at(const ExtRational& t) const;

  Stream stream_;
  std::vector<Integer> terms_;
  Interval tail_;
  bool ended_ = false;
  std::size_t pulls_ = 0;
  std::optional<Item> last_;
  // Convergent recurrence: value = (h1 t + h0) / (k1 t + k0).
  Integer h1_ = 1, h0_ = 0, k1_ = 0, k0_ = 1;
};

}  // namespace cfr
