#pragma once

#include <optional>

#include "cfreal/bihomographic.hpp"
#include "cfreal/homographic.hpp"
#include "cfreal/stream.hpp"

namespace cfr::detail {

// Decides what an engine emits for the current output position. Every range is
// first intersected with the best bound known so far for the position, so
// emitted bounds nest. An ambiguous bound is emitted only when it is finite,
// narrower than 1 and at most half as wide as the previous one (or, for a
// half-infinite tail bound, when its lower end has doubled), or after
// kStallLimit silent rounds (every round once the full line has been
// emitted and nothing more is known). Past the first position, the first finite bound
// is always emitted.
class OutputPolicy {
 public:
  static constexpr int kStallLimit = 64;

  enum class Action { Term, Emit, Hold };
  struct Decision {
    Action action;
    Interval bound;
    Integer term;
  };

  // force: emit the bound even if it does not pass the narrowing test.
  Decision decide(const Interval& range, bool force = false);
  // Move on to the next position after `term` has been produced.
  void advance_position(const Integer& term);
  bool first_position() const { return first_; }
  // Emit the first bound at each position whatever its width, every
  // improvement on a hint or on a half-infinite bound, and otherwise any bound
  // that leaves the value, seen through the terms produced so far, at most
  // `ratio` times as wide as before. For nested series levels: if a level
  // shrinks its input's width by a factor c, a ratio above c lets each
  // emission be paid for by an earlier emission of the level below; otherwise
  // requests run ever deeper. Widths are compared on the value rather than on
  // the current position because a tail can be far wider than what it adds.
  void set_eager(Rational ratio) { eager_ = ratio; }

 private:
  bool worth_emitting(const Interval& r) const;
  static Interval loosen(const Interval& r, const Interval& outer);
  // Where a bound on the current position puts the value.
  Interval value_image(const Interval& r) const;

  Interval prior_ = Interval::full();
  std::optional<Interval> last_emitted_;
  bool first_ = true;
  std::optional<Rational> eager_;
  bool last_forced_ = false;
  int silent_ = 0;
  Homographic prefix_;
  // The value as known when the current position began.
  Interval value_ = Interval::full();
};

// Two-input engine. An absent input is treated as already exhausted (the map
// must not depend on it).
class BihomographicEngine {
 public:
  BihomographicEngine(Bihomographic m, std::optional<Stream> x, std::optional<Stream> y);

  // A known bound on the value at the current position, offered before any
  // input is read: a term is produced from it at once when it pins one floor,
  // otherwise it is emitted as the first element. A produced term turns the
  // rest of the hint into a hint for the next position.
  void set_hint(Interval hint) { hint_ = std::move(hint); }
  // Terms already produced outside the engine.
  void skip_terms(const std::vector<Integer>& terms);
  void set_eager(Rational ratio) { policy_.set_eager(std::move(ratio)); }

  Item next();

 private:
  enum class Input { X, Y, Both };
  Input choose_input() const;
  void ingest();

  Bihomographic m_;
  std::optional<Stream> x_, y_;
  std::size_t xi_ = 0, yi_ = 0;
  bool x_done_, y_done_;
  bool pending_ingest_ = false;
  std::optional<Interval> hint_;
  OutputPolicy policy_;
};

class HomographicEngine {
 public:
  HomographicEngine(Homographic m, Stream x);
  Item next();

 private:
  void ingest();

  Homographic m_;
  Stream x_;
  std::size_t xi_ = 0;
  bool x_done_ = false;
  bool pending_ingest_ = false;
  OutputPolicy policy_;
};

template <class Engine>
class EngineGenerator final : public Generator {
 public:
  explicit EngineGenerator(Engine e) : engine_(std::move(e)) {}
  Item next() override { return engine_.next(); }

 private:
  Engine engine_;
};

}  // namespace cfr::detail
