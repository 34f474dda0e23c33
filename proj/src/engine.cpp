#include "engine.hpp"

#include <algorithm>

#include "cfreal/errors.hpp"
#include "cfreal/trace.hpp"

namespace cfr::detail {

namespace {

constexpr std::size_t kSimplifyBits = 64;

bool bulky(const ExtRational& v) {
  if (!v.finite()) return false;
  const Rational& q = v.value();
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) > kSimplifyBits || mpz_sizeinbase(q.get_den_mpz_t(), 2) > kSimplifyBits;
}

}  // namespace

// Endpoints of emitted bounds feed the consumer's arithmetic, and through
// nested engines their size compounds. A bulky endpoint is moved outwards, by at
// most an eighth of the width and never past `outer`, to the simplest rational
// in that slack.
Interval OutputPolicy::loosen(const Interval& r, const Interval& outer) {
  if (!bulky(r.lo()) && !bulky(r.hi())) return r;
  auto slack = [&](const Rational& v) {
    if (r.finite()) return Rational(r.width().value() / 8);
    Rational m = abs(v);
    return Rational((m > 1 ? m : Rational(1)) / (Integer(1) << 32));
  };
  ExtRational lo = r.lo(), hi = r.hi();
  if (bulky(lo)) {
    Rational v = lo.value(), a = v - slack(v);
    if (outer.lo().finite() && outer.lo().value() > a) a = outer.lo().value();
    lo = ExtRational(simplest_between(a, v));
  }
  if (bulky(hi)) {
    Rational v = hi.value(), b = v + slack(v);
    if (outer.hi().finite() && outer.hi().value() < b) b = outer.hi().value();
    hi = ExtRational(simplest_between(v, b));
  }
  Interval out(lo, hi);
  // A loosened bound must not read as a term.
  if (out.as_term()) return r;
  return out;
}

OutputPolicy::Decision OutputPolicy::decide(const Interval& range, bool force) {
  Interval r = intersect(range, prior_);
  prior_ = r;
  if (auto k = r.common_floor()) return {Action::Term, r, *k};

  // [k, k+1] whose floor is not pinned cannot be written down: it would read
  // as the term k.
  bool term_shaped = r.as_term().has_value();
  // Once a stall has produced the full line, nothing is known and waiting
  // gains nothing: a divisor that never leaves zero then costs one ingest per
  // element, and only the extraction cap ends it.
  bool blind = r == Interval::full() && last_emitted_ == Interval::full();
  bool stalled = ++silent_ >= (blind ? 1 : kStallLimit);
  if (term_shaped && !stalled) return {Action::Hold, r, 0};
  if (!force && !stalled && !worth_emitting(r)) return {Action::Hold, r, 0};

  silent_ = 0;
  last_forced_ = force;
  Interval outer = last_emitted_.value_or(first_ ? Interval::full() : Interval::tail());
  Interval out = term_shaped ? outer : force ? r : loosen(r, outer);
  last_emitted_ = out;
  count_emit();
  return {Action::Emit, out, 0};
}

bool OutputPolicy::worth_emitting(const Interval& r) const {
  if (eager_) {
    // Series levels: anything new after a hint or about a half-infinite
    // bound, otherwise a shrink by the ratio. The first bound after a term is
    // judged on the value, which the term alone may already pin better.
    if (!last_emitted_) {
      if (!value_.finite()) return true;
      Interval v = value_image(r);
      if (!v.finite()) return false;
      ExtRational lo = std::max(v.lo(), value_.lo()), hi = std::min(v.hi(), value_.hi());
      return hi - lo <= ExtRational(*eager_ * value_.width().value());
    }
    if (last_forced_ || !r.finite() || !last_emitted_->finite()) return r != *last_emitted_;
    return r.width().value() <= *eager_ * last_emitted_->width().value();
  }
  if (r.finite()) {
    Rational w = r.width().value();
    bool first_finite = !last_emitted_ || !last_emitted_->finite();
    // After a term any finite bound says something about the next one.
    if (first_finite) return w < 1 || !first_;
    if (w >= 1 && first_) return false;
    return 2 * w <= last_emitted_->width().value();
  }
  if (first_ || !r.hi().is_pos_inf()) return false;
  Rational prev = last_emitted_ ? last_emitted_->lo().value() : Rational(1);
  return r.lo().value() >= 2 * prev;
}

Interval OutputPolicy::value_image(const Interval& r) const {
  Homographic m = prefix_;
  m.ix = r;
  return h_range(m);
}

void OutputPolicy::advance_position(const Integer& term) {
  if (eager_) {
    // What a reader knows of the value once the term follows the last bound.
    Interval t = Interval::term(term);
    if (last_emitted_) {
      ExtRational lo = std::max(t.lo(), last_emitted_->lo()), hi = std::min(t.hi(), last_emitted_->hi());
      if (lo <= hi) t = Interval(lo, hi);
    }
    value_ = value_image(t);
  }
  prefix_ = h_ingest(term, prefix_);
  first_ = false;
  prior_ = Interval::tail();
  last_emitted_.reset();
  last_forced_ = false;
  silent_ = 0;
}

namespace {

void report(const char* engine, const char* action, const std::string& detail, const std::string& state) {
  trace(TraceEvent{engine, action, detail, state});
}

}  // namespace

BihomographicEngine::BihomographicEngine(Bihomographic m, std::optional<Stream> x, std::optional<Stream> y)
    : m_(std::move(m)), x_(std::move(x)), y_(std::move(y)), x_done_(!x_), y_done_(!y_) {}

void BihomographicEngine::skip_terms(const std::vector<Integer>& terms) {
  for (const auto& t : terms) policy_.advance_position(t);
}

void BihomographicEngine::ingest() {
  auto read = [&](std::optional<Stream>& s, std::size_t& idx, bool& done, bool is_x) {
    if (done) return;
    Item item = s->at(idx++);
    count_ingest();
    if (item.is_end()) {
      is_x ? m_.ingest_x_inf() : m_.ingest_y_inf();
      done = true;
      s.reset();
    } else if (auto t = item.term()) {
      Interval next = tail_after_term(is_x ? m_.ix : m_.iy, *t);
      is_x ? m_.ingest_x(*t) : m_.ingest_y(*t);
      (is_x ? m_.ix : m_.iy) = next;
      // A bound that pins the term exactly leaves nothing after it.
      if (next.is_point() && next.lo().is_pos_inf()) {
        is_x ? m_.ingest_x_inf() : m_.ingest_y_inf();
        done = true;
        s.reset();
      }
    } else {
      Interval& bound = is_x ? m_.ix : m_.iy;
      bound = intersect(bound, item.bound());
    }
    if (tracing()) report("bihomographic", is_x ? "ingest_x" : "ingest_y", item.str(), m_.str());
  };
  switch (choose_input()) {
    case Input::X: read(x_, xi_, x_done_, true); break;
    case Input::Y: read(y_, yi_, y_done_, false); break;
    case Input::Both:
      read(x_, xi_, x_done_, true);
      read(y_, yi_, y_done_, false);
      break;
  }
}

namespace {

ExtRational spread(const Interval& r) {
  if (!r.finite()) return ExtRational::pos_inf();
  return r.width();
}

// An interior point of i. For a tail [a, inf) this is 2a, which for a CF tail
// sits in the middle of the values it can still give the number.
Interval pin(const Interval& i) {
  if (i.finite()) return Interval::point(ExtRational(Rational((i.lo().value() + i.hi().value()) / 2)));
  if (i.lo().finite()) {
    const Rational& a = i.lo().value();
    return Interval::point(ExtRational(a >= 1 ? Rational(2 * a) : Rational(a + 1)));
  }
  const Rational& b = i.hi().value();
  return Interval::point(ExtRational(b <= -1 ? Rational(2 * b) : Rational(b - 1)));
}

}  // namespace

// Reads the input that accounts for more of the output's spread; both when
// they are equally to blame. Reading an input that hardly matters can be
// expensive, e.g. the inner level of a nested series.
BihomographicEngine::Input BihomographicEngine::choose_input() const {
  if (x_done_) return Input::Y;
  if (y_done_) return Input::X;
  if (m_.ix.is_full() != m_.iy.is_full()) return m_.ix.is_full() ? Input::X : Input::Y;
  if (m_.ix.is_full()) return Input::Both;
  // An input whose next element is already memoized costs nothing to read.
  bool x_ready = xi_ < x_->generated(), y_ready = yi_ < y_->generated();
  if (x_ready != y_ready) return x_ready ? Input::X : Input::Y;
  Bihomographic fixed_x = m_, fixed_y = m_;
  fixed_x.ix = pin(m_.ix);
  fixed_y.iy = pin(m_.iy);
  ExtRational due_to_y = spread(rho(fixed_x));
  ExtRational due_to_x = spread(rho(fixed_y));
  // Near ties read both, x first. Nested series rely on this: a level that
  // only ever read y would send every level below it the same way, all of
  // them stuck at the same position of x.
  if (due_to_x * Rational(2) >= due_to_y && due_to_y * Rational(2) >= due_to_x) return Input::Both;
  return due_to_x > due_to_y ? Input::X : Input::Y;
}

Item BihomographicEngine::next() {
  if (hint_) {
    Interval h = std::move(*hint_);
    hint_.reset();
    auto d = policy_.decide(h, true);
    if (d.action == OutputPolicy::Action::Term) {
      m_.produce(d.term);
      policy_.advance_position(d.term);
      count_produce();
      if (tracing()) report("bihomographic", "produce", d.term.get_str(), m_.str());
      // What the hint says about the rest carries over to the next position.
      if (!h.is_point()) {
        ExtRational d0(Rational(d.term));
        hint_ = Interval((h.hi() - d0).reciprocal(), (h.lo() - d0).reciprocal());
      }
      return Item::term(d.term);
    }
    pending_ingest_ = true;
    if (d.action == OutputPolicy::Action::Emit) return Item(d.bound);
  }
  for (;;) {
    if (pending_ingest_) {
      ingest();
      pending_ingest_ = false;
    }
    if (m_.is_infinite()) {
      if (policy_.first_position()) throw DivisionByZero();
      if (tracing()) report("bihomographic", "end", "inf", m_.str());
      return Item::terminal();
    }
    auto d = policy_.decide(rho(m_));
    switch (d.action) {
      case OutputPolicy::Action::Term:
        m_.produce(d.term);
        policy_.advance_position(d.term);
        count_produce();
        if (tracing()) report("bihomographic", "produce", d.term.get_str(), m_.str());
        return Item::term(d.term);
      case OutputPolicy::Action::Emit:
        pending_ingest_ = true;
        if (tracing()) report("bihomographic", "emit", d.bound.str(), m_.str());
        return Item(d.bound);
      case OutputPolicy::Action::Hold:
        if (x_done_ && y_done_) throw ValidityViolation("constant map with undecided range " + m_.str());
        pending_ingest_ = true;
        break;
    }
  }
}

HomographicEngine::HomographicEngine(Homographic m, Stream x) : m_(std::move(m)), x_(std::move(x)) {}

void HomographicEngine::ingest() {
  if (x_done_) return;
  Item item = x_.at(xi_++);
  count_ingest();
  if (item.is_end()) {
    m_.ingest_inf();
    x_done_ = true;
  } else if (auto t = item.term()) {
    Interval next = tail_after_term(m_.ix, *t);
    m_.ingest(*t);
    m_.ix = next;
    if (next.is_point() && next.lo().is_pos_inf()) {
      m_.ingest_inf();
      x_done_ = true;
    }
  } else {
    m_.ix = intersect(m_.ix, item.bound());
  }
  if (tracing()) report("homographic", "ingest", item.str(), m_.str());
}

Item HomographicEngine::next() {
  for (;;) {
    if (pending_ingest_) {
      ingest();
      pending_ingest_ = false;
    }
    if (m_.is_infinite()) {
      if (policy_.first_position()) throw DivisionByZero();
      if (tracing()) report("homographic", "end", "inf", m_.str());
      return Item::terminal();
    }
    auto d = policy_.decide(h_range(m_));
    switch (d.action) {
      case OutputPolicy::Action::Term:
        m_.produce(d.term);
        policy_.advance_position(d.term);
        count_produce();
        if (tracing()) report("homographic", "produce", d.term.get_str(), m_.str());
        return Item::term(d.term);
      case OutputPolicy::Action::Emit:
        pending_ingest_ = true;
        if (tracing()) report("homographic", "emit", d.bound.str(), m_.str());
        return Item(d.bound);
      case OutputPolicy::Action::Hold:
        if (x_done_) throw ValidityViolation("constant map with undecided range " + m_.str());
        pending_ingest_ = true;
        break;
    }
  }
}

}  // namespace cfr::detail

namespace cfr {

Stream h_apply(const Homographic& m, Stream x) {
  if (m.det() == 0) throw std::invalid_argument("singular homographic map " + m.str());
  Homographic start = m;
  start.ix = Interval::full();
  start.normalize();
  return Stream(std::make_unique<detail::EngineGenerator<detail::HomographicEngine>>(
      detail::HomographicEngine(std::move(start), std::move(x))));
}

Stream arith(Stream x, Stream y, const Bihomographic& m0) {
  Bihomographic start = m0;
  start.ix = Interval::full();
  start.iy = Interval::full();
  start.normalize();
  if (start.is_zero()) throw std::invalid_argument("zero bihomographic map");
  if (start.is_infinite()) throw DivisionByZero("map with zero denominator " + start.str());
  if (auto c = start.constant_value()) return cf_from_rational(*c);
  return Stream(std::make_unique<detail::EngineGenerator<detail::BihomographicEngine>>(
      detail::BihomographicEngine(std::move(start), std::move(x), std::move(y))));
}

Stream add(Stream x, Stream y) { return arith(std::move(x), std::move(y), Bihomographic::of(0, 1, 1, 0, 0, 0, 0, 1)); }
Stream sub(Stream x, Stream y) { return arith(std::move(x), std::move(y), Bihomographic::of(0, 1, -1, 0, 0, 0, 0, 1)); }
Stream mul(Stream x, Stream y) { return arith(std::move(x), std::move(y), Bihomographic::of(1, 0, 0, 0, 0, 0, 0, 1)); }
Stream div(Stream x, Stream y) { return arith(std::move(x), std::move(y), Bihomographic::of(0, 1, 0, 0, 0, 0, 1, 0)); }

}  // namespace cfr
