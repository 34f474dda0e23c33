#include "cfreal/series.hpp"

#include <algorithm>

#include "cfreal/errors.hpp"
#include "cfreal/homographic.hpp"
#include "engine.hpp"

namespace cfr {
namespace {

class NestedGenerator final : public Generator {
 public:
  NestedGenerator(LevelFunction level, std::optional<Stream> w, long n)
      : level_fn_(std::move(level)), w_(std::move(w)), n_(n), level_(level_fn_(n)) {}

  Item next() override {
    if (lead_ < level_.leading_terms.size()) return Item::term(level_.leading_terms[lead_++]);
    // A point bound pins the rest of the level (w = 0, for instance); reading
    // the level below could never narrow it.
    if (level_.tail_bound.is_point() && level_.tail_bound.lo().finite()) {
      if (exact_.empty() && !done_) exact_ = rational_terms(level_.tail_bound.lo().value());
      if (exact_pos_ < exact_.size()) return Item::term(exact_[exact_pos_++]);
      done_ = true;
      return Item::terminal();
    }
    if (!engine_) {
      engine_.emplace(level_.matrix, w_, nested_eval(level_fn_, w_, n_ + 1));
      engine_->skip_terms(level_.leading_terms);
      // Each level must be able to answer with its hint alone, or a read of
      // the level below recurses without end. [a, a+1] would read as the
      // term a, which the closed bound does not justify.
      Interval hint = level_.tail_bound;
      if (hint.as_term()) hint = Interval(hint.lo(), hint.hi() + ExtRational(Rational(1, 16)));
      engine_->set_hint(hint);
      Rational ratio = (1 + level_.contraction) / 2;
      engine_->set_eager(ratio < Rational(1, 2) ? Rational(1, 2) : ratio);
    }
    return engine_->next();
  }

 private:
  LevelFunction level_fn_;
  std::optional<Stream> w_;
  long n_;
  SeriesLevel level_;
  std::size_t lead_ = 0;
  std::vector<Integer> exact_;
  std::size_t exact_pos_ = 0;
  bool done_ = false;
  std::optional<detail::BihomographicEngine> engine_;
};

class PatternGenerator final : public Generator {
 public:
  explicit PatternGenerator(std::function<Integer(std::size_t)> term) : term_(std::move(term)) {}
  Item next() override { return Item::term(term_(i_++)); }

 private:
  std::function<Integer(std::size_t)> term_;
  std::size_t i_ = 0;
};

// Squares go through the engine as x * y with independent factors, so a
// bound near 0 can dip below it. Levels in w = r^2 need w >= 0 to bound
// their output, so the leading bounds are clipped at 0.
class NonNegativeGenerator final : public Generator {
 public:
  explicit NonNegativeGenerator(Stream s) : s_(std::move(s)) {}
  Item next() override {
    Item item = s_.at(i_++);
    if (leading_ && !item.term() && !item.is_end()) {
      return Item(intersect(item.bound(), Interval(ExtRational(0), ExtRational::pos_inf())));
    }
    leading_ = false;
    return item;
  }

 private:
  Stream s_;
  std::size_t i_ = 0;
  bool leading_ = true;
};

Stream square(const Stream& s) { return Stream(std::make_unique<NonNegativeGenerator>(mul(s, s))); }

Integer pow3(const Integer& k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, k.get_ui());
  return r;
}

Stream negate(Stream s) { return h_apply(Homographic::make(-1, 0, 0, 1), std::move(s)); }
Stream reciprocal(Stream s) { return h_apply(Homographic::make(0, 1, 1, 0), std::move(s)); }
Stream shift(Stream s, const Rational& by) {
  return h_apply(Homographic::make(by.get_den(), by.get_num(), 0, by.get_den()), std::move(s));
}
Stream scale(Stream s, const Rational& by) {
  return h_apply(Homographic::make(by.get_num(), 0, 0, by.get_den()), std::move(s));
}
Stream constant(const Rational& v) { return cf_from_rational(v); }

// Pulls until `done` holds for the enclosure, the stream ends, or the cap is
// reached. Returns whether `done` (or exactness) was reached.
template <class Pred>
bool refine(Reader& r, Pred done, std::size_t cap) {
  while (!r.exact() && !done(r.enclosure())) {
    if (r.pulls() >= cap) return false;
    r.advance();
  }
  return true;
}

bool narrower_than(const Interval& i, const Rational& w) { return i.finite() && i.width().value() <= w; }

Rational abs_max(const Interval& i) {
  Rational lo = abs(i.lo().value()), hi = abs(i.hi().value());
  return lo > hi ? lo : hi;
}

Rational abs_min(const Interval& i) {
  if (i.lo().value() <= 0 && i.hi().value() >= 0) return 0;
  Rational lo = abs(i.lo().value()), hi = abs(i.hi().value());
  return lo < hi ? lo : hi;
}

Rational half_even_round(const Rational& v) { return Rational(floor_of(Rational(v + Rational(1, 2)))); }

}  // namespace

Stream nested_eval(LevelFunction level, std::optional<Stream> w, long start) {
  return Stream(std::make_unique<NestedGenerator>(std::move(level), std::move(w), start));
}

SeriesLevel exp_level(long n, const Interval& w_bounds) {
  Rational lo = w_bounds.lo().value();
  if (lo < 0) lo = 0;
  Integer c = ceil_of(w_bounds.hi().value());
  if (c < 0) c = 0;
  Rational top = Rational(pow3(c) - 1, n);
  top.canonicalize();
  Rational w_hi = w_bounds.hi().value() > 0 ? w_bounds.hi().value() : Rational(0);
  return {Bihomographic::of(1, 0, 0, n, 0, 0, 0, n), {},
          Interval(ExtRational(Rational(1 + lo / n)), ExtRational(Rational(1 + top))), Rational(w_hi / n)};
}

SeriesLevel log_level(long n, const Rational& ratio_bound) {
  Rational hi = 1 + Rational(2 * n - 1, 2 * n + 1) * ratio_bound;
  // w <= B / (1 + B).
  Rational c = Rational(2 * n - 1, 2 * n + 1) * ratio_bound / (1 + ratio_bound);
  return {Bihomographic::of(2 * n - 1, 0, 0, 2 * n + 1, 0, 0, 0, 2 * n + 1), {},
          Interval(ExtRational(1), ExtRational(hi)), c};
}

SeriesLevel cos_level(long n) {
  long k = 2 * n * (2 * n - 1);
  if (n == 1) {
    return {Bihomographic::of(-1, 0, 0, k, 0, 0, 0, k), {},
            Interval(ExtRational(Rational(1) - Rational(5, 2 * k)), ExtRational(1)), Rational(5, 2 * k)};
  }
  // 0 and 1 are the first terms of c_n; what remains is (1/c_n - 1)^-1.
  return {Bihomographic::of(-1, 0, 0, k, 1, 0, 0, 0), {0, 1},
          Interval(ExtRational(Rational(2 * k - 5, 5)), ExtRational::pos_inf()), Rational(5, 2 * k)};
}

Rational arcsin_coefficient(long m) {
  Integer binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * m, m);
  Integer four_m;
  mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
  Rational t(binom, four_m * (2 * m + 1));
  t.canonicalize();
  return t;
}

SeriesLevel arcsin_level(long n, const Rational& w_hi) {
  Integer u = Integer(2 * n - 1) * (2 * n - 1);
  Integer v = Integer(2 * n) * (2 * n + 1);
  Rational hi = 1 + Rational(4) * w_hi / (7 * arcsin_coefficient(n - 1));
  // The ratios t_k / t_{n-1} are at most 1, so a_n <= 1 / (1 - w) as well;
  // unlike the bound above it does not grow with n.
  if (w_hi < 1) hi = std::min(hi, Rational(1 / (1 - w_hi)));
  Rational c(u * w_hi.get_num(), v * w_hi.get_den());
  c.canonicalize();
  return {Bihomographic({u, 0, 0, v, 0, 0, 0, v}), {}, Interval(ExtRational(1), ExtRational(hi)), c};
}

SeriesLevel pi_level(long n) {
  Integer i = n;
  Integer c = i * (2 * i - 1);
  Integer den = 3 * (3 * i + 1) * (3 * i + 2);
  Integer d = den * (5 * i - 2);
  Rational lo(27 * i - 12, 5);
  Rational hi(675 * i - 216, 125);
  lo.canonicalize();
  hi.canonicalize();
  Rational k(c, den);
  k.canonicalize();
  return {Bihomographic({0, 0, c, d, 0, 0, 0, den}), {}, Interval(ExtRational(lo), ExtRational(hi)), k};
}

Stream pi_cf() {
  static const Stream pi = nested_eval(pi_level, std::nullopt, 1);
  return pi;
}

Stream e_cf() {
  static const Stream e = Stream(std::make_unique<PatternGenerator>([](std::size_t i) -> Integer {
    if (i == 0) return 2;
    std::size_t g = (i - 1) / 3;
    return (i - 1) % 3 == 1 ? Integer(2 * (g + 1)) : Integer(1);
  }));
  return e;
}

Stream sqrt_e_cf() {
  static const Stream s = Stream(std::make_unique<PatternGenerator>([](std::size_t i) -> Integer {
    if (i == 0) return 1;
    std::size_t g = (i - 1) / 3;
    return (i - 1) % 3 == 0 ? Integer(4 * g + 1) : Integer(1);
  }));
  return s;
}

Stream e_power(long n) {
  if (n == 0) return constant(1);
  if (n < 0) return reciprocal(e_power(-n));
  std::optional<Stream> result;
  Stream base = e_cf();
  for (long k = n;;) {
    if (k & 1) result = result ? mul(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    base = mul(base, base);
  }
  return *result;
}

Stream exp_series(Stream r, const Interval& r_bounds) {
  return nested_eval([r_bounds](long n) { return exp_level(n, r_bounds); }, std::move(r), 1);
}

Stream exp_cf(Stream x, std::size_t refine_cap) {
  Reader rx(x);
  if (!refine(rx, [](const Interval& i) { return narrower_than(i, Rational(1, 4)); }, refine_cap)) {
    throw IterationCapExceeded(refine_cap);
  }
  Interval xb = rx.enclosure();
  Rational xl = xb.lo().value(), xh = xb.hi().value();
  if (rx.exact() && xl == 0) return constant(1);
  // Any integer n with x - n certified in [0, 2) will do.
  Integer n = ceil_of(xh) - 1;
  if (n > xl) n = floor_of(xl);
  Rational rl = xl - n, rh = xh - n;
  Stream r = n == 0 ? x : shift(x, Rational(-n));
  bool use_sqrt_e = rl > Rational(1, 2);
  if (use_sqrt_e) {
    r = shift(r, Rational(-1, 2));
    rl -= Rational(1, 2);
    rh -= Rational(1, 2);
  }
  Stream result = exp_series(r, Interval(ExtRational(rl), ExtRational(rh)));
  if (use_sqrt_e) result = mul(result, sqrt_e_cf());
  if (n != 0) result = mul(result, e_power(n.get_si()));
  return result;
}

namespace {

Stream log_direct(Stream x, std::size_t refine_cap) {
  Stream z = h_apply(Homographic::make(1, -1, 1, 1), x);
  Stream w = square(z);
  Reader rw(w);
  bool ok = refine(
      rw,
      [](const Interval& i) {
        return i.hi().finite() && i.hi().value() < 1 && narrower_than(i, Rational(1, 16));
      },
      refine_cap);
  if (!ok) throw IterationCapExceeded(refine_cap);
  Rational w_hi = rw.enclosure().hi().value();
  if (w_hi < 0) w_hi = 0;
  Rational ratio = w_hi / (1 - w_hi);
  Stream g = nested_eval([ratio](long n) { return log_level(n, ratio); }, w, 1);
  return arith(z, g, Bihomographic::of(2, 0, 0, 0, 0, 0, 0, 1));
}

}  // namespace

Stream log_cf(Stream x, std::size_t refine_cap) {
  Reader rx(x);
  bool ok = refine(
      rx,
      [](const Interval& i) {
        if (i.hi().finite() && i.hi().value() <= 0) return true;
        return i.finite() && i.lo().value() > 0 && i.width().value() <= i.lo().value() / 4;
      },
      refine_cap);
  Interval xb = rx.enclosure();
  if (!ok) throw DomainError("log: cannot establish that the argument is positive");
  if (xb.hi().value() <= 0) throw DomainError("log of a nonpositive number");
  Rational lo = xb.lo().value(), hi = xb.hi().value();
  if (rx.exact() && lo == 1) return constant(0);
  if (hi < 1) return negate(log_cf(reciprocal(x), refine_cap));
  if (lo > Rational(11, 4)) {
    const Rational e_hi(2719, 1000);
    long k = 0;
    Rational p = e_hi;
    while (p <= lo) {
      ++k;
      p *= e_hi;
    }
    if (k > 0) {
      Stream reduced = div(x, e_power(k));
      return shift(log_direct(reduced, refine_cap), Rational(k));
    }
  }
  return log_direct(x, refine_cap);
}

namespace {

const Rational kCosLimit(79, 50);

Stream cos_direct(Stream r, std::size_t refine_cap) {
  Stream w = square(r);
  Reader rw(w);
  bool ok = refine(
      rw, [](const Interval& i) { return i.hi().finite() && i.hi().value() < Rational(5, 2); }, refine_cap);
  if (!ok) throw IterationCapExceeded(refine_cap);
  return nested_eval(cos_level, w, 1);
}

}  // namespace

Stream cos_cf(Stream x, std::size_t refine_cap) {
  Reader rx(x);
  if (!refine(rx, [](const Interval& i) { return narrower_than(i, Rational(1, 64)); }, refine_cap)) {
    throw IterationCapExceeded(refine_cap);
  }
  Interval xb = rx.enclosure();
  if (rx.exact() && xb.lo().value() == 0) return constant(1);
  if (abs_max(xb) <= kCosLimit) return cos_direct(x, refine_cap);

  Stream two_pi = scale(pi_cf(), Rational(2));
  Reader rq(div(x, two_pi));
  if (!refine(rq, [](const Interval& i) { return narrower_than(i, Rational(1, 64)); }, refine_cap)) {
    throw IterationCapExceeded(refine_cap);
  }
  Interval qb = rq.enclosure();
  Rational q = half_even_round((qb.lo().value() + qb.hi().value()) / 2);
  Stream r = q == 0 ? x : sub(x, scale(pi_cf(), 2 * q));

  Reader rr(r);
  if (!refine(rr, [](const Interval& i) { return narrower_than(i, Rational(1, 100)); }, refine_cap)) {
    throw IterationCapExceeded(refine_cap);
  }
  Interval rb = rr.enclosure();
  if (abs_max(rb) <= kCosLimit) return cos_direct(r, refine_cap);
  // pi/2 < |r| <= pi (plus slack): cos(r) = -cos(pi - |r|).
  if (rb.lo().value() > 0) return negate(cos_direct(sub(pi_cf(), r), refine_cap));
  if (rb.hi().value() < 0) return negate(cos_direct(add(pi_cf(), r), refine_cap));
  throw ValidityViolation("cos range reduction left an undecided sign");
}

Stream sin_cf(Stream x, std::size_t refine_cap) {
  Reader rx(x);
  for (int i = 0; i < 2 && rx.advance();) ++i;
  if (rx.exact() && rx.enclosure().lo().value() == 0) return constant(0);
  return cos_cf(sub(x, scale(pi_cf(), Rational(1, 2))), refine_cap);
}

Stream tan_cf(Stream x, std::size_t refine_cap) {
  return div(sin_cf(x, refine_cap), cos_cf(x, refine_cap));
}

namespace {

// |x| <= 3/4 from the certified bounds.
Stream arcsin_direct(Stream x, const Interval& x_bounds) {
  Rational m = abs_max(x_bounds);
  Rational w_hi = m * m;
  if (w_hi > 1) w_hi = 1;
  Stream w = square(x);
  Stream a = nested_eval([w_hi](long n) { return arcsin_level(n, w_hi); }, w, 1);
  return mul(x, a);
}

}  // namespace

Stream arcsin_cf(Stream x, std::size_t refine_cap) {
  Reader rx(x);
  const Rational direct_limit(3, 4);
  bool ok = refine(
      rx,
      [&](const Interval& i) {
        if (!narrower_than(i, Rational(1, 100))) return false;
        if (i.lo().value() > 1 || i.hi().value() < -1) return true;
        if (abs_max(i) <= direct_limit) return true;
        return i.lo().value() > -1 && i.hi().value() < 1;
      },
      refine_cap);
  Interval xb = rx.enclosure();
  if (!ok) throw DomainError("arcsin: cannot establish |x| <= 1");
  Rational lo = xb.lo().value(), hi = xb.hi().value();
  if (lo > 1 || hi < -1) throw DomainError("arcsin of a number outside [-1, 1]");
  Stream half_pi = scale(pi_cf(), Rational(1, 2));
  if (rx.exact()) {
    if (lo == 0) return constant(0);
    if (lo == 1) return half_pi;
    if (lo == -1) return negate(half_pi);
  }
  if (abs_max(xb) <= direct_limit) return arcsin_direct(x, xb);

  // |x| > 3/4: arcsin(x) = sign(x) (pi/2 - arcsin(sqrt(1 - x^2))), and
  // sqrt(1 - x^2) < 0.67.
  bool negative = hi < 0;
  Stream ax = negative ? negate(x) : x;
  Rational amin = abs_min(xb);
  Rational ymax2 = 1 - amin * amin;
  Stream y = sqrt_cf(h_apply(Homographic::make(-1, 1, 0, 1), square(ax)), refine_cap);
  Rational y_hi = ymax2 < Rational(9, 16) ? Rational(3, 4) : Rational(1);
  Stream t = sub(half_pi, arcsin_direct(y, Interval(ExtRational(0), ExtRational(y_hi))));
  return negative ? negate(t) : t;
}

Stream sqrt_cf(Stream x, std::size_t refine_cap) {
  return exp_cf(scale(log_cf(std::move(x), refine_cap), Rational(1, 2)), refine_cap);
}

}  // namespace cfr
