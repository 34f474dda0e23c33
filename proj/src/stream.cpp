#include "cfreal/stream.hpp"

#include "cfreal/errors.hpp"

#include <algorithm>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace cfr {

struct Stream::Node {
  std::mutex mutex;
  std::vector<Item> memo;
  std::unique_ptr<Generator> gen;
  std::exception_ptr failure;
  bool ended = false;
};

Stream::Stream(std::unique_ptr<Generator> gen) : node_(std::make_shared<Node>()) {
  node_->gen = std::move(gen);
}

Item Stream::at(std::size_t i) const {
  std::lock_guard lock(node_->mutex);
  auto& n = *node_;
  while (n.memo.size() <= i && !n.ended) {
    if (n.failure) std::rethrow_exception(n.failure);
    try {
      Item item = n.gen->next();
      n.memo.push_back(item);
      if (item.is_end()) {
        n.ended = true;
        n.gen.reset();
      }
    } catch (...) {
      n.failure = std::current_exception();
      throw;
    }
  }
  if (i < n.memo.size()) return n.memo[i];
  return Item::terminal();
}

std::vector<Item> Stream::prefix(std::size_t n) const {
  std::vector<Item> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(at(i));
    if (out.back().is_end()) break;
  }
  return out;
}

std::size_t Stream::generated() const {
  std::lock_guard lock(node_->mutex);
  return node_->memo.size();
}

namespace {

class TermsGenerator final : public Generator {
 public:
  TermsGenerator(std::vector<Integer> head, std::vector<Integer> period)
      : head_(std::move(head)), period_(std::move(period)) {}

  Item next() override {
    if (i_ < head_.size()) return Item::term(head_[i_++]);
    if (period_.empty()) return Item::terminal();
    Item t = Item::term(period_[j_]);
    j_ = (j_ + 1) % period_.size();
    return t;
  }

 private:
  std::vector<Integer> head_;
  std::vector<Integer> period_;
  std::size_t i_ = 0;
  std::size_t j_ = 0;
};

}  // namespace

Stream cf_from_terms(const Integer& a0, std::vector<Integer> rest,
                     std::optional<std::vector<Integer>> period) {
  for (const auto& t : rest) {
    if (t < 1) throw std::invalid_argument("terms after the first must be >= 1");
  }
  if (period) {
    if (period->empty()) throw std::invalid_argument("empty period");
    for (const auto& t : *period) {
      if (t < 1) throw std::invalid_argument("periodic terms must be >= 1");
    }
  }
  rest.insert(rest.begin(), a0);
  return Stream(std::make_unique<TermsGenerator>(std::move(rest), period.value_or(std::vector<Integer>{})));
}

std::vector<Integer> rational_terms(Rational v) {
  v.canonicalize();
  std::vector<Integer> terms;
  Integer p = v.get_num();
  Integer q = v.get_den();
  while (q != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Integer r = p - a * q;
    terms.push_back(a);
    p = q;
    q = r;
  }
  return terms;
}

Stream cf_from_rational(const Rational& v) {
  return Stream(std::make_unique<TermsGenerator>(rational_terms(v), std::vector<Integer>{}));
}

Stream cf_from_rational(const Integer& p, const Integer& q) {
  if (q <= 0) throw std::invalid_argument("denominator must be positive");
  return cf_from_rational(Rational(p, q));
}

bool validate_prefix(std::span<const Item> items) {
  bool first_position = true;
  bool ended = false;
  std::optional<Interval> prev;
  for (const Item& item : items) {
    if (ended) return false;
    if (item.is_end()) {
      if (first_position) return false;
      if (prev && !prev->hi().is_pos_inf()) return false;
      ended = true;
      continue;
    }
    if (auto a = item.term()) {
      if (!first_position && *a < 1) return false;
      if (prev) {
        ExtRational lo(*a);
        ExtRational hi(Integer(*a + 1));
        if (!(lo <= prev->hi() && prev->lo() < hi)) return false;
      }
      first_position = false;
      prev.reset();
      continue;
    }
    const Interval& b = item.bound();
    if (b.is_point()) return false;
    if (!first_position && b.lo() < ExtRational(1)) return false;
    if (prev && !b.subset_of(*prev)) return false;
    prev = b;
  }
  return true;
}

Reader::Reader(Stream s) : stream_(std::move(s)) {}

Interval tail_after_term(const Interval& bound, const Integer& a) {
  ExtRational lo = std::max(bound.lo(), ExtRational(a));
  ExtRational hi = std::min(bound.hi(), ExtRational(Integer(a + 1)));
  if (lo > hi) throw ValidityViolation("term " + a.get_str() + " outside bound " + bound.str());
  ExtRational shift(Rational(-a));
  return Interval((hi + shift).reciprocal(), (lo + shift).reciprocal());
}

bool Reader::advance() {
  if (ended_) return false;
  Item item = stream_.at(pulls_++);
  last_ = item;
  if (item.is_end()) {
    ended_ = true;
    tail_ = Interval::point(ExtRational::pos_inf());
  } else if (auto a = item.term()) {
    Integer h = *a * h1_ + h0_;
    Integer k = *a * k1_ + k0_;
    h0_ = std::move(h1_);
    k0_ = std::move(k1_);
    h1_ = std::move(h);
    k1_ = std::move(k);
    terms_.push_back(*a);
    tail_ = tail_after_term(tail_, *a);
  } else {
    tail_ = intersect(tail_, item.bound());
  }
  return true;
}

ExtRational Reader::value_at(const ExtRational& t) const {
  if (t.finite()) {
    Rational num = h1_ * t.value() + h0_;
    Rational den = k1_ * t.value() + k0_;
    if (den == 0) return num > 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
    return ExtRational(Rational(num / den));
  }
  if (k1_ == 0) return t.sign() * sgn(h1_) > 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
  return ExtRational::fraction(h1_, k1_);
}

Interval Reader::enclosure() const {
  if (ended_) return Interval::point(value_at(ExtRational::pos_inf()));
  ExtRational a = value_at(tail_.lo());
  ExtRational b = value_at(tail_.hi());
  return a <= b ? Interval(a, b) : Interval(b, a);
}

}  // namespace cfr
