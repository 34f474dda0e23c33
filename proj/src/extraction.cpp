#include "cfreal/extraction.hpp"

#include "json.hpp"

#include "cfreal/errors.hpp"
#include "cfreal/homographic.hpp"

namespace cfr {

ExtRational eval_prefix_with_tail(const std::vector<Integer>& terms, const ExtRational& tail) {
  ExtRational v = tail;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) v = ExtRational(Rational(*it)) + v.reciprocal();
  return v;
}

namespace {

void pull(Reader& r, std::size_t cap) {
  if (r.pulls() >= cap) throw IterationCapExceeded(cap);
  r.advance();
}

TermPrefix snapshot(const Reader& r) {
  TermPrefix p;
  p.certified = r.terms();
  p.exact = r.exact();
  p.tail = p.exact ? Interval::point(ExtRational::pos_inf()) : r.tail();
  p.enclosure = r.enclosure();
  p.pulls = r.pulls();
  p.terms = p.certified;
  if (!p.exact && p.tail.hi().finite()) {
    Integer last = floor_of(p.tail.hi().value());
    // floor(u_k) can equal 0 only at position 0; a 1 merges into the term
    // before it.
    if (last == 1 && !p.terms.empty()) {
      p.terms.back() += 1;
    } else {
      p.terms.push_back(last);
    }
  }
  return p;
}

}  // namespace

TermPrefix approximate(const Stream& z, const Rational& eps, std::size_t cap) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Reader r(z);
  while (!r.exact()) {
    Interval e = r.enclosure();
    if (e.finite() && e.width().value() <= eps) break;
    pull(r, cap);
  }
  return snapshot(r);
}

TermPrefix leading_terms(const Stream& z, std::size_t count, std::size_t cap) {
  Reader r(z);
  while (!r.exact() && r.terms().size() < count) pull(r, cap);
  TermPrefix p = snapshot(r);
  p.terms = p.certified;
  return p;
}

namespace {

// Fixed-point rendering of |v| rounded to `digits` places.
std::string rounded(const Rational& v, std::size_t digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  Rational a = abs(v);
  Integer n = floor_of(Rational(a * scale + Rational(1, 2)));
  std::string s = n.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = (v < 0 && n != 0) ? "-" : "";
  out += s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

struct DigitRun {
  enum class Outcome { Done, Negative, Fallback };
  Outcome outcome;
  std::string text;
  Rational midpoint;
};

DigitRun run_digits(const Stream& z, Homographic m, std::size_t digits, std::size_t cap, bool allow_negative) {
  Reader r(z);
  Integer ten_power;
  mpz_ui_pow_ui(ten_power.get_mpz_t(), 10, digits + 2);
  const Rational fallback_width(1, ten_power);
  std::string out;
  std::size_t emitted = 0;
  bool integer_done = false;
  while (true) {
    Interval range = h_range(m);
    auto d = range.finite() ? range.common_floor() : std::nullopt;
    if (d) {
      if (!integer_done) {
        if (*d < 0 && !allow_negative) return {DigitRun::Outcome::Negative, "", 0};
        out = d->get_str();
        integer_done = true;
        if (digits > 0) out += ".";
      } else {
        out += d->get_str();
        ++emitted;
      }
      if (emitted == digits) return {DigitRun::Outcome::Done, out, 0};
      // M <- 10 (M - d)
      m = Homographic{10 * (m.p - *d * m.r), 10 * (m.q - *d * m.s), m.r, m.s, m.ix};
      m.normalize();
      continue;
    }
    Interval e = r.enclosure();
    if (e.finite() && e.width().value() < fallback_width) {
      return {DigitRun::Outcome::Fallback, "", (e.lo().value() + e.hi().value()) / 2};
    }
    if (r.pulls() >= cap) throw IterationCapExceeded(cap);
    if (!r.advance()) continue;
    const Item& item = *r.last();
    if (item.is_end()) {
      m = h_ingest_inf(m);
    } else if (auto t = item.term()) {
      m = h_ingest(*t, m);
    } else {
      m.ix = item.bound();
    }
  }
}

}  // namespace

std::string to_decimal(const Stream& z, std::size_t digits, std::size_t cap) {
  DigitRun run = run_digits(z, Homographic::make(1, 0, 0, 1), digits, cap, false);
  if (run.outcome == DigitRun::Outcome::Negative) {
    run = run_digits(z, Homographic::make(-1, 0, 0, 1), digits, cap, true);
    // The fallback midpoint comes from the enclosure of z itself.
    if (run.outcome == DigitRun::Outcome::Done) return "-" + run.text;
  }
  if (run.outcome == DigitRun::Outcome::Done) return run.text;
  return rounded(run.midpoint, digits) + "~";
}

std::string to_json(const TermPrefix& p, const std::string& decimal) {
  nlohmann::json j;
  auto list = [](const std::vector<Integer>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& t : v) a.push_back(t.get_str());
    return a;
  };
  j["terms"] = list(p.certified);
  j["tail_lo"] = p.tail.lo().str();
  j["tail_hi"] = p.tail.hi().str();
  j["canonical"] = list(p.terms);
  j["enclosure_lo"] = p.enclosure.lo().str();
  j["enclosure_hi"] = p.enclosure.hi().str();
  if (!decimal.empty()) j["decimal"] = decimal;
  return j.dump();
}

}  // namespace cfr
