#include "cfreal/homographic.hpp"

#include <numeric>
#include <stdexcept>

#include "cfreal/errors.hpp"
#include "unit_map.hpp"

namespace cfr {

Homographic::Homographic(Integer p_, Integer q_, Integer r_, Integer s_, Interval ix_)
    : p(std::move(p_)), q(std::move(q_)), r(std::move(r_)), s(std::move(s_)), ix(std::move(ix_)) {}

Homographic Homographic::make(Integer p, Integer q, Integer r, Integer s) {
  Homographic m(std::move(p), std::move(q), std::move(r), std::move(s));
  if (m.det() == 0) throw std::invalid_argument("singular homographic map " + m.str());
  m.normalize();
  return m;
}

void Homographic::ingest(const Integer& k) {
  Integer np = k * p + q;
  Integer nr = k * r + s;
  q = std::move(p);
  s = std::move(r);
  p = std::move(np);
  r = std::move(nr);
  ix = Interval::tail();
  normalize();
}

void Homographic::ingest_inf() {
  if (p == 0 && r == 0) throw DivisionByZero("limit of " + str());
  q = std::move(p);
  s = std::move(r);
  p = 0;
  r = 0;
  normalize();
}

void Homographic::produce(const Integer& k) {
  Integer np = p - k * r;
  Integer nq = q - k * s;
  p = std::move(r);
  q = std::move(s);
  r = std::move(np);
  s = std::move(nq);
  normalize();
}

void Homographic::normalize() {
  Integer g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), r.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), s.get_mpz_t());
  if (g > 1) {
    mpz_divexact(p.get_mpz_t(), p.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(s.get_mpz_t(), s.get_mpz_t(), g.get_mpz_t());
  }
}

ExtRational Homographic::operator()(const Rational& x) const {
  Rational num = p * x + q;
  Rational den = r * x + s;
  if (den == 0) return num >= 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
  return ExtRational(Rational(num / den));
}

std::string Homographic::str() const {
  return "(" + p.get_str() + " " + q.get_str() + "; " + r.get_str() + " " + s.get_str() + ")";
}

Homographic h_ingest(const Integer& k, Homographic m) {
  m.ingest(k);
  return m;
}

Homographic h_ingest_inf(Homographic m) {
  m.ingest_inf();
  return m;
}

Homographic h_produce(const Integer& k, Homographic m) {
  m.produce(k);
  return m;
}

Interval h_range(const Homographic& m) {
  if (m.is_constant()) {
    if (m.s == 0) return Interval::full();
    return Interval::point(ExtRational::fraction(m.q, m.s));
  }
  auto map = detail::unit_map(m.ix);
  if (!map) return Interval::full();
  const auto& [alpha, beta, gamma, delta] = *map;
  return detail::corner_range({m.p * alpha + m.q * gamma, m.p * beta + m.q * delta},
                              {m.r * alpha + m.s * gamma, m.r * beta + m.s * delta});
}

}  // namespace cfr
