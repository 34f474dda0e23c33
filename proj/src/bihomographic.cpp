#include "cfreal/bihomographic.hpp"

#include "cfreal/errors.hpp"
#include "unit_map.hpp"

namespace cfr {
namespace {

// Whether slope * v + offset can be zero for some v in the closed bound.
bool linear_may_vanish(const Integer& slope, const Integer& offset, const Interval& bound) {
  if (slope == 0) return offset == 0;
  auto sign_at = [&](const ExtRational& v) {
    if (!v.finite()) return v.sign() * sgn(slope);
    return sgn(Rational(slope * v.value() + offset));
  };
  int s_lo = sign_at(bound.lo());
  int s_hi = sign_at(bound.hi());
  return s_lo == 0 || s_hi == 0 || s_lo != s_hi;
}

}  // namespace

Bihomographic::Bihomographic() : m{0, 0, 0, 0, 0, 0, 0, 1} {}

Bihomographic::Bihomographic(std::array<Integer, 8> entries, Interval ix_, Interval iy_)
    : m(std::move(entries)), ix(std::move(ix_)), iy(std::move(iy_)) {}

Bihomographic Bihomographic::of(long a, long b, long c, long d, long e, long f, long g, long h) {
  return Bihomographic({a, b, c, d, e, f, g, h});
}

bool Bihomographic::is_zero() const {
  for (const auto& v : m) {
    if (v != 0) return false;
  }
  return true;
}

bool Bihomographic::is_infinite() const {
  return e() == 0 && f() == 0 && g() == 0 && h() == 0 && (a() != 0 || b() != 0 || c() != 0 || d() != 0);
}

std::optional<Rational> Bihomographic::constant_value() const {
  int pivot = -1;
  for (int i = 4; i < 8; ++i) {
    if (m[i] != 0) {
      pivot = i;
      break;
    }
  }
  if (pivot < 0) return std::nullopt;
  for (int i = 0; i < 4; ++i) {
    if (m[i] * m[pivot] != m[pivot - 4] * m[i + 4]) return std::nullopt;
  }
  Rational v(m[pivot - 4], m[pivot]);
  v.canonicalize();
  return v;
}

void Bihomographic::ingest_x(const Integer& s) {
  auto& [a, b, c, d, e, f, g, h] = m;
  Integer na = s * a + c, nb = s * b + d, ne = s * e + g, nf = s * f + h;
  c = std::move(a);
  d = std::move(b);
  g = std::move(e);
  h = std::move(f);
  a = std::move(na);
  b = std::move(nb);
  e = std::move(ne);
  f = std::move(nf);
  ix = Interval::tail();
  normalize();
}

void Bihomographic::ingest_y(const Integer& s) {
  auto& [a, b, c, d, e, f, g, h] = m;
  Integer na = s * a + b, nc = s * c + d, ne = s * e + f, ng = s * g + h;
  b = std::move(a);
  d = std::move(c);
  f = std::move(e);
  h = std::move(g);
  a = std::move(na);
  c = std::move(nc);
  e = std::move(ne);
  g = std::move(ng);
  iy = Interval::tail();
  normalize();
}

void Bihomographic::ingest_x_inf() {
  auto& [a, b, c, d, e, f, g, h] = m;
  bool num = a != 0 || b != 0;
  bool den = e != 0 || f != 0;
  if (num && den) {
    m = {0, 0, a, b, 0, 0, e, f};
  } else if (num) {
    if (linear_may_vanish(g, h, iy)) throw DivisionByZero("anomalous limit of " + str() + " as x -> inf");
    m = {0, 0, 0, 1, 0, 0, 0, 0};
  } else if (den) {
    m = {0, 0, 0, 0, 0, 0, 0, 1};
  }
  normalize();
}

void Bihomographic::ingest_y_inf() {
  auto& [a, b, c, d, e, f, g, h] = m;
  bool num = a != 0 || c != 0;
  bool den = e != 0 || g != 0;
  if (num && den) {
    m = {0, a, 0, c, 0, e, 0, g};
  } else if (num) {
    if (linear_may_vanish(f, h, ix)) throw DivisionByZero("anomalous limit of " + str() + " as y -> inf");
    m = {0, 0, 0, 1, 0, 0, 0, 0};
  } else if (den) {
    m = {0, 0, 0, 0, 0, 0, 0, 1};
  }
  normalize();
}

void Bihomographic::produce(const Integer& k) {
  for (int i = 0; i < 4; ++i) {
    Integer top = m[i] - k * m[i + 4];
    m[i] = std::move(m[i + 4]);
    m[i + 4] = std::move(top);
  }
  normalize();
}

void Bihomographic::normalize() {
  Integer g = 0;
  for (const auto& v : m) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& v : m) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

ExtRational Bihomographic::operator()(const Rational& x, const Rational& y) const {
  Rational num = a() * x * y + b() * x + c() * y + d();
  Rational den = e() * x * y + f() * x + g() * y + h();
  if (den == 0) return num >= 0 ? ExtRational::pos_inf() : ExtRational::neg_inf();
  return ExtRational(Rational(num / den));
}

std::string Bihomographic::str() const {
  std::string out = "(";
  for (int i = 0; i < 8; ++i) {
    if (i == 4) out += "; ";
    else if (i > 0) out += " ";
    out += m[i].get_str();
  }
  return out + ")";
}

Bihomographic b_ingest_x(const Integer& s, Bihomographic m) {
  m.ingest_x(s);
  return m;
}

Bihomographic b_ingest_y(const Integer& s, Bihomographic m) {
  m.ingest_y(s);
  return m;
}

Bihomographic b_ingest_x_inf(Bihomographic m) {
  m.ingest_x_inf();
  return m;
}

Bihomographic b_ingest_y_inf(Bihomographic m) {
  m.ingest_y_inf();
  return m;
}

Bihomographic b_produce(const Integer& k, Bihomographic m) {
  m.produce(k);
  return m;
}

Interval rho(const Bihomographic& mat) {
  std::optional<detail::UnitMap> mx = detail::unit_map(mat.ix);
  std::optional<detail::UnitMap> my = detail::unit_map(mat.iy);
  if (!mx) {
    if (mat.depends_on_x()) return Interval::full();
    mx = detail::constant_map();
  }
  if (!my) {
    if (mat.depends_on_y()) return Interval::full();
    my = detail::constant_map();
  }
  // Corner order: (x' -> inf, y' -> inf), (inf, 0), (0, inf), (0, 0).
  const Integer* xs[2][2] = {{&mx->alpha, &mx->gamma}, {&mx->beta, &mx->delta}};
  const Integer* ys[2][2] = {{&my->alpha, &my->gamma}, {&my->beta, &my->delta}};
  std::vector<Integer> num, den;
  num.reserve(4);
  den.reserve(4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Integer& xn = *xs[i][0];
      const Integer& xd = *xs[i][1];
      const Integer& yn = *ys[j][0];
      const Integer& yd = *ys[j][1];
      Integer nn = xn * yn, nd = xn * yd, dn = xd * yn, dd = xd * yd;
      num.push_back(mat.a() * nn + mat.b() * nd + mat.c() * dn + mat.d() * dd);
      den.push_back(mat.e() * nn + mat.f() * nd + mat.g() * dn + mat.h() * dd);
    }
  }
  return detail::corner_range(num, den);
}

}  // namespace cfr
