#pragma once

// Independent reference values: truncated power series evaluated in exact
// rationals, each with an explicit remainder bound, so every oracle returns a
// closed interval certain to contain the true value. Nothing here touches the
// continued-fraction machinery.

#include <gmpxx.h>

#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

struct Encl {
  Q lo, hi;
  Q width() const { return hi - lo; }
  Q mid() const { return (lo + hi) / 2; }
  bool contains(const Q& v) const { return lo <= v && v <= hi; }
};

inline Q qabs(const Q& v) { return v < 0 ? Q(-v) : v; }

inline Q pow10(int k) {
  Z p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
  return k < 0 ? Q(Z(1), p) : Q(p);
}

inline Q tolerance() { return pow10(-60); }

// Partial sums of an alternating series with terms shrinking to zero bracket
// the limit.
inline Encl atan_inv(long k, const Q& tol = tolerance()) {
  Q x(1, k), x2 = x * x, power = x, sum = 0;
  for (long j = 0;; ++j) {
    Q term = power / (2 * j + 1);
    if (term < tol) {
      Q next = term;
      return j % 2 == 0 ? Encl{sum, sum + next} : Encl{sum - next, sum};
    }
    sum += j % 2 == 0 ? term : Q(-term);
    power *= x2;
  }
}

inline Encl pi_within(const Q& tol) {
  Encl a = atan_inv(5, tol), b = atan_inv(239, tol);
  return Encl{16 * a.lo - 4 * b.hi, 16 * a.hi - 4 * b.lo};
}

inline Encl pi() {
  static const Encl value = pi_within(tolerance());
  return value;
}

// sum_{k<m} x^k/k! with |R| <= |x|^m/m! * 1/(1 - |x|/(m+1)) once m+1 > 2|x|.
inline Encl exp_taylor(const Q& x) {
  Q sum = 0, term = 1, ax = qabs(x);
  for (long k = 0;; ++k) {
    if (k + 1 > 2 * ax && qabs(term) < tolerance()) {
      Q bound = 2 * qabs(term);
      return {sum - bound, sum + bound};
    }
    sum += term;
    term = term * x / (k + 1);
  }
}

inline Encl exp(const Q& x) {
  if (x >= 0) return exp_taylor(x);
  Encl p = exp_taylor(-x);
  return {1 / p.hi, 1 / p.lo};
}

// atanh z = sum z^(2j+1)/(2j+1), remainder <= |z|^(2m+1) / ((2m+1)(1 - z^2)).
inline Encl atanh(const Q& z) {
  Q z2 = z * z, power = z, sum = 0;
  for (long j = 0;; ++j) {
    Q term = power / (2 * j + 1);
    if (qabs(term) < tolerance()) {
      Q bound = qabs(term) / (1 - z2);
      return {sum - bound, sum + bound};
    }
    sum += term;
    power *= z2;
  }
}

inline Encl log2() {
  static const Encl value = [] {
    Encl a = atanh(Q(1, 3));
    return Encl{2 * a.lo, 2 * a.hi};
  }();
  return value;
}

// log x = k log 2 + 2 atanh((y-1)/(y+1)), y = x/2^k in [2/3, 4/3].
inline Encl log(Q x) {
  if (x <= 0) throw std::domain_error("oracle log of nonpositive value");
  long k = 0;
  while (x > Q(4, 3)) { x /= 2; ++k; }
  while (x < Q(2, 3)) { x *= 2; --k; }
  Encl a = atanh((x - 1) / (x + 1));
  Encl l2 = log2();
  Q klo = k >= 0 ? k * l2.lo : k * l2.hi;
  Q khi = k >= 0 ? k * l2.hi : k * l2.lo;
  return {klo + 2 * a.lo, khi + 2 * a.hi};
}

// Lagrange remainder: |R| <= |x|^m / m! for both cos and sin.
inline Encl trig(const Q& x, bool sine) {
  Q sum = 0, power = 1, fact = 1, ax = qabs(x);
  Q apow = 1;
  for (long k = 0;; ++k) {
    if (k > 0) {
      power *= x;
      apow *= ax;
      fact *= k;
    }
    Q bound = apow / fact;
    if (k > 2 * ax + 2 && bound < tolerance()) return {sum - bound, sum + bound};
    if ((k % 2 == 1) == sine) {
      long idx = sine ? (k - 1) / 2 : k / 2;
      sum += idx % 2 == 0 ? power / fact : Q(-power / fact);
    }
  }
}

inline Encl cos(const Q& x) { return trig(x, false); }
inline Encl sin(const Q& x) { return trig(x, true); }

// Floor/ceiling square roots of a nonnegative rational at 10^-45 resolution.
inline Encl sqrt(const Q& v) {
  if (v < 0) throw std::domain_error("oracle sqrt of negative value");
  Z scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 45);
  Z num = v.get_num() * v.get_den() * scale * scale;
  Z root;
  mpz_sqrt(root.get_mpz_t(), num.get_mpz_t());
  Q lo(root, v.get_den() * scale);
  Q hi(Z(root + 1), v.get_den() * scale);
  lo.canonicalize();
  hi.canonicalize();
  if (root * root == num) hi = lo;
  return {lo, hi};
}

// Series with coefficients c_m = C(2m,m)/(4^m (2m+1)) <= 1, for |x| <= 3/4:
// the remainder after m terms is at most |x|^(2m+1) / (1 - x^2).
inline Encl arcsin_series(const Q& x) {
  Q x2 = x * x, power = x, coef = 1, sum = 0;
  for (long m = 0;; ++m) {
    Q bound = qabs(power) / (1 - x2);
    if (bound < tolerance()) return {sum - bound, sum + bound};
    sum += coef * power / (2 * m + 1);
    power *= x2;
    coef = coef * (2 * m + 1) / (2 * m + 2);
  }
}

// arcsin is increasing, so |x| > 3/4 uses pi/2 - arcsin(sqrt(1 - x^2)) with the
// square root enclosed from both sides.
inline Encl arcsin(const Q& x) {
  if (qabs(x) > 1) throw std::domain_error("oracle arcsin outside [-1, 1]");
  if (qabs(x) <= Q(3, 4)) return arcsin_series(x);
  Encl s = sqrt(1 - x * x);
  Encl a = arcsin_series(s.lo), b = arcsin_series(s.hi);
  Encl p = pi();
  Encl pos{p.lo / 2 - b.hi, p.hi / 2 - a.lo};
  if (x > 0) return pos;
  return {-pos.hi, -pos.lo};
}

// Floor of 10^digits * v, as a decimal string with a point.
inline std::string truncated_decimal(const Q& v, int digits) {
  Q scaled = v * pow10(digits);
  Z f;
  mpz_fdiv_q(f.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string s = f.get_str();
  while (static_cast<int>(s.size()) <= digits) s = "0" + s;
  return s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
}

// Truncated decimal expansion when the enclosure pins every digit.
inline std::string decimal(const Encl& e, int digits) {
  std::string a = truncated_decimal(e.lo, digits), b = truncated_decimal(e.hi, digits);
  if (a != b) throw std::runtime_error("oracle too coarse for " + std::to_string(digits) + " digits");
  return a;
}

// Uniform rational in [lo, hi] with the given denominator.
inline Q random_rational(std::mt19937_64& rng, const Q& lo, const Q& hi, long den) {
  Q span = (hi - lo) * den;
  Z steps;
  mpz_fdiv_q(steps.get_mpz_t(), span.get_num_mpz_t(), span.get_den_mpz_t());
  std::uniform_int_distribution<unsigned long> pick(0, steps.get_ui());
  Q v = lo + Q(Z(pick(rng)), Z(den));
  v.canonicalize();
  return v;
}

}  // namespace oracle
