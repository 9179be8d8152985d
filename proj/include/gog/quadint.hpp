#pragma once
// Exact arithmetic in an imaginary quadratic ring Z[tau], tau^2 = p*tau + q.
//
// Elements are a + b*tau with 64-bit integer coordinates and checked arithmetic.
// The two rings used by the shipped matrix groups are tau^2 = -tau - 1 (Eisenstein,
// tau = primitive cube root of unity) and tau^2 = -1 (Gaussian). Any (p, q) with
// negative discriminant p^2 + 4q < 0 is accepted.

#include <string>

#include "gog/common.hpp"

namespace gog {

struct QuadRing {
  i64 p = 0;
  i64 q = -1;  // tau^2 = p*tau + q

  // Discriminant of the defining polynomial x^2 - p x - q.
  i64 disc() const { return checked_add(checked_mul(p, p), checked_mul(4, q)); }
  bool imaginary() const { return disc() < 0; }
  bool operator==(const QuadRing&) const = default;
};

struct QuadInt {
  i64 a = 0;
  i64 b = 0;  // value a + b*tau

  bool operator==(const QuadInt&) const = default;
  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }
};

inline QuadInt qi(i64 a, i64 b = 0) { return QuadInt{a, b}; }

inline QuadInt qadd(const QuadInt& x, const QuadInt& y) {
  return {checked_add(x.a, y.a), checked_add(x.b, y.b)};
}
inline QuadInt qsub(const QuadInt& x, const QuadInt& y) {
  return {checked_sub(x.a, y.a), checked_sub(x.b, y.b)};
}
inline QuadInt qneg(const QuadInt& x) { return {checked_neg(x.a), checked_neg(x.b)}; }

// (a1 + b1 t)(a2 + b2 t) = a1 a2 + q b1 b2 + (a1 b2 + a2 b1 + p b1 b2) t
inline QuadInt qmul(const QuadRing& R, const QuadInt& x, const QuadInt& y) {
  i64 bb = checked_mul(x.b, y.b);
  i64 a = checked_add(checked_mul(x.a, y.a), checked_mul(R.q, bb));
  i64 b = checked_add(checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.a)),
                      checked_mul(R.p, bb));
  return {a, b};
}

// Galois conjugate: tau -> p - tau.
inline QuadInt qconj(const QuadRing& R, const QuadInt& x) {
  return {checked_add(x.a, checked_mul(R.p, x.b)), checked_neg(x.b)};
}

// Field norm N(a + b tau) = a^2 + p a b - q b^2; positive definite when disc < 0.
inline i64 qnorm(const QuadRing& R, const QuadInt& x) {
  return checked_sub(checked_add(checked_mul(x.a, x.a), checked_mul(R.p, checked_mul(x.a, x.b))),
                     checked_mul(R.q, checked_mul(x.b, x.b)));
}

// Exact division by a rational integer if possible.
inline bool qdiv_int(const QuadInt& x, i64 d, QuadInt& out) {
  if (d == 0) return false;
  if (x.a % d != 0 || x.b % d != 0) return false;
  out = {x.a / d, x.b / d};
  return true;
}

inline std::string qi_to_string(const QuadInt& x) {
  if (x.b == 0) return std::to_string(x.a);
  std::string t = (x.b == 1) ? "t" : (x.b == -1 ? "-t" : std::to_string(x.b) + "t");
  if (x.a == 0) return t;
  if (x.b > 0) return std::to_string(x.a) + "+" + t;
  return std::to_string(x.a) + t;  // negative b carries its own sign
}

}  // namespace gog
