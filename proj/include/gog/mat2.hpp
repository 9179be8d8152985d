#pragma once
// 2x2 matrices over i64 (edge gluings, lattice coordinates) and over QuadInt
// (Kleinian vertex groups), with exact integer lattice solving.

#include <array>
#include <optional>
#include <string>
#include <utility>

#include "gog/quadint.hpp"

namespace gog {

// ----- integer 2x2 -----

struct Mat2z {
  // [[a, b], [c, d]]
  i64 a = 1, b = 0, c = 0, d = 1;

  bool operator==(const Mat2z&) const = default;
  i64 det() const { return checked_sub(checked_mul(a, d), checked_mul(b, c)); }
  bool unimodular() const {
    i64 dt = det();
    return dt == 1 || dt == -1;
  }
};

inline Mat2z mz_mul(const Mat2z& x, const Mat2z& y) {
  return {checked_add(checked_mul(x.a, y.a), checked_mul(x.b, y.c)),
          checked_add(checked_mul(x.a, y.b), checked_mul(x.b, y.d)),
          checked_add(checked_mul(x.c, y.a), checked_mul(x.d, y.c)),
          checked_add(checked_mul(x.c, y.b), checked_mul(x.d, y.d))};
}

struct Vec2z {
  i64 m = 0, n = 0;
  bool operator==(const Vec2z&) const = default;
};

inline Vec2z mz_apply(const Mat2z& M, const Vec2z& v) {
  return {checked_add(checked_mul(M.a, v.m), checked_mul(M.b, v.n)),
          checked_add(checked_mul(M.c, v.m), checked_mul(M.d, v.n))};
}

// Solve M x = v over the integers (M with det != 0). Cramer + divisibility check.
inline std::optional<Vec2z> mz_solve(const Mat2z& M, const Vec2z& v) {
  i64 dt = M.det();
  if (dt == 0) return std::nullopt;
  i64 xm = checked_sub(checked_mul(v.m, M.d), checked_mul(M.b, v.n));
  i64 xn = checked_sub(checked_mul(M.a, v.n), checked_mul(v.m, M.c));
  if (xm % dt != 0 || xn % dt != 0) return std::nullopt;
  return Vec2z{xm / dt, xn / dt};
}

// Inverse of a unimodular integer matrix.
inline Mat2z mz_inv_unimodular(const Mat2z& M) {
  i64 dt = M.det();
  if (dt == 1) return {M.d, checked_neg(M.b), checked_neg(M.c), M.a};
  if (dt == -1) return {checked_neg(M.d), M.b, M.c, checked_neg(M.a)};
  throw usage_error("matrix inverse requires det ±1");
}

inline std::string mz_to_string(const Mat2z& M) {
  return "[[" + std::to_string(M.a) + "," + std::to_string(M.b) + "],[" + std::to_string(M.c) +
         "," + std::to_string(M.d) + "]]";
}

// ----- QuadInt 2x2 -----

struct Mat2q {
  QuadInt a, b, c, d;  // [[a, b], [c, d]]
  bool operator==(const Mat2q&) const = default;
};

inline Mat2q mq_id() { return {qi(1), qi(0), qi(0), qi(1)}; }

inline Mat2q mq_mul(const QuadRing& R, const Mat2q& x, const Mat2q& y) {
  return {qadd(qmul(R, x.a, y.a), qmul(R, x.b, y.c)), qadd(qmul(R, x.a, y.b), qmul(R, x.b, y.d)),
          qadd(qmul(R, x.c, y.a), qmul(R, x.d, y.c)), qadd(qmul(R, x.c, y.b), qmul(R, x.d, y.d))};
}

inline QuadInt mq_det(const QuadRing& R, const Mat2q& m) {
  return qsub(qmul(R, m.a, m.d), qmul(R, m.b, m.c));
}

inline QuadInt mq_trace(const Mat2q& m) { return qadd(m.a, m.d); }

// Inverse of a det-1 matrix.
inline Mat2q mq_inv_det1(const Mat2q& m) { return {m.d, qneg(m.b), qneg(m.c), m.a}; }

inline Mat2q mq_neg(const Mat2q& m) { return {qneg(m.a), qneg(m.b), qneg(m.c), qneg(m.d)}; }

inline bool mq_is_id(const Mat2q& m) { return m == mq_id(); }
inline bool mq_is_neg_id(const Mat2q& m) { return m == mq_neg(mq_id()); }

inline Mat2q mq_pow(const QuadRing& R, Mat2q base, i64 e) {
  if (e < 0) {
    base = mq_inv_det1(base);
    e = checked_neg(e);
  }
  Mat2q acc = mq_id();
  while (e > 0) {
    if (e & 1) acc = mq_mul(R, acc, base);
    base = (e > 1) ? mq_mul(R, base, base) : base;
    e >>= 1;
  }
  return acc;
}

// Size measure used to bound root searches: total coordinate magnitude.
inline i64 mq_size(const Mat2q& m) {
  i64 s = 0;
  for (const QuadInt* e : {&m.a, &m.b, &m.c, &m.d}) {
    s = checked_add(s, abs_i64(e->a));
    s = checked_add(s, abs_i64(e->b));
  }
  return s;
}

inline std::string mq_to_string(const Mat2q& m) {
  return "[[" + qi_to_string(m.a) + "," + qi_to_string(m.b) + "],[" + qi_to_string(m.c) + "," +
         qi_to_string(m.d) + "]]";
}

}  // namespace gog
