#pragma once
// Shared plumbing: checked 64-bit integer arithmetic, error types, search budgets.
//
// All arithmetic in this library is exact. Overflow is a hard error (thrown), never
// silent wraparound: results are used as mathematical certificates.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gog {

using i64 = std::int64_t;

class gog_error : public std::runtime_error {
 public:
  explicit gog_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arithmetic overflow of a checked i64 operation.
class overflow_error : public gog_error {
 public:
  explicit overflow_error(const std::string& msg) : gog_error("overflow: " + msg) {}
};

// Violated operation precondition (identity element where non-trivial required, ...).
class precondition_error : public gog_error {
 public:
  explicit precondition_error(const std::string& msg) : gog_error("precondition: " + msg) {}
};

// A bounded search ran out of its work budget before reaching an answer.
class budget_error : public gog_error {
 public:
  explicit budget_error(const std::string& msg) : gog_error("budget exhausted: " + msg) {}
};

// Structural misuse (mixing elements of different vertex groups, bad torus id, ...).
class usage_error : public gog_error {
 public:
  explicit usage_error(const std::string& msg) : gog_error("usage: " + msg) {}
};

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error("i64 add");
  return r;
}
inline i64 checked_sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error("i64 sub");
  return r;
}
inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error("i64 mul");
  return r;
}
inline i64 checked_neg(i64 a) { return checked_sub(0, a); }

inline i64 abs_i64(i64 a) {
  if (a == INT64_MIN) throw overflow_error("abs(INT64_MIN)");
  return a < 0 ? -a : a;
}

inline i64 gcd_i64(i64 a, i64 b) {
  a = abs_i64(a);
  b = abs_i64(b);
  while (b != 0) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
struct ExtGcd {
  i64 g, x, y;
};
inline ExtGcd ext_gcd(i64 a, i64 b) {
  if (b == 0) {
    if (a < 0) return {-a, -1, 0};
    return {a, 1, 0};
  }
  ExtGcd sub = ext_gcd(b, a % b);
  return {sub.g, sub.y, checked_sub(sub.x, checked_mul(a / b, sub.y))};
}

// Floor division / positive modulus for normal forms.
inline i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline i64 pos_mod(i64 a, i64 b) {
  i64 r = a % b;
  if (r < 0) r += (b < 0 ? -b : b);
  return r;
}

// Cooperative work budget for bounded searches. tick() throws once the node
// budget is exhausted; callers that prefer flags over exceptions catch it at
// the search boundary and record an exhaustion flag instead.
struct WorkBudget {
  std::uint64_t limit = 50'000'000;  // enumeration nodes
  std::uint64_t used = 0;
  int word_ball = 6;  // word-length radius for Kleinian conjugator/root searches

  void tick(std::uint64_t n = 1) {
    used += n;
    if (used > limit) throw budget_error("work budget");
  }
  bool spent() const { return used > limit; }
};

// Accumulated honesty flags: non-fatal incompleteness notes attached to results
// ("kleinian root search bounded by ball 6", ...). Empty means fully verified.
using Flags = std::vector<std::string>;

inline void add_flag(Flags& fl, const std::string& s) {
  for (auto& f : fl)
    if (f == s) return;
  fl.push_back(s);
}

}  // namespace gog
