#pragma once
// Freely reduced words over k generators. Letters are nonzero ints: +i / -i is
// generator i (1-based) / its inverse. Words are kept reduced at all times.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "gog/common.hpp"

namespace gog {

struct FreeWord {
  std::vector<int> l;  // freely reduced letters

  bool operator==(const FreeWord&) const = default;
  bool empty() const { return l.empty(); }
  i64 size() const { return (i64)l.size(); }
};

inline void fw_push(FreeWord& w, int letter) {
  if (letter == 0) throw usage_error("zero letter");
  if (!w.l.empty() && w.l.back() == -letter)
    w.l.pop_back();
  else
    w.l.push_back(letter);
}

inline FreeWord fw_mul(const FreeWord& x, const FreeWord& y) {
  FreeWord r = x;
  for (int c : y.l) fw_push(r, c);
  return r;
}

inline FreeWord fw_inv(const FreeWord& x) {
  FreeWord r;
  r.l.reserve(x.l.size());
  for (auto it = x.l.rbegin(); it != x.l.rend(); ++it) r.l.push_back(-*it);
  return r;
}

inline FreeWord fw_pow(const FreeWord& x, i64 e) {
  FreeWord base = e < 0 ? fw_inv(x) : x;
  i64 n = e < 0 ? checked_neg(e) : e;
  FreeWord r;
  for (i64 i = 0; i < n; ++i) r = fw_mul(r, base);
  return r;
}

inline FreeWord fw_gen(int i, i64 e = 1) {
  FreeWord r;
  if (e >= 0)
    r.l.assign((size_t)e, i);
  else
    r.l.assign((size_t)(-e), -i);
  return r;
}

// Is w cyclically reduced (first and last letters not inverse)?
inline bool fw_cyclically_reduced(const FreeWord& w) {
  return w.l.size() < 2 || w.l.front() != -w.l.back();
}

// Write w = u * core * u^-1 with core cyclically reduced. Returns (core, u).
inline std::pair<FreeWord, FreeWord> fw_cyclic_core(const FreeWord& w) {
  size_t i = 0, j = w.l.size();
  while (j - i >= 2 && w.l[i] == -w.l[j - 1]) {
    ++i;
    --j;
  }
  FreeWord core, u;
  core.l.assign(w.l.begin() + (long)i, w.l.begin() + (long)j);
  u.l.assign(w.l.begin(), w.l.begin() + (long)i);
  return {core, u};
}

// Largest E with w = r^E in the free group; returns (r, E). For the empty word
// returns (empty, 0). Uses the cyclic core: roots of u c u^-1 are u (root of c) u^-1,
// and for cyclically reduced c the power is letter-wise concatenation, so E is the
// largest divisor count with c equal to its length/E-prefix repeated.
inline std::pair<FreeWord, i64> fw_primitive_root(const FreeWord& w) {
  if (w.empty()) return {FreeWord{}, 0};
  auto [core, u] = fw_cyclic_core(w);
  size_t n = core.l.size();
  size_t period = n;
  for (size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (size_t i = p; i < n && ok; ++i) ok = core.l[i] == core.l[i - p];
    if (ok) {
      period = p;
      break;
    }
  }
  FreeWord root;
  root.l.assign(core.l.begin(), core.l.begin() + (long)period);
  FreeWord conj_root = fw_mul(fw_mul(u, root), fw_inv(u));
  return {conj_root, (i64)(n / period)};
}

// If cyclically reduced `a` equals rotation of cyclically reduced `b` by k letters
// (i.e. a = p^-1 b p with p = prefix_k(b)), return k.
inline std::optional<size_t> fw_rotation_of(const FreeWord& a, const FreeWord& b) {
  if (a.l.size() != b.l.size()) return std::nullopt;
  size_t n = b.l.size();
  if (n == 0) return 0;
  for (size_t k = 0; k < n; ++k) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = a.l[i] == b.l[(i + k) % n];
    if (ok) return k;
  }
  return std::nullopt;
}

inline FreeWord fw_prefix(const FreeWord& w, size_t k) {
  FreeWord r;
  r.l.assign(w.l.begin(), w.l.begin() + (long)std::min(k, w.l.size()));
  return r;
}

// Render with generator names; exponents folded (x1^3 x2^-2 ...).
inline std::string fw_to_string(const FreeWord& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  size_t i = 0;
  while (i < w.l.size()) {
    int letter = w.l[i];
    size_t j = i;
    while (j < w.l.size() && w.l[j] == letter) ++j;
    i64 e = (i64)(j - i) * (letter > 0 ? 1 : -1);
    int idx = letter > 0 ? letter - 1 : -letter - 1;
    if (!out.empty()) out += " ";
    out += (idx < (int)names.size()) ? names[(size_t)idx] : ("g" + std::to_string(idx + 1));
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

}  // namespace gog
