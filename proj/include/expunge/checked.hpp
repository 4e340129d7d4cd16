#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "expunge/errors.hpp"

namespace expunge {

using Int = std::int64_t;

[[noreturn]] inline void overflow(const char* what) {
  throw Error(ErrorCode::Overflow, std::string("integer overflow in ") + what);
}

inline Int add(Int a, Int b) {
  Int out;
  if (__builtin_add_overflow(a, b, &out)) overflow("addition");
  return out;
}

inline Int sub(Int a, Int b) {
  Int out;
  if (__builtin_sub_overflow(a, b, &out)) overflow("subtraction");
  return out;
}

inline Int mul(Int a, Int b) {
  Int out;
  if (__builtin_mul_overflow(a, b, &out)) overflow("multiplication");
  return out;
}

inline Int ipow(Int base, Int exp) {
  Int out = 1;
  for (Int i = 0; i < exp; ++i) out = mul(out, base);
  return out;
}

/// Exact C(n, k); zero when k is outside [0, n].
inline Int binomial(Int n, Int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int out = 1;
  for (Int i = 1; i <= k; ++i) {
    Int num = n - k + i;
    Int g = std::gcd(out, i);
    Int o = out / g;
    Int den = i / g;
    out = mul(o, num / den);
  }
  return out;
}

}  // namespace expunge
