#pragma once

#include <vector>

#include "ptower/common.hpp"

namespace ptower {

// The coefficient ring Z/p^s. Elements are machine integers reduced to
// [0, p^s); p^s < 2^63 is enforced at construction.
struct RingCtx {
  i64 p = 0;
  int s = 0;
  u64 ps = 0;  // p^s

  RingCtx() = default;
  RingCtx(i64 prime, int prec);

  bool operator==(const RingCtx& o) const { return p == o.p && s == o.s; }
  bool operator!=(const RingCtx& o) const { return !(*this == o); }

  u64 reduce(i64 x) const {
    i64 r = x % (i64)ps;
    if (r < 0) r += (i64)ps;
    return (u64)r;
  }
  u64 add(u64 a, u64 b) const {
    u64 r = a + b;
    if (r >= ps) r -= ps;
    return r;
  }
  u64 sub(u64 a, u64 b) const { return b <= a ? a - b : a + ps - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : ps - a; }
  u64 mul(u64 a, u64 b) const { return (u64)((i128)a * b % ps); }

  // Largest e <= s with p^e | x; returns s for x = 0.
  int val(u64 x) const;

  // Unit part: x = p^val * unit. For x = 0 returns 1 by convention.
  u64 unit_part(u64 x) const;

  // p^e as a ring element, e in [0, s].
  u64 ppow(int e) const;

  // Inverse of a unit; throws NotAUnit if p | x.
  u64 inv_unit(u64 x) const;

  u64 pow(u64 a, u64 e) const;

  bool is_unit(u64 x) const { return x % (u64)p != 0; }
};

bool is_prime(i64 n);

}  // namespace ptower
