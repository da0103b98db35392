#include "ptower/ring.hpp"

namespace ptower {

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

RingCtx::RingCtx(i64 prime, int prec) : p(prime), s(prec) {
  check(is_prime(prime), "NotPrime", "p = " + std::to_string(prime));
  check(prec >= 1, "BadPrecision", "s must be >= 1");
  u64 acc = 1;
  for (int i = 0; i < prec; ++i) {
    check(acc <= (u64(1) << 62) / (u64)prime, "Overflow", "p^s must be < 2^63");
    acc *= (u64)prime;
  }
  ps = acc;
}

int RingCtx::val(u64 x) const {
  if (x == 0) return s;
  int e = 0;
  while (x % (u64)p == 0) {
    x /= (u64)p;
    ++e;
  }
  return e;
}

u64 RingCtx::unit_part(u64 x) const {
  if (x == 0) return 1;
  while (x % (u64)p == 0) x /= (u64)p;
  return x;
}

u64 RingCtx::ppow(int e) const {
  if (e >= s) return 0;
  u64 r = 1;
  for (int i = 0; i < e; ++i) r *= (u64)p;
  return r;
}

u64 RingCtx::inv_unit(u64 x) const {
  x %= ps;
  check(x % (u64)p != 0, "NotAUnit", std::to_string(x) + " is divisible by p");
  // extended Euclid on (x, ps)
  i64 a = (i64)x, m = (i64)ps;
  i64 t0 = 0, t1 = 1, r0 = m, r1 = a;
  while (r1 != 0) {
    i64 q = r0 / r1;
    i64 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return reduce(t0);
}

u64 RingCtx::pow(u64 a, u64 e) const {
  u64 r = 1 % ps, b = a % ps;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace ptower
