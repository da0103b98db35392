#include "ptower/euler.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace ptower {

namespace {

int euler_phi(int n) {
  int r = n;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      r -= r / q;
    }
  if (n > 1) r -= r / n;
  return r;
}

// polynomial utilities over Q (dense, lowest degree first)
using Poly = std::vector<Frac>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, Frac(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  }
  return c;
}

// exact division, remainder must vanish
Poly poly_div(Poly a, const Poly& b) {
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Frac(0));
  while (a.size() >= b.size()) {
    Frac lead = a.back() / b.back();
    size_t shift = a.size() - b.size();
    q[shift] = lead;
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - lead * b[i];
    while (a.size() > 1 && a.back().is_zero()) a.pop_back();
    if (a.size() < b.size()) break;
    if (a.size() == 1 && a[0].is_zero()) break;
  }
  for (auto& x : a) check(x.is_zero(), "Internal", "cyclotomic division remainder");
  return q;
}

}  // namespace

std::vector<i64> cyclotomic_poly(int n) {
  // Phi_n via (x^n - 1) / prod_{d | n, d < n} Phi_d
  check(n >= 1 && n <= 64, "BadArgument", "cyclotomic order out of desk range");
  Poly acc(n + 1, Frac(0));
  acc[0] = Frac(-1);
  acc[n] = Frac(1);
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    auto phid = cyclotomic_poly(d);
    Poly pd(phid.size());
    for (size_t i = 0; i < phid.size(); ++i) pd[i] = Frac(phid[i]);
    acc = poly_div(acc, pd);
  }
  std::vector<i64> out(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    check(acc[i].den == 1, "Internal", "cyclotomic coefficients are integers");
    out[i] = acc[i].num;
  }
  return out;
}

CycScalar::CycScalar(Frac x, int order) : n_(order) {
  c_.assign(std::max(1, euler_phi(order)), Frac(0));
  c_[0] = x;
}

CycScalar CycScalar::zeta(int order, int power) {
  check(order >= 1, "BadArgument", "zeta order");
  power = ((power % order) + order) % order;
  CycScalar z(Frac(0), order);
  int phi = (int)z.c_.size();
  if (power < phi) {
    z.c_[power] = Frac(1);
    return z;
  }
  // reduce z^power mod Phi_n by long division
  std::vector<Frac> poly(power + 1, Frac(0));
  poly[power] = Frac(1);
  auto phin = cyclotomic_poly(order);
  while ((int)poly.size() > phi) {
    Frac lead = poly.back();
    size_t shift = poly.size() - phin.size();
    if (!lead.is_zero())
      for (size_t i = 0; i < phin.size(); ++i)
        poly[shift + i] = poly[shift + i] - lead * Frac(phin[i]);
    poly.pop_back();
  }
  poly.resize(phi, Frac(0));
  z.c_ = poly;
  return z;
}

bool CycScalar::is_zero() const {
  for (auto& x : c_)
    if (!x.is_zero()) return false;
  return true;
}

bool CycScalar::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (!c_[i].is_zero()) return false;
  return true;
}

Frac CycScalar::rational() const {
  check(is_rational(), "BadArgument", "value is not rational");
  return c_[0];
}

CycScalar CycScalar::promote(const CycScalar& x, int order) {
  if (x.n_ == order) return x;
  check(order % x.n_ == 0, "Internal", "incompatible cyclotomic orders");
  // rewrite on the base of zeta_order: zeta_{n} = zeta_order^{order/n}
  CycScalar out(Frac(0), order);
  int step = order / x.n_;
  for (size_t i = 0; i < x.c_.size(); ++i) {
    if (x.c_[i].is_zero()) continue;
    CycScalar zi = CycScalar::zeta(order, (int)i * step);
    for (size_t j = 0; j < out.c_.size(); ++j) out.c_[j] = out.c_[j] + x.c_[i] * zi.c_[j];
  }
  return out;
}

CycScalar CycScalar::operator+(const CycScalar& o) const {
  int n = (int)std::lcm(n_, o.n_);
  CycScalar a = promote(*this, n), b = promote(o, n);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] + b.c_[i];
  return a;
}

CycScalar CycScalar::operator-(const CycScalar& o) const {
  int n = (int)std::lcm(n_, o.n_);
  CycScalar a = promote(*this, n), b = promote(o, n);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] = a.c_[i] - b.c_[i];
  return a;
}

CycScalar CycScalar::operator*(const CycScalar& o) const {
  int n = (int)std::lcm(n_, o.n_);
  CycScalar a = promote(*this, n), b = promote(o, n);
  int phi = (int)a.c_.size();
  std::vector<Frac> prod(2 * phi, Frac(0));
  for (int i = 0; i < phi; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < phi; ++j) prod[i + j] = prod[i + j] + a.c_[i] * b.c_[j];
  }
  auto phin = cyclotomic_poly(n);
  while ((int)prod.size() > phi) {
    Frac lead = prod.back();
    size_t shift = prod.size() - phin.size();
    if (!lead.is_zero())
      for (size_t i = 0; i < phin.size(); ++i)
        prod[shift + i] = prod[shift + i] - lead * Frac(phin[i]);
    prod.pop_back();
  }
  prod.resize(phi, Frac(0));
  CycScalar out(Frac(0), n);
  out.c_ = prod;
  return out;
}

bool CycScalar::operator==(const CycScalar& o) const {
  CycScalar d = *this - o;
  return d.is_zero();
}

std::string CycScalar::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << " + ";
    os << c_[i].num;
    if (c_[i].den != 1) os << "/" << c_[i].den;
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
    first = false;
  }
  if (first) os << "0";
  if (n_ > 1) os << "  (z = zeta_" << n_ << ")";
  return os.str();
}

PadicParam PadicParam::make(i64 p, i64 val, Frac unit, int zorder, int zpow) {
  check(is_prime(p), "BadPrime", "parameter prime");
  check(unit.num != 0, "BadArgument", "unit part must be nonzero");
  check(unit.num % p != 0 && unit.den % p != 0, "BadArgument", "unit part must be a p-unit");
  check(zorder >= 1 && (p - 1) % zorder == 0, "BadArgument",
        "root of unity order must divide p - 1");
  PadicParam out;
  out.p = p;
  out.val = val;
  out.unit = unit;
  out.zorder = zorder;
  out.zpow = ((zpow % zorder) + zorder) % zorder;
  return out;
}

PadicParam PadicParam::times(const PadicParam& o) const {
  check(p == o.p, "BadArgument", "mixed primes");
  int n = (int)std::lcm(zorder, o.zorder);
  return make(p, val + o.val, unit * o.unit, n,
              zpow * (n / zorder) + o.zpow * (n / o.zorder));
}

PadicParam PadicParam::inverse() const {
  return make(p, -val, Frac(1) / unit, zorder, zorder - zpow);
}

PadicParam PadicParam::scale_p(i64 dval) const {
  PadicParam out = *this;
  out.val += dval;
  return out;
}

CycScalar PadicParam::exact() const {
  Frac pv(1);
  for (i64 i = 0; i < (val >= 0 ? val : -val); ++i)
    pv = val >= 0 ? pv * Frac(p) : pv / Frac(p);
  return CycScalar(unit * pv, 1) * CycScalar::zeta(zorder, zpow);
}

bool PadicParam::unit_is_one() const { return unit == Frac(1) && zpow % zorder == 0; }

Valuation one_minus_valuation(const PadicParam& x) {
  Valuation out;
  if (x.val > 0) {
    out.v = 0;
    return out;
  }
  if (x.val < 0) {
    out.v = x.val;
    return out;
  }
  if (x.unit_is_one()) {
    out.is_zero = true;
    return out;
  }
  // Teichmueller shadow at generous precision
  i64 p = x.p;
  int K = 1;
  u64 pk = (u64)p;
  while (pk <= (u64(1) << 40) / (u64)p) {
    pk *= (u64)p;
    ++K;
  }
  RingCtx R(p, K);
  // smallest primitive root
  i64 g = 2;
  for (;; ++g) {
    i64 t = g % p;
    int ord = 1;
    while (t != 1) {
      t = t * g % p;
      ++ord;
    }
    if (ord == p - 1) break;
  }
  // zeta_n -> omega(g^((p-1)/n)): Teichmueller lift by iterated p-th powers
  u64 base = R.pow(R.reduce(g), (u64)((p - 1) / x.zorder));
  u64 om = base;
  for (int i = 0; i < 8 * K; ++i) om = R.pow(om, (u64)p);
  u64 uz = R.pow(om, (u64)x.zpow);
  u64 uq = R.mul(R.reduce(x.unit.num), R.inv_unit(R.reduce(x.unit.den)));
  u64 val = R.sub(1, R.mul(uq, uz));
  check(val != 0, "Internal", "valuation shadow needs more precision");
  out.v = R.val(val);
  return out;
}

ConstraintReport check_param_constraints(const HeckeParamsGSp4& P) {
  ConstraintReport rep;
  auto fail_with = [&](const std::string& s) {
    rep.ok = false;
    if (rep.violation.empty()) rep.violation = s;
  };
  if (P.alpha.val != 0) fail_with("v(alpha) = 0");
  if (P.beta.val != P.a + 1) fail_with("v(beta) = a + 1");
  if (!(P.alpha.val <= P.beta.val)) fail_with("v(alpha) <= v(beta)");
  if (!(P.beta.val <= P.gamma.val)) fail_with("v(beta) <= v(gamma)");
  if (!(P.gamma.val <= P.delta.val)) fail_with("v(gamma) <= v(delta)");
  PadicParam ad = P.alpha.times(P.delta), bg = P.beta.times(P.gamma);
  rep.similitude_balanced = (ad.val == bg.val) && (ad.unit == bg.unit) &&
                            (ad.zpow * bg.zorder == bg.zpow * ad.zorder);
  return rep;
}

ConstraintReport check_param_constraints_gl2(const HeckeParamsGL2& P) {
  ConstraintReport rep;
  if (P.fa.val != 0) {
    rep.ok = false;
    rep.violation = "v(a) = 0";
  }
  if (P.fb.val != P.c + 1) {
    rep.ok = false;
    if (rep.violation.empty()) rep.violation = "v(b) = c + 1";
  }
  return rep;
}

namespace {

void push_factor(EulerResult& out, const PadicParam& x) {
  // factor 1 - x
  CycScalar f = CycScalar(Frac(1), 1) - x.exact();
  out.factors.push_back(f);
  out.factor_valuations.push_back(one_minus_valuation(x));
  out.value = out.value * f;
}

void finish(EulerResult& out) {
  out.total.is_zero = false;
  out.total.v = 0;
  for (auto& fv : out.factor_valuations) {
    if (fv.is_zero) {
      out.total.is_zero = true;
      return;
    }
    out.total.v += fv.v;
  }
}

}  // namespace

EulerResult euler_gsp4(const HeckeParamsGSp4& P, i64 q, i64 r, const PadicParam& chi2) {
  check(0 <= q && q <= P.a, "DomainError", "0 <= q <= a");
  check(0 <= r && r <= P.b, "DomainError", "0 <= r <= b");
  check(chi2.val == 0, "BadArgument", "character values are units");
  EulerResult out;
  out.value = CycScalar(Frac(1), 1);
  push_factor(out, P.alpha.inverse().scale_p(q));           // 1 - p^q / alpha
  push_factor(out, P.beta.scale_p(-(1 + q)));               // 1 - beta / p^{1+q}
  push_factor(out, P.gamma.scale_p(-(1 + q)));
  push_factor(out, P.delta.scale_p(-(1 + q)));
  push_factor(out, P.alpha.inverse().times(chi2).scale_p(P.a + 1 + r));
  push_factor(out, P.beta.inverse().times(chi2).scale_p(P.a + 1 + r));
  push_factor(out, P.gamma.times(chi2.inverse()).scale_p(-(P.a + 2 + r)));
  push_factor(out, P.delta.times(chi2.inverse()).scale_p(-(P.a + 2 + r)));
  finish(out);
  return out;
}

EulerResult euler_gsp4_gl2(const HeckeParamsGSp4& P4, const HeckeParamsGL2& P2, i64 q) {
  check(std::max(P4.a, P2.c) <= q && q <= std::min(P4.a + P4.b, P4.a + P2.c), "DomainError",
        "max(a, c) <= q <= min(a+b, a+c)");
  EulerResult out;
  out.value = CycScalar(Frac(1), 1);
  for (auto lam : {P4.beta.times(P2.fb), P4.gamma.times(P2.fa), P4.gamma.times(P2.fb),
                   P4.delta.times(P2.fa), P4.delta.times(P2.fb)})
    push_factor(out, lam.scale_p(-(2 + q)));
  for (auto lam : {P4.alpha.times(P2.fa), P4.alpha.times(P2.fb), P4.beta.times(P2.fa)})
    push_factor(out, lam.inverse().scale_p(1 + q));
  finish(out);
  return out;
}

TripleAdmissibility triple_admissible(const Weight& gsp4_weight, i64 c1, i64 c2) {
  check(gsp4_weight.tag == GroupTag::GSp4Weights, "TagMismatch", "GSp4 weight expected");
  TripleAdmissibility out;
  // central direction: the similitude coordinate of GSp4 plus the lower torus
  // entries of the GL2 factors, minus twice the GL1 slot
  i64 t = gsp4_weight.k[2] + c1 + c2;
  out.ok = (t % 2) == 0;
  if (out.ok) out.half = t / 2;
  return out;
}

}  // namespace ptower
