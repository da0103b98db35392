#pragma once

#include "ptower/branching.hpp"
#include "ptower/weights.hpp"

namespace ptower {

// Exact element of the cyclotomic-rational field Q(zeta_n), coefficients on
// the power basis 1, z, ..., z^{phi(n)-1} modulo the n-th cyclotomic
// polynomial. Desk-scale orders only.
class CycScalar {
 public:
  CycScalar() : n_(1), c_{Frac(0)} {}
  explicit CycScalar(Frac x, int order = 1);
  static CycScalar zeta(int order, int power);

  int order() const { return n_; }
  const std::vector<Frac>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;
  Frac rational() const;

  CycScalar operator+(const CycScalar& o) const;
  CycScalar operator-(const CycScalar& o) const;
  CycScalar operator*(const CycScalar& o) const;
  bool operator==(const CycScalar& o) const;

  std::string str() const;

 private:
  int n_;                  // conductor
  std::vector<Frac> c_;    // length phi(n)
  static CycScalar promote(const CycScalar& x, int order);
};

std::vector<i64> cyclotomic_poly(int n);

// p-adic parameter p^val * q * zeta^j with q a rational p-unit and zeta of
// order dividing p - 1 (so the Teichmueller embedding is available)
struct PadicParam {
  i64 p = 5;
  i64 val = 0;
  Frac unit{1};
  int zorder = 1;  // order of the root of unity
  int zpow = 0;

  static PadicParam make(i64 p, i64 val, Frac unit, int zorder = 1, int zpow = 0);
  PadicParam times(const PadicParam& o) const;
  PadicParam inverse() const;
  PadicParam scale_p(i64 dval) const;  // multiply by p^dval
  CycScalar exact() const;             // exact field value
  bool unit_is_one() const;
};

// valuation with a designed-zero flag
struct Valuation {
  bool is_zero = false;  // the factor vanishes exactly
  i64 v = 0;
};

// v_p(1 - x), exact: by the ultrametric when v(x) != 0, by the Teichmueller
// shadow when v(x) = 0 and the unit parts differ
Valuation one_minus_valuation(const PadicParam& x);

struct HeckeParamsGSp4 {
  i64 p = 5;
  PadicParam alpha, beta, gamma, delta;
  i64 a = 0, b = 0;  // weight
};

struct HeckeParamsGL2 {
  i64 p = 5;
  PadicParam fa, fb;  // "a" and "b" parameters
  i64 c = 0;          // weight
};

struct ConstraintReport {
  bool ok = true;
  std::string violation;  // the failing inequality when !ok
  bool similitude_balanced = false;  // diagnostic, not asserted
};

ConstraintReport check_param_constraints(const HeckeParamsGSp4& P);
ConstraintReport check_param_constraints_gl2(const HeckeParamsGL2& P);

struct EulerResult {
  CycScalar value;
  std::vector<Valuation> factor_valuations;
  Valuation total;
  std::vector<CycScalar> factors;
};

// the eight-factor product of the spherical-to-parahoric comparison for GSp4
EulerResult euler_gsp4(const HeckeParamsGSp4& P, i64 q, i64 r, const PadicParam& chi2);

// the 5 x 3 factor product for GSp4 x GL2
EulerResult euler_gsp4_gl2(const HeckeParamsGSp4& P4, const HeckeParamsGL2& P2, i64 q);

// GSp4 x GL2 x GL2 self-dual-twist admissibility: the product of the weight
// characters along the distinguished central direction must be a square
struct TripleAdmissibility {
  bool ok = false;
  i64 half = 0;  // the chosen square root exponent when ok
};
TripleAdmissibility triple_admissible(const Weight& gsp4_weight, i64 c1, i64 c2);

}  // namespace ptower
