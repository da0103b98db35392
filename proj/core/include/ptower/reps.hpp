#pragma once

#include <map>

#include "ptower/mat.hpp"
#include "ptower/weights.hpp"

namespace ptower {

// 2x2 integer matrix.
struct M22 {
  i64 a = 1, b = 0, c = 0, d = 1;

  i64 det() const {
    i128 v = (i128)a * d - (i128)b * c;
    check(v <= INT64_MAX && v >= INT64_MIN, "Overflow", "matrix determinant");
    return (i64)v;
  }
  M22 adj() const { return {d, -b, -c, a}; }
  bool operator==(const M22& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

inline M22 mul(const M22& x, const M22& y) {
  auto f = [](i128 v) {
    check(v <= INT64_MAX && v >= INT64_MIN, "Overflow", "matrix product entry");
    return (i64)v;
  };
  return {f((i128)x.a * y.a + (i128)x.b * y.c), f((i128)x.a * y.b + (i128)x.b * y.d),
          f((i128)x.c * y.a + (i128)x.d * y.c), f((i128)x.c * y.b + (i128)x.d * y.d)};
}

// Group element of a GL2-family group (second component ignored for GL2).
struct GElt {
  GroupTag tag = GroupTag::GL2;
  M22 g1, g2;
};

enum class LatticeKind { Max, Min };

// Highest-weight module V_lambda over Z/p^s in monomial coordinates.
// GL2 weight (k1,k2): Sym^k(std) ⊗ det^m with k = k1-k2, m = k2; basis index
// j = 0..k is the monomial X^(k-j) Y^j, so the highest-weight vector is j = 0.
// The minimal lattice uses the binomial-rescaled basis (symmetric tensors):
// min basis_j represents binom(k,j) * X^(k-j) Y^j inside the maximal lattice.
// GL2xGL2: tensor pairs, index j1*(kb+1)+j2.
class RepModule {
 public:
  static RepModule build(GroupTag tag, const Weight& lambda, LatticeKind kind, RingCtx R);

  GroupTag tag() const { return tag_; }
  const Weight& lambda() const { return lambda_; }
  LatticeKind kind() const { return kind_; }
  RingCtx ring() const { return R_; }
  int dim() const { return dim_; }
  int hw_index() const { return 0; }
  int factor_k(int which) const { return which == 0 ? ka_ : kb_; }
  int factor_m(int which) const { return which == 0 ? ma_ : mb_; }

  Weight weight_of(int j) const;

  // rho_lambda(g) on this lattice's basis; g must have unit determinant
  // (per factor) over the ring. Throws NotInvertible otherwise.
  Mat action(const GElt& g) const;

  // Pure symmetric-power action of explicit integral matrices (no det twist),
  // conjugated into this lattice's basis. This is the integrally normalised
  // coefficient map of the Hecke layer; scale is an extra unit factor.
  Mat sym_coeff(const M22& B1, const M22& B2, u64 scale = 1) const;

  // p^{r<eta,lambda>} rho(eta(p)^{-r}): multiplies basis j by p^{r*exp_j}.
  int sit_exponent(const Cocharacter& eta, int j) const;
  std::vector<u64> scaled_inverse_torus(const Cocharacter& eta, int r,
                                        const std::vector<u64>& v) const;

  // psi: coefficient of the highest-weight basis vector
  u64 psi(const std::vector<u64>& v) const { return dim_ ? v[0] : 0; }

  std::map<std::vector<i64>, std::vector<u64>> weight_decompose(const std::vector<u64>& v) const;

  // min lattice inside max: column j of the returned matrix = image of
  // min basis_j in max coordinates (a diagonal of binomials).
  Mat min_in_max() const;

 private:
  GroupTag tag_ = GroupTag::GL2;
  Weight lambda_{GroupTag::GL2, {0, 0}};
  LatticeKind kind_ = LatticeKind::Max;
  RingCtx R_;
  int dim_ = 0;
  int ka_ = 0, ma_ = 0, kb_ = 0, mb_ = 0;
  bool product_ = false;

  Mat factor_sym(const M22& g, int k, bool min_basis) const;
};

// Perfect integral duality pairing V_{lambda,max} x V_{lambda^vee,min} -> O.
// Returns P with P(i,j) the pairing of max basis_i against dual min basis_j.
Mat dual_pairing_matrix(const RepModule& vmax, const RepModule& vmin_dual);

// Borel-Weil multiplication V_{l1} x V_{l2} -> V_{l1+l2} on max lattices.
std::vector<u64> poly_mult(const RepModule& A, const RepModule& B, const RepModule& target,
                           const std::vector<u64>& va, const std::vector<u64>& vb);

i64 binom_i64(int n, int k);

}  // namespace ptower
