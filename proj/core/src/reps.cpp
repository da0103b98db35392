#include "ptower/reps.hpp"

namespace ptower {

i64 binom_i64(int n, int k) {
  if (k < 0 || k > n) return 0;
  i64 r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

RepModule RepModule::build(GroupTag tag, const Weight& lambda, LatticeKind kind, RingCtx R) {
  check(lambda.tag == tag, "TagMismatch", "weight tag");
  check(is_dominant(lambda), "NonDominant", "highest weight must be dominant");
  check(tag != GroupTag::GSp4Weights, "TagMismatch", "no representations for GSp4Weights");
  RepModule M;
  M.tag_ = tag;
  M.lambda_ = lambda;
  M.kind_ = kind;
  M.R_ = R;
  if (tag == GroupTag::GL2) {
    M.ka_ = (int)(lambda.k[0] - lambda.k[1]);
    M.ma_ = (int)lambda.k[1];
    M.dim_ = M.ka_ + 1;
    M.product_ = false;
  } else {
    M.ka_ = (int)(lambda.k[0] - lambda.k[1]);
    M.ma_ = (int)lambda.k[1];
    M.kb_ = (int)(lambda.k[2] - lambda.k[3]);
    M.mb_ = (int)lambda.k[3];
    M.dim_ = (M.ka_ + 1) * (M.kb_ + 1);
    M.product_ = true;
  }
  return M;
}

Weight RepModule::weight_of(int j) const {
  if (!product_) {
    return Weight(tag_, {(i64)(ka_ - j) + ma_, (i64)j + ma_});
  }
  int j1 = j / (kb_ + 1), j2 = j % (kb_ + 1);
  return Weight(tag_, {(i64)(ka_ - j1) + ma_, (i64)j1 + ma_, (i64)(kb_ - j2) + mb_,
                       (i64)j2 + mb_});
}

// Symmetric-power action matrix over an auxiliary precision ring, entries as
// exact integers mod p^(s+guard); used to conjugate into the min basis where
// binomials may be divisible by p.
namespace {

std::vector<std::vector<u64>> sym_matrix_modM(const M22& g, int k, u64 M) {
  // column j = coefficients of (aX+cY)^(k-j) (bX+dY)^j
  auto red = [&](i64 x) {
    i64 r = x % (i64)M;
    if (r < 0) r += (i64)M;
    return (u64)r;
  };
  u64 A = red(g.a), B = red(g.b), C = red(g.c), D = red(g.d);
  std::vector<std::vector<u64>> out(k + 1, std::vector<u64>(k + 1, 0));
  for (int j = 0; j <= k; ++j) {
    // poly = (A X + C Y)^(k-j) * (B X + D Y)^j, coefficients by X-degree
    std::vector<u64> poly(1, 1);
    auto mul_lin = [&](u64 x, u64 y) {
      // multiply poly by (x X + y Y)
      std::vector<u64> next(poly.size() + 1, 0);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] = (next[i] + (u64)((i128)poly[i] * x % M)) % M;
        next[i + 1] = (next[i + 1] + (u64)((i128)poly[i] * y % M)) % M;
      }
      poly = std::move(next);
    };
    for (int t = 0; t < k - j; ++t) mul_lin(A, C);
    for (int t = 0; t < j; ++t) mul_lin(B, D);
    // poly[i] = coefficient of X^(k-i) Y^i = basis i
    for (int i = 0; i <= k; ++i) out[i][j] = poly[i];
  }
  return out;
}

}  // namespace

Mat RepModule::factor_sym(const M22& g, int k, bool min_basis) const {
  if (!min_basis) {
    auto raw = sym_matrix_modM(g, k, R_.ps);
    Mat out(R_, k + 1, k + 1);
    for (int i = 0; i <= k; ++i)
      for (int j = 0; j <= k; ++j) out.at(i, j) = raw[i][j];
    return out;
  }
  // min basis: conjugate by diag(binom(k,j)) with exact division
  int guard = 0;
  for (int j = 0; j <= k; ++j) {
    u64 b = (u64)binom_i64(k, j);
    int v = 0;
    while (b % (u64)R_.p == 0) {
      b /= (u64)R_.p;
      ++v;
    }
    guard = std::max(guard, v);
  }
  u64 M = R_.ps;
  for (int i = 0; i < guard; ++i) {
    check(M <= (u64(1) << 62) / (u64)R_.p, "Overflow", "min-lattice guard precision");
    M *= (u64)R_.p;
  }
  auto raw = sym_matrix_modM(g, k, M);
  Mat out(R_, k + 1, k + 1);
  for (int i = 0; i <= k; ++i) {
    u64 bi = (u64)binom_i64(k, i);
    int vi = 0;
    u64 ui = bi;
    while (ui % (u64)R_.p == 0) {
      ui /= (u64)R_.p;
      ++vi;
    }
    u64 uinv = R_.inv_unit(ui % R_.ps);
    for (int j = 0; j <= k; ++j) {
      u64 x = (u64)((i128)raw[i][j] * ((u64)binom_i64(k, j) % M) % M);
      // divide by p^vi exactly, then by the unit part
      check(x % ((u64)1 << 0) == 0, "Internal", "");
      u64 pv = 1;
      for (int t = 0; t < vi; ++t) pv *= (u64)R_.p;
      check(x % pv == 0, "NotInvertible", "matrix does not preserve the minimal lattice");
      x = (x / pv) % R_.ps;
      out.at(i, j) = R_.mul(x, uinv);
    }
  }
  return out;
}

Mat RepModule::action(const GElt& g) const {
  check(g.tag == tag_, "TagMismatch", "group element tag");
  auto unit_det = [&](const M22& m) {
    return R_.is_unit(R_.reduce(m.det()));
  };
  check(unit_det(g.g1) && (!product_ || unit_det(g.g2)), "NotInvertible",
        "group element must be invertible over the ring");
  bool minb = kind_ == LatticeKind::Min;
  Mat A = factor_sym(g.g1, ka_, minb);
  u64 d1 = R_.reduce(g.g1.det());
  u64 tw = ma_ >= 0 ? R_.pow(d1, (u64)ma_) : R_.pow(R_.inv_unit(d1), (u64)(-ma_));
  A = scal(tw, A);
  if (!product_) return A;
  Mat B = factor_sym(g.g2, kb_, minb);
  u64 d2 = R_.reduce(g.g2.det());
  u64 tw2 = mb_ >= 0 ? R_.pow(d2, (u64)mb_) : R_.pow(R_.inv_unit(d2), (u64)(-mb_));
  B = scal(tw2, B);
  // Kronecker product
  Mat out(R_, dim_, dim_);
  int nb = kb_ + 1;
  for (int i1 = 0; i1 <= ka_; ++i1)
    for (int j1 = 0; j1 <= ka_; ++j1)
      for (int i2 = 0; i2 <= kb_; ++i2)
        for (int j2 = 0; j2 <= kb_; ++j2)
          out.at(i1 * nb + i2, j1 * nb + j2) = R_.mul(A.at(i1, j1), B.at(i2, j2));
  return out;
}

Mat RepModule::sym_coeff(const M22& B1, const M22& B2, u64 scale) const {
  bool minb = kind_ == LatticeKind::Min;
  Mat A = factor_sym(B1, ka_, minb);
  if (!product_) return scale == 1 ? A : scal(scale, A);
  Mat B = factor_sym(B2, kb_, minb);
  Mat out(R_, dim_, dim_);
  int nb = kb_ + 1;
  for (int i1 = 0; i1 <= ka_; ++i1)
    for (int j1 = 0; j1 <= ka_; ++j1)
      for (int i2 = 0; i2 <= kb_; ++i2)
        for (int j2 = 0; j2 <= kb_; ++j2)
          out.at(i1 * nb + i2, j1 * nb + j2) = R_.mul(A.at(i1, j1), B.at(i2, j2));
  return scale == 1 ? out : scal(scale, out);
}

int RepModule::sit_exponent(const Cocharacter& eta, int j) const {
  check(eta.tag == tag_, "TagMismatch", "cocharacter tag");
  check(is_sigma_plus(eta), "NotSigmaPlus", "cocharacter must be dominant");
  Weight mu = weight_of(j);
  i64 e = pair(lambda_, eta) - pair(mu, eta);
  check(e >= 0, "Internal", "weight exponent must be non-negative");
  return (int)e;
}

std::vector<u64> RepModule::scaled_inverse_torus(const Cocharacter& eta, int r,
                                                 const std::vector<u64>& v) const {
  check((int)v.size() == dim_, "ShapeMismatch", "vector length");
  check(r >= 1, "BadArgument", "r >= 1");
  std::vector<u64> out(dim_, 0);
  for (int j = 0; j < dim_; ++j) {
    if (!v[j]) continue;
    i64 e = (i64)sit_exponent(eta, j) * r;
    out[j] = e >= R_.s ? 0 : R_.mul(v[j], R_.ppow((int)e));
  }
  return out;
}

std::map<std::vector<i64>, std::vector<u64>> RepModule::weight_decompose(
    const std::vector<u64>& v) const {
  check((int)v.size() == dim_, "ShapeMismatch", "vector length");
  std::map<std::vector<i64>, std::vector<u64>> out;
  for (int j = 0; j < dim_; ++j) {
    if (!v[j]) continue;
    auto w = weight_of(j).k;
    auto it = out.find(w);
    if (it == out.end()) it = out.emplace(w, std::vector<u64>(dim_, 0)).first;
    it->second[j] = v[j];
  }
  return out;
}

Mat RepModule::min_in_max() const {
  Mat D(R_, dim_, dim_);
  if (!product_) {
    for (int j = 0; j <= ka_; ++j) D.at(j, j) = R_.reduce(binom_i64(ka_, j));
    return D;
  }
  int nb = kb_ + 1;
  for (int j1 = 0; j1 <= ka_; ++j1)
    for (int j2 = 0; j2 <= kb_; ++j2)
      D.at(j1 * nb + j2, j1 * nb + j2) =
          R_.reduce(binom_i64(ka_, j1) * binom_i64(kb_, j2));
  return D;
}

Mat dual_pairing_matrix(const RepModule& vmax, const RepModule& vmin_dual) {
  check(vmax.kind() == LatticeKind::Max && vmin_dual.kind() == LatticeKind::Min, "BadArgument",
        "pairing is max x min");
  check(vmin_dual.lambda() == dual_weight(vmax.lambda()), "TagMismatch",
        "second factor must carry the dual weight");
  RingCtx R = vmax.ring();
  int ka = vmax.factor_k(0);
  Mat out(R, vmax.dim(), vmax.dim());
  if (vmax.tag() == GroupTag::GL2) {
    for (int i = 0; i <= ka; ++i) {
      u64 s = (i % 2 == 0) ? 1 : R.neg(1);
      out.at(i, ka - i) = s;
    }
    return out;
  }
  int kb = vmax.factor_k(1);
  int nb = kb + 1;
  for (int i1 = 0; i1 <= ka; ++i1)
    for (int i2 = 0; i2 <= kb; ++i2) {
      u64 s = ((i1 + i2) % 2 == 0) ? 1 : R.neg(1);
      out.at(i1 * nb + i2, (ka - i1) * nb + (kb - i2)) = s;
    }
  return out;
}

std::vector<u64> poly_mult(const RepModule& A, const RepModule& B, const RepModule& target,
                           const std::vector<u64>& va, const std::vector<u64>& vb) {
  check(A.tag() == B.tag() && A.tag() == target.tag(), "TagMismatch", "poly_mult tags");
  check(A.kind() == LatticeKind::Max && B.kind() == LatticeKind::Max &&
            target.kind() == LatticeKind::Max,
        "BadArgument", "poly_mult on max lattices");
  RingCtx R = A.ring();
  std::vector<u64> out(target.dim(), 0);
  if (A.tag() == GroupTag::GL2) {
    int ka = A.factor_k(0), kb = B.factor_k(0);
    check(target.factor_k(0) == ka + kb, "ShapeMismatch", "target weight");
    for (int i = 0; i <= ka; ++i)
      for (int j = 0; j <= kb; ++j)
        out[i + j] = R.add(out[i + j], R.mul(va[i], vb[j]));
    return out;
  }
  int ka1 = A.factor_k(0), ka2 = A.factor_k(1);
  int kb1 = B.factor_k(0), kb2 = B.factor_k(1);
  int t1 = target.factor_k(0), t2 = target.factor_k(1);
  check(t1 == ka1 + kb1 && t2 == ka2 + kb2, "ShapeMismatch", "target weight");
  for (int i1 = 0; i1 <= ka1; ++i1)
    for (int i2 = 0; i2 <= ka2; ++i2)
      for (int j1 = 0; j1 <= kb1; ++j1)
        for (int j2 = 0; j2 <= kb2; ++j2) {
          int r1 = i1 + j1, r2 = i2 + j2;
          u64 prod = R.mul(va[i1 * (ka2 + 1) + i2], vb[j1 * (kb2 + 1) + j2]);
          out[r1 * (t2 + 1) + r2] = R.add(out[r1 * (t2 + 1) + r2], prod);
        }
  return out;
}

}  // namespace ptower
