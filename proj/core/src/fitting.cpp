#include "ptower/fitting.hpp"

#include <cmath>

namespace ptower {

bool equal_mod(const Mat& X, const Mat& Y, const Mat* Rel) {
  if (X.rows != Y.rows || X.cols != Y.cols) return false;
  Mat D = sub(X, Y);
  if (!Rel) return D.is_zero();
  if (D.is_zero()) return true;
  RowEchelon ech(*Rel);
  std::vector<u64> col(D.rows);
  for (int j = 0; j < D.cols; ++j) {
    bool nz = false;
    for (int i = 0; i < D.rows; ++i) {
      col[i] = D.at(i, j);
      nz |= col[i] != 0;
    }
    if (nz && !ech.solve(col)) return false;
  }
  return true;
}

OrdinaryData stable_idempotent(const Mat& A, const Mat* Rel, int threads) {
  check(A.rows == A.cols, "ShapeMismatch", "idempotent of non-square matrix");
  const RingCtx R = A.R;
  const int d = A.rows;
  OrdinaryData out;
  if (d == 0) {
    out.e = A;
    out.inv_on_image = A;
    return out;
  }
  int cap = 2;
  while ((1 << cap) < (i64)R.s * d) ++cap;
  cap += 2;

  Mat B = mul(A, A, threads);
  B = mul(B, B, threads);
  B = mul(B, B, threads);  // A^8
  int t = 3;
  const Mat I = Mat::identity(R, d);
  for (; t <= cap; ++t, B = mul(B, B, threads)) {
    Mat B2 = mul(B, B, threads);
    auto W = solve_mod(B2, B, Rel);
    if (!W) continue;
    Mat e = mul(B, *W, threads);
    // certificates
    Mat one_minus_e = sub(I, e);
    if (!equal_mod(mul(B, one_minus_e, threads), Mat::zero(R, d, d), Rel)) continue;
    if (!equal_mod(mul(e, e, threads), e, Rel)) continue;
    if (!equal_mod(mul(e, A, threads), mul(A, e, threads), Rel)) continue;
    // inverse of A on the image
    auto X = solve_mod(A, e, Rel);
    if (!X) continue;
    Mat J = mul(e, mul(*X, e, threads), threads);
    if (!equal_mod(mul(A, J, threads), e, Rel)) continue;
    if (!equal_mod(mul(J, A, threads), e, Rel)) continue;
    out.e = e;
    out.inv_on_image = J;
    out.power_exponent = t;
    // ordinary part ≅ F / colspan([1-e | Rel])
    int extra = Rel ? Rel->cols : 0;
    Mat Q(R, d, d + extra);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) Q.at(i, j) = one_minus_e.at(i, j);
      for (int j = 0; j < extra; ++j) Q.at(i, d + j) = Rel->at(i, j);
    }
    SmithForm S = smith_form(Q);
    for (int i = 0; i < d; ++i) {
      int g = (i < (int)S.divisor_exp.size()) ? S.divisor_exp[i] : R.s;
      if (g > 0) {
        out.image_divisor_exp.push_back(g);
        if (g == R.s) out.free_rank++;
      }
    }
    return out;
  }
  fail("NonStabilization", "idempotent iteration cap reached (implementation bug)");
}

std::vector<u64> char_poly(const Mat& A) {
  check(A.rows == A.cols, "ShapeMismatch", "char_poly");
  const RingCtx R = A.R;
  int n = A.rows;
  // Berkowitz: iteratively build the coefficient vector via Toeplitz products
  std::vector<u64> poly{1 % R.ps};  // degree 0: 1 (will hold monic charpoly)
  std::vector<u64> C{1 % R.ps};
  for (int k = 0; k < n; ++k) {
    // principal submatrix A[0..k][0..k]; row r = A[k][0..k-1], col s = A[0..k-1][k]
    int m = k;  // size of the previous block
    // Toeplitz column: t_0 = -1 (sign handled), t_1 = A[k][k], t_j = R A^{j-2} S
    std::vector<u64> t(k + 2, 0);
    t[0] = R.neg(1);
    t[1] = A.at(k, k);
    if (m > 0) {
      std::vector<u64> v(m);
      for (int i = 0; i < m; ++i) v[i] = A.at(i, k);
      for (int j = 2; j <= k + 1; ++j) {
        // t_j = row . v
        u64 acc = 0;
        for (int i = 0; i < m; ++i) acc = R.add(acc, R.mul(A.at(k, i), v[i]));
        t[j] = acc;
        if (j <= k) {
          std::vector<u64> nv(m, 0);
          for (int i = 0; i < m; ++i) {
            u64 a2 = 0;
            for (int l = 0; l < m; ++l) a2 = R.add(a2, R.mul(A.at(i, l), v[l]));
            nv[i] = a2;
          }
          v = nv;
        }
      }
    }
    // new C = Toeplitz(t) * old C
    std::vector<u64> nc(k + 2, 0);
    for (int i = 0; i <= k + 1; ++i) {
      u64 acc = 0;
      for (int j = 0; j <= std::min<int>(i, (int)C.size() - 1); ++j)
        acc = R.add(acc, R.mul(t[i - j], C[j]));
      nc[i] = acc;
    }
    C = nc;
  }
  // C holds ±charpoly coefficients highest-first; normalize monic lowest-first
  std::vector<u64> out(n + 1, 0);
  u64 lead = C[0];
  u64 scale = (lead == 1) ? 1 : R.neg(1);
  check(lead == 1 || lead == R.neg(1), "Internal", "berkowitz leading coefficient");
  for (int i = 0; i <= n; ++i) out[n - i] = R.mul(C[i], scale);
  return out;
}

int newton_unit_roots(const RingCtx& R, const std::vector<u64>& poly) {
  int n = (int)poly.size() - 1;
  int i0 = n;
  for (int i = 0; i <= n; ++i)
    if (poly[i] % (u64)R.p != 0) {
      i0 = i;
      break;
    }
  return n - i0;
}

SparseMat stable_idempotent(const SparseMat& A) {
  check(A.rows == A.cols, "ShapeMismatch", "idempotent of non-square matrix");
  OrdinaryData od = stable_idempotent(A.dense(), nullptr);
  return SparseMat::from_dense(od.e);
}

}  // namespace ptower
