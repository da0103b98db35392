#include "ptower/mat.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace ptower {

Mat Mat::identity(RingCtx R, int n) {
  Mat I(R, n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1 % R.ps;
  return I;
}

bool Mat::is_zero() const {
  for (u64 v : a)
    if (v) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat T(R, cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) T.at(j, i) = at(i, j);
  return T;
}

namespace {

// Accumulation strategy: when p^s < 2^20 products fit in 2^40 and we can sum
// ~2^23 terms in a u64 between reductions; otherwise reduce per block of 8.
void mul_rows(const Mat& A, const Mat& B, Mat& C, int i0, int i1) {
  const RingCtx& R = A.R;
  const int n = A.cols, m = B.cols;
  const bool small = R.ps < (u64(1) << 20);
  for (int i = i0; i < i1; ++i) {
    const u64* arow = &A.a[(size_t)i * n];
    u64* crow = &C.a[(size_t)i * m];
    for (int k = 0; k < n; ++k) {
      u64 aik = arow[k];
      if (!aik) continue;
      const u64* brow = &B.a[(size_t)k * m];
      if (small) {
        for (int j = 0; j < m; ++j) crow[j] += aik * brow[j];
      } else {
        for (int j = 0; j < m; ++j) crow[j] = (u64)(((i128)aik * brow[j] + crow[j]) % R.ps);
      }
    }
    if (small) {
      // safe: n * (p^s)^2 < 2^23 * 2^40 = 2^63 requires periodic folding for huge n
      for (int j = 0; j < m; ++j) crow[j] %= R.ps;
    }
  }
}

}  // namespace

Mat mul(const Mat& A, const Mat& B, int threads) {
  check(A.cols == B.rows && A.R == B.R, "ShapeMismatch", "matrix product shapes");
  Mat C(A.R, A.rows, B.cols);
  const bool small = A.R.ps < (u64(1) << 20);
  if (small && A.cols > (1 << 22)) fail("Overflow", "dimension too large for fast accumulate");
  int nt = threads > 0 ? threads : (int)std::thread::hardware_concurrency();
  if (nt < 1) nt = 1;
  if ((size_t)A.rows * A.cols * B.cols < 1u << 22 || nt == 1) {
    mul_rows(A, B, C, 0, A.rows);
    return C;
  }
  nt = std::min(nt, A.rows);
  std::vector<std::thread> ws;
  int chunk = (A.rows + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    int i0 = t * chunk, i1 = std::min(A.rows, i0 + chunk);
    if (i0 >= i1) break;
    ws.emplace_back(mul_rows, std::cref(A), std::cref(B), std::ref(C), i0, i1);
  }
  for (auto& w : ws) w.join();
  return C;
}

Mat add(const Mat& A, const Mat& B) {
  check(A.rows == B.rows && A.cols == B.cols && A.R == B.R, "ShapeMismatch", "matrix sum shapes");
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.R.add(C.a[i], B.a[i]);
  return C;
}

Mat sub(const Mat& A, const Mat& B) {
  check(A.rows == B.rows && A.cols == B.cols && A.R == B.R, "ShapeMismatch", "matrix diff shapes");
  Mat C = A;
  for (size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.R.sub(C.a[i], B.a[i]);
  return C;
}

Mat scal(u64 c, const Mat& A) {
  Mat C = A;
  c %= A.R.ps;
  for (auto& v : C.a) v = A.R.mul(v, c);
  return C;
}

std::vector<u64> matvec(const Mat& A, const std::vector<u64>& x) {
  check((int)x.size() == A.cols, "ShapeMismatch", "matrix-vector shapes");
  std::vector<u64> y(A.rows, 0);
  const bool small = A.R.ps < (u64(1) << 20);
  for (int i = 0; i < A.rows; ++i) {
    if (small) {
      u64 acc = 0;
      const u64* row = &A.a[(size_t)i * A.cols];
      for (int j = 0; j < A.cols; ++j) acc += row[j] * x[j];
      y[i] = acc % A.R.ps;
    } else {
      i128 acc = 0;
      const u64* row = &A.a[(size_t)i * A.cols];
      for (int j = 0; j < A.cols; ++j) acc = (acc + (i128)row[j] * x[j]) % A.R.ps;
      y[i] = (u64)acc;
    }
  }
  return y;
}

Mat pow2k(const Mat& A, int k, int threads) {
  Mat B = A;
  for (int i = 0; i < k; ++i) B = mul(B, B, threads);
  return B;
}

void SparseMat::canonicalize() {
  std::sort(entries.begin(), entries.end());
  std::vector<std::tuple<int, int, u64>> out;
  for (auto& [i, j, v] : entries) {
    if (!out.empty() && std::get<0>(out.back()) == i && std::get<1>(out.back()) == j) {
      std::get<2>(out.back()) = R.add(std::get<2>(out.back()), v % R.ps);
    } else {
      out.emplace_back(i, j, v % R.ps);
    }
  }
  entries.clear();
  for (auto& [i, j, v] : out)
    if (v) entries.emplace_back(i, j, v);
}

Mat SparseMat::dense() const {
  Mat A(R, rows, cols);
  for (auto& [i, j, v] : entries) A.at(i, j) = R.add(A.at(i, j), v);
  return A;
}

SparseMat SparseMat::from_dense(const Mat& A) {
  SparseMat S(A.R, A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j)
      if (A.at(i, j)) S.entries.emplace_back(i, j, A.at(i, j));
  return S;
}

void write_sparse(std::ostream& os, const SparseMat& A) {
  os << A.R.p << ' ' << A.R.s << ' ' << A.rows << ' ' << A.cols << '\n';
  for (auto& [i, j, v] : A.entries) os << i << ' ' << j << ' ' << v << '\n';
}

SparseMat read_sparse(std::istream& is) {
  i64 p;
  int s, m, n;
  check((bool)(is >> p >> s >> m >> n), "BadFormat", "sparse matrix header");
  SparseMat A(RingCtx(p, s), m, n);
  int i, j;
  u64 v;
  while (is >> i >> j >> v) {
    check(0 <= i && i < m && 0 <= j && j < n && v < A.R.ps, "BadFormat", "sparse matrix triple");
    A.entries.emplace_back(i, j, v);
  }
  A.canonicalize();
  return A;
}

}  // namespace ptower
