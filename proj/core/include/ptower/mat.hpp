#pragma once

#include <iosfwd>
#include <vector>

#include "ptower/ring.hpp"

namespace ptower {

// Dense row-major matrix over Z/p^s.
struct Mat {
  RingCtx R;
  int rows = 0, cols = 0;
  std::vector<u64> a;

  Mat() = default;
  Mat(RingCtx r, int m, int n) : R(r), rows(m), cols(n), a((size_t)m * n, 0) {}

  u64& at(int i, int j) { return a[(size_t)i * cols + j]; }
  u64 at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Mat identity(RingCtx R, int n);
  static Mat zero(RingCtx R, int m, int n) { return Mat(R, m, n); }

  bool is_zero() const;
  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  Mat transpose() const;
};

Mat mul(const Mat& A, const Mat& B, int threads = 0);
Mat add(const Mat& A, const Mat& B);
Mat sub(const Mat& A, const Mat& B);
Mat scal(u64 c, const Mat& A);
std::vector<u64> matvec(const Mat& A, const std::vector<u64>& x);
Mat pow2k(const Mat& A, int k, int threads = 0);  // A^(2^k)

// Sparse matrix in triplet form. Invariants: no duplicate (row,col),
// values nonzero mod p^s. Used for relation matrices and the cache format.
struct SparseMat {
  RingCtx R;
  int rows = 0, cols = 0;
  std::vector<std::tuple<int, int, u64>> entries;

  SparseMat() = default;
  SparseMat(RingCtx r, int m, int n) : R(r), rows(m), cols(n) {}

  void push(int i, int j, u64 v) {
    if (v % R.ps == 0) return;
    entries.emplace_back(i, j, v % R.ps);
  }
  void canonicalize();  // sort, merge duplicates, drop zeros
  Mat dense() const;
  static SparseMat from_dense(const Mat& A);
};

// Line-oriented text format: header "p s rows cols", then one
// "row col value" triple per line, values in [0, p^s).
void write_sparse(std::ostream& os, const SparseMat& A);
SparseMat read_sparse(std::istream& is);

}  // namespace ptower
