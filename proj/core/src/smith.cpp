#include "ptower/smith.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace ptower {

namespace {

// exact division by p^e of a canonical representative (valuation >= e assumed)
u64 divp(const RingCtx& R, u64 x, int e) {
  u64 q = x;
  for (int i = 0; i < e; ++i) q /= (u64)R.p;
  return q;
}

}  // namespace

SmithForm smith_form(const Mat& A) {
  const RingCtx R = A.R;
  int m = A.rows, n = A.cols;
  SmithForm S;
  S.U = Mat::identity(R, m);
  S.V = Mat::identity(R, n);
  S.D = A;
  Mat& U = S.U;
  Mat& V = S.V;
  Mat& D = S.D;
  int steps = std::min(m, n);
  for (int t = 0; t < steps; ++t) {
    // pivot: minimal valuation, ties (row, col) lex
    int bi = -1, bj = -1, bv = R.s + 1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j) {
        u64 x = D.at(i, j);
        if (!x) continue;
        int v = R.val(x);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) {
      for (int k = t; k < steps; ++k) S.divisor_exp.push_back(R.s);
      break;
    }
    if (bi != t) {
      for (int j = 0; j < n; ++j) std::swap(D.at(t, j), D.at(bi, j));
      for (int j = 0; j < m; ++j) std::swap(U.at(t, j), U.at(bi, j));
    }
    if (bj != t) {
      for (int i = 0; i < m; ++i) std::swap(D.at(i, t), D.at(i, bj));
      for (int i = 0; i < n; ++i) std::swap(V.at(i, t), V.at(i, bj));
    }
    int e = bv;
    u64 uinv = R.inv_unit(R.unit_part(D.at(t, t)));
    for (int j = 0; j < n; ++j) D.at(t, j) = R.mul(D.at(t, j), uinv);
    for (int j = 0; j < m; ++j) U.at(t, j) = R.mul(U.at(t, j), uinv);
    // clear column t
    for (int i = t + 1; i < m; ++i) {
      u64 x = D.at(i, t);
      if (!x) continue;
      u64 q = divp(R, x, e);
      for (int j = 0; j < n; ++j) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(t, j)));
      for (int j = 0; j < m; ++j) U.at(i, j) = R.sub(U.at(i, j), R.mul(q, U.at(t, j)));
    }
    // clear row t
    for (int j = t + 1; j < n; ++j) {
      u64 x = D.at(t, j);
      if (!x) continue;
      u64 q = divp(R, x, e);
      for (int i = 0; i < m; ++i) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(i, t)));
      for (int i = 0; i < n; ++i) V.at(i, j) = R.sub(V.at(i, j), R.mul(q, V.at(i, t)));
    }
    S.divisor_exp.push_back(e);
  }
  while ((int)S.divisor_exp.size() < steps) S.divisor_exp.push_back(R.s);
  return S;
}

SmithForm smith_form(const SparseMat& A) { return smith_form(A.dense()); }

RowEchelon::RowEchelon(const Mat& A, bool keep_transform)
    : R_(A.R), m_(A.rows), n_(A.cols), E_(A), keepT_(keep_transform) {
  if (keepT_) T_ = Mat::identity(R_, m_);
  colperm_.resize(n_);
  for (int j = 0; j < n_; ++j) colperm_[j] = j;
  int t = 0;
  while (t < m_ && t < n_) {
    int bi = -1, bj = -1, bv = R_.s + 1;
    for (int i = t; i < m_ && bv > 0; ++i)
      for (int j = t; j < n_; ++j) {
        u64 x = E_.at(i, j);
        if (!x) continue;
        int v = R_.val(x);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
          if (bv == 0) break;
        }
      }
    if (bi < 0) break;
    if (bi != t)
      for (int j = 0; j < n_; ++j) std::swap(E_.at(t, j), E_.at(bi, j));
    if (keepT_ && bi != t)
      for (int j = 0; j < m_; ++j) std::swap(T_.at(t, j), T_.at(bi, j));
    if (bj != t) {
      for (int i = 0; i < m_; ++i) std::swap(E_.at(i, t), E_.at(i, bj));
      std::swap(colperm_[t], colperm_[bj]);
    }
    int e = bv;
    u64 uinv = R_.inv_unit(R_.unit_part(E_.at(t, t)));
    for (int j = 0; j < n_; ++j) E_.at(t, j) = R_.mul(E_.at(t, j), uinv);
    if (keepT_)
      for (int j = 0; j < m_; ++j) T_.at(t, j) = R_.mul(T_.at(t, j), uinv);
    for (int i = t + 1; i < m_; ++i) {
      u64 x = E_.at(i, t);
      if (!x) continue;
      u64 q = divp(R_, x, e);
      for (int j = 0; j < n_; ++j) E_.at(i, j) = R_.sub(E_.at(i, j), R_.mul(q, E_.at(t, j)));
      if (keepT_)
        for (int j = 0; j < m_; ++j) T_.at(i, j) = R_.sub(T_.at(i, j), R_.mul(q, T_.at(t, j)));
    }
    piv_.emplace_back(t, e);
    ++t;
  }
}

int RowEchelon::rank_at_full_precision() const {
  int r = 0;
  for (auto& [c, e] : piv_)
    if (e == 0) ++r;
  return r;
}

std::optional<std::vector<u64>> RowEchelon::solve(const std::vector<u64>& b) const {
  check(keepT_, "Internal", "RowEchelon built without transform");
  check((int)b.size() == m_, "ShapeMismatch", "solve rhs");
  std::vector<u64> bp = matvec(T_, b);
  int npiv = (int)piv_.size();
  for (int i = npiv; i < m_; ++i)
    if (bp[i]) return std::nullopt;
  std::vector<u64> w(n_, 0);  // in permuted coordinates
  for (int t = npiv - 1; t >= 0; --t) {
    int e = piv_[t].second;
    u64 rhs = bp[t];
    // subtract already-solved later pivot columns and (zero) free columns
    const bool small = R_.ps < (u64(1) << 20);
    if (small) {
      u64 acc = 0;
      for (int j = t + 1; j < n_; ++j) acc += E_.at(t, j) * w[j];
      rhs = R_.sub(rhs, acc % R_.ps);
    } else {
      i128 acc = 0;
      for (int j = t + 1; j < n_; ++j) acc = (acc + (i128)E_.at(t, j) * w[j]) % R_.ps;
      rhs = R_.sub(rhs, (u64)acc);
    }
    if (R_.val(rhs) < e) return std::nullopt;
    w[t] = divp(R_, rhs, e);
  }
  std::vector<u64> x(n_, 0);
  for (int j = 0; j < n_; ++j) x[colperm_[j]] = w[j];
  return x;
}

std::vector<std::vector<u64>> RowEchelon::kernel() const {
  // Generators: for each free column a back-substituted vector, and for each
  // pivot with exponent e a p^{s-e}-torsion generator.
  std::vector<std::vector<u64>> gens;
  int npiv = (int)piv_.size();
  auto backsub = [&](std::vector<u64> w, int below) -> std::optional<std::vector<u64>> {
    for (int t = below; t >= 0; --t) {
      int e = piv_[t].second;
      i128 acc = 0;
      for (int j = t + 1; j < n_; ++j) acc = (acc + (i128)E_.at(t, j) * w[j]) % R_.ps;
      u64 rhs = R_.neg((u64)acc);
      if (R_.val(rhs) < e) return std::nullopt;
      w[t] = divp(R_, rhs, e);
    }
    std::vector<u64> x(n_, 0);
    for (int j = 0; j < n_; ++j) x[colperm_[j]] = w[j];
    return x;
  };
  for (int j = npiv; j < n_; ++j) {
    std::vector<u64> w(n_, 0);
    w[j] = 1;
    auto x = backsub(w, npiv - 1);
    check(x.has_value(), "Internal", "free-column kernel generator must exist");
    gens.push_back(*x);
  }
  for (int t = npiv - 1; t >= 0; --t) {
    int e = piv_[t].second;
    if (e == 0) continue;
    std::vector<u64> w(n_, 0);
    w[t] = R_.ppow(R_.s - e);
    // make rows above consistent
    auto x = backsub(w, t - 1);
    check(x.has_value(), "Internal", "torsion kernel generator must exist");
    gens.push_back(*x);
  }
  return gens;
}

std::optional<Mat> solve_mod(const Mat& A, const Mat& B, const Mat* Rel) {
  check(A.rows == B.rows, "ShapeMismatch", "solve_mod");
  int k = A.cols, t = Rel ? Rel->cols : 0;
  Mat M(A.R, A.rows, k + t);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < k; ++j) M.at(i, j) = A.at(i, j);
    for (int j = 0; j < t; ++j) M.at(i, k + j) = Rel->at(i, j);
  }
  RowEchelon ech(M);
  Mat X(A.R, k, B.cols);
  std::vector<u64> b(A.rows);
  for (int c = 0; c < B.cols; ++c) {
    for (int i = 0; i < A.rows; ++i) b[i] = B.at(i, c);
    auto w = ech.solve(b);
    if (!w) return std::nullopt;
    for (int i = 0; i < k; ++i) X.at(i, c) = (*w)[i];
  }
  return X;
}

Mat inv(const Mat& A) {
  check(A.rows == A.cols, "ShapeMismatch", "inverse of non-square matrix");
  auto X = solve_mod(A, Mat::identity(A.R, A.rows), nullptr);
  check(X.has_value(), "NotInvertible", "matrix is singular over Z/p^s");
  // A * X = I and A square over a finite ring forces X * A = I as well.
  return *X;
}

bool is_invertible(const Mat& A) {
  if (A.rows != A.cols) return false;
  RowEchelon ech(A, false);
  return (int)ech.pivots().size() == A.rows && ech.rank_at_full_precision() == A.rows;
}

bool in_colspan(const Mat& A, const std::vector<u64>& b) {
  RowEchelon ech(A);
  return ech.solve(b).has_value();
}

Presentation::Presentation(RingCtx R, int ncoords, const std::vector<SparseVec>& relations)
    : R_(R), n_(ncoords) {
  subst_of_coord_.assign(n_, -1);
  // sparse columns, kept canonical (sorted by coord, nonzero)
  std::vector<std::map<int, u64>> cols;
  cols.reserve(relations.size());
  for (auto& rel : relations) {
    std::map<int, u64> c;
    for (auto& [i, v] : rel) {
      u64 w = v % R_.ps;
      if (!w) continue;
      auto it = c.find(i);
      if (it == c.end())
        c.emplace(i, w);
      else {
        it->second = R_.add(it->second, w);
        if (!it->second) c.erase(it);
      }
    }
    if (!c.empty()) cols.push_back(std::move(c));
  }
  std::vector<bool> coldead(cols.size(), false);
  std::vector<std::set<int>> rowcols(n_);  // coord -> set of col ids
  std::vector<int> rownnz(n_, 0);
  for (int c = 0; c < (int)cols.size(); ++c)
    for (auto& [i, v] : cols[c]) {
      rowcols[i].insert(c);
      rownnz[i]++;
    }

  // unit-pivot sparse elimination, deterministic Markowitz
  while (true) {
    long best = -1;
    int br = -1, bc = -1;
    for (int c = 0; c < (int)cols.size(); ++c) {
      if (coldead[c]) continue;
      for (auto& [i, v] : cols[c]) {
        if (v % (u64)R_.p == 0) continue;
        long cost = (long)(rownnz[i] - 1) * (long)(cols[c].size() - 1);
        if (best < 0 || cost < best || (cost == best && (i < br || (i == br && c < bc)))) {
          best = cost;
          br = i;
          bc = c;
        }
      }
    }
    if (br < 0) break;
    // normalize pivot column so entry at br is 1
    u64 uinv = R_.inv_unit(cols[bc][br]);
    for (auto& [i, v] : cols[bc]) v = R_.mul(v, uinv);
    // eliminate coord br from all other columns
    std::vector<int> touched(rowcols[br].begin(), rowcols[br].end());
    for (int c : touched) {
      if (c == bc || coldead[c]) continue;
      auto it = cols[c].find(br);
      if (it == cols[c].end()) continue;
      u64 q = it->second;
      for (auto& [i, v] : cols[bc]) {
        auto jt = cols[c].find(i);
        u64 delta = R_.mul(q, v);
        if (jt == cols[c].end()) {
          if (delta) {
            cols[c].emplace(i, R_.neg(delta));
            rowcols[i].insert(c);
            rownnz[i]++;
          }
        } else {
          jt->second = R_.sub(jt->second, delta);
          if (!jt->second) {
            cols[c].erase(jt);
            rowcols[i].erase(c);
            rownnz[i]--;
          }
        }
      }
    }
    // record substitution coord ≡ -(rest of pivot column)
    Subst sb;
    sb.coord = br;
    for (auto& [i, v] : cols[bc])
      if (i != br) sb.expr.emplace_back(i, R_.neg(v));
    subst_of_coord_[br] = (int)substs_.size();
    substs_.push_back(std::move(sb));
    // retire pivot column and coord
    for (auto& [i, v] : cols[bc]) {
      rowcols[i].erase(bc);
      rownnz[i]--;
    }
    cols[bc].clear();
    coldead[bc] = true;
  }

  residual_index_.assign(n_, -1);
  for (int i = 0; i < n_; ++i)
    if (subst_of_coord_[i] < 0) {
      residual_index_[i] = (int)residual_.size();
      residual_.push_back(i);
    }
  int r = (int)residual_.size();

  // residual relations on surviving coords -> dense Smith
  std::vector<std::vector<u64>> rescols;
  for (int c = 0; c < (int)cols.size(); ++c) {
    if (coldead[c] || cols[c].empty()) continue;
    std::vector<u64> v(r, 0);
    for (auto& [i, w] : cols[c]) v[residual_index_[i]] = w;
    rescols.push_back(std::move(v));
  }
  Mat Res(R_, r, (int)rescols.size());
  for (int c = 0; c < (int)rescols.size(); ++c)
    for (int i = 0; i < r; ++i) Res.at(i, c) = rescols[c][i];
  if (Res.cols == 0) {
    Ures_ = Mat::identity(R_, r);
    UresInv_ = Ures_;
    modexp_all_.assign(r, R_.s);
  } else {
    SmithForm S = smith_form(Res);
    Ures_ = S.U;
    UresInv_ = inv(S.U);
    modexp_all_.assign(r, R_.s);
    for (int i = 0; i < (int)S.divisor_exp.size(); ++i) modexp_all_[i] = S.divisor_exp[i];
  }
  for (int i = 0; i < r; ++i)
    if (modexp_all_[i] > 0) {
      alive_.push_back(i);
      modexp_alive_.push_back(modexp_all_[i]);
      if (modexp_all_[i] == R_.s) free_rank_++;
    }
}

std::vector<u64> Presentation::reduce(const std::vector<u64>& chain) const {
  check((int)chain.size() == n_, "ShapeMismatch", "reduce");
  std::vector<u64> x = chain;
  for (auto& sb : substs_) {
    u64 c = x[sb.coord];
    if (!c) continue;
    x[sb.coord] = 0;
    for (auto& [i, v] : sb.expr) x[i] = R_.add(x[i], R_.mul(c, v));
  }
  int r = (int)residual_.size();
  std::vector<u64> xr(r);
  for (int i = 0; i < r; ++i) xr[i] = x[residual_[i]];
  std::vector<u64> y = matvec(Ures_, xr);
  std::vector<u64> out(alive_.size());
  for (size_t k = 0; k < alive_.size(); ++k) {
    int i = alive_[k];
    int e = modexp_all_[i];
    out[k] = (e == R_.s) ? y[i] : (y[i] % R_.ppow(e));
  }
  return out;
}

std::vector<u64> Presentation::reduce_sparse(const SparseVec& chain) const {
  std::vector<u64> x(n_, 0);
  for (auto& [i, v] : chain) x[i] = R_.add(x[i], v % R_.ps);
  return reduce(x);
}

std::vector<u64> Presentation::lift(const std::vector<u64>& canon) const {
  check(canon.size() == alive_.size(), "ShapeMismatch", "lift");
  int r = (int)residual_.size();
  std::vector<u64> y(r, 0);
  for (size_t k = 0; k < alive_.size(); ++k) y[alive_[k]] = canon[k] % R_.ps;
  std::vector<u64> xr = matvec(UresInv_, y);
  std::vector<u64> x(n_, 0);
  for (int i = 0; i < r; ++i) x[residual_[i]] = xr[i];
  return x;
}

bool Presentation::is_zero(const std::vector<u64>& chain) const {
  auto y = reduce(chain);
  for (u64 v : y)
    if (v) return false;
  return true;
}

Mat Presentation::reduce_operator(
    const std::function<std::vector<u64>(const std::vector<u64>&)>& op) const {
  int d = dim();
  Mat M(R_, d, d);
  std::vector<u64> e(d, 0);
  for (int j = 0; j < d; ++j) {
    e[j] = 1;
    auto img = reduce(op(lift(e)));
    e[j] = 0;
    for (int i = 0; i < d; ++i) M.at(i, j) = img[i];
  }
  return M;
}

void Presentation::canonicalize_rows(Mat& M) const {
  check(M.rows == dim(), "ShapeMismatch", "canonicalize_rows");
  for (int i = 0; i < M.rows; ++i) {
    int e = modexp_alive_[i];
    if (e == R_.s) continue;
    u64 m = R_.ppow(e);
    for (int j = 0; j < M.cols; ++j) M.at(i, j) %= m;
  }
}

Mat Presentation::canonical_relations() const {
  int d = dim();
  Mat Rel(R_, d, d);
  for (int i = 0; i < d; ++i) Rel.at(i, i) = R_.ppow(modexp_alive_[i]);
  return Rel;
}

}  // namespace ptower
