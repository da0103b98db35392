#include "ptower/weights.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace ptower {

int coord_count(GroupTag tag) {
  switch (tag) {
    case GroupTag::GL2: return 2;
    case GroupTag::GL2xGL2: return 4;
    case GroupTag::GSp4Weights: return 3;  // (a, b; c) with similitude c
  }
  return 0;
}

const char* tag_name(GroupTag tag) {
  switch (tag) {
    case GroupTag::GL2: return "GL2";
    case GroupTag::GL2xGL2: return "GL2xGL2";
    case GroupTag::GSp4Weights: return "GSp4Weights";
  }
  return "?";
}

i64 pair(const Weight& w, const Cocharacter& c) {
  check(w.tag == c.tag, "TagMismatch", "pairing weight and cocharacter of different groups");
  i64 acc = 0;
  for (size_t i = 0; i < w.k.size(); ++i) acc += w.k[i] * c.e[i];
  return acc;
}

bool is_dominant(const Weight& w) {
  switch (w.tag) {
    case GroupTag::GL2: return w.k[0] >= w.k[1];
    case GroupTag::GL2xGL2: return w.k[0] >= w.k[1] && w.k[2] >= w.k[3];
    case GroupTag::GSp4Weights: return w.k[0] >= w.k[1] && w.k[1] >= 0;
  }
  return false;
}

bool is_sigma_plus(const Cocharacter& c) {
  switch (c.tag) {
    case GroupTag::GL2: return c.e[0] >= c.e[1];
    case GroupTag::GL2xGL2: return c.e[0] >= c.e[1] && c.e[2] >= c.e[3];
    case GroupTag::GSp4Weights:
      // simple roots e1-e2 and 2e2-c for the standard Borel
      return c.e[0] >= c.e[1] && 2 * c.e[1] >= c.e[2];
  }
  return false;
}

bool is_sigma_plusplus(const Cocharacter& c) {
  switch (c.tag) {
    case GroupTag::GL2: return c.e[0] > c.e[1];
    case GroupTag::GL2xGL2: return c.e[0] > c.e[1] && c.e[2] > c.e[3];
    case GroupTag::GSp4Weights: return c.e[0] > c.e[1] && 2 * c.e[1] > c.e[2];
  }
  return false;
}

Weight add(const Weight& a, const Weight& b) {
  check(a.tag == b.tag, "TagMismatch", "weight sum");
  std::vector<i64> k(a.k.size());
  for (size_t i = 0; i < k.size(); ++i) k[i] = a.k[i] + b.k[i];
  return Weight(a.tag, k);
}

Weight negate(const Weight& a) {
  std::vector<i64> k(a.k.size());
  for (size_t i = 0; i < k.size(); ++i) k[i] = -a.k[i];
  return Weight(a.tag, k);
}

Weight dual_weight(const Weight& a) {
  switch (a.tag) {
    case GroupTag::GL2: return Weight(a.tag, {-a.k[1], -a.k[0]});
    case GroupTag::GL2xGL2: return Weight(a.tag, {-a.k[1], -a.k[0], -a.k[3], -a.k[2]});
    default: fail("TagMismatch", "dual weight only for the GL2 family");
  }
}

SubTorus full_torus(GroupTag tag) {
  int n = coord_count(tag);
  SubTorus t{tag, {}};
  for (int i = 0; i < n; ++i) {
    std::vector<i64> b(n, 0);
    b[i] = 1;
    t.basis.push_back(b);
  }
  return t;
}

SubTorus trivial_torus(GroupTag tag) { return SubTorus{tag, {}}; }

SubTorus default_s0_gl2() { return SubTorus{GroupTag::GL2, {{1, 0}}}; }

SmithZ smith_z(std::vector<std::vector<i64>> A) {
  SmithZ S;
  int m = (int)A.size();
  int n = m ? (int)A[0].size() : 0;
  S.U.assign(m, std::vector<i64>(m, 0));
  S.V.assign(n, std::vector<i64>(n, 0));
  for (int i = 0; i < m; ++i) S.U[i][i] = 1;
  for (int j = 0; j < n; ++j) S.V[j][j] = 1;
  S.D = A;
  auto& D = S.D;
  int t = 0;
  while (t < m && t < n) {
    // locate minimal |entry|
    int bi = -1, bj = -1;
    i64 best = 0;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (D[i][j] != 0 && (bi < 0 || std::llabs(D[i][j]) < best)) {
          best = std::llabs(D[i][j]);
          bi = i;
          bj = j;
        }
    if (bi < 0) break;
    std::swap(D[t], D[bi]);
    std::swap(S.U[t], S.U[bi]);
    for (int i = 0; i < m; ++i) std::swap(D[i][t], D[i][bj]);
    for (int i = 0; i < n; ++i) std::swap(S.V[i][t], S.V[i][bj]);
    bool again = false;
    for (int i = t + 1; i < m; ++i) {
      if (D[i][t] == 0) continue;
      i64 q = D[i][t] / D[t][t];
      for (int j = 0; j < n; ++j) D[i][j] -= q * D[t][j];
      for (int j = 0; j < m; ++j) S.U[i][j] -= q * S.U[t][j];
      if (D[i][t] != 0) again = true;
    }
    for (int j = t + 1; j < n; ++j) {
      if (D[t][j] == 0) continue;
      i64 q = D[t][j] / D[t][t];
      for (int i = 0; i < m; ++i) D[i][j] -= q * D[i][t];
      for (int i = 0; i < n; ++i) S.V[i][j] -= q * S.V[i][t];
      if (D[t][j] != 0) again = true;
    }
    if (again) continue;  // euclidean steps until the pivot divides its row/col
    if (D[t][t] < 0) {
      for (int j = 0; j < n; ++j) D[t][j] = -D[t][j];
      for (int j = 0; j < m; ++j) S.U[t][j] = -S.U[t][j];
    }
    ++t;
  }
  S.rank = t;
  return S;
}

SubTorus saturate(GroupTag tag, const std::vector<std::vector<i64>>& gens) {
  int n = coord_count(tag);
  if (gens.empty()) return trivial_torus(tag);
  // rows = generators; saturation basis from the V-transform of the Smith form
  // of the generator matrix (columns of V^{-1}... use the row-space view):
  // Smith of G (g x n): U G V = D. Row space saturation = first r rows of V^{-1}
  // ... easier: saturation of the row lattice of G = row lattice of D V^{-1},
  // i.e. spanned by the first r columns of V, transposed appropriately.
  std::vector<std::vector<i64>> G = gens;
  SmithZ S = smith_z(G);
  // U G V = D => G = U^{-1} D V^{-1}; row space of G = row space of D V^{-1}.
  // Saturated row space is spanned by the first r rows of V^{-1}. Compute
  // V^{-1} by smith on V (unimodular): easier: V is unimodular, invert by
  // Gauss over Q with exact integer ops (entries stay integral).
  int r = S.rank;
  int nn = (int)S.V.size();
  // invert V (unimodular integer matrix) via adjugate-free integer Gauss-Jordan
  std::vector<std::vector<i64>> Vm = S.V, Inv(nn, std::vector<i64>(nn, 0));
  for (int i = 0; i < nn; ++i) Inv[i][i] = 1;
  for (int c = 0; c < nn; ++c) {
    int piv = -1;
    for (int i = c; i < nn; ++i)
      if (std::llabs(Vm[i][c]) == 1) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // generic integer pivoting: find gcd 1 combination (unimodular matrices
      // always admit a +-1 pivot after euclidean row ops)
      for (int round = 0; round < 64 && piv < 0; ++round) {
        int bi = -1;
        i64 best = 0;
        for (int i = c; i < nn; ++i)
          if (Vm[i][c] != 0 && (bi < 0 || std::llabs(Vm[i][c]) < best)) {
            best = std::llabs(Vm[i][c]);
            bi = i;
          }
        check(bi >= 0, "Internal", "singular unimodular matrix");
        for (int i = c; i < nn; ++i) {
          if (i == bi || Vm[i][c] == 0) continue;
          i64 q = Vm[i][c] / Vm[bi][c];
          for (int j = 0; j < nn; ++j) {
            Vm[i][j] -= q * Vm[bi][j];
            Inv[i][j] -= q * Inv[bi][j];
          }
        }
        if (std::llabs(Vm[bi][c]) == 1) piv = bi;
      }
      check(piv >= 0, "Internal", "failed to invert unimodular matrix");
    }
    std::swap(Vm[c], Vm[piv]);
    std::swap(Inv[c], Inv[piv]);
    if (Vm[c][c] < 0) {
      for (int j = 0; j < nn; ++j) {
        Vm[c][j] = -Vm[c][j];
        Inv[c][j] = -Inv[c][j];
      }
    }
    for (int i = 0; i < nn; ++i) {
      if (i == c || Vm[i][c] == 0) continue;
      i64 q = Vm[i][c];
      for (int j = 0; j < nn; ++j) {
        Vm[i][j] -= q * Vm[c][j];
        Inv[i][j] -= q * Inv[c][j];
      }
    }
  }
  SubTorus out{tag, {}};
  for (int i = 0; i < r; ++i) {
    std::vector<i64> row(n);
    for (int j = 0; j < n; ++j) row[j] = Inv[i][j];
    out.basis.push_back(row);
  }
  return out;
}

namespace {

// x in row lattice of B?
bool in_row_lattice(const std::vector<std::vector<i64>>& B, const std::vector<i64>& x) {
  if (B.empty()) {
    for (i64 v : x)
      if (v) return false;
    return true;
  }
  // solve y B = x over Z via Smith of B
  SmithZ S = smith_z(B);
  // U B V = D; y B = x  <=>  (y U^{-1}) D = x V; set z = y U^{-1}: z D = x V
  int n = (int)x.size();
  std::vector<i64> xv(n, 0);
  for (int j = 0; j < n; ++j) {
    i64 acc = 0;
    for (int i = 0; i < n; ++i) acc += x[i] * S.V[i][j];
    xv[j] = acc;
  }
  int m = (int)B.size();
  for (int j = 0; j < n; ++j) {
    i64 d = (j < m && j < n) ? S.D[j][j] : 0;
    if (j < S.rank) {
      if (xv[j] % d != 0) return false;
    } else {
      if (xv[j] != 0) return false;
    }
  }
  return true;
}

}  // namespace

bool contains(const SubTorus& big, const SubTorus& small) {
  check(big.tag == small.tag, "TagMismatch", "torus containment");
  for (auto& g : small.basis)
    if (!in_row_lattice(big.basis, g)) return false;
  return true;
}

bool torus_equal(const SubTorus& a, const SubTorus& b) { return contains(a, b) && contains(b, a); }

bool trivial_on(const Weight& w, const SubTorus& t) {
  check(w.tag == t.tag, "TagMismatch", "weight restriction to subtorus");
  for (auto& b : t.basis) {
    i64 acc = 0;
    for (size_t i = 0; i < b.size(); ++i) acc += w.k[i] * b[i];
    if (acc != 0) return false;
  }
  return true;
}

bool admissible_weight(const Weight& w, const SubTorus& s0) {
  return is_dominant(w) && trivial_on(w, s0);
}

}  // namespace ptower
