#include "ptower/branching.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ptower {

namespace {

i64 gcd_i64(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Frac::Frac(i64 n, i64 d) { *this = norm(n, d); }

Frac Frac::norm(i128 n, i128 d) {
  check(d != 0, "DivisionByZero", "fraction with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 a = n < 0 ? -n : n, b = d;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a == 0) a = 1;
  n /= a;
  d /= a;
  check(n <= INT64_MAX && n >= INT64_MIN && d <= INT64_MAX, "Overflow", "fraction overflow");
  Frac f;
  f.num = (i64)n;
  f.den = (i64)d;
  return f;
}

Frac Frac::operator/(const Frac& o) const {
  check(o.num != 0, "DivisionByZero", "dividing by zero fraction");
  return norm((i128)num * o.den, (i128)den * o.num);
}

namespace {

using QVec = std::vector<Frac>;
using QMat = std::vector<QVec>;

QMat qmat(int m, int n) { return QMat(m, QVec(n)); }

// kernel basis of A (right kernel) over Q via RREF
std::vector<QVec> qkernel(QMat A) {
  int m = (int)A.size();
  int n = m ? (int)A[0].size() : 0;
  std::vector<int> pivcol;
  int r = 0;
  for (int c = 0; c < n && r < m; ++c) {
    int piv = -1;
    for (int i = r; i < m; ++i)
      if (!A[i][c].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(A[r], A[piv]);
    Frac inv = Frac(1) / A[r][c];
    for (int j = c; j < n; ++j) A[r][j] = A[r][j] * inv;
    for (int i = 0; i < m; ++i) {
      if (i == r || A[i][c].is_zero()) continue;
      Frac f = A[i][c];
      for (int j = c; j < n; ++j) A[i][j] = A[i][j] - f * A[r][j];
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> ispiv(n, false);
  for (int c : pivcol) ispiv[c] = true;
  std::vector<QVec> out;
  for (int c = 0; c < n; ++c) {
    if (ispiv[c]) continue;
    QVec v(n);
    v[c] = Frac(1);
    for (int t = 0; t < (int)pivcol.size(); ++t) v[pivcol[t]] = Frac(0) - A[t][c];
    out.push_back(v);
  }
  return out;
}

// Sym^k action of an integral matrix over Q, columns = images of X^(k-j) Y^j.
QMat sym_q(const M22& g, int k) {
  QMat out = qmat(k + 1, k + 1);
  for (int j = 0; j <= k; ++j) {
    std::vector<Frac> poly{Frac(1)};
    auto mul_lin = [&](i64 x, i64 y) {
      std::vector<Frac> next(poly.size() + 1);
      for (size_t i = 0; i < poly.size(); ++i) {
        next[i] = next[i] + poly[i] * Frac(x);
        next[i + 1] = next[i + 1] + poly[i] * Frac(y);
      }
      poly = std::move(next);
    };
    for (int t = 0; t < k - j; ++t) mul_lin(g.a, g.c);
    for (int t = 0; t < j; ++t) mul_lin(g.b, g.d);
    for (int i = 0; i <= k; ++i) out[i][j] = poly[i];
  }
  return out;
}

Frac qpow(Frac b, i64 e) {
  Frac r(1);
  bool invert = e < 0;
  if (invert) e = -e;
  for (i64 i = 0; i < e; ++i) r = r * b;
  return invert ? Frac(1) / r : r;
}

QMat rational_action_q(const Weight& lambda, const M22& g1, const M22& g2) {
  int ka = (int)(lambda.k[0] - lambda.k[1]), ma = (int)lambda.k[1];
  int kb = (int)(lambda.k[2] - lambda.k[3]), mb = (int)lambda.k[3];
  QMat A = sym_q(g1, ka), B = sym_q(g2, kb);
  Frac tw = qpow(Frac(g1.det()), ma) * qpow(Frac(g2.det()), mb);
  int nb = kb + 1, dim = (ka + 1) * nb;
  QMat out = qmat(dim, dim);
  for (int i1 = 0; i1 <= ka; ++i1)
    for (int j1 = 0; j1 <= ka; ++j1)
      for (int i2 = 0; i2 <= kb; ++i2)
        for (int j2 = 0; j2 <= kb; ++j2)
          out[i1 * nb + i2][j1 * nb + j2] = A[i1][j1] * B[i2][j2] * tw;
  return out;
}

QMat rational_action_gl2(int k, int m, const M22& g) {
  QMat A = sym_q(g, k);
  Frac tw = qpow(Frac(g.det()), m);
  for (auto& row : A)
    for (auto& v : row) v = v * tw;
  return A;
}

// generators of Q_H^0 as an algebraic group (char-0 invariance needs only
// one unipotent in each root direction plus torus generators)
std::vector<std::pair<M22, M22>> group_generators(EmbeddingKind kind) {
  M22 nplus{1, 1, 0, 1}, nminus{1, 0, 1, 1}, t1{2, 0, 0, 1}, t2{1, 0, 0, 2};
  if (kind == EmbeddingKind::DiagFull)
    return {{nplus, nplus}, {nminus, nminus}, {t1, t1}, {t2, t2}};
  return {{nplus, nplus}, {t1, t1}};
}

// P^1(F_p) point arithmetic: index 0..p-1 affine, p = infinity
int act_p1(const M22& g, int pt, i64 p) {
  i64 x, y;
  if (pt == p) {
    x = 1;
    y = 0;
  } else {
    x = pt;
    y = 1;
  }
  i64 nx = (((g.a % p) * x + (g.b % p) * y) % p + p) % p;
  i64 ny = (((g.c % p) * x + (g.d % p) * y) % p + p) % p;
  if (ny == 0) return (int)p;
  i64 yinv = 1;
  for (i64 t = 1; t < p; ++t)
    if ((t * ny) % p == 1) {
      yinv = t;
      break;
    }
  return (int)((nx * yinv) % p);
}

i64 smallest_primitive_root(i64 p) {
  for (i64 g = 2; g < p; ++g) {
    i64 x = g % p;
    int ord = 1;
    while (x != 1) {
      x = (x * g) % p;
      ++ord;
    }
    if (ord == p - 1) return g;
  }
  return 1;
}

std::vector<std::pair<M22, M22>> lie_basis(EmbeddingKind kind) {
  M22 e11{1, 0, 0, 0}, e12{0, 1, 0, 0}, e21{0, 0, 1, 0}, e22{0, 0, 0, 1};
  auto pairof = [](M22 x) { return std::pair<M22, M22>{x, x}; };
  if (kind == EmbeddingKind::DiagFull) return {pairof(e11), pairof(e12), pairof(e21), pairof(e22)};
  return {pairof(e11), pairof(e12)};
}

// zigzag order on small integers: 0, 1, -1, 2, -2, ...
std::vector<i64> zigzag(i64 bound) {
  std::vector<i64> out{0};
  for (i64 v = 1; v <= bound; ++v) {
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

M22 lift_point(int pt, i64 p) {
  i64 tx, ty;
  if (pt == (int)p) {
    tx = 1;
    ty = 0;
  } else {
    tx = pt;
    ty = 1;
  }
  auto order = zigzag(p);
  for (i64 a : order)
    for (i64 b : order)
      for (i64 c : order)
        for (i64 d : order) {
          if (a * d - b * c != 1) continue;
          if (((b - tx) % p + p) % p != 0) continue;
          if (((d - ty) % p + p) % p != 0) continue;
          return M22{a, b, c, d};
        }
  fail("Internal", "no integral lift found");
}

M22 inv_unimodular(const M22& g) {
  check(g.det() == 1 || g.det() == -1, "NotInvertible", "unimodular inverse");
  i64 s = g.det();
  return {s * g.d, -s * g.b, -s * g.c, s * g.a};
}

}  // namespace

std::vector<std::vector<Frac>> rational_action(const Weight& lambda, const M22& g1,
                                               const M22& g2) {
  check(lambda.tag == GroupTag::GL2xGL2, "TagMismatch", "rational_action is for the product");
  return rational_action_q(lambda, g1, g2);
}

OrbitReport enumerate_orbits(EmbeddingKind kind, i64 p) {
  check(is_prime(p) && p <= 13, "BadPrime", "orbit enumeration supports p <= 13");
  OrbitReport rep;
  rep.p = p;
  int np = (int)p + 1;
  int total = np * np;
  i64 g = smallest_primitive_root(p);
  std::vector<std::pair<M22, M22>> gens;
  if (kind == EmbeddingKind::DiagFull)
    gens = {{{1, 1, 0, 1}, {1, 1, 0, 1}},
            {{1, 0, 1, 1}, {1, 0, 1, 1}},
            {{g, 0, 0, 1}, {g, 0, 0, 1}}};
  else
    gens = {{{1, 1, 0, 1}, {1, 1, 0, 1}}, {{g, 0, 0, 1}, {g, 0, 0, 1}}};
  rep.group_order = (kind == EmbeddingKind::DiagFull) ? (p * p - 1) * (p * p - p) : p * (p - 1);

  std::vector<int> orbit_of(total, -1);
  auto lie = lie_basis(kind);
  for (int start = 0; start < total; ++start) {
    if (orbit_of[start] >= 0) continue;
    int id = (int)rep.orbits.size();
    std::vector<int> stack{start};
    orbit_of[start] = id;
    i64 size = 0;
    while (!stack.empty()) {
      int pt = stack.back();
      stack.pop_back();
      ++size;
      int a = pt / np, b = pt % np;
      for (auto& [g1, g2] : gens) {
        int na = act_p1(g1, a, p), nb = act_p1(g2, b, p);
        int q = na * np + nb;
        if (orbit_of[q] < 0) {
          orbit_of[q] = id;
          stack.push_back(q);
        }
      }
    }
    OrbitReport::Orbit orb;
    orb.rep = FlagPoint{start / np, start % np};
    orb.size = size;
    auto colvec = [&](int pt) -> std::pair<i64, i64> {
      if (pt == (int)p) return {1, 0};
      return {pt, 1};
    };
    auto [x1, y1] = colvec(orb.rep.a);
    auto [x2, y2] = colvec(orb.rep.b);
    std::vector<std::array<i64, 2>> cols;
    for (auto& [X1, X2] : lie) {
      i64 u1 = X1.a * x1 + X1.b * y1, v1 = X1.c * x1 + X1.d * y1;
      i64 u2 = X2.a * x2 + X2.b * y2, v2 = X2.c * x2 + X2.d * y2;
      i64 c1 = ((u1 * y1 - v1 * x1) % p + p) % p;
      i64 c2 = ((u2 * y2 - v2 * x2) % p + p) % p;
      cols.push_back({c1, c2});
    }
    int rank = 0;
    {
      std::vector<std::array<i64, 2>> m = cols;
      for (int row = 0; row < 2; ++row) {
        int piv = -1;
        for (int c = 0; c < (int)m.size(); ++c)
          if (m[c][row] % p != 0) {
            piv = c;
            break;
          }
        if (piv < 0) continue;
        ++rank;
        i64 lead = m[piv][row] % p;
        for (int c = 0; c < (int)m.size(); ++c) {
          if (c == piv) continue;
          if (m[c][row] % p == 0) continue;
          for (int rr = 0; rr < 2; ++rr)
            m[c][rr] = ((m[c][rr] * lead - m[piv][rr] * m[c][row]) % p + p) % p;
        }
        for (int rr = 0; rr < 2; ++rr) m[piv][rr] = 0;
      }
    }
    orb.open = (rank == 2);
    orb.stabilizer_order = rep.group_order / orb.size;
    rep.orbits.push_back(orb);
  }
  i64 sum = 0;
  for (auto& o : rep.orbits) sum += o.size;
  check(sum == total, "Internal", "orbit sizes must partition the flag variety");
  bool found = false;
  for (int pt = 0; pt < total && !found; ++pt) {
    auto& orb = rep.orbits[orbit_of[pt]];
    if (orb.open) {
      rep.open_point = FlagPoint{pt / np, pt % np};
      found = true;
    }
  }
  check(found, "NoOpenOrbit", "condition (A) fails: no Zariski-open orbit");
  rep.u1 = lift_point(rep.open_point.a, p);
  rep.u2 = lift_point(rep.open_point.b, p);
  return rep;
}

namespace {

// minimal S0: diagonal projection of the stabilizer Lie algebra of u
SubTorus minimal_s0_from_u(EmbeddingKind kind, const M22& u1, const M22& u2) {
  // unknowns: lower-triangular pairs (X1, X2); conditions: Ad(u1)X1 = Ad(u2)X2,
  // and for the mirabolic case the common value has vanishing lower row.
  // Note the stabilizer in the text is \bar{Q}_G ∩ u^{-1} Q_H^0 u; conjugating
  // by u turns it into {(X1,X2) lower : Ad(u)X diagonal-embedded in Lie Q_H^0}.
  M22 u1i = inv_unimodular(u1), u2i = inv_unimodular(u2);
  auto ad = [&](const M22& u, const M22& ui, int param) {
    M22 E{0, 0, 0, 0};
    if (param == 0) E = {1, 0, 0, 0};
    if (param == 1) E = {0, 0, 1, 0};
    if (param == 2) E = {0, 0, 0, 1};
    return mul(mul(u, E), ui);
  };
  int rows = (kind == EmbeddingKind::DiagFull) ? 4 : 6;
  QMat A = qmat(rows, 6);
  for (int t = 0; t < 3; ++t) {
    M22 c1 = ad(u1, u1i, t), c2 = ad(u2, u2i, t);
    i64 e1[4] = {c1.a, c1.b, c1.c, c1.d};
    i64 e2[4] = {c2.a, c2.b, c2.c, c2.d};
    for (int r = 0; r < 4; ++r) {
      A[r][t] = Frac(e1[r]);
      A[r][3 + t] = Frac(-e2[r]);
    }
    if (kind == EmbeddingKind::DiagMirabolic) {
      A[4][t] = A[4][t] + Frac(c1.c);
      A[5][t] = A[5][t] + Frac(c1.d);
    }
  }
  auto ker = qkernel(A);
  std::vector<std::vector<i64>> gens;
  for (auto& v : ker) {
    i64 l = 1;
    for (auto& f : v) l = l / gcd_i64(l, f.den) * f.den;
    std::vector<i64> w = {v[0].num * (l / v[0].den), v[2].num * (l / v[2].den),
                          v[3].num * (l / v[3].den), v[5].num * (l / v[5].den)};
    gens.push_back(w);
  }
  return saturate(GroupTag::GL2xGL2, gens);
}

}  // namespace

EmbeddingSpec make_embedding(EmbeddingKind kind, i64 p) {
  OrbitReport rep = enumerate_orbits(kind, p);
  EmbeddingSpec spec;
  spec.kind = kind;
  spec.u1 = rep.u1;
  spec.u2 = rep.u2;
  spec.minimal_s0 = minimal_s0_from_u(kind, rep.u1, rep.u2);
  spec.s0 = spec.minimal_s0;
  return spec;
}

ConditionB check_condition_B(const EmbeddingSpec& spec, const SubTorus& s0_g) {
  ConditionB out;
  out.minimal = spec.minimal_s0;
  out.holds = contains(s0_g, spec.minimal_s0);
  return out;
}

InvariantSpace invariant_space(const EmbeddingSpec& spec, const Weight& lambda) {
  check(lambda.tag == GroupTag::GL2xGL2, "TagMismatch", "invariant_space weight");
  check(is_dominant(lambda), "NonDominant", "invariant_space weight");
  auto gens = group_generators(spec.kind);
  int dim = (int)((lambda.k[0] - lambda.k[1] + 1) * (lambda.k[2] - lambda.k[3] + 1));
  QMat A = qmat((int)gens.size() * dim, dim);
  int row = 0;
  for (auto& [g1, g2] : gens) {
    QMat M = rational_action_q(lambda, g1, g2);
    for (int i = 0; i < dim; ++i, ++row)
      for (int j = 0; j < dim; ++j) A[row][j] = M[i][j] - Frac(i == j ? 1 : 0);
  }
  auto ker = qkernel(A);
  InvariantSpace out;
  out.dimension = (int)ker.size();
  check(out.dimension <= 1, "DimensionViolation",
        "invariant space has dimension > 1: wrong S0 or embedding");
  if (out.dimension == 1) {
    i64 l = 1;
    for (auto& f : ker[0]) l = l / gcd_i64(l, f.den) * f.den;
    std::vector<i64> v(dim);
    i64 g = 0;
    for (int i = 0; i < dim; ++i) {
      v[i] = ker[0][i].num * (l / ker[0][i].den);
      g = gcd_i64(g, v[i]);
    }
    if (g > 1)
      for (auto& x : v) x /= g;
    out.vec.resize(dim);
    for (int i = 0; i < dim; ++i) out.vec[i] = Frac(v[i]);
  }
  return out;
}

BranchingPolynomial branching_polynomial(const EmbeddingSpec& spec, const Weight& lambda,
                                         RingCtx R) {
  InvariantSpace inv = invariant_space(spec, lambda);
  check(inv.dimension == 1, "NotAdmissible", "weight has no Q_H^0-invariant vector");
  M22 u1i = inv_unimodular(spec.u1), u2i = inv_unimodular(spec.u2);
  QMat act = rational_action_q(lambda, u1i, u2i);
  int dim = (int)inv.vec.size();
  Frac c(0);
  for (int j = 0; j < dim; ++j) c = c + act[0][j] * inv.vec[j];
  check(!c.is_zero(), "NormalizationFailure", "psi(u^{-1} br) vanishes");
  check(c.num % R.p != 0 && c.den % R.p != 0, "NormalizationFailure",
        "psi(u^{-1} br) is not a p-unit");
  BranchingPolynomial out;
  out.lambda = lambda;
  out.R = R;
  out.br.resize(dim);
  for (int i = 0; i < dim; ++i) out.br[i] = inv.vec[i] / c;
  for (auto& f : out.br)
    check(f.den % R.p != 0, "NormalizationFailure", "branching vector is not p-integral");
  out.br_mod.resize(dim);
  for (int i = 0; i < dim; ++i) {
    u64 den_inv = R.inv_unit(R.reduce(out.br[i].den));
    out.br_mod[i] = R.mul(R.reduce(out.br[i].num), den_inv);
  }
  auto eigen_of = [&](const M22& t) -> std::optional<Frac> {
    QMat M = rational_action_q(lambda, t, t);
    int j0 = -1;
    for (int i = 0; i < dim; ++i)
      if (!out.br[i].is_zero()) {
        j0 = i;
        break;
      }
    QVec img(dim, Frac(0));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) img[i] = img[i] + M[i][j] * out.br[j];
    Frac lam = img[j0] / out.br[j0];
    for (int i = 0; i < dim; ++i)
      if (!(img[i] == lam * out.br[i])) return std::nullopt;
    return lam;
  };
  auto log2_of = [&](Frac f) -> i64 {
    i64 e = 0;
    check(f.num != 0, "Internal", "zero eigenvalue");
    i64 n = f.num < 0 ? -f.num : f.num, d = f.den;
    while (n % 2 == 0) {
      n /= 2;
      ++e;
    }
    while (d % 2 == 0) {
      d /= 2;
      --e;
    }
    check(n == 1 && d == 1 && f.num > 0, "Internal", "torus eigenvalue is not a power of 2");
    return e;
  };
  auto l1 = eigen_of({2, 0, 0, 1});
  auto l2 = eigen_of({1, 0, 0, 2});
  check(l1.has_value() && l2.has_value(), "Internal", "br is not a torus eigenvector");
  out.mu = Weight(GroupTag::GL2, {log2_of(*l1), log2_of(*l2)});
  check(is_dominant(out.mu), "Internal", "mu(lambda) must be dominant");
  return out;
}

std::vector<std::vector<Frac>> branch_map(const EmbeddingSpec& spec, const Weight& lambda,
                                          RingCtx R) {
  BranchingPolynomial bp = branching_polynomial(spec, lambda, R);
  int kmu = (int)(bp.mu.k[0] - bp.mu.k[1]);
  int mmu = (int)bp.mu.k[1];
  int dimH = kmu + 1;
  int dimG = (int)bp.br.size();
  std::vector<std::pair<M22, M22>> hgens = {{{1, 1, 0, 1}, {1, 1, 0, 1}},
                                            {{1, 0, 1, 1}, {1, 0, 1, 1}},
                                            {{2, 0, 0, 1}, {2, 0, 0, 1}},
                                            {{1, 0, 0, 2}, {1, 0, 0, 2}}};
  int nuk = dimG * dimH;
  QMat A = qmat((int)hgens.size() * nuk + dimG, nuk);
  QVec b((int)hgens.size() * nuk + dimG, Frac(0));
  int row = 0;
  for (auto& [g1, g2] : hgens) {
    QMat G = rational_action_q(lambda, g1, g2);
    QMat H = rational_action_gl2(kmu, mmu, g1);
    for (int i = 0; i < dimG; ++i)
      for (int j = 0; j < dimH; ++j, ++row) {
        for (int t = 0; t < dimG; ++t) A[row][t * dimH + j] = A[row][t * dimH + j] + G[i][t];
        for (int t = 0; t < dimH; ++t) A[row][i * dimH + t] = A[row][i * dimH + t] - H[t][j];
      }
  }
  for (int i = 0; i < dimG; ++i, ++row) {
    A[row][i * dimH + 0] = Frac(1);
    b[row] = bp.br[i];
  }
  QMat Aug = qmat((int)A.size(), nuk + 1);
  for (int i = 0; i < (int)A.size(); ++i) {
    for (int j = 0; j < nuk; ++j) Aug[i][j] = A[i][j];
    Aug[i][nuk] = Frac(0) - b[i];
  }
  auto ker = qkernel(Aug);
  std::vector<QVec> with_last;
  for (auto& v : ker)
    if (!v[nuk].is_zero()) with_last.push_back(v);
  check(with_last.size() == 1 && ker.size() == 1, "Internal",
        "equivariant extension must exist uniquely");
  QVec sol = with_last[0];
  Frac scale = Frac(1) / sol[nuk];
  std::vector<std::vector<Frac>> Phi(dimG, std::vector<Frac>(dimH));
  for (int i = 0; i < dimG; ++i)
    for (int j = 0; j < dimH; ++j) Phi[i][j] = sol[i * dimH + j] * scale;
  for (int j = 0; j < dimH; ++j) {
    Frac bin = Frac(binom_i64(kmu, j));
    for (int i = 0; i < dimG; ++i) {
      Phi[i][j] = Phi[i][j] * bin;
      check(Phi[i][j].den % R.p != 0, "NotAdmissible",
            "branch map image of the minimal lattice is not p-integral");
    }
  }
  return Phi;
}

bool integral_relation_check(const EmbeddingSpec& spec, const Weight& lambda,
                             const Cocharacter& eta, int r, i64 p) {
  check(is_sigma_plusplus(eta), "NotSigmaPlus", "eta must be strictly dominant");
  check(r >= 1, "BadArgument", "r >= 1");
  RingCtx R(p, r + 2);
  BranchingPolynomial bp = branching_polynomial(spec, lambda, R);
  RepModule V = RepModule::build(GroupTag::GL2xGL2, lambda, LatticeKind::Max, R);
  GElt ui;
  ui.tag = GroupTag::GL2xGL2;
  ui.g1 = inv_unimodular(spec.u1);
  ui.g2 = inv_unimodular(spec.u2);
  std::vector<u64> ubr = matvec(V.action(ui), bp.br_mod);
  std::vector<u64> diff(V.dim(), 0);
  for (int i = 0; i < V.dim(); ++i) diff[i] = R.sub(i == V.hw_index() ? 1 : 0, ubr[i]);
  auto scaled = V.scaled_inverse_torus(eta, r, diff);
  for (u64 v : scaled)
    if (R.val(v) < r) return false;
  return true;
}

Weight diag_admissible_weight(const EmbeddingSpec& spec, i64 a) {
  for (i64 bound = 0; bound <= 4 * (a + 1) + 4; ++bound) {
    for (i64 a1 : {bound, -bound}) {
      for (i64 b1 = -bound - (i64)4 * (a + 1); b1 <= bound + 4 * (a + 1); ++b1) {
        Weight w(GroupTag::GL2xGL2, {a1, a1 - a, b1, b1 - a});
        if (is_dominant(w) && trivial_on(w, spec.s0)) return w;
      }
      if (bound == 0) break;
    }
  }
  fail("NotAdmissible", "no admissible weight on the a=b line");
}

}  // namespace ptower
