#include "oracle_manin.hpp"

#include <map>
#include <numeric>

namespace oracle {

using ptower::check;
using ptower::M22;
using ptower::Mat;
using ptower::Presentation;

namespace {

i64 md(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

// cusp equivalence for Gamma_0(N): p1/q1 ~ p2/q2 (reduced fractions) iff
// s1 q2 = s2 q1 mod gcd(q1 q2, N), with p_i s_i = 1 mod q_i
bool cusp_equiv(i64 N, i64 p1, i64 q1, i64 p2, i64 q2) {
  auto inv_mod = [](i64 a, i64 m) {
    if (m <= 1) return (i64)0;
    a = md(a, m);
    i64 t0 = 0, t1 = 1, r0 = m, r1 = a;
    while (r1) {
      i64 q = r0 / r1, t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = t0 - q * t1;
      t0 = t1;
      t1 = t;
    }
    return md(t0, m);
  };
  i64 s1 = inv_mod(p1, q1 < 0 ? -q1 : q1);
  i64 s2 = inv_mod(p2, q2 < 0 ? -q2 : q2);
  i64 g = std::gcd(q1 * q2, N);
  if (g == 0) g = N;
  return md(s1 * q2 - s2 * q1, g) == 0;
}

}  // namespace

int ManinOracle::id_of(i64 c, i64 d) const { return sym_id_[md(c, N_) * N_ + md(d, N_)]; }

M22 ManinOracle::witness(int s) const {
  auto [c, d] = sym_rep_[s];
  i64 cc = c == 0 ? N_ : c, dd = d;
  for (int k = 0; std::gcd(cc, dd) != 1; ++k) {
    check(k < 200, "Internal", "oracle witness");
    dd += N_;
  }
  i64 x, y;
  {
    i64 r0 = dd, r1 = cc, x0 = 1, x1 = 0;
    while (r1) {
      i64 q = r0 / r1, t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = x0 - q * x1;
      x0 = x1;
      x1 = t;
    }
    i64 sg = r0 < 0 ? -1 : 1;
    x = x0 * sg;
    y = (x * dd - 1) / cc;
  }
  M22 g{x, y, cc, dd};
  check(g.det() == 1, "Internal", "oracle witness det");
  return g;
}

ManinOracle::ManinOracle(i64 N, ptower::RingCtx R) : N_(N), R_(R) {
  sym_id_.assign(N * N, -1);
  for (i64 c = 0; c < N; ++c)
    for (i64 d = 0; d < N; ++d) {
      if (sym_id_[c * N + d] >= 0) continue;
      if (std::gcd(std::gcd(c == 0 ? N : c, d == 0 ? N : d), N) != 1) continue;
      int id = nsym_++;
      sym_rep_.emplace_back(c, d);
      for (i64 u = 1; u < N; ++u) {
        if (std::gcd(u, N) != 1) continue;
        sym_id_[md(u * c, N) * N + md(u * d, N)] = id;
      }
      if (N == 1) sym_id_[0] = id;
    }
  auto act = [&](int s, const M22& g) {
    auto [c, d] = sym_rep_[s];
    return id_of(c * g.a + d * g.c, c * g.b + d * g.d);
  };
  const M22 S{0, -1, 1, 0}, SIG{0, -1, 1, -1};
  std::vector<Presentation::SparseVec> rels;
  for (int s = 0; s < nsym_; ++s) {
    std::map<int, u64> r1;
    r1[s] = R_.add(r1[s], 1);
    int s2 = act(s, S);
    r1[s2] = R_.add(r1[s2], 1);
    rels.emplace_back(r1.begin(), r1.end());
    std::map<int, u64> r2;
    r2[s] = 1;
    int t1 = act(s, SIG), t2 = act(t1, SIG);
    r2[t1] = R_.add(r2[t1], 1);
    r2[t2] = R_.add(r2[t2], 1);
    rels.emplace_back(r2.begin(), r2.end());
  }
  pres_ = std::make_unique<Presentation>(R_, nsym_, rels);

  std::vector<std::pair<i64, i64>> pts;
  auto classify = [&](i64 p, i64 q) {
    i64 g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    if (g) {
      p /= g;
      q /= g;
    }
    if (q < 0) {
      p = -p;
      q = -q;
    }
    for (int i = 0; i < (int)pts.size(); ++i)
      if (cusp_equiv(N_, pts[i].first, pts[i].second, p, q)) return i;
    pts.emplace_back(p, q);
    return (int)pts.size() - 1;
  };
  cusp_class_.assign(2 * nsym_, -1);
  for (int s = 0; s < nsym_; ++s) {
    M22 g = witness(s);
    cusp_class_[2 * s] = classify(g.a, g.c);
    cusp_class_[2 * s + 1] = classify(g.b, g.d);
  }
  ncusps_ = (int)pts.size();
}

int ManinOracle::rank() const { return pres_->dim(); }
int ManinOracle::cusp_count() const { return ncusps_; }

std::vector<u64> ManinOracle::path_symbols(i64 ax, i64 ay, i64 bx, i64 by) const {
  std::vector<u64> out(nsym_, 0);
  auto add_edge = [&](const M22& m, int sign) {
    int s = id_of(m.c, m.d);
    check(s >= 0, "Internal", "oracle symbol lookup");
    out[s] = sign > 0 ? R_.add(out[s], 1) : R_.sub(out[s], 1);
  };
  auto half = [&](i64 x, i64 y, int sign) {
    if (y == 0) return;
    if (y < 0) {
      x = -x;
      y = -y;
    }
    i64 p2 = 1, q2 = 0, p1 = 0, q1 = 1;
    bool have = false;
    i64 xx = x, yy = y;
    while (true) {
      i64 a = xx >= 0 ? xx / yy : -((-xx + yy - 1) / yy);
      i64 r = xx - a * yy;
      i64 pn, qn;
      if (!have) {
        pn = a;
        qn = 1;
        have = true;
      } else {
        pn = a * p2 + p1;
        qn = a * q2 + q1;
      }
      M22 m{pn, p2, qn, q2};
      if (m.det() == -1) {
        m.b = -m.b;
        m.d = -m.d;
      }
      add_edge(m, sign);
      p1 = p2;
      q1 = q2;
      p2 = pn;
      q2 = qn;
      if (r == 0) break;
      xx = yy;
      yy = r;
    }
  };
  half(ax, ay, -1);
  half(bx, by, +1);
  return out;
}

Mat ManinOracle::hecke(i64 ell) const {
  int d = pres_->dim();
  Mat M(R_, d, d);
  std::vector<u64> e(d, 0);
  for (int j = 0; j < d; ++j) {
    e[j] = 1;
    auto chain = pres_->lift(e);
    e[j] = 0;
    std::vector<u64> img(nsym_, 0);
    for (int s = 0; s < nsym_; ++s) {
      if (!chain[s]) continue;
      M22 g = witness(s);
      for (i64 t = 0; t <= ell; ++t) {
        M22 Mv = t < ell ? M22{1, t, 0, ell} : M22{ell, 0, 0, 1};
        M22 Bg = mul(Mv, g);
        auto part = path_symbols(Bg.b, Bg.d, Bg.a, Bg.c);
        for (int i = 0; i < nsym_; ++i) img[i] = R_.add(img[i], R_.mul(chain[s], part[i]));
      }
    }
    auto red = pres_->reduce(img);
    for (int i = 0; i < d; ++i) M.at(i, j) = red[i];
  }
  return M;
}

std::vector<std::vector<u64>> ManinOracle::cuspidal_basis() const {
  int d = pres_->dim();
  Mat B(R_, ncusps_, d);
  std::vector<u64> e(d, 0);
  for (int j = 0; j < d; ++j) {
    e[j] = 1;
    auto chain = pres_->lift(e);
    e[j] = 0;
    for (int s = 0; s < nsym_; ++s) {
      if (!chain[s]) continue;
      B.at(cusp_class_[2 * s], j) = R_.add(B.at(cusp_class_[2 * s], j), chain[s]);
      B.at(cusp_class_[2 * s + 1], j) = R_.sub(B.at(cusp_class_[2 * s + 1], j), chain[s]);
    }
  }
  ptower::RowEchelon ech(B);
  return ech.kernel();
}

}  // namespace oracle
