#include "ptower/modsym.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace ptower {

namespace {

i64 mod(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

M22 mul_m(const M22& x, const M22& y, i64 m) {
  return {mod(x.a * y.a + x.b * y.c, m), mod(x.a * y.b + x.b * y.d, m),
          mod(x.c * y.a + x.d * y.c, m), mod(x.c * y.b + x.d * y.d, m)};
}

const M22 MAT_SIGMA{0, -1, 1, -1};
const M22 MAT_S{0, -1, 1, 0};

}  // namespace

SymbolSpace::SymbolSpace(const LevelSpec& level, const Weight& lambda, LatticeKind kind, RingCtx R,
                         bool materialize)
    : level_(level),
      tab_(coset_table(level)),
      V_(RepModule::build(lambda.tag, lambda, kind, R)),
      R_(R),
      mat_(materialize) {
  check(lambda.tag == GroupTag::GL2, "TagMismatch", "symbol spaces are per GL2 factor");
  if (tab_->minus_id_in_group()) {
    check(V_.factor_k(0) % 2 == 0, "TorsionAtLevel",
          "-1 lies in the level group but acts by -1 on the coefficients");
  }
  if (!mat_) return;
  // triangle boundary in a single frame: [g] + [g sigma] + [g sigma^2]
  std::vector<u64> e(V_.dim(), 0);
  for (int f = 0; f < tab_->face_count(); ++f) {
    M22 g0 = tab_->small_lift(tab_->face_rep(f));
    M22 g1 = mul(g0, MAT_SIGMA);
    M22 g2 = mul(g1, MAT_SIGMA);
    for (int j = 0; j < V_.dim(); ++j) {
      e[j] = 1;
      std::map<int, u64> acc;
      for (auto& g : {g0, g1, g2}) {
        Chain ch = sym(g, e);
        for (auto& [idx, val] : ch) {
          auto it = acc.find(idx);
          if (it == acc.end())
            acc.emplace(idx, val);
          else {
            it->second = R_.add(it->second, val);
            if (!it->second) acc.erase(it);
          }
        }
      }
      e[j] = 0;
      Presentation::SparseVec rel(acc.begin(), acc.end());
      if (!rel.empty()) relations_.push_back(std::move(rel));
    }
  }
  pres_ = std::make_unique<Presentation>(R_, chain_dim(), relations_);
}

const Presentation& SymbolSpace::presentation() const {
  check(mat_, "Internal", "space was built without its quotient presentation");
  return *pres_;
}

const Mat& SymbolSpace::rho_p(const M22& t) const {
  i64 m = tab_->pstore();
  u64 key = ((u64)mod(t.a, m) << 48) | ((u64)mod(t.b, m) << 32) | ((u64)mod(t.c, m) << 16) |
            (u64)mod(t.d, m);
  std::lock_guard<std::mutex> lock(rho_mutex_);
  auto it = rho_cache_.find(key);
  if (it != rho_cache_.end()) return it->second;
  GElt g;
  g.tag = GroupTag::GL2;
  g.g1 = {mod(t.a, m), mod(t.b, m), mod(t.c, m), mod(t.d, m)};
  Mat M = V_.action(g);
  return rho_cache_.emplace(key, std::move(M)).first->second;
}

void SymbolSpace::add_symbol_at_coset(int coset, const M22& transport_p, const std::vector<u64>& v,
                                      u64 scale, std::map<int, u64>& acc) const {
  // [g, v] with g = (element of Gamma given by transport_p^{-1}) * witness:
  // [g, v] = [witness, rho(transport_p) v], then fold onto the edge rep.
  int sgn = tab_->fold_sign(coset);
  int edge = tab_->edge_of(coset);
  M22 t = transport_p;
  if (sgn < 0) t = mul_m(tab_->fold_transport_p(coset), t, tab_->pstore());
  const Mat& A = rho_p(t);
  std::vector<u64> w = matvec(A, v);
  u64 sc = scale % R_.ps;
  for (int j = 0; j < V_.dim(); ++j) {
    if (!w[j]) continue;
    u64 val = R_.mul(w[j], sc);
    if (sgn < 0) val = R_.neg(val);
    if (!val) continue;
    int idx = coord(edge, j);
    auto it = acc.find(idx);
    if (it == acc.end())
      acc.emplace(idx, val);
    else {
      it->second = R_.add(it->second, val);
      if (!it->second) acc.erase(it);
    }
  }
}

Chain SymbolSpace::sym_at_witness(int coset, const M22& transport_p,
                                  const std::vector<u64>& v) const {
  std::map<int, u64> acc;
  add_symbol_at_coset(coset, transport_p, v, 1, acc);
  return Chain(acc.begin(), acc.end());
}

Chain SymbolSpace::sym(const M22& g, const std::vector<u64>& v) const {
  std::map<int, u64> acc;
  auto [c, gamma] = tab_->locate(g);
  // [g, v] = [gamma * w_c, v] = [w_c, rho(gamma^{-1}) v]
  M22 gi = {gamma.d, -gamma.b, -gamma.c, gamma.a};
  add_symbol_at_coset(c, gi, v, 1, acc);
  return Chain(acc.begin(), acc.end());
}

namespace {

template <typename F>
void cf_half(i64 x, i64 y, int sign, F&& emit) {
  // pieces of the path (infinity -> x/y), emitted as det-1 matrices m with
  // m(0 -> inf) = one Farey edge, traversed with the given sign
  check(y != 0, "BadArgument", "cf endpoint");
  if (y < 0) {
    x = -x;
    y = -y;
  }
  i64 p_prev2 = 1, q_prev2 = 0;  // convergent h_{-1} = infinity
  i64 p_prev = 0, q_prev = 1;
  bool have_prev = false;
  i64 xx = x, yy = y;
  while (true) {
    i64 a = xx >= 0 ? xx / yy : -((-xx + yy - 1) / yy);
    i64 r = xx - a * yy;
    i64 pn, qn;
    if (!have_prev) {
      pn = a;
      qn = 1;
      have_prev = true;
    } else {
      pn = a * p_prev2 + p_prev;
      qn = a * q_prev2 + q_prev;
    }
    M22 m{pn, p_prev2, qn, q_prev2};
    if (m.det() == -1) {
      m.b = -m.b;
      m.d = -m.d;
    }
    check(m.det() == 1, "Internal", "cf piece not unimodular");
    emit(m, sign);
    p_prev = p_prev2;
    q_prev = q_prev2;
    p_prev2 = pn;
    q_prev2 = qn;
    if (r == 0) break;
    xx = yy;
    yy = r;
  }
}

}  // namespace

Chain SymbolSpace::path_chain(i64 ax, i64 ay, i64 bx, i64 by, const std::vector<u64>& v) const {
  // path a -> b = (inf -> b) - (inf -> a)
  std::map<int, u64> acc;
  auto emit = [&](const M22& m, int sign) {
    auto [c, gamma] = tab_->locate(m);
    M22 gi = {gamma.d, -gamma.b, -gamma.c, gamma.a};
    std::map<int, u64> local;
    add_symbol_at_coset(c, gi, v, 1, local);
    for (auto& [idx, val] : local) {
      u64 x = sign > 0 ? val : R_.neg(val);
      auto it = acc.find(idx);
      if (it == acc.end())
        acc.emplace(idx, x);
      else {
        it->second = R_.add(it->second, x);
        if (!it->second) acc.erase(it);
      }
    }
  };
  if (ay != 0) cf_half(ax, ay, -1, emit);
  if (by != 0) cf_half(bx, by, +1, emit);
  return Chain(acc.begin(), acc.end());
}

std::vector<u64> SymbolSpace::dense(const Chain& x) const {
  std::vector<u64> out(chain_dim(), 0);
  for (auto& [i, v] : x) out[i] = R_.add(out[i], v);
  return out;
}

Chain SymbolSpace::sparse(const std::vector<u64>& x) const {
  Chain out;
  for (int i = 0; i < (int)x.size(); ++i)
    if (x[i]) out.emplace_back(i, x[i]);
  return out;
}

std::vector<u64> SymbolSpace::boundary(const Chain& x) const {
  check(V_.dim() == 1, "BadArgument", "boundary map is for trivial coefficients");
  std::vector<u64> out(tab_->cusp_count(), 0);
  for (auto& [idx, v] : x) {
    int c = tab_->edge_rep(idx);
    int cusp_inf = tab_->cusp_of(c);
    int cusp_zero = tab_->cusp_of(tab_->act_S(c));
    out[cusp_inf] = R_.add(out[cusp_inf], v);
    out[cusp_zero] = R_.sub(out[cusp_zero], v);
  }
  return out;
}

std::shared_ptr<SymbolSpace> make_space(const LevelSpec& level, const Weight& lambda,
                                        LatticeKind kind, RingCtx R, bool materialize) {
  return std::make_shared<SymbolSpace>(level, lambda, kind, R, materialize);
}

CycleSpace::CycleSpace(std::shared_ptr<SymbolSpace> host) : host_(std::move(host)) {
  RingCtx R = host_->ring();
  Weight lam = host_->coeff().lambda();
  dual_ = make_space(host_->level(), dual_weight(lam), LatticeKind::Min, R, false);
  RepModule vmax = RepModule::build(GroupTag::GL2, lam, LatticeKind::Max, R);
  coeff_pairing_ = dual_pairing_matrix(vmax, dual_->coeff());
  const auto& rels = host_->relations();
  int dh = host_->coeff().dim();
  int dw = dual_->coeff().dim();
  int nw = dual_->chain_dim();
  Mat cond(R, (int)rels.size(), nw);
  for (int r = 0; r < (int)rels.size(); ++r) {
    for (auto& [idx, val] : rels[r]) {
      int edge = idx / dh, i = idx % dh;
      for (int j = 0; j < dw; ++j) {
        u64 c = coeff_pairing_.at(i, j);
        if (!c) continue;
        int wc = edge * dw + j;
        cond.at(r, wc) = R.add(cond.at(r, wc), R.mul(val, c));
      }
    }
  }
  RowEchelon ech(cond, true);
  basis_ = ech.kernel();
  coeff_pairing_inv_ = inv(coeff_pairing_);
}

DualPair DualPair::make(std::shared_ptr<SymbolSpace> host_space, bool materialize_dual) {
  DualPair d;
  d.host = host_space;
  RingCtx R = host_space->ring();
  Weight lam = host_space->coeff().lambda();
  d.dual = make_space(host_space->level(), dual_weight(lam), LatticeKind::Min, R,
                      materialize_dual);
  RepModule vmax = RepModule::build(GroupTag::GL2, lam, LatticeKind::Max, R);
  d.C = dual_pairing_matrix(vmax, d.dual->coeff());
  d.Cinv = inv(d.C);
  return d;
}

std::vector<u64> DualPair::to_host(const std::vector<u64>& w) const {
  RingCtx R = host->ring();
  int dh = host->coeff().dim(), dw = dual->coeff().dim();
  int n_edges = host->cosets().edge_count();
  std::vector<u64> x(n_edges * dh, 0);
  for (int e = 0; e < n_edges; ++e)
    for (int i = 0; i < dh; ++i) {
      u64 acc = 0;
      for (int j = 0; j < dw; ++j) acc = R.add(acc, R.mul(C.at(i, j), w[e * dw + j]));
      x[e * dh + i] = acc;
    }
  return x;
}

std::vector<u64> DualPair::from_host(const std::vector<u64>& x) const {
  RingCtx R = host->ring();
  int dh = host->coeff().dim(), dw = dual->coeff().dim();
  int n_edges = host->cosets().edge_count();
  std::vector<u64> w(n_edges * dw, 0);
  for (int e = 0; e < n_edges; ++e)
    for (int j = 0; j < dw; ++j) {
      u64 acc = 0;
      for (int i = 0; i < dh; ++i) acc = R.add(acc, R.mul(Cinv.at(j, i), x[e * dh + i]));
      w[e * dw + j] = acc;
    }
  return w;
}

DualPair CycleSpace::dual_pair() const {
  DualPair d;
  d.host = host_;
  d.dual = dual_;
  d.C = coeff_pairing_;
  d.Cinv = coeff_pairing_inv_;
  return d;
}

std::vector<u64> CycleSpace::to_host_coords(const std::vector<u64>& w) const {
  // x_{e,i} = sum_j C(i,j) w_{e,j}
  RingCtx R = host_->ring();
  int dh = host_->coeff().dim(), dw = dual_->coeff().dim();
  int n_edges = host_->cosets().edge_count();
  std::vector<u64> x(n_edges * dh, 0);
  for (int e = 0; e < n_edges; ++e)
    for (int i = 0; i < dh; ++i) {
      u64 acc = 0;
      for (int j = 0; j < dw; ++j)
        acc = R.add(acc, R.mul(coeff_pairing_.at(i, j), w[e * dw + j]));
      x[e * dh + i] = acc;
    }
  return x;
}

std::vector<u64> CycleSpace::from_host_coords(const std::vector<u64>& x) const {
  RingCtx R = host_->ring();
  int dh = host_->coeff().dim(), dw = dual_->coeff().dim();
  int n_edges = host_->cosets().edge_count();
  std::vector<u64> w(n_edges * dw, 0);
  for (int e = 0; e < n_edges; ++e)
    for (int j = 0; j < dw; ++j) {
      u64 acc = 0;
      for (int i = 0; i < dh; ++i)
        acc = R.add(acc, R.mul(coeff_pairing_inv_.at(j, i), x[e * dh + i]));
      w[e * dw + j] = acc;
    }
  return w;
}

u64 CycleSpace::pair_chain(const std::vector<u64>& x, const std::vector<u64>& w) const {
  RingCtx R = host_->ring();
  int dh = host_->coeff().dim(), dw = dual_->coeff().dim();
  int n_edges = host_->cosets().edge_count();
  check((int)x.size() == n_edges * dh && (int)w.size() == n_edges * dw, "ShapeMismatch",
        "pairing shapes");
  u64 acc = 0;
  for (int e = 0; e < n_edges; ++e)
    for (int i = 0; i < dh; ++i) {
      u64 xi = x[e * dh + i];
      if (!xi) continue;
      for (int j = 0; j < dw; ++j) {
        u64 c = coeff_pairing_.at(i, j);
        if (!c) continue;
        acc = R.add(acc, R.mul(R.mul(xi, c), w[e * dw + j]));
      }
    }
  return acc;
}

bool CycleSpace::is_cycle(const std::vector<u64>& w) const {
  RingCtx R = host_->ring();
  for (auto& rel : host_->relations()) {
    std::vector<u64> x(host_->chain_dim(), 0);
    for (auto& [i, v] : rel) x[i] = R.add(x[i], v);
    if (pair_chain(x, w) != 0) return false;
  }
  return true;
}

std::vector<u64> CycleSpace::comparison(const std::vector<u64>& w) const {
  // each dual-edge crossing is replaced by the three-leg path through the
  // canonical vertex of the two adjacent faces; well-defined on cycles
  RingCtx R = dual_->ring();
  const CosetTable& T = host_->cosets();
  int dw = dual_->coeff().dim();
  std::vector<u64> out(dual_->chain_dim(), 0);
  auto accumulate = [&](const Chain& ch, int sign) {
    for (auto& [i, v] : ch) out[i] = sign > 0 ? R.add(out[i], v) : R.sub(out[i], v);
  };
  for (int e = 0; e < T.edge_count(); ++e) {
    std::vector<u64> phi(dw);
    bool any = false;
    for (int j = 0; j < dw; ++j) {
      phi[j] = w[e * dw + j];
      any |= phi[j] != 0;
    }
    if (!any) continue;
    int c = T.edge_rep(e);
    M22 g = T.small_lift(c);
    int i1 = T.rotation_of(c);
    M22 gs = mul(g, MAT_SIGMA);
    M22 gss = mul(gs, MAT_SIGMA);
    if (i1 == 1) accumulate(dual_->sym(gss, phi), -1);
    if (i1 == 2) accumulate(dual_->sym(g, phi), +1);
    accumulate(dual_->sym(g, phi), -1);
    M22 gS = mul(g, MAT_S);
    int c2 = T.coset_of(gS);
    int j2 = T.rotation_of(c2);
    M22 gSs = mul(gS, MAT_SIGMA);
    M22 gSss = mul(gSs, MAT_SIGMA);
    if (j2 == 1) accumulate(dual_->sym(gSss, phi), +1);
    if (j2 == 2) accumulate(dual_->sym(gS, phi), -1);
  }
  return out;
}

}  // namespace ptower
