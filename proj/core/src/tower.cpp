#include "ptower/tower.hpp"

#include <algorithm>
#include <map>

namespace ptower {

namespace {

const M22 MAT_S{0, -1, 1, 0};
const M22 MAT_SIGMA{0, -1, 1, -1};

Mat with_relations(const Presentation& P, const Mat* extra) {
  Mat rel = P.canonical_relations();
  if (!extra) return rel;
  Mat out(rel.R, rel.rows, rel.cols + extra->cols);
  for (int i = 0; i < rel.rows; ++i) {
    for (int j = 0; j < rel.cols; ++j) out.at(i, j) = rel.at(i, j);
    for (int j = 0; j < extra->cols; ++j) out.at(i, rel.cols + j) = extra->at(i, j);
  }
  return out;
}

bool has_torsion(const Presentation& P) {
  for (int e : P.modexp())
    if (e < P.ring().s) return true;
  return false;
}

// the induced map between canonical-coordinate modules (each modulo its
// relation columns) is an isomorphism
bool is_module_iso(const Mat& map, const Mat& srcRel, const Mat& tgtRel) {
  Mat aug(map.R, map.rows, map.cols + tgtRel.cols);
  for (int i = 0; i < map.rows; ++i) {
    for (int j = 0; j < map.cols; ++j) aug.at(i, j) = map.at(i, j);
    for (int j = 0; j < tgtRel.cols; ++j) aug.at(i, map.cols + j) = tgtRel.at(i, j);
  }
  RowEchelon ech(aug);
  std::vector<u64> b(map.rows, 0);
  for (int i = 0; i < map.rows; ++i) {
    b[i] = 1;
    auto s = ech.solve(b);
    b[i] = 0;
    if (!s) return false;  // not surjective
  }
  RowEchelon src(srcRel);
  for (auto& g : ech.kernel()) {
    std::vector<u64> x(map.cols);
    bool nz = false;
    for (int i = 0; i < map.cols; ++i) {
      x[i] = g[i];
      nz |= x[i] != 0;
    }
    if (!nz) continue;
    if (!src.solve(x)) return false;  // not injective
  }
  return true;
}

}  // namespace

OrdinaryStage ordinary_stage(std::shared_ptr<SymbolSpace> space, const Cocharacter& eta,
                             int threads) {
  OrdinaryStage st;
  st.space = space;
  st.tprime = reduce_op(tprime_op(space, eta));
  const Presentation& P = space->presentation();
  if (has_torsion(P)) {
    Mat rel = P.canonical_relations();
    st.ord = stable_idempotent(st.tprime.matrix, &rel, threads);
  } else {
    st.ord = stable_idempotent(st.tprime.matrix, nullptr, threads);
  }
  return st;
}

OrdinaryDual ordinary_dual(std::shared_ptr<CycleSpace> W, const Cocharacter& eta, int threads) {
  OrdinaryDual od;
  od.W = W;
  RingCtx R = W->host().ring();
  int nw = W->dual_space().chain_dim();
  int d = W->dim();
  od.gen_matrix = Mat(R, nw, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < nw; ++i) od.gen_matrix.at(i, j) = W->basis()[j][i];
  RowEchelon ech(od.gen_matrix);
  auto ker = ech.kernel();
  od.rels = Mat(R, d, (int)ker.size());
  for (int j = 0; j < (int)ker.size(); ++j)
    for (int i = 0; i < d; ++i) od.rels.at(i, j) = ker[j][i];
  ChainOp Tp = tprime_op(W->host_ptr(), eta);
  ChainOp Td = pairing_transpose_op(W, W, Tp);
  od.tdual = cycle_matrix(*W, Td);
  od.ord = stable_idempotent(od.tdual, od.rels.cols ? &od.rels : nullptr, threads);
  return od;
}

std::vector<std::vector<u64>> ordinary_dual_span(const OrdinaryDual& od) {
  // nonzero columns of the idempotent span its image; reduce them to the
  // pivot set and map back to chain coordinates
  const Mat& E = od.ord.e;
  RingCtx R = E.R;
  std::vector<std::vector<u64>> cols;
  for (int j = 0; j < E.cols; ++j) {
    std::vector<u64> c(E.rows);
    bool nz = false;
    for (int i = 0; i < E.rows; ++i) {
      c[i] = E.at(i, j);
      nz |= c[i] != 0;
    }
    if (nz) cols.push_back(std::move(c));
  }
  std::vector<std::vector<u64>> out;
  if (cols.empty()) return out;
  // greedy reduction: keep a column only if it is not in the span of the
  // kept ones (with the module relations)
  std::vector<std::vector<u64>> kept;
  for (auto& c : cols) {
    bool redundant = false;
    if (!kept.empty()) {
      Mat K(R, E.rows, (int)kept.size() + od.rels.cols);
      for (int j = 0; j < (int)kept.size(); ++j)
        for (int i = 0; i < E.rows; ++i) K.at(i, j) = kept[j][i];
      for (int j = 0; j < od.rels.cols; ++j)
        for (int i = 0; i < E.rows; ++i) K.at(i, (int)kept.size() + j) = od.rels.at(i, j);
      RowEchelon ech(K);
      redundant = ech.solve(c).has_value();
    }
    if (!redundant) kept.push_back(c);
  }
  for (auto& c : kept) out.push_back(matvec(od.gen_matrix, c));
  return out;
}

std::vector<u64> dual_project(const OrdinaryDual& od, const std::vector<u64>& w,
                              int inverse_power) {
  RowEchelon ech(od.gen_matrix);
  auto coords = ech.solve(w);
  check(coords.has_value(), "Internal", "dual chain is not a cycle");
  std::vector<u64> x = matvec(od.ord.e, *coords);
  for (int i = 0; i < inverse_power; ++i) x = matvec(od.ord.inv_on_image, x);
  return matvec(od.gen_matrix, x);
}

TruncatedTower build_tower(i64 N, i64 p, RingCtx R, int r_max, int threads) {
  check(r_max >= 1, "BadArgument", "r_max >= 1");
  TruncatedTower tw;
  tw.N = N;
  tw.p = p;
  tw.R = R;
  tw.r_max = r_max;
  Cocharacter eta(GroupTag::GL2, {1, 0});
  Weight w0(GroupTag::GL2, {0, 0});
  for (int r = 1; r <= r_max; ++r) {
    auto sp = make_space(level_Vr(N, p, r), w0, LatticeKind::Max, R);
    tw.stages.push_back(ordinary_stage(sp, eta, threads));
    tw.stage_divisors.push_back(sp->presentation().modexp());
  }
  // Transitions: the trace commutes with T' and diamonds, is surjective on
  // ordinary parts, and induces an isomorphism from the deck coinvariants of
  // stage r+1 (quotient by <1 + p^r> - 1) onto the stage-r ordinary part.
  tw.transitions_ordinary_iso = true;
  for (int r = 1; r < r_max; ++r) {
    HeckeOp trh = reduce_op(project_op(tw.stages[r].space, tw.stages[r - 1].space));
    tw.traces.push_back(trh.matrix);
    Mat lhs = mul(trh.matrix, tw.stages[r].tprime.matrix);
    Mat rhs = mul(tw.stages[r - 1].tprime.matrix, trh.matrix);
    check(ops_equal(*tw.stages[r - 1].space, lhs, rhs), "Internal",
          "trace does not commute with T'");
    i64 deck_gen = 1;
    for (int i = 0; i < r; ++i) deck_gen *= p;
    deck_gen += 1;  // 1 + p^r generates the deck of stage r+1 over stage r
    Mat Dm = reduce_op(diamond_op(tw.stages[r].space, deck_gen)).matrix;
    Mat Dc = sub(Dm, Mat::identity(R, tw.stages[r].space->dim()));
    const Presentation& Ps = tw.stages[r].space->presentation();
    const Presentation& Pt = tw.stages[r - 1].space->presentation();
    Mat one_s = sub(Mat::identity(R, Ps.dim()), tw.stages[r].ord.e);
    Mat srcExtra(R, Ps.dim(), one_s.cols + Dc.cols);
    for (int i = 0; i < Ps.dim(); ++i) {
      for (int j = 0; j < one_s.cols; ++j) srcExtra.at(i, j) = one_s.at(i, j);
      for (int j = 0; j < Dc.cols; ++j) srcExtra.at(i, one_s.cols + j) = Dc.at(i, j);
    }
    Mat srcRel = with_relations(Ps, &srcExtra);
    Mat one_t = sub(Mat::identity(R, Pt.dim()), tw.stages[r - 1].ord.e);
    Mat tgtRel = with_relations(Pt, &one_t);
    Mat Te = mul(trh.matrix, tw.stages[r].ord.e);
    if (!is_module_iso(Te, srcRel, tgtRel)) tw.transitions_ordinary_iso = false;
  }
  return tw;
}

ChainOp moment_op(std::shared_ptr<SymbolSpace> wt0, std::shared_ptr<SymbolSpace> wtlam) {
  check(wt0->coeff().dim() == 1, "BadArgument", "moment source must have trivial weight");
  check(wt0->level().key() == wtlam->level().key(), "IncompatibleLevels",
        "moment map joins spaces at one level");
  Weight lam = wtlam->coeff().lambda();
  check(trivial_on(lam, default_s0_gl2()), "WeightNotTrivialOnS0",
        "moment weight must be trivial on the subtorus");
  BoxExp be = box_exponents(wtlam->level());
  check(be.delta >= wt0->ring().s, "BadArgument",
        "moment map needs stage depth at least the precision");
  auto a = wt0;
  auto b = wtlam;
  ChainOp::Fn fn = [a, b](const std::vector<u64>& x) {
    int dv = b->coeff().dim();
    std::vector<u64> out(b->chain_dim(), 0);
    for (int e = 0; e < (int)x.size(); ++e) out[(size_t)e * dv + b->coeff().hw_index()] = x[e];
    return out;
  };
  return ChainOp(a, b, "mom", fn);
}

ControlReport control_check(i64 N, i64 p, RingCtx R, i64 k, int r_stage, int threads) {
  check(r_stage >= R.s, "BadArgument", "stage depth below precision");
  Cocharacter eta(GroupTag::GL2, {1, 0});
  Weight w0(GroupTag::GL2, {0, 0});
  Weight lam(GroupTag::GL2, {0, -k});
  auto sp0 = make_space(level_Vr(N, p, r_stage), w0, LatticeKind::Max, R);
  auto spl_r = make_space(level_Vr(N, p, r_stage), lam, LatticeKind::Max, R);
  auto spl_1 = make_space(level_Vr(N, p, 1), lam, LatticeKind::Max, R);
  OrdinaryStage os0 = ordinary_stage(sp0, eta, threads);
  OrdinaryStage osl = ordinary_stage(spl_1, eta, threads);

  Mat Dm = reduce_op(diamond_op(sp0, 1 + p)).matrix;
  u64 c = R.pow(R.reduce(1 + p), (u64)k);
  Mat Dc = sub(Dm, scal(c, Mat::identity(R, sp0->dim())));

  HeckeOp mom = reduce_op(moment_op(sp0, spl_r));
  HeckeOp tr = reduce_op(project_op(spl_r, spl_1));
  Mat T = mul(tr.matrix, mom.matrix);

  {
    Mat z = mul(T, Dc);
    Mat rel = spl_1->presentation().canonical_relations();
    check(equal_mod(z, Mat::zero(R, z.rows, z.cols), &rel), "Internal",
          "moment map does not kill the coinvariant ideal");
  }

  ControlReport rep;
  const Presentation& Ps = sp0->presentation();
  const Presentation& Pt = spl_1->presentation();
  Mat one_s = sub(Mat::identity(R, Ps.dim()), os0.ord.e);
  Mat srcExtra(R, Ps.dim(), one_s.cols + Dc.cols);
  for (int i = 0; i < Ps.dim(); ++i) {
    for (int j = 0; j < one_s.cols; ++j) srcExtra.at(i, j) = one_s.at(i, j);
    for (int j = 0; j < Dc.cols; ++j) srcExtra.at(i, one_s.cols + j) = Dc.at(i, j);
  }
  Mat srcRel = with_relations(Ps, &srcExtra);
  Mat one_t = sub(Mat::identity(R, Pt.dim()), osl.ord.e);
  Mat tgtRel = with_relations(Pt, &one_t);

  // restrict the map to the ordinary source: columns T e'
  Mat Te = mul(T, os0.ord.e);
  Mat aug(R, Te.rows, Te.cols + tgtRel.cols);
  for (int i = 0; i < Te.rows; ++i) {
    for (int j = 0; j < Te.cols; ++j) aug.at(i, j) = Te.at(i, j);
    for (int j = 0; j < tgtRel.cols; ++j) aug.at(i, Te.cols + j) = tgtRel.at(i, j);
  }
  RowEchelon ech(aug);
  rep.surjective = true;
  {
    std::vector<u64> b(Te.rows, 0);
    for (int i = 0; i < Te.rows && rep.surjective; ++i) {
      b[i] = 1;
      if (!ech.solve(b)) rep.surjective = false;
      b[i] = 0;
    }
  }
  rep.injective = true;
  {
    RowEchelon src(srcRel);
    for (auto& g : ech.kernel()) {
      std::vector<u64> x(Te.cols);
      bool nz = false;
      for (int i = 0; i < Te.cols; ++i) {
        x[i] = g[i];
        nz |= x[i] != 0;
      }
      if (!nz) continue;
      if (!src.solve(x)) {
        rep.injective = false;
        break;
      }
    }
  }
  rep.pass = rep.injective && rep.surjective;
  rep.target_rank = osl.ord.free_rank;
  rep.target_divisors = osl.ord.image_divisor_exp;
  rep.source_corank = os0.ord.free_rank;
  return rep;
}

ParahoricReport parahoric_transfer(i64 N, i64 p, RingCtx R, const Weight& lam, int threads) {
  Cocharacter eta(GroupTag::GL2, {1, 0});
  auto spJ = make_space(level_J(N, p), lam, LatticeKind::Max, R);
  auto spJb = make_space(level_Jbar(N, p), lam, LatticeKind::Max, R);
  auto spMid = make_space(level_JJbar(N, p), lam, LatticeKind::Max, R);
  ParahoricReport rep;
  ChainOp up = transfer_op(spJ, spMid);
  ChainOp down = project_op(spMid, spJb);
  ChainOp Bop(spJ, spJb, "B", [up, down](const std::vector<u64>& x) {
    return down.apply(up.apply(x));
  });
  check(Bop.well_defined(), "Internal", "B is not well defined");
  Mat B = Bop.reduced();
  Mat PhiA = spJb->coeff().sym_coeff(M22{1, 0, 0, p}, M22{}, 1);
  ChainOp Aop = translate_op(spJb, spJ, M22{1, 0, 0, p}, PhiA, "A");
  Mat A = reduce_op(Aop).matrix;
  Mat TpJ = reduce_op(tprime_op(spJ, eta)).matrix;
  Mat TpJb = reduce_op(tprime_op(spJb, eta)).matrix;
  rep.ab_identity = ops_equal(*spJ, mul(A, B), TpJ);
  rep.ba_identity = ops_equal(*spJb, mul(B, A), TpJb);
  OrdinaryStage osJ = ordinary_stage(spJ, eta, threads);
  OrdinaryStage osJb = ordinary_stage(spJb, eta, threads);
  Mat one_s = sub(Mat::identity(R, spJ->dim()), osJ.ord.e);
  Mat srcRel = with_relations(spJ->presentation(), &one_s);
  Mat one_t = sub(Mat::identity(R, spJb->dim()), osJb.ord.e);
  Mat tgtRel = with_relations(spJb->presentation(), &one_t);
  rep.b_ordinary_invertible = is_module_iso(B, srcRel, tgtRel);
  auto WJ = std::make_shared<CycleSpace>(spJ);
  auto WJb = std::make_shared<CycleSpace>(spJb);
  ChainOp Bstar = pairing_transpose_op(WJ, WJb, Bop);
  rep.gram_adjoint = true;
  const Presentation& P = spJ->presentation();
  std::vector<u64> e(P.dim(), 0);
  for (int j = 0; j < P.dim() && rep.gram_adjoint; ++j) {
    e[j] = 1;
    auto x = P.lift(e);
    e[j] = 0;
    auto Bx = Bop.apply(x);
    for (auto& w : WJb->basis()) {
      u64 lhs = WJb->pair_chain(Bx, w);
      u64 rhs = WJ->pair_chain(x, Bstar.apply(w));
      if (lhs != rhs) {
        rep.gram_adjoint = false;
        break;
      }
    }
  }
  return rep;
}

DiagonalClass::DiagonalClass(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R,
                             int r)
    : spec_(spec), lam4_(lam4), N_(N), R_(R), r_(r) {
  check(lam4.tag == GroupTag::GL2xGL2, "TagMismatch", "product weight expected");
  i64 p = R.p;
  check(check_condition_B(spec, spec.s0).holds, "ConditionBFailure", "condition (B) fails");
  BranchingPolynomial bp = branching_polynomial(spec, lam4, R);
  Weight l1(GroupTag::GL2, {lam4.k[0], lam4.k[1]});
  Weight l2(GroupTag::GL2, {lam4.k[2], lam4.k[3]});
  fac_[0].lam = l1;
  fac_[1].lam = l2;
  // the translating element lives at p only: replace u by the lift that is
  // trivial at the tame level and agrees with u to enough p-adic depth
  // (level conditions see u mod p^r, coefficient actions mod p^s)
  int depth = std::max(r, R.s) + 1;
  i64 pe = 1;
  for (int i = 0; i < depth; ++i) pe *= p;
  M22 ut[2];
  for (int i = 0; i < 2; ++i) {
    const M22& u = i == 0 ? spec.u1 : spec.u2;
    ut[i] = crt_lift(N, p, depth,
                     M22{((u.a % pe) + pe) % pe, ((u.b % pe) + pe) % pe,
                         ((u.c % pe) + pe) % pe, ((u.d % pe) + pe) % pe});
  }
  LevelSpec V = level_Vr(N, p, r), U = level_Ur(N, p, r);
  LevelSpec conj1 = level_conj(N, p, {{ut[0], r, 0, r}}, "u1U" + std::to_string(r));
  LevelSpec conj2 = level_conj(N, p, {{ut[1], r, 0, r}}, "u2U" + std::to_string(r));
  LevelSpec H =
      level_conj(N, p, {{ut[0], r, 0, r}, {ut[1], r, 0, r}}, "HU" + std::to_string(r));
  for (int i = 0; i < 2; ++i) {
    Weight lw = i == 0 ? l1 : l2;
    fac_[i].MV = make_space(V, lw, LatticeKind::Max, R);
    fac_[i].WV = std::make_shared<CycleSpace>(fac_[i].MV);
    auto MU = make_space(U, lw, LatticeKind::Max, R, false);
    DualPair pu = DualPair::make(MU);
    dualU_[i] = pu.dual;
    ChainOp tau = tau_push_op(MU, fac_[i].MV, r);
    tau_dual_[i] = pairing_transpose_op(pu, fac_[i].WV->dual_pair(), tau);
    // the pushforward [u]_* on chains is translation by u^{-1}; its exact
    // pairing transpose translates back by u with the dual coefficient
    auto Mconj = make_space(i == 0 ? conj1 : conj2, lw, LatticeKind::Max, R, false);
    DualPair pc = DualPair::make(Mconj);
    dualConj_[i] = pc.dual;
    GElt ge;
    ge.tag = GroupTag::GL2;
    ge.g1 = ut[i];
    Mat Phi = pc.dual->coeff().action(ge);
    u_dual_[i] = translate_op(dualU_[i], dualConj_[i], ut[i], Phi, "[u]^dual");
    auto MH = make_space(H, lw, LatticeKind::Max, R, false);
    DualPair ph = DualPair::make(MH);
    dualH_[i] = ph.dual;
    toH_[i] = transfer_op(dualConj_[i], dualH_[i]);
  }
  RepModule v1 = RepModule::build(GroupTag::GL2, l1, LatticeKind::Max, R);
  RepModule v2 = RepModule::build(GroupTag::GL2, l2, LatticeKind::Max, R);
  Mat P1 = dual_pairing_matrix(v1, dualH_[0]->coeff());
  Mat P2 = dual_pairing_matrix(v2, dualH_[1]->coeff());
  int d1 = v1.dim(), d2 = v2.dim();
  form_br_ = Mat(R, d1, d2);
  for (int j1 = 0; j1 < d1; ++j1)
    for (int j2 = 0; j2 < d2; ++j2) {
      u64 acc = 0;
      for (int i1 = 0; i1 < d1; ++i1)
        for (int i2 = 0; i2 < d2; ++i2)
          acc = R.add(acc, R.mul(R.mul(bp.br_mod[i1 * d2 + i2], P1.at(i1, j1)), P2.at(i2, j2)));
      form_br_.at(j1, j2) = acc;
    }
}

u64 DiagonalClass::eval(const std::vector<u64>& w1, const std::vector<u64>& w2) const {
  return eval_z(tau_dual_[0].apply(w1), tau_dual_[1].apply(w2));
}

u64 DiagonalClass::eval_z(const std::vector<u64>& y1, const std::vector<u64>& y2) const {
  auto a = toH_[0].apply(u_dual_[0].apply(y1));
  auto b = toH_[1].apply(u_dual_[1].apply(y2));
  auto ca = comparison_chain(*dualH_[0], a);
  return pair_form(*dualH_[0], *dualH_[1], form_br_, ca, b);
}

std::vector<u64> comparison_chain(const SymbolSpace& dual, const std::vector<u64>& w) {
  RingCtx R = dual.ring();
  const CosetTable& T = dual.cosets();
  int dw = dual.coeff().dim();
  std::vector<u64> out(dual.chain_dim(), 0);
  auto accumulate = [&](const Chain& ch, int sign) {
    for (auto& [i, v] : ch) out[i] = sign > 0 ? R.add(out[i], v) : R.sub(out[i], v);
  };
  std::vector<u64> phi(dw);
  for (int e = 0; e < T.edge_count(); ++e) {
    bool any = false;
    for (int j = 0; j < dw; ++j) {
      phi[j] = w[(size_t)e * dw + j];
      any |= phi[j] != 0;
    }
    if (!any) continue;
    int c = T.edge_rep(e);
    M22 g = T.small_lift(c);
    int i1 = T.rotation_of(c);
    M22 gs = mul(g, MAT_SIGMA);
    M22 gss = mul(gs, MAT_SIGMA);
    if (i1 == 1) accumulate(dual.sym(gss, phi), -1);
    if (i1 == 2) accumulate(dual.sym(g, phi), +1);
    accumulate(dual.sym(g, phi), -1);
    M22 gS = mul(g, MAT_S);
    int c2 = T.coset_of(gS);
    int j2 = T.rotation_of(c2);
    M22 gSs = mul(gS, MAT_SIGMA);
    M22 gSss = mul(gSs, MAT_SIGMA);
    if (j2 == 1) accumulate(dual.sym(gSss, phi), +1);
    if (j2 == 2) accumulate(dual.sym(gS, phi), -1);
  }
  return out;
}

u64 pair_form(const SymbolSpace& dualA, const SymbolSpace& dualB, const Mat& form,
              const std::vector<u64>& a, const std::vector<u64>& b) {
  RingCtx R = dualA.ring();
  int da = dualA.coeff().dim(), db = dualB.coeff().dim();
  int n = dualA.cosets().edge_count();
  check((int)a.size() == n * da && (int)b.size() == n * db, "ShapeMismatch", "pair_form");
  u64 acc = 0;
  for (int e = 0; e < n; ++e)
    for (int i = 0; i < da; ++i) {
      u64 ai = a[(size_t)e * da + i];
      if (!ai) continue;
      for (int j = 0; j < db; ++j) {
        u64 f = form.at(i, j);
        if (!f) continue;
        acc = R.add(acc, R.mul(R.mul(ai, f), b[(size_t)e * db + j]));
      }
    }
  return acc;
}

namespace {

Mat eval_table(const DiagonalClass& D, const std::vector<std::vector<u64>>& ws1,
               const std::vector<std::vector<u64>>& ws2, RingCtx R) {
  Mat out(R, (int)ws1.size(), (int)ws2.size());
  for (int i = 0; i < (int)ws1.size(); ++i)
    for (int j = 0; j < (int)ws2.size(); ++j) out.at(i, j) = D.eval(ws1[i], ws2[j]);
  return out;
}

}  // namespace

// The product tower of the theorem lives at the coupled levels forced by
// condition (B): the two torus factors satisfy a1 a2 = 1 mod p^r rather than
// separate d = 1 conditions. All classes here are represented through their
// pullbacks to the finer per-factor product levels (the covering is abelian
// with group (Z/p^r)^x of anti-diagonal diamonds). One step of the coupled
// trace pulls back to 1/p times the per-factor product trace, so the identity
// trace(xi_{r+1}) = T' xi_r mod p^s is exactly equivalent to
//   (product-trace table) = p * (T' table)  at working precision p^{s+1}.
NormReport norm_compat_check(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R,
                             int r, int threads) {
  (void)threads;
  Cocharacter eta(GroupTag::GL2, {1, 0});
  RingCtx Rw(R.p, R.s + 1);
  DiagonalClass Dr(spec, lam4, N, Rw, r);
  DiagonalClass Dr1(spec, lam4, N, Rw, r + 1);
  NormReport rep;
  const auto& B1 = Dr.factor(0).WV->basis();
  const auto& B2 = Dr.factor(1).WV->basis();
  rep.table_dim = (int)(B1.size() * B2.size());
  ChainOp tr1 = transfer_op(Dr.factor(0).WV->dual_ptr(), Dr1.factor(0).WV->dual_ptr());
  ChainOp tr2 = transfer_op(Dr.factor(1).WV->dual_ptr(), Dr1.factor(1).WV->dual_ptr());
  std::vector<std::vector<u64>> up1, up2;
  for (auto& w : B1) up1.push_back(tr1.apply(w));
  for (auto& w : B2) up2.push_back(tr2.apply(w));
  Mat lhs = eval_table(Dr1, up1, up2, Rw);
  ChainOp td1 =
      pairing_transpose_op(Dr.factor(0).WV, Dr.factor(0).WV, tprime_op(Dr.factor(0).MV, eta));
  ChainOp td2 =
      pairing_transpose_op(Dr.factor(1).WV, Dr.factor(1).WV, tprime_op(Dr.factor(1).MV, eta));
  std::vector<std::vector<u64>> tw1, tw2;
  for (auto& w : B1) tw1.push_back(td1.apply(w));
  for (auto& w : B2) tw2.push_back(td2.apply(w));
  Mat rhs = eval_table(Dr, tw1, tw2, Rw);
  rep.pass = lhs == scal(Rw.reduce(Rw.p), rhs);
  rep.nonzero = !lhs.is_zero();
  return rep;
}

// Twist compatibility. The comparison table is formed at the stage r = s,
// where the moment map is an exact cochain map mod p^s (cup with the reduced
// highest-weight vector needs stage depth >= precision); the stage-1
// statement then follows formally from the weight-lambda norm relation and
// the certified commutation of traces with T' and the ordinary splitting,
// both of which are checked alongside. Left pipeline: the weight-0 family
// x_s = (T')^{-s} e' xi^0_s contracted by the highest-weight vector; right
// pipeline: an independent weight-lambda run of the pushforward construction.
TwistReport twist_compat_check(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R,
                               int threads) {
  Cocharacter eta(GroupTag::GL2, {1, 0});
  int s = R.s;
  Weight w0(GroupTag::GL2xGL2, {0, 0, 0, 0});
  if (s >= 2) {
    NormReport nr0 = norm_compat_check(spec, w0, N, R, 1, threads);
    check(nr0.pass, "NormRelationFailure", "norm relation fails at stage 1 (weight 0)");
    NormReport nrl = norm_compat_check(spec, lam4, N, R, 1, threads);
    check(nrl.pass, "NormRelationFailure", "norm relation fails at stage 1 (weight lambda)");
  }
  TwistReport rep;
  DiagonalClass Ds(spec, lam4, N, R, s);
  auto od1 = ordinary_dual(Ds.factor(0).WV, eta, threads);
  auto od2 = ordinary_dual(Ds.factor(1).WV, eta, threads);
  // both sides are ordinary-projected classes, so spanning probes of the
  // ordinary dual image give a complete comparison
  auto B1 = ordinary_dual_span(od1);
  auto B2 = ordinary_dual_span(od2);
  rep.table_dim = (int)(B1.size() * B2.size());
  // right side: (T')^{-s} e' xi^{[lambda]}_s against the ordinary probes
  std::vector<std::vector<u64>> a1, a2;
  for (auto& w : B1) a1.push_back(dual_project(od1, w, s));
  for (auto& w : B2) a2.push_back(dual_project(od2, w, s));
  Mat rhs = eval_table(Ds, a1, a2, R);

  // left side: mom_s of the weight-0 family at stage s
  DiagonalClass D0(spec, w0, N, R, s);
  auto od01 = ordinary_dual(D0.factor(0).WV, eta, threads);
  auto od02 = ordinary_dual(D0.factor(1).WV, eta, threads);
  auto contract = [&](int fac, const OrdinaryDual& od,
                      const std::vector<std::vector<u64>>& vecs) {
    Weight lw = Ds.factor(fac).lam;
    RepModule vmax = RepModule::build(GroupTag::GL2, lw, LatticeKind::Max, R);
    const SymbolSpace& dual_s = Ds.factor(fac).WV->dual_space();
    Mat P = dual_pairing_matrix(vmax, dual_s.coeff());
    int dw = dual_s.coeff().dim();
    int n = dual_s.cosets().edge_count();
    std::vector<std::vector<u64>> out;
    for (auto& w : vecs) {
      std::vector<u64> y(n, 0);
      for (int e = 0; e < n; ++e) {
        u64 acc = 0;
        for (int j = 0; j < dw; ++j) acc = R.add(acc, R.mul(P.at(0, j), w[(size_t)e * dw + j]));
        y[e] = acc;
      }
      out.push_back(dual_project(od, y, s));
    }
    return out;
  };
  auto z1 = contract(0, od01, B1);
  auto z2 = contract(1, od02, B2);
  Mat lhs = eval_table(D0, z1, z2, R);
  rep.pass = lhs == rhs;
  rep.nonzero = !lhs.is_zero();
  return rep;
}

}  // namespace ptower
