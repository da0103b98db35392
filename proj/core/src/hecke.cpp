#include "ptower/hecke.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace ptower {

namespace {

i64 ipow(i64 b, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<u64> accumulate_chain(const SymbolSpace& to, const Chain& ch, std::vector<u64>& out,
                                  int sign = 1) {
  RingCtx R = to.ring();
  for (auto& [i, v] : ch) out[i] = sign > 0 ? R.add(out[i], v) : R.sub(out[i], v);
  return out;
}

}  // namespace

bool ChainOp::well_defined() const {
  if (!from_->materialized() || !to_->materialized()) return false;
  RingCtx R = from_->ring();
  for (auto& rel : from_->relations()) {
    std::vector<u64> x(from_->chain_dim(), 0);
    for (auto& [i, v] : rel) x[i] = R.add(x[i], v);
    if (!to_->presentation().is_zero(fn_(x))) return false;
  }
  return true;
}

Mat ChainOp::reduced() const {
  const Presentation& pf = from_->presentation();
  const Presentation& pt = to_->presentation();
  int df = pf.dim(), dt = pt.dim();
  Mat M(from_->ring(), dt, df);
  std::vector<u64> e(df, 0);
  for (int j = 0; j < df; ++j) {
    e[j] = 1;
    auto img = pt.reduce(fn_(pf.lift(e)));
    e[j] = 0;
    for (int i = 0; i < dt; ++i) M.at(i, j) = img[i];
  }
  return M;
}

HeckeOp reduce_op(const ChainOp& op) {
  HeckeOp h;
  h.label = op.label();
  h.certified = op.well_defined();
  check(h.certified, "Internal", "operator is not well defined on the quotient: " + op.label());
  h.matrix = op.reduced();
  return h;
}

ChainOp pieces_op(std::shared_ptr<SymbolSpace> from, std::shared_ptr<SymbolSpace> to,
                  std::vector<std::pair<M22, Mat>> pieces, const std::string& label) {
  auto fromp = from;
  auto top = to;
  auto ps = std::make_shared<std::vector<std::pair<M22, Mat>>>(std::move(pieces));
  ChainOp::Fn fn = [fromp, top, ps](const std::vector<u64>& x) {
    const SymbolSpace& A = *fromp;
    const SymbolSpace& B = *top;
    RingCtx R = A.ring();
    int dv = A.coeff().dim();
    std::vector<u64> out(B.chain_dim(), 0);
    std::vector<u64> block(dv);
    for (int e = 0; e < A.cosets().edge_count(); ++e) {
      bool any = false;
      for (int j = 0; j < dv; ++j) {
        block[j] = x[e * dv + j];
        any |= block[j] != 0;
      }
      if (!any) continue;
      M22 g = A.cosets().small_lift(A.cosets().edge_rep(e));
      for (auto& [beta, Phi] : *ps) {
        M22 Bg = mul(beta, g);
        check(Bg.det() > 0, "Internal", "piece with non-positive determinant");
        std::vector<u64> w = matvec(Phi, block);
        bool nz = false;
        for (u64 t : w) nz |= t != 0;
        if (!nz) continue;
        // unimodular pieces are pure relabelings; only genuine isogeny
        // directions need the path decomposition
        Chain ch = Bg.det() == 1 ? B.sym(Bg, w) : B.path_chain(Bg.b, Bg.d, Bg.a, Bg.c, w);
        accumulate_chain(B, ch, out);
      }
    }
    (void)R;
    return out;
  };
  return ChainOp(from, to, label, fn);
}

ChainOp translate_op(std::shared_ptr<SymbolSpace> from, std::shared_ptr<SymbolSpace> to, M22 beta,
                     Mat Phi, const std::string& label) {
  return pieces_op(std::move(from), std::move(to), {{beta, Phi}}, label);
}

ChainOp transfer_op(std::shared_ptr<SymbolSpace> big, std::shared_ptr<SymbolSpace> small) {
  // H^1(coarse level) -> H^1(finer level): sum over the fiber of each coset
  auto fibers = std::make_shared<std::vector<std::vector<std::pair<int, M22>>>>();
  fibers->resize(big->cosets().size());
  for (int c2 = 0; c2 < small->cosets().size(); ++c2) {
    M22 lift = small->cosets().small_lift(c2);
    auto [c1, t] = big->cosets().locate(lift);
    (*fibers)[c1].emplace_back(c2, t);
  }
  auto bigp = big;
  auto smallp = small;
  ChainOp::Fn fn = [bigp, smallp, fibers](const std::vector<u64>& x) {
    const SymbolSpace& A = *bigp;
    const SymbolSpace& B = *smallp;
    int dv = A.coeff().dim();
    std::vector<u64> out(B.chain_dim(), 0);
    std::vector<u64> block(dv);
    std::map<int, u64> acc;
    for (int e = 0; e < A.cosets().edge_count(); ++e) {
      bool any = false;
      for (int j = 0; j < dv; ++j) {
        block[j] = x[e * dv + j];
        any |= block[j] != 0;
      }
      if (!any) continue;
      int c1 = A.cosets().edge_rep(e);
      for (auto& [c2, t] : (*fibers)[c1]) {
        // [w2, rho(t) v]
        Chain ch = B.sym_at_witness(c2, t, block);
        accumulate_chain(B, ch, out);
      }
    }
    (void)acc;
    return out;
  };
  return ChainOp(big, small, "transfer(" + big->level().label + "->" + small->level().label + ")",
                 fn);
}

ChainOp project_op(std::shared_ptr<SymbolSpace> deep, std::shared_ptr<SymbolSpace> coarse) {
  auto locs = std::make_shared<std::vector<std::pair<int, M22>>>();
  locs->resize(deep->cosets().edge_count());
  for (int e = 0; e < deep->cosets().edge_count(); ++e) {
    M22 lift = deep->cosets().small_lift(deep->cosets().edge_rep(e));
    auto [c1, t] = coarse->cosets().locate(lift);
    // [w2, v] = [t w1, v] = [w1, rho(t^{-1}) v]
    (*locs)[e] = {c1, M22{t.d, -t.b, -t.c, t.a}};
  }
  auto deepp = deep;
  auto coarsep = coarse;
  ChainOp::Fn fn = [deepp, coarsep, locs](const std::vector<u64>& x) {
    const SymbolSpace& A = *deepp;
    const SymbolSpace& B = *coarsep;
    int dv = A.coeff().dim();
    std::vector<u64> out(B.chain_dim(), 0);
    std::vector<u64> block(dv);
    for (int e = 0; e < A.cosets().edge_count(); ++e) {
      bool any = false;
      for (int j = 0; j < dv; ++j) {
        block[j] = x[e * dv + j];
        any |= block[j] != 0;
      }
      if (!any) continue;
      auto& [c1, ti] = (*locs)[e];
      Chain ch = B.sym_at_witness(c1, ti, block);
      accumulate_chain(B, ch, out);
    }
    return out;
  };
  return ChainOp(deep, coarse,
                 "trace(" + deep->level().label + "->" + coarse->level().label + ")", fn);
}

BoxExp box_exponents(const LevelSpec& spec) {
  check(spec.conds.size() == 1 && spec.conds[0].u == M22{1, 0, 0, 1}, "NoIwahoriDecomposition",
        "level is not a plain box at p");
  return {spec.conds[0].beta, spec.conds[0].gamma, spec.conds[0].delta};
}

bool has_iwahori_decomposition(const LevelSpec& spec) {
  if (spec.conds.size() != 1 || !(spec.conds[0].u == M22{1, 0, 0, 1})) return false;
  return true;  // plain boxes factor as Nbar_U L_U N_U by construction
}

ChainOp tprime_op(std::shared_ptr<SymbolSpace> space, const Cocharacter& eta) {
  check(eta.tag == GroupTag::GL2, "TagMismatch", "tprime_op eta");
  check(is_sigma_plus(eta), "NotSigmaPlus", "eta must be dominant");
  check(has_iwahori_decomposition(space->level()), "NoIwahoriDecomposition", space->level().label);
  BoxExp be = box_exponents(space->level());
  i64 p = space->level().p;
  int pow = (int)(eta.e[0] - eta.e[1]);
  std::vector<std::pair<M22, Mat>> pieces;
  i64 pb = ipow(p, be.beta);
  for (i64 j = 0; j < p; ++j) {
    M22 B{1, j * pb, 0, p};
    pieces.emplace_back(B, space->coeff().sym_coeff(B, M22{}, 1));
  }
  ChainOp one = pieces_op(space, space, pieces, "T'");
  if (pow == 0) {
    // central eta: the normalized operator is the identity
    ChainOp::Fn fn = [](const std::vector<u64>& x) { return x; };
    return ChainOp(space, space, "T'(central)", fn);
  }
  if (pow == 1) return one;
  auto onep = std::make_shared<ChainOp>(one);
  ChainOp::Fn fn = [onep, pow](const std::vector<u64>& x) {
    std::vector<u64> y = x;
    for (int i = 0; i < pow; ++i) y = onep->apply(y);
    return y;
  };
  return ChainOp(space, space, "T'^" + std::to_string(pow), fn);
}

M22 crt_lift(i64 N, i64 p, int e, const M22& target_mod_pe) {
  i64 pe = ipow(p, e);
  i64 M = N * pe;
  // target: I mod N, given mod p^e
  auto crt = [&](i64 xN, i64 xP) {
    xP = ((xP % pe) + pe) % pe;
    if (N == 1) return xP;
    // x = xN mod N, x = xP mod pe
    i64 inv = 1;
    {
      i64 a = pe % N, t0 = 0, t1 = 1, r0 = N, r1 = a;
      while (r1) {
        i64 q = r0 / r1, t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = t0 - q * t1;
        t0 = t1;
        t1 = t;
      }
      inv = ((t0 % N) + N) % N;
    }
    i64 t = ((xN - xP) % N * inv % N + N) % N;
    return (xP + pe * t) % M;
  };
  M22 target{crt(1, target_mod_pe.a), crt(0, target_mod_pe.b), crt(0, target_mod_pe.c),
             crt(1, target_mod_pe.d)};
  return lift_sl2_mod(M, target);
}

ChainOp tl_op(std::shared_ptr<SymbolSpace> space, i64 ell) {
  const LevelSpec& lv = space->level();
  check(is_prime(ell) && ell != lv.p && lv.N % ell != 0, "BadPrime",
        "T_l needs a prime away from N and p");
  RingCtx R = space->ring();
  int m = space->coeff().factor_m(0);
  u64 lmod = R.reduce(ell);
  u64 scale = m >= 0 ? R.pow(lmod, (u64)m) : R.pow(R.inv_unit(lmod), (u64)(-m));
  std::vector<std::pair<M22, Mat>> pieces;
  for (i64 j = 0; j < ell; ++j) {
    M22 B{1, j, 0, ell};
    pieces.emplace_back(B, space->coeff().sym_coeff(B, M22{}, scale));
  }
  // last piece: gamma_ell * diag(ell, 1) with gamma_ell = lift of diag(ell^{-1}, ell)
  {
    int e = lv.cond_exp();
    i64 pe = ipow(lv.p, e);
    i64 li = 1;
    {
      i64 a = ell % pe, t0 = 0, t1 = 1, r0 = pe, r1 = a;
      while (r1) {
        i64 q = r0 / r1, t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = t0 - q * t1;
        t0 = t1;
        t1 = t;
      }
      li = ((t0 % pe) + pe) % pe;
    }
    M22 gl = crt_lift(lv.N, lv.p, e, M22{li, 0, 0, ell % pe});
    M22 B = mul(gl, M22{ell, 0, 0, 1});
    pieces.emplace_back(B, space->coeff().sym_coeff(B, M22{}, scale));
  }
  return pieces_op(space, space, pieces, "T_" + std::to_string(ell));
}

ChainOp diamond_op(std::shared_ptr<SymbolSpace> space, i64 d) {
  const LevelSpec& lv = space->level();
  int e = lv.cond_exp();
  i64 pe = ipow(lv.p, e);
  d = ((d % pe) + pe) % pe;
  check(d % lv.p != 0, "BadArgument", "diamond needs a unit");
  i64 di = 1;
  {
    i64 a = d, t0 = 0, t1 = 1, r0 = pe, r1 = a;
    while (r1) {
      i64 q = r0 / r1, t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = t0 - q * t1;
      t0 = t1;
      t1 = t;
    }
    di = ((t0 % pe) + pe) % pe;
  }
  M22 gd = crt_lift(lv.N, lv.p, e, M22{di, 0, 0, d});
  GElt gelt;
  gelt.tag = GroupTag::GL2;
  gelt.g1 = gd;
  Mat Phi = space->coeff().action(gelt);
  auto sp = space;
  auto gdp = std::make_shared<M22>(gd);
  auto php = std::make_shared<Mat>(std::move(Phi));
  ChainOp::Fn fn = [sp, gdp, php](const std::vector<u64>& x) {
    const SymbolSpace& A = *sp;
    int dv = A.coeff().dim();
    std::vector<u64> out(A.chain_dim(), 0);
    std::vector<u64> block(dv);
    for (int e2 = 0; e2 < A.cosets().edge_count(); ++e2) {
      bool any = false;
      for (int j = 0; j < dv; ++j) {
        block[j] = x[e2 * dv + j];
        any |= block[j] != 0;
      }
      if (!any) continue;
      M22 g = A.cosets().small_lift(A.cosets().edge_rep(e2));
      Chain ch = A.sym(mul(*gdp, g), matvec(*php, block));
      accumulate_chain(A, ch, out);
    }
    return out;
  };
  return ChainOp(space, space, "<" + std::to_string(d) + ">", fn);
}

ChainOp tau_push_op(std::shared_ptr<SymbolSpace> from_Ur, std::shared_ptr<SymbolSpace> to_Vr,
                    int r) {
  i64 p = from_Ur->level().p;
  i64 pr = ipow(p, r);
  M22 beta{1, 0, 0, pr};
  Mat Phi = from_Ur->coeff().sym_coeff(M22{1, 0, 0, pr}, M22{}, 1);
  return translate_op(from_Ur, to_Vr, beta, Phi, "[tau^" + std::to_string(r) + "]_*");
}

Mat chain_matrix(const ChainOp& op) {
  int nf = op.from().chain_dim(), nt = op.to().chain_dim();
  Mat M(op.from().ring(), nt, nf);
  std::vector<u64> e(nf, 0);
  for (int j = 0; j < nf; ++j) {
    e[j] = 1;
    auto img = op.apply(e);
    e[j] = 0;
    for (int i = 0; i < nt; ++i) M.at(i, j) = img[i];
  }
  return M;
}

ChainOp pairing_transpose_op(const DualPair& A, const DualPair& B, const ChainOp& host_op) {
  // <T x, w>_B = <x, T^v w>_A with T^v = C_A^{-1} M^T C_B blockwise
  auto cache = std::make_shared<Mat>();
  auto opc = std::make_shared<ChainOp>(host_op);
  auto pa = std::make_shared<DualPair>(A);
  auto pb = std::make_shared<DualPair>(B);
  ChainOp::Fn fn = [pa, pb, opc, cache](const std::vector<u64>& w) {
    if (cache->rows == 0) *cache = chain_matrix(*opc).transpose();
    auto x = pb->to_host(w);
    auto y = matvec(*cache, x);
    return pa->from_host(y);
  };
  return ChainOp(B.dual, A.dual, host_op.label() + "^dual", fn);
}

ChainOp pairing_transpose_op(std::shared_ptr<CycleSpace> WA, std::shared_ptr<CycleSpace> WB,
                             const ChainOp& host_op) {
  return pairing_transpose_op(WA->dual_pair(), WB->dual_pair(), host_op);
}

bool ops_equal(const SymbolSpace& target, Mat A, Mat B) {
  target.presentation().canonicalize_rows(A);
  target.presentation().canonicalize_rows(B);
  return A == B;
}

Mat cycle_matrix(const CycleSpace& W, const ChainOp& op) {
  RingCtx R = W.dual_space().ring();
  int nw = W.dual_space().chain_dim();
  int d = W.dim();
  Mat G(R, nw, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < nw; ++i) G.at(i, j) = W.basis()[j][i];
  RowEchelon ech(G);
  Mat M(R, d, d);
  for (int j = 0; j < d; ++j) {
    auto img = op.apply(W.basis()[j]);
    check(W.is_cycle(img), "Internal", "operator does not preserve the cycle space");
    auto sol = ech.solve(img);
    check(sol.has_value(), "Internal", "cycle image is outside the span of the basis");
    for (int i = 0; i < d; ++i) M.at(i, j) = (*sol)[i];
  }
  return M;
}

}  // namespace ptower

namespace ptower {

std::string cache_key(const SymbolSpace& sp, const std::string& label) {
  std::ostringstream os;
  os << sp.level().key() << "|w";
  for (i64 k : sp.coeff().lambda().k) os << k << ",";
  os << "|" << (sp.coeff().kind() == LatticeKind::Min ? "min" : "max");
  os << "|s" << sp.ring().s << "|" << label;
  u64 h = 1469598103934665603ull;
  for (char c : os.str()) {
    h ^= (unsigned char)c;
    h *= 1099511628211ull;
  }
  std::ostringstream hex;
  hex << std::hex << h;
  return hex.str();
}

Mat hecke_cached(const std::string& cache_dir, const SymbolSpace& sp, const std::string& label,
                 const std::function<Mat()>& build) {
  if (cache_dir.empty()) return build();
  std::filesystem::create_directories(cache_dir);
  std::string path = cache_dir + "/" + cache_key(sp, label) + ".mat";
  if (std::filesystem::exists(path)) {
    std::ifstream f(path);
    SparseMat S = read_sparse(f);
    check(S.R == sp.ring(), "BadFormat", "cached matrix ring mismatch");
    return S.dense();
  }
  Mat M = build();
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp);
    write_sparse(f, SparseMat::from_dense(M));
  }
  std::filesystem::rename(tmp, path);
  return M;
}

}  // namespace ptower
