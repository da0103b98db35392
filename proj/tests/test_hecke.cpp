#include <random>

#include "doctest.h"
#include "oracle_manin.hpp"
#include "ptower/fitting.hpp"
#include "ptower/hecke.hpp"

using namespace ptower;

namespace {

Weight gl2w(i64 k1, i64 k2) { return Weight(GroupTag::GL2, {k1, k2}); }

std::vector<std::vector<u64>> cuspidal(const std::shared_ptr<SymbolSpace>& sp) {
  RingCtx R = sp->ring();
  const Presentation& P = sp->presentation();
  int d = P.dim();
  Mat B(R, sp->cusp_count(), d);
  std::vector<u64> e(d, 0);
  for (int j = 0; j < d; ++j) {
    e[j] = 1;
    auto bd = sp->boundary(sp->sparse(P.lift(e)));
    e[j] = 0;
    for (int i = 0; i < (int)bd.size(); ++i) B.at(i, j) = bd[i];
  }
  RowEchelon ech(B);
  return ech.kernel();
}

}  // namespace

TEST_CASE("production Hecke at full level matches the oracle eigenvalues") {
  RingCtx R(5, 2);
  auto sp = make_space(level_full(11, 5), gl2w(0, 0), LatticeKind::Max, R);
  HeckeOp T2 = reduce_op(tl_op(sp, 2));
  HeckeOp T3 = reduce_op(tl_op(sp, 3));
  CHECK(T2.certified);
  CHECK(mul(T2.matrix, T3.matrix) == mul(T3.matrix, T2.matrix));
  Mat I = Mat::identity(R, sp->dim());
  CHECK(mul(sub(T2.matrix, scal(3, I)), add(T2.matrix, scal(2, I))).is_zero());
  for (auto& v : cuspidal(sp)) {
    CHECK(matvec(T2.matrix, v) == matvec(scal(R.reduce(-2), I), v));
    CHECK(matvec(T3.matrix, v) == matvec(scal(R.reduce(-1), I), v));
  }
  Mat E = sub(T2.matrix, scal(3, I));
  for (int j = 0; j < sp->dim(); ++j) {
    std::vector<u64> col(sp->dim());
    for (int i = 0; i < sp->dim(); ++i) col[i] = E.at(i, j);
    auto bd = sp->boundary(sp->sparse(sp->presentation().lift(col)));
    for (u64 x : bd) CHECK(x == 0);
  }
}

TEST_CASE("T' is certified and commutes with T_ell and diamonds") {
  RingCtx R(5, 2);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  for (auto lam : {gl2w(0, 0), gl2w(0, -2)}) {
    auto sp = make_space(level_Vr(11, 5, 1), lam, LatticeKind::Max, R);
    HeckeOp Tp = reduce_op(tprime_op(sp, eta));
    HeckeOp T2 = reduce_op(tl_op(sp, 2));
    HeckeOp D2 = reduce_op(diamond_op(sp, 2));
    CHECK(Tp.certified);
    CHECK(T2.certified);
    CHECK(D2.certified);
    CHECK(ops_equal(*sp, mul(Tp.matrix, T2.matrix), mul(T2.matrix, Tp.matrix)));
    CHECK(ops_equal(*sp, mul(Tp.matrix, D2.matrix), mul(D2.matrix, Tp.matrix)));
  }
}

TEST_CASE("diamond operators form the unit group action") {
  RingCtx R(5, 2);
  auto sp = make_space(level_Vr(11, 5, 2), gl2w(0, 0), LatticeKind::Max, R);
  HeckeOp D1 = reduce_op(diamond_op(sp, 1));
  CHECK(D1.matrix == Mat::identity(R, sp->dim()));
  HeckeOp D2 = reduce_op(diamond_op(sp, 2));
  HeckeOp D3 = reduce_op(diamond_op(sp, 3));
  HeckeOp D6 = reduce_op(diamond_op(sp, 6));
  CHECK(mul(D2.matrix, D3.matrix) == D6.matrix);
  Mat P = D2.matrix;
  for (int i = 1; i < 20; ++i) P = mul(P, D2.matrix);
  CHECK(P == Mat::identity(R, sp->dim()));
  auto sp1 = make_space(level_Vr(11, 5, 1), gl2w(0, 0), LatticeKind::Max, R);
  HeckeOp E6 = reduce_op(diamond_op(sp1, 6));
  CHECK(E6.matrix == Mat::identity(R, sp1->dim()));
}

TEST_CASE("trace composed with pullback is the covering degree") {
  RingCtx R(5, 2);
  auto coarse = make_space(level_full(11, 5), gl2w(0, 0), LatticeKind::Max, R);
  auto fine = make_space(level_Vr(11, 5, 1), gl2w(0, 0), LatticeKind::Max, R);
  ChainOp up = transfer_op(coarse, fine);
  ChainOp down = project_op(fine, coarse);
  int deg = fine->cosets().size() / coarse->cosets().size();
  Mat A = reduce_op(up).matrix;
  Mat B = reduce_op(down).matrix;
  CHECK(mul(B, A) == scal(R.reduce(deg), Mat::identity(R, coarse->dim())));
}

TEST_CASE("tau conjugation is an isomorphism commuting with T'") {
  RingCtx R(5, 2);
  for (auto lam : {gl2w(0, 0), gl2w(0, -2)}) {
    for (int r : {1, 2}) {
      auto U = make_space(level_Ur(11, 5, r), lam, LatticeKind::Max, R);
      auto V = make_space(level_Vr(11, 5, r), lam, LatticeKind::Max, R);
      ChainOp tau = tau_push_op(U, V, r);
      HeckeOp Tau = reduce_op(tau);
      CHECK(Tau.certified);
      CHECK(U->dim() == V->dim());
      if (lam == gl2w(0, 0)) CHECK(is_invertible(Tau.matrix));
      Cocharacter eta(GroupTag::GL2, {1, 0});
      Mat TpU = reduce_op(tprime_op(U, eta)).matrix;
      Mat TpV = reduce_op(tprime_op(V, eta)).matrix;
      CHECK(ops_equal(*V, mul(Tau.matrix, TpU), mul(TpV, Tau.matrix)));
    }
  }
}

TEST_CASE("the two triangle identities of the Hida diagram") {
  RingCtx R(5, 2);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  for (auto lam : {gl2w(0, 0), gl2w(0, -2)}) {
    auto U = make_space(level_Vr(11, 5, 1), lam, LatticeKind::Max, R);
    auto Us = make_space(level_box(11, 5, 0, 2, 1), lam, LatticeKind::Max, R);
    auto Umid = make_space(level_box(11, 5, 1, 1, 1), lam, LatticeKind::Max, R);
    ChainOp pr = transfer_op(U, Umid);
    Mat Phi = U->coeff().sym_coeff(M22{1, 0, 0, 5}, M22{}, 1);
    ChainOp shift = translate_op(Umid, Us, M22{1, 0, 0, 5}, Phi, "tau-iso");
    Mat tau_full = mul(reduce_op(shift).matrix, reduce_op(pr).matrix);
    Mat cores = reduce_op(project_op(Us, U)).matrix;
    Mat TpU = reduce_op(tprime_op(U, eta)).matrix;
    Mat TpUs = reduce_op(tprime_op(Us, eta)).matrix;
    INFO("lambda = (", lam.k[0], ",", lam.k[1], ")");
    CHECK(ops_equal(*Us, mul(tau_full, cores), TpUs));
    CHECK(ops_equal(*U, mul(cores, tau_full), TpU));
  }
}

TEST_CASE("adjointness of T' and its pairing transpose") {
  RingCtx R(5, 2);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  for (auto lam : {gl2w(0, 0), gl2w(0, -2)}) {
    for (auto lv : {level_Vr(11, 5, 1), level_J(11, 5)}) {
      auto sp = make_space(lv, lam, LatticeKind::Max, R);
      auto W = std::make_shared<CycleSpace>(sp);
      ChainOp Tp = tprime_op(sp, eta);
      ChainOp Td = pairing_transpose_op(W, W, Tp);
      const Presentation& P = sp->presentation();
      std::vector<u64> e(P.dim(), 0);
      for (int j = 0; j < P.dim(); ++j) {
        e[j] = 1;
        auto x = P.lift(e);
        e[j] = 0;
        auto Tx = Tp.apply(x);
        for (auto& w : W->basis()) {
          u64 lhs = W->pair_chain(Tx, w);
          u64 rhs = W->pair_chain(x, Td.apply(w));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("the dominant operator preserves the cycle space") {
  RingCtx R(5, 2);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  auto sp = make_space(level_Vr(11, 5, 1), gl2w(0, 0), LatticeKind::Max, R);
  auto W = std::make_shared<CycleSpace>(sp);
  ChainOp Td = pairing_transpose_op(W, W, tprime_op(sp, eta));
  for (auto& w : W->basis()) CHECK(W->is_cycle(Td.apply(w)));
  Mat M = cycle_matrix(*W, Td);
  CHECK(M.rows == W->dim());
}
