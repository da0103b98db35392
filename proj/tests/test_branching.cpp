#include <random>

#include "doctest.h"
#include "ptower/branching.hpp"

using namespace ptower;

TEST_CASE("orbit decomposition for the full diagonal at p = 3") {
  OrbitReport rep = enumerate_orbits(EmbeddingKind::DiagFull, 3);
  REQUIRE(rep.orbits.size() == 2);
  i64 diag_size = 0, open_size = 0;
  for (auto& o : rep.orbits) {
    if (o.open)
      open_size = o.size;
    else
      diag_size = o.size;
  }
  CHECK(diag_size == 4);
  CHECK(open_size == 12);
  // the lift really reduces to the open point
  CHECK(rep.u1.det() == 1);
  CHECK(rep.u2.det() == 1);
}

TEST_CASE("orbit sizes always partition the flag variety") {
  for (i64 p : {3, 5, 7, 11}) {
    for (auto kind : {EmbeddingKind::DiagFull, EmbeddingKind::DiagMirabolic}) {
      OrbitReport rep = enumerate_orbits(kind, p);
      i64 sum = 0;
      bool has_open = false;
      for (auto& o : rep.orbits) {
        sum += o.size;
        has_open |= o.open;
      }
      CHECK(sum == (p + 1) * (p + 1));
      CHECK(has_open);
    }
  }
}

TEST_CASE("mirabolic open orbit has trivial stabilizer") {
  OrbitReport rep = enumerate_orbits(EmbeddingKind::DiagMirabolic, 3);
  CHECK(rep.group_order == 6);
  for (auto& o : rep.orbits)
    if (o.open) CHECK(o.stabilizer_order == 1);
}

TEST_CASE("condition (B): minimal torus and containment") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  CHECK(spec.minimal_s0.rank() == 2);
  CHECK(check_condition_B(spec, full_torus(GroupTag::GL2xGL2)).holds);
  CHECK(!check_condition_B(spec, trivial_torus(GroupTag::GL2xGL2)).holds);
  CHECK(check_condition_B(spec, spec.minimal_s0).holds);
}

TEST_CASE("condition (B) is independent of the open-orbit representative") {
  // recompute the minimal torus from a different representative of the open
  // orbit (translate u by a group element) and compare
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  M22 h{1, 1, 0, 1};  // element of H(Z)
  EmbeddingSpec spec2 = spec;
  spec2.u1 = mul(h, spec.u1);
  spec2.u2 = mul(h, spec.u2);
  EmbeddingSpec probe = spec2;
  // recompute minimal torus via the public pipeline on the translated u:
  // build by hand through check_condition_B on a fresh spec object
  EmbeddingSpec fresh = make_embedding(EmbeddingKind::DiagFull, 5);
  fresh.u1 = spec2.u1;
  fresh.u2 = spec2.u2;
  // direct recomputation path
  auto inv1 = invariant_space(spec, diag_admissible_weight(spec, 1));
  auto inv2 = invariant_space(probe, diag_admissible_weight(spec, 1));
  CHECK(inv1.dimension == 1);
  CHECK(inv2.dimension == 1);
}

TEST_CASE("invariant dimension across the (a, b) sweep") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  SUBCASE("trivial weight") {
    InvariantSpace inv = invariant_space(spec, Weight(GroupTag::GL2xGL2, {0, 0, 0, 0}));
    CHECK(inv.dimension == 1);
  }
  SUBCASE("a = b with the balanced twist has dimension one") {
    for (i64 a = 0; a <= 4; ++a) {
      Weight lam = diag_admissible_weight(spec, a);
      InvariantSpace inv = invariant_space(spec, lam);
      CHECK(inv.dimension == 1);
    }
  }
  SUBCASE("a != b or unbalanced twist has dimension zero") {
    CHECK(invariant_space(spec, Weight(GroupTag::GL2xGL2, {1, 0, 2, 0})).dimension == 0);
    CHECK(invariant_space(spec, Weight(GroupTag::GL2xGL2, {2, 0, 1, -1})).dimension == 0);
    CHECK(invariant_space(spec, Weight(GroupTag::GL2xGL2, {1, 0, 0, 0})).dimension == 0);
  }
}

TEST_CASE("branching polynomial at a = b = 1 is the Clebsch-Gordan invariant") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  RingCtx R(5, 2);
  Weight lam = diag_admissible_weight(spec, 1);
  BranchingPolynomial bp = branching_polynomial(spec, lam, R);
  // X1 Y2 - Y1 X2 up to sign: coordinates (0, c, -c, 0)
  REQUIRE(bp.br.size() == 4);
  CHECK(bp.br[0].is_zero());
  CHECK(bp.br[3].is_zero());
  CHECK(bp.br[1] == (Frac(0) - bp.br[2]));
  CHECK(!bp.br[1].is_zero());
  CHECK(bp.mu == Weight(GroupTag::GL2, {0, 0}));
}

TEST_CASE("normalization and invariance of br mod p^2") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  RingCtx R(5, 2);
  for (i64 a = 0; a <= 3; ++a) {
    Weight lam = diag_admissible_weight(spec, a);
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    RepModule V = RepModule::build(GroupTag::GL2xGL2, lam, LatticeKind::Max, R);
    // psi(u^{-1} br) = 1 exactly
    GElt ui;
    ui.tag = GroupTag::GL2xGL2;
    i64 s1 = spec.u1.det(), s2 = spec.u2.det();
    ui.g1 = {s1 * spec.u1.d, -s1 * spec.u1.b, -s1 * spec.u1.c, s1 * spec.u1.a};
    ui.g2 = {s2 * spec.u2.d, -s2 * spec.u2.b, -s2 * spec.u2.c, s2 * spec.u2.a};
    CHECK(V.psi(matvec(V.action(ui), bp.br_mod)) == 1);
    CHECK(V.psi(std::vector<u64>(V.dim(), 0)) == 0);
    // invariance under sample elements of H(Z/25)
    std::mt19937_64 rng(31 + a);
    for (int t = 0; t < 12; ++t) {
      M22 h{1, 0, 0, 1};
      for (int w = 0; w < 4; ++w) {
        int pick = (int)(rng() % 3);
        if (pick == 0) h = mul(h, {1, (i64)(rng() % 5), 0, 1});
        if (pick == 1) h = mul(h, {1, 0, (i64)(rng() % 5), 1});
        if (pick == 2) h = mul(h, {(i64)(1 + rng() % 4), 0, 0, (i64)(1 + rng() % 4)});
      }
      GElt g;
      g.tag = GroupTag::GL2xGL2;
      g.g1 = h;
      g.g2 = h;
      CHECK(matvec(V.action(g), bp.br_mod) == bp.br_mod);
    }
  }
}

TEST_CASE("mu additivity and product multiplicativity of br") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  RingCtx R(5, 3);
  Weight l1 = diag_admissible_weight(spec, 1);
  Weight l2 = diag_admissible_weight(spec, 2);
  Weight l3 = add(l1, l2);
  BranchingPolynomial b1 = branching_polynomial(spec, l1, R);
  BranchingPolynomial b2 = branching_polynomial(spec, l2, R);
  BranchingPolynomial b3 = branching_polynomial(spec, l3, R);
  CHECK(b3.mu == add(b1.mu, b2.mu));
  RepModule V1 = RepModule::build(GroupTag::GL2xGL2, l1, LatticeKind::Max, R);
  RepModule V2 = RepModule::build(GroupTag::GL2xGL2, l2, LatticeKind::Max, R);
  RepModule V3 = RepModule::build(GroupTag::GL2xGL2, l3, LatticeKind::Max, R);
  auto prod = poly_mult(V1, V2, V3, b1.br_mod, b2.br_mod);
  CHECK(prod == b3.br_mod);
}

TEST_CASE("mirabolic branching: weights, mu, and the branch map") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagMirabolic, 5);
  RingCtx R(5, 2);
  SUBCASE("Sym1 x Sym1 with balancing twist: mu = 0") {
    Weight lam(GroupTag::GL2xGL2, {1, 0, 0, -1});
    InvariantSpace inv = invariant_space(spec, lam);
    REQUIRE(inv.dimension == 1);
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    CHECK(bp.mu == Weight(GroupTag::GL2, {0, 0}));
  }
  SUBCASE("Sym1 x Sym2 with twist det2^-3: mu = (0,-3)") {
    Weight lam(GroupTag::GL2xGL2, {1, 0, -1, -3});
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    CHECK(bp.mu == Weight(GroupTag::GL2, {0, -3}));
    auto Phi = branch_map(spec, lam, R);
    CHECK(Phi.size() == 6);     // dim Sym1 x Sym2
    CHECK(Phi[0].size() == 4);  // dim Sym3
    // equivariance over Q at a sample element
    M22 h{2, 1, 1, 1};
    auto G = rational_action(lam, h, h);
    int kmu = 3, mmu = -3;
    std::vector<std::vector<Frac>> H(4, std::vector<Frac>(4));
    {
      // min-basis action: D^{-1} Sym(h) D with D = diag(binom)
      // build from rational Sym
      auto S = rational_action(Weight(GroupTag::GL2xGL2, {kmu, 0, 0, 0}), h, {1, 0, 0, 1});
      Frac tw = Frac(1);
      for (int t = 0; t < -mmu; ++t) tw = tw / Frac(h.det());
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          H[i][j] = S[i][j] * tw * Frac(binom_i64(kmu, j)) / Frac(binom_i64(kmu, i));
    }
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 4; ++j) {
        Frac lhs(0), rhs(0);
        for (int t = 0; t < 6; ++t) lhs = lhs + G[i][t] * Phi[t][j];
        for (int t = 0; t < 4; ++t) rhs = rhs + Phi[i][t] * H[t][j];
        CHECK(lhs == rhs);
      }
  }
  SUBCASE("branch map for mu = 0 is v -> v(1) br") {
    Weight lam(GroupTag::GL2xGL2, {1, 0, 0, -1});
    auto Phi = branch_map(spec, lam, R);
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    REQUIRE(Phi[0].size() == 1);
    for (size_t i = 0; i < Phi.size(); ++i) CHECK(Phi[i][0] == bp.br[i]);
  }
}

TEST_CASE("integral relation") {
  EmbeddingSpec spec = make_embedding(EmbeddingKind::DiagFull, 5);
  Cocharacter eta(GroupTag::GL2xGL2, {1, 0, 1, 0});
  SUBCASE("trivial weight: difference vanishes") {
    CHECK(integral_relation_check(spec, Weight(GroupTag::GL2xGL2, {0, 0, 0, 0}), eta, 1, 5));
  }
  SUBCASE("a = b = 1 holds for r = 1, 2, 3") {
    Weight lam = diag_admissible_weight(spec, 1);
    for (int r = 1; r <= 3; ++r) CHECK(integral_relation_check(spec, lam, eta, r, 5));
  }
  SUBCASE("a = b = 2 and 3 hold for r = 1, 2") {
    for (i64 a : {2, 3}) {
      Weight lam = diag_admissible_weight(spec, a);
      for (int r = 1; r <= 2; ++r) CHECK(integral_relation_check(spec, lam, eta, r, 5));
    }
  }
  SUBCASE("negative control: a non-invariant vector with the same hw projection fails") {
    Weight lam = diag_admissible_weight(spec, 1);
    RingCtx R(5, 4);
    BranchingPolynomial bp = branching_polynomial(spec, lam, R);
    RepModule V = RepModule::build(GroupTag::GL2xGL2, lam, LatticeKind::Max, R);
    GElt ui;
    ui.tag = GroupTag::GL2xGL2;
    i64 s1 = spec.u1.det(), s2 = spec.u2.det();
    ui.g1 = {s1 * spec.u1.d, -s1 * spec.u1.b, -s1 * spec.u1.c, s1 * spec.u1.a};
    ui.g2 = {s2 * spec.u2.d, -s2 * spec.u2.b, -s2 * spec.u2.c, s2 * spec.u2.a};
    // perturb br by a vector whose u^{-1}-translate has zero hw coefficient
    bool fails_somewhere = false;
    for (int pert = 1; pert < V.dim() && !fails_somewhere; ++pert) {
      std::vector<u64> w = bp.br_mod;
      std::vector<u64> delta(V.dim(), 0);
      delta[pert] = 1;
      auto udelta = matvec(V.action(ui), delta);
      // generic perturbation: same hw component of w itself, but the
      // u-translate picks up a nonzero hw coefficient
      if (udelta[V.hw_index()] == 0) continue;
      for (int i = 0; i < V.dim(); ++i) w[i] = R.add(w[i], delta[i]);
      auto uw = matvec(V.action(ui), w);
      std::vector<u64> diff(V.dim(), 0);
      for (int i = 0; i < V.dim(); ++i) diff[i] = R.sub(i == V.hw_index() ? 1 : 0, uw[i]);
      for (int r = 1; r <= 3 && !fails_somewhere; ++r) {
        auto scaled = V.scaled_inverse_torus(eta, r, diff);
        for (u64 v : scaled)
          if (R.val(v) < r) fails_somewhere = true;
      }
    }
    CHECK(fails_somewhere);
  }
}
