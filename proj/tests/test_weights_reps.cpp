#include <random>

#include "doctest.h"
#include "ptower/reps.hpp"
#include "ptower/smith.hpp"

using namespace ptower;

TEST_CASE("pairing and dominance cones") {
  Weight zero(GroupTag::GL2, {0, 0});
  Cocharacter eta(GroupTag::GL2, {1, 0});
  CHECK(pair(zero, eta) == 0);
  CHECK(pair(Weight(GroupTag::GL2, {7, 0}), eta) == 7);
  CHECK(pair(Weight(GroupTag::GL2xGL2, {3, 0, 4, 0}),
             Cocharacter(GroupTag::GL2xGL2, {1, 0, 1, 0})) == 7);
  CHECK_THROWS_AS(pair(zero, Cocharacter(GroupTag::GL2xGL2, {1, 0, 0, 0})), Error);

  CHECK(is_sigma_plusplus(eta));
  CHECK(is_sigma_plus(Cocharacter(GroupTag::GL2, {1, 1})));
  CHECK(!is_sigma_plusplus(Cocharacter(GroupTag::GL2, {1, 1})));
  CHECK(!is_sigma_plus(Cocharacter(GroupTag::GL2, {0, 1})));
}

TEST_CASE("sigma++ is an ideal in sigma+ and pairing is bilinear") {
  std::mt19937_64 rng(5);
  auto rnd = [&](int lo, int hi) { return lo + (i64)(rng() % (u64)(hi - lo + 1)); };
  for (int t = 0; t < 200; ++t) {
    i64 a = rnd(-3, 3), b = rnd(-3, 3);
    Cocharacter x(GroupTag::GL2, {std::max(a, b) + 1, std::min(a, b)});  // strictly dominant
    Cocharacter y(GroupTag::GL2, {std::max(a, b), std::min(a, b)});      // dominant
    REQUIRE(is_sigma_plusplus(x));
    REQUIRE(is_sigma_plus(y));
    Cocharacter sum(GroupTag::GL2, {x.e[0] + y.e[0], x.e[1] + y.e[1]});
    CHECK(is_sigma_plusplus(sum));
    Weight w1(GroupTag::GL2, {rnd(-5, 5), rnd(-5, 5)});
    Weight w2(GroupTag::GL2, {rnd(-5, 5), rnd(-5, 5)});
    CHECK(pair(add(w1, w2), x) == pair(w1, x) + pair(w2, x));
    CHECK(pair(w1, sum) == pair(w1, x) + pair(w1, y));
  }
}

TEST_CASE("admissible weight cone for the default GL2 subtorus") {
  SubTorus s0 = default_s0_gl2();
  for (i64 k = 0; k <= 6; ++k)
    CHECK(admissible_weight(Weight(GroupTag::GL2, {0, -k}), s0));
  CHECK(!admissible_weight(Weight(GroupTag::GL2, {1, 0}), s0));
  CHECK(admissible_weight(Weight(GroupTag::GL2, {0, 0}), s0));
  // admissible => dominant
  CHECK(!admissible_weight(Weight(GroupTag::GL2, {0, 3}), s0));
}

TEST_CASE("subtorus lattice operations") {
  SubTorus sat = saturate(GroupTag::GL2, {{2, 0}});
  CHECK(sat.rank() == 1);
  CHECK(contains(sat, default_s0_gl2()));
  CHECK(contains(default_s0_gl2(), sat));
  CHECK(torus_equal(sat, default_s0_gl2()));
  CHECK(contains(full_torus(GroupTag::GL2), sat));
  CHECK(!contains(trivial_torus(GroupTag::GL2), sat));
  SubTorus diag2 = saturate(GroupTag::GL2xGL2, {{1, 0, 0, 1}, {0, 1, 1, 0}});
  CHECK(diag2.rank() == 2);
  CHECK(contains(diag2, saturate(GroupTag::GL2xGL2, {{1, 1, 1, 1}})));
  CHECK(!contains(diag2, saturate(GroupTag::GL2xGL2, {{1, 0, 0, 0}})));
}

TEST_CASE("build_rep basics") {
  RingCtx R(5, 2);
  RepModule triv = RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {0, 0}),
                                    LatticeKind::Max, R);
  CHECK(triv.dim() == 1);
  RepModule sym2 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Max, R);
  CHECK(sym2.dim() == 3);
  CHECK(sym2.hw_index() == 0);
  CHECK(sym2.weight_of(0) == Weight(GroupTag::GL2, {2, 0}));
  CHECK(sym2.weight_of(1) == Weight(GroupTag::GL2, {1, 1}));
  CHECK(sym2.weight_of(2) == Weight(GroupTag::GL2, {0, 2}));
  CHECK_THROWS_AS(
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {0, 2}), LatticeKind::Max, R), Error);

  // min lattice sits inside max with elementary divisors (1,2,1)
  RepModule m2 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Min, R);
  Mat D = m2.min_in_max();
  CHECK(D.at(0, 0) == 1);
  CHECK(D.at(1, 1) == 2);
  CHECK(D.at(2, 2) == 1);
}

TEST_CASE("action examples") {
  RingCtx R(5, 2);
  RepModule sym1 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {1, 0}), LatticeKind::Max, R);
  GElt id;
  CHECK(sym1.action(id) == Mat::identity(R, 2));
  GElt n;
  n.g1 = {1, 1, 0, 1};
  Mat A = sym1.action(n);
  // Y = basis 1 maps to X + Y
  CHECK(A.at(0, 1) == 1);
  CHECK(A.at(1, 1) == 1);
  CHECK(A.at(0, 0) == 1);
  CHECK(A.at(1, 0) == 0);

  RepModule sym2 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Max, R);
  GElt w;
  w.g1 = {0, 1, 1, 0};
  Mat B = sym2.action(w);
  // X^2 (basis 0) maps to Y^2 (basis 2)
  CHECK(B.at(2, 0) == 1);
  CHECK(B.at(0, 0) == 0);
}

TEST_CASE("act is a group action, exactly, incl. minimal lattices") {
  std::mt19937_64 rng(17);
  RingCtx R(5, 2);
  auto rnd_sl2 = [&]() {
    // random word in the standard generators
    M22 g;
    for (int i = 0; i < 6; ++i) {
      if (rng() & 1)
        g = mul(g, {1, (i64)(rng() % 3) - 1, 0, 1});
      else
        g = mul(g, {0, -1, 1, 0});
    }
    return g;
  };
  for (auto kind : {LatticeKind::Max, LatticeKind::Min}) {
    RepModule V =
        RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {3, -2}), kind, R);
    for (int t = 0; t < 30; ++t) {
      GElt g, h, gh;
      g.g1 = rnd_sl2();
      h.g1 = rnd_sl2();
      gh.g1 = mul(g.g1, h.g1);
      CHECK(mul(V.action(g), V.action(h)) == V.action(gh));
    }
  }
  // min lattice at p | binom: Sym^5 over Z/5^2
  RepModule V5 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {5, 0}), LatticeKind::Min, R);
  for (int t = 0; t < 20; ++t) {
    GElt g, h, gh;
    g.g1 = rnd_sl2();
    h.g1 = rnd_sl2();
    gh.g1 = mul(g.g1, h.g1);
    CHECK(mul(V5.action(g), V5.action(h)) == V5.action(gh));
  }
}

TEST_CASE("scaled inverse torus action") {
  RingCtx R(5, 3);
  RepModule sym2 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Max, R);
  Cocharacter eta(GroupTag::GL2, {1, 0});
  std::vector<u64> v = {1, 1, 1};
  auto w = sym2.scaled_inverse_torus(eta, 1, v);
  CHECK(w == std::vector<u64>{1, 5, 25});
  // highest weight vector is fixed for any eta in Sigma+
  std::vector<u64> hw = {1, 0, 0};
  for (i64 e1 = 0; e1 <= 3; ++e1)
    for (i64 e2 = -3; e2 <= e1; ++e2) {
      Cocharacter et(GroupTag::GL2, {e1, e2});
      CHECK(sym2.scaled_inverse_torus(et, 2, hw) == hw);
    }
  CHECK_THROWS_AS(sym2.scaled_inverse_torus(Cocharacter(GroupTag::GL2, {0, 1}), 1, v), Error);
}

TEST_CASE("lattice-preservation lemma, quantified sweep") {
  RingCtx R(5, 2);
  for (i64 k = 0; k <= 10; ++k) {
    RepModule V =
        RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {k, 0}), LatticeKind::Max, R);
    for (i64 e1 = -3; e1 <= 3; ++e1)
      for (i64 e2 = -3; e2 <= e1; ++e2) {
        Cocharacter eta(GroupTag::GL2, {e1, e2});
        bool strict = e1 > e2;
        for (int r = 1; r <= 3; ++r)
          for (int j = 0; j < V.dim(); ++j) {
            int e = V.sit_exponent(eta, j);
            CHECK(e >= 0);
            if (strict && j != V.hw_index()) CHECK(e >= 1);
            if (j == V.hw_index()) CHECK(e == 0);
          }
      }
  }
}

TEST_CASE("psi functional") {
  RingCtx R(5, 2);
  RepModule sym2 =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Max, R);
  std::vector<u64> v = {3, 5, 0};
  CHECK(sym2.psi(v) == 3);
  std::vector<u64> hw = {1, 0, 0};
  CHECK(sym2.psi(hw) == 1);
  std::vector<u64> low = {0, 1, 1};
  CHECK(sym2.psi(low) == 0);
  auto dec = sym2.weight_decompose(v);
  CHECK(dec.size() == 2);
}

TEST_CASE("duality: max x min dual pairing is perfect and equivariant") {
  RingCtx R(5, 2);
  std::mt19937_64 rng(23);
  auto rnd_sl2 = [&]() {
    M22 g;
    for (int i = 0; i < 6; ++i) {
      if (rng() & 1)
        g = mul(g, {1, (i64)(rng() % 3) - 1, 0, 1});
      else
        g = mul(g, {0, -1, 1, 0});
    }
    return g;
  };
  for (auto lam : {Weight(GroupTag::GL2, {0, -2}), Weight(GroupTag::GL2, {0, -5}),
                   Weight(GroupTag::GL2, {3, 1})}) {
    RepModule vmax = RepModule::build(GroupTag::GL2, lam, LatticeKind::Max, R);
    RepModule vdualmin =
        RepModule::build(GroupTag::GL2, dual_weight(lam), LatticeKind::Min, R);
    Mat P = dual_pairing_matrix(vmax, vdualmin);
    CHECK(is_invertible(P));
    for (int t = 0; t < 25; ++t) {
      GElt g;
      g.g1 = rnd_sl2();
      Mat A = vmax.action(g);
      Mat B = vdualmin.action(g);
      // P(g v, g w) = P(v, w):  A^T P B = P
      CHECK(mul(mul(A.transpose(), P), B) == P);
    }
  }
  // product group version
  Weight lam(GroupTag::GL2xGL2, {1, 0, 0, -1});
  RepModule vmax = RepModule::build(GroupTag::GL2xGL2, lam, LatticeKind::Max, R);
  RepModule vdualmin =
      RepModule::build(GroupTag::GL2xGL2, dual_weight(lam), LatticeKind::Min, R);
  Mat P = dual_pairing_matrix(vmax, vdualmin);
  CHECK(is_invertible(P));
  for (int t = 0; t < 15; ++t) {
    GElt g;
    g.tag = GroupTag::GL2xGL2;
    g.g1 = rnd_sl2();
    g.g2 = rnd_sl2();
    CHECK(mul(mul(vmax.action(g).transpose(), P), vdualmin.action(g)) == P);
  }
}

TEST_CASE("polynomial multiplication of representations") {
  RingCtx R(5, 2);
  RepModule a =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {1, 0}), LatticeKind::Max, R);
  RepModule b =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {2, 0}), LatticeKind::Max, R);
  RepModule c =
      RepModule::build(GroupTag::GL2, Weight(GroupTag::GL2, {3, 0}), LatticeKind::Max, R);
  // X * XY = X^2 Y
  std::vector<u64> va = {1, 0}, vb = {0, 1, 0};
  auto vc = poly_mult(a, b, c, va, vb);
  CHECK(vc == std::vector<u64>{0, 1, 0, 0});
  // multiplication is equivariant: g(uv) = (gu)(gv)
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    GElt g;
    g.g1 = {1, (i64)(rng() % 3), (i64)(rng() % 2), 1};
    if (g.g1.det() == 0) continue;
    std::vector<u64> u = {rng() % 25, rng() % 25};
    std::vector<u64> v = {rng() % 25, rng() % 25, rng() % 25};
    auto lhs = poly_mult(a, b, c, matvec(a.action(g), u), matvec(b.action(g), v));
    auto rhs = matvec(c.action(g), poly_mult(a, b, c, u, v));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("GSp4 weight data") {
  Weight w(GroupTag::GSp4Weights, {3, 1, 2});
  CHECK(is_dominant(w));
  CHECK(!is_dominant(Weight(GroupTag::GSp4Weights, {1, 3, 0})));
  Cocharacter c(GroupTag::GSp4Weights, {2, 1, 1});
  CHECK(is_sigma_plus(c));
  CHECK(pair(w, c) == 3 * 2 + 1 * 1 + 2 * 1);
}
