#include <random>
#include <sstream>

#include "doctest.h"
#include "ptower/fitting.hpp"
#include "ptower/smith.hpp"

using namespace ptower;

TEST_CASE("ring basics and valuations") {
  RingCtx R(5, 3);
  CHECK(R.ps == 125);
  CHECK(R.val(0) == 3);
  CHECK(R.val(50) == 2);
  CHECK(RingCtx(7, 2).val(14) == 1);
  CHECK_THROWS_AS(RingCtx(6, 2), Error);

  RingCtx R2(5, 2);
  CHECK(R2.inv_unit(1) == 1);
  CHECK(R2.inv_unit(2) == 13);
  CHECK_THROWS_AS((void)R2.inv_unit(10), Error);
}

TEST_CASE("valuation is (truncated) additive under multiplication") {
  RingCtx R(3, 4);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 500; ++t) {
    u64 x = rng() % R.ps, y = rng() % R.ps;
    int v = R.val(R.mul(x, y));
    int w = std::min((int)R.s, R.val(x) + R.val(y));
    if (R.val(x) + R.val(y) < R.s)
      CHECK(v == w);
    else
      CHECK(v == R.s);
  }
}

TEST_CASE("smith form: frozen small cases") {
  RingCtx R(5, 2);
  SUBCASE("identity") {
    SmithForm S = smith_form(Mat::identity(R, 4));
    for (int e : S.divisor_exp) CHECK(e == 0);
  }
  SUBCASE("zero") {
    SmithForm S = smith_form(Mat::zero(R, 3, 3));
    for (int e : S.divisor_exp) CHECK(e == R.s);
  }
  SUBCASE("diag(5,1) has divisors (1,5)") {
    Mat A(R, 2, 2);
    A.at(0, 0) = 5;
    A.at(1, 1) = 1;
    SmithForm S = smith_form(A);
    CHECK(S.divisor_exp == std::vector<int>{0, 1});
  }
}

TEST_CASE("smith form round trip and invertible transforms on random matrices") {
  std::mt19937_64 rng(42);
  for (i64 p : {3, 5}) {
    RingCtx R(p, 3);
    for (int trial = 0; trial < 20; ++trial) {
      int m = 1 + (int)(rng() % 8), n = 1 + (int)(rng() % 8);
      Mat A(R, m, n);
      for (auto& v : A.a) v = rng() % R.ps;
      SmithForm S = smith_form(A);
      CHECK(mul(mul(S.U, A), S.V) == S.D);
      CHECK(is_invertible(S.U));
      CHECK(is_invertible(S.V));
      for (size_t i = 0; i + 1 < S.divisor_exp.size(); ++i)
        CHECK(S.divisor_exp[i] <= S.divisor_exp[i + 1]);
      for (int i = 0; i < std::min(m, n); ++i)
        for (int j = 0; j < std::min(m, n); ++j)
          if (i != j) CHECK(S.D.at(i, j) == 0);
    }
  }
}

TEST_CASE("row echelon solve and kernel") {
  RingCtx R(5, 2);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 1 + (int)(rng() % 7), n = 1 + (int)(rng() % 7);
    Mat A(R, m, n);
    for (auto& v : A.a) v = rng() % R.ps;
    std::vector<u64> x(n);
    for (auto& v : x) v = rng() % R.ps;
    auto b = matvec(A, x);
    RowEchelon ech(A);
    auto sol = ech.solve(b);
    REQUIRE(sol.has_value());
    CHECK(matvec(A, *sol) == b);
    for (auto& g : ech.kernel()) {
      auto z = matvec(A, g);
      for (u64 v : z) CHECK(v == 0);
    }
  }
}

TEST_CASE("stable idempotent: frozen examples") {
  RingCtx R(5, 2);
  SUBCASE("identity is already invertible") {
    OrdinaryData od = stable_idempotent(Mat::identity(R, 3), nullptr);
    CHECK(od.e == Mat::identity(R, 3));
    CHECK(od.free_rank == 3);
  }
  SUBCASE("p * identity is topologically nilpotent") {
    OrdinaryData od = stable_idempotent(scal(5, Mat::identity(R, 3)), nullptr);
    CHECK(od.e.is_zero());
    CHECK(od.free_rank == 0);
  }
  SUBCASE("diag(1, p) over Z/25 splits off the first coordinate") {
    Mat A(R, 2, 2);
    A.at(0, 0) = 1;
    A.at(1, 1) = 5;
    OrdinaryData od = stable_idempotent(A, nullptr);
    Mat expect(R, 2, 2);
    expect.at(0, 0) = 1;
    CHECK(od.e == expect);
    CHECK(od.free_rank == 1);
  }
  SUBCASE("order-24 invertible part plus a nilpotent line") {
    Mat A(R, 3, 3);
    A.at(0, 1) = R.neg(2);
    A.at(1, 0) = 1;
    A.at(1, 1) = 1;  // companion of x^2 - x + 2, irreducible mod 5
    OrdinaryData od = stable_idempotent(A, nullptr);
    CHECK(equal_mod(mul(od.e, od.e), od.e, nullptr));
    CHECK(equal_mod(mul(od.e, A), mul(A, od.e), nullptr));
    CHECK(od.free_rank == 2);
  }
}

TEST_CASE("stable idempotent properties on random sparse matrices") {
  std::mt19937_64 rng(2024);
  for (i64 p : {3, 5}) {
    for (int s : {1, 2, 3}) {
      RingCtx R(p, s);
      for (int trial = 0; trial < 8; ++trial) {
        int d = 2 + (int)(rng() % 29);
        Mat A(R, d, d);
        int nnz = d + (int)(rng() % (3 * d));
        for (int t = 0; t < nnz; ++t) A.at(rng() % d, rng() % d) = rng() % R.ps;
        OrdinaryData od = stable_idempotent(A, nullptr);
        const Mat& e = od.e;
        CHECK(equal_mod(mul(e, e), e, nullptr));
        CHECK(equal_mod(mul(e, A), mul(A, e), nullptr));
        CHECK(equal_mod(mul(od.inv_on_image, A), e, nullptr));
        CHECK(equal_mod(mul(A, od.inv_on_image), e, nullptr));
        Mat P = mul(sub(Mat::identity(R, d), e), A);
        i64 target = (i64)R.s * d, done = 1;
        while (done < target && !P.is_zero()) {
          P = mul(P, P);
          done *= 2;
        }
        CHECK(P.is_zero());
        Mat C(R, d, 2 * d);
        Mat f = sub(Mat::identity(R, d), e);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            C.at(i, j) = e.at(i, j);
            C.at(i, d + j) = f.at(i, j);
          }
        SmithForm S = smith_form(C);
        for (int i = 0; i < d; ++i) CHECK(S.divisor_exp[i] == 0);
      }
    }
  }
}

TEST_CASE("sparse matrix serialization round trip") {
  RingCtx R(5, 2);
  SparseMat A(R, 4, 6);
  A.push(0, 0, 3);
  A.push(2, 5, 24);
  A.push(3, 1, 5);
  A.canonicalize();
  std::stringstream ss;
  write_sparse(ss, A);
  SparseMat B = read_sparse(ss);
  CHECK(B.rows == 4);
  CHECK(B.cols == 6);
  CHECK(B.entries == A.entries);
}

TEST_CASE("presentation of a quotient module") {
  RingCtx R(5, 2);
  std::vector<Presentation::SparseVec> rels = {{{0, 1}, {1, R.ps - 1}}, {{2, 5}}};
  Presentation P(R, 4, rels);
  CHECK(P.dim() == 3);
  CHECK(P.free_rank() == 2);
  std::vector<u64> x(4, 0);
  x[0] = 1;
  std::vector<u64> y(4, 0);
  y[1] = 1;
  CHECK(P.reduce(x) == P.reduce(y));
  std::vector<u64> z(4, 0);
  z[2] = 5;
  CHECK(P.is_zero(z));
  z[2] = 4;
  CHECK(!P.is_zero(z));
  std::vector<u64> canon = {3, 7, 2};
  canon.resize(P.dim());
  auto c2 = P.reduce(P.lift(canon));
  for (size_t i = 0; i < canon.size(); ++i) {
    // respect per-coordinate moduli
    int e = P.modexp()[i];
    u64 m = 1;
    for (int t = 0; t < e; ++t) m *= 5;
    CHECK(c2[i] == canon[i] % m);
  }
}
