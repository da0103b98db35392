#pragma once

#include <optional>

#include "ptower/reps.hpp"

namespace ptower {

// Exact rational scalar on 64-bit numerator/denominator (desk-scale sizes).
struct Frac {
  i64 num = 0, den = 1;

  Frac() = default;
  Frac(i64 n) : num(n), den(1) {}
  Frac(i64 n, i64 d);
  static Frac norm(i128 n, i128 d);
  Frac operator+(const Frac& o) const { return norm((i128)num * o.den + (i128)o.num * den, (i128)den * o.den); }
  Frac operator-(const Frac& o) const { return norm((i128)num * o.den - (i128)o.num * den, (i128)den * o.den); }
  Frac operator*(const Frac& o) const { return norm((i128)num * o.num, (i128)den * o.den); }
  Frac operator/(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
};

// The two catalogued embeddings of GL2 diagonally into GL2 x GL2.
enum class EmbeddingKind { DiagFull, DiagMirabolic };

struct FlagPoint {
  int a = 0, b = 0;  // per factor: 0..p-1 affine, p = infinity
};

struct OrbitReport {
  i64 p = 0;
  struct Orbit {
    FlagPoint rep;
    i64 size = 0;
    bool open = false;       // tangent-space rank test
    i64 stabilizer_order = 0;
  };
  std::vector<Orbit> orbits;
  FlagPoint open_point;         // smallest open-orbit point
  M22 u1, u2;                   // integral lift: u * base = open_point
  i64 group_order = 0;          // |Q_H^0(F_p)|
};

struct EmbeddingSpec {
  EmbeddingKind kind = EmbeddingKind::DiagFull;
  M22 u1, u2;                   // open-orbit representative (set by make_embedding)
  SubTorus minimal_s0{GroupTag::GL2xGL2, {}};
  SubTorus s0{GroupTag::GL2xGL2, {}};  // chosen S0_G (default: minimal)
};

OrbitReport enumerate_orbits(EmbeddingKind kind, i64 p);

// Build the spec with u from the orbit analysis at the given prime and the
// minimal S0_G from the stabilizer of u (Lie-algebra computation over Q,
// cross-checked against F_p points).
EmbeddingSpec make_embedding(EmbeddingKind kind, i64 p);

struct ConditionB {
  bool holds = false;
  SubTorus minimal{GroupTag::GL2xGL2, {}};  // minimal S0 making (B) hold
};
ConditionB check_condition_B(const EmbeddingSpec& spec, const SubTorus& s0_g);

struct InvariantSpace {
  int dimension = 0;
  std::vector<Frac> vec;  // primitive integral generator when dimension = 1
};
// Q_H^0-invariants of V^G_lambda, solved over exact rationals.
// Throws DimensionViolation if the dimension exceeds 1.
InvariantSpace invariant_space(const EmbeddingSpec& spec, const Weight& lambda);

struct BranchingPolynomial {
  Weight lambda{GroupTag::GL2xGL2, {0, 0, 0, 0}};
  Weight mu{GroupTag::GL2, {0, 0}};
  std::vector<Frac> br;        // normalized: psi(u^{-1} br) = 1
  std::vector<u64> br_mod;     // reduced mod p^s
  RingCtx R;
};
BranchingPolynomial branching_polynomial(const EmbeddingSpec& spec, const Weight& lambda,
                                         RingCtx R);

// The unique H-equivariant map V^{H,min}_mu -> V^G_{lambda,max} sending the
// highest-weight vector to br_lambda; columns indexed by the min basis of mu.
// Entries are exact rationals; integrality is asserted at p.
std::vector<std::vector<Frac>> branch_map(const EmbeddingSpec& spec, const Weight& lambda,
                                          RingCtx R);

// p^{hr} rho(eta(p)^{-r}) (f_hw - u^{-1} br) ∈ p^r V_{lambda,max}?
bool integral_relation_check(const EmbeddingSpec& spec, const Weight& lambda,
                             const Cocharacter& eta, int r, i64 p);

// The admissible weight with factor Sym-powers (a, a) and second coordinate 0,
// adjusted to be trivial on spec.s0.
Weight diag_admissible_weight(const EmbeddingSpec& spec, i64 a);

// rho_lambda over Q of an integral pair (exact, det need not be a p-unit).
std::vector<std::vector<Frac>> rational_action(const Weight& lambda, const M22& g1, const M22& g2);

}  // namespace ptower
