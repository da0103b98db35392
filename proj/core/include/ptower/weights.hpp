#pragma once

#include <vector>

#include "ptower/common.hpp"

namespace ptower {

// Catalogued groups. GL2-family tags fix Q = upper-triangular Borel,
// Q̄ = lower-triangular, L = diagonal; GSp4Weights carries lattice and
// pairing data only (consumed by the Euler-factor module).
enum class GroupTag { GL2, GL2xGL2, GSp4Weights };

int coord_count(GroupTag tag);
const char* tag_name(GroupTag tag);

// Character of the torus in coordinates: GL2 (k1,k2) means
// diag(t1,t2) -> t1^k1 t2^k2; dominance relative to upper Q is k1 >= k2.
struct Weight {
  GroupTag tag;
  std::vector<i64> k;

  Weight(GroupTag t, std::vector<i64> v) : tag(t), k(std::move(v)) {
    check((int)k.size() == coord_count(t), "BadWeight", "coordinate count");
  }
  bool operator==(const Weight& o) const { return tag == o.tag && k == o.k; }
};

struct Cocharacter {
  GroupTag tag;
  std::vector<i64> e;

  Cocharacter(GroupTag t, std::vector<i64> v) : tag(t), e(std::move(v)) {
    check((int)e.size() == coord_count(t), "BadWeight", "coordinate count");
  }
  bool operator==(const Cocharacter& o) const { return tag == o.tag && e == o.e; }
};

// canonical pairing <lambda, eta>
i64 pair(const Weight& w, const Cocharacter& c);

bool is_dominant(const Weight& w);
bool is_sigma_plus(const Cocharacter& c);
bool is_sigma_plusplus(const Cocharacter& c);

Weight add(const Weight& a, const Weight& b);
Weight negate(const Weight& a);
Weight dual_weight(const Weight& a);  // -w0 * lambda

// A subtorus of the maximal torus, as a saturated sublattice of the
// cocharacter lattice Z^n.
struct SubTorus {
  GroupTag tag;
  std::vector<std::vector<i64>> basis;  // each of length coord_count(tag)

  int rank() const { return (int)basis.size(); }
};

SubTorus full_torus(GroupTag tag);
SubTorus trivial_torus(GroupTag tag);
// Default S0 for GL2: {diag(x,1)}.
SubTorus default_s0_gl2();

// lattice generated by the given vectors, saturated
SubTorus saturate(GroupTag tag, const std::vector<std::vector<i64>>& gens);
bool contains(const SubTorus& big, const SubTorus& small);
bool torus_equal(const SubTorus& a, const SubTorus& b);

// weight trivial on the subtorus: <w, b> = 0 for every basis cocharacter
bool trivial_on(const Weight& w, const SubTorus& t);

// dominant AND trivial on S0
bool admissible_weight(const Weight& w, const SubTorus& s0);

// Integer Smith form over Z (small matrices): U*A*V = D.
struct SmithZ {
  std::vector<std::vector<i64>> U, V, D;
  int rank = 0;
};
SmithZ smith_z(std::vector<std::vector<i64>> A);

}  // namespace ptower
