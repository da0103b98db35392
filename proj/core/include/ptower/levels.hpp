#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "ptower/reps.hpp"

namespace ptower {

// A congruence level: Gamma_0(N) away from p, and at p the intersection of
// conjugated "box" subgroups u^{-1} g u in { b = 0 mod p^beta, c = 0 mod
// p^gamma, d = 1 mod p^delta }. The towers and parahoric levels are boxes:
//   V_r = (0, r, r), U_r = (r, 0, r), J = (0, 1, 0), Jbar = (1, 0, 0).
struct LevelSpec {
  i64 N = 1;
  i64 p = 5;
  struct Box {
    M22 u{1, 0, 0, 1};  // unimodular conjugator
    int beta = 0, gamma = 0, delta = 0;
  };
  std::vector<Box> conds;
  std::string label;

  int cond_exp() const {
    int m = 1;
    for (auto& c : conds) m = std::max({m, c.beta, c.gamma, c.delta});
    return m;
  }
  std::string key() const;
};

LevelSpec level_full(i64 N, i64 p);
LevelSpec level_Vr(i64 N, i64 p, int r);
LevelSpec level_Ur(i64 N, i64 p, int r);
LevelSpec level_J(i64 N, i64 p);
LevelSpec level_Jbar(i64 N, i64 p);
LevelSpec level_JJbar(i64 N, i64 p);
LevelSpec level_box(i64 N, i64 p, int beta, int gamma, int delta);
// intersection over i of u_i (box_i) u_i^{-1}
LevelSpec level_conj(i64 N, i64 p, std::vector<LevelSpec::Box> conds, const std::string& label);

// Right cosets Gamma\PSL2(Z) for the level group, with witnesses and the
// Farey cell structure of the corresponding open modular curve.
class CosetTable {
 public:
  explicit CosetTable(const LevelSpec& spec);

  const LevelSpec& spec() const { return spec_; }
  int size() const { return (int)cosN_.size(); }
  i64 pstore() const { return pstore_; }  // witnesses are exact mod pstore
  bool minus_id_in_group() const { return minus_id_; }

  // coset of an integer matrix with det 1
  int coset_of(const M22& g) const;
  // coset and the p-part of the transport: g = ±gamma * witness, gamma in
  // Gamma; returns (coset, gamma mod pstore)
  std::pair<int, M22> locate(const M22& g) const;

  // witness matrices: reduced mod pstore (p-part) and an exact integral lift
  M22 witness_p(int c) const { return cosP_[c]; }
  M22 small_lift(int c) const;

  // right actions by the standard elements
  int act_S(int c) const { return actS_[c]; }
  int act_sigma(int c) const { return actSig_[c]; }
  int act_Tinf(int c) const { return actT_[c]; }

  // unoriented edges: S-orbits of cosets
  int edge_count() const { return nedges_; }
  int edge_of(int c) const { return edge_of_[c]; }     // edge index
  int edge_rep(int e) const { return edge_rep_[e]; }   // representative coset
  int fold_sign(int c) const { return fold_sign_[c]; }
  M22 fold_transport_p(int c) const { return fold_t_[c]; }  // see modsym.cpp

  // faces: sigma-orbits
  int face_count() const { return nfaces_; }
  int face_of(int c) const { return face_of_[c]; }
  int face_rep(int f) const { return face_rep_[f]; }
  int rotation_of(int c) const { return rot_of_[c]; }  // c = face_rep * sigma^rot

  // cusps: Tinf-orbits
  int cusp_count() const { return ncusps_; }
  int cusp_of(int c) const { return cusp_of_[c]; }

  i64 genus() const { return genus_; }
  i64 expected_h1_rank() const { return 2 * genus_ + ncusps_ - 1; }

  // p-part membership of a reduced matrix (mod p^cond_exp)
  bool p_member(const M22& gp) const;

 private:
  LevelSpec spec_;
  i64 pc_ = 1;      // p^cond_exp
  i64 pstore_ = 1;  // p^(cond_exp + guard)
  bool minus_id_ = false;
  std::vector<M22> cosN_;  // witness mod N
  std::vector<M22> cosP_;  // witness mod pstore
  std::vector<int> actS_, actSig_, actT_;
  std::vector<int> edge_of_, edge_rep_, fold_sign_;
  std::vector<M22> fold_t_;
  int nedges_ = 0, nfaces_ = 0, ncusps_ = 0;
  std::vector<int> face_of_, face_rep_, rot_of_, cusp_of_;
  i64 genus_ = 0;

  std::vector<M22> subgroup_p_;  // enumerated p-part subgroup mod pc
  struct Key {
    u64 a, b;
    bool operator==(const Key& o) const { return a == o.a && b == o.b; }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      u64 x = k.a * 0x9E3779B97F4A7C15ull ^ (k.b + 0x9E3779B97F4A7C15ull + (k.a << 6));
      x ^= x >> 29;
      x *= 0xBF58476D1CE4E5B9ull;
      x ^= x >> 32;
      return (size_t)x;
    }
  };
  std::unordered_map<Key, int, KeyHash> hash_;
  mutable std::mutex lift_mutex_;
  mutable std::vector<M22> lift_cache_;
  std::vector<int> p1_canon_;  // (c*N + d) -> P1(Z/N) id
  int p1_id(const M22& gN) const;
  Key key_of(const M22& gN, const M22& gp) const;
  void insert_orbit(const M22& gN, const M22& gp, int id);
};

// shared cache of tables
std::shared_ptr<const CosetTable> coset_table(const LevelSpec& spec);

// SL2(Z) lift of a unimodular matrix mod M (entries O(M^2))
M22 lift_sl2_mod(i64 M, const M22& target);

// true if level2 is a subgroup of level1 (checked on the p-part subgroup and
// the tame parts; used to validate transfer/projection pairs)
bool level_subgroup(const LevelSpec& sub, const LevelSpec& sup);

}  // namespace ptower
