#pragma once

#include "ptower/branching.hpp"
#include "ptower/fitting.hpp"
#include "ptower/hecke.hpp"

namespace ptower {

// A symbol space with its normalized Hecke operator and ordinary splitting.
struct OrdinaryStage {
  std::shared_ptr<SymbolSpace> space;
  HeckeOp tprime;
  OrdinaryData ord;
};

OrdinaryStage ordinary_stage(std::shared_ptr<SymbolSpace> space, const Cocharacter& eta,
                             int threads = 0);

// Ordinary splitting on the compact-support side of a cycle space, computed
// from the pairing transpose of T'; carries the basis-coordinate presentation.
struct OrdinaryDual {
  std::shared_ptr<CycleSpace> W;
  Mat gen_matrix;           // chain x basis generators
  Mat rels;                 // relations among the generators (kernel of gen_matrix)
  Mat tdual;                // pairing transpose of T' on generator coordinates
  OrdinaryData ord;         // idempotent data for tdual mod rels
};

OrdinaryDual ordinary_dual(std::shared_ptr<CycleSpace> W, const Cocharacter& eta,
                           int threads = 0);

// apply e (and optionally the stored inverse k times) to a dual chain
std::vector<u64> dual_project(const OrdinaryDual& od, const std::vector<u64>& w,
                              int inverse_power);

// chains spanning the image of the ordinary idempotent on the dual side
std::vector<std::vector<u64>> ordinary_dual_span(const OrdinaryDual& od);

// The finite stages of the weight-0 tower at levels V_1..V_rmax.
struct TruncatedTower {
  i64 N = 0, p = 0;
  RingCtx R;
  int r_max = 0;
  std::vector<OrdinaryStage> stages;  // index r-1
  std::vector<Mat> traces;            // stage r+1 -> r on canonical coords
  std::vector<std::vector<int>> stage_divisors;  // elementary divisor exponents
  bool transitions_ordinary_iso = false;
};

TruncatedTower build_tower(i64 N, i64 p, RingCtx R, int r_max, int threads = 0);

// cup with the reduced highest-weight vector: H^1(V_r, triv) -> H^1(V_r, lam);
// requires r >= s
ChainOp moment_op(std::shared_ptr<SymbolSpace> wt0, std::shared_ptr<SymbolSpace> wtlam);

struct ControlReport {
  bool pass = false;
  bool injective = false, surjective = false;
  int source_corank = 0;          // generators of the coinvariant module
  int target_rank = 0;            // ordinary rank at V_1 with weight lambda
  std::vector<int> target_divisors;
};

// edge-map control at U = V_1 for lambda = (0,-k): coinvariants of the
// stage-r module by (<1+p> - (1+p)^k) mapped by moment-then-trace
ControlReport control_check(i64 N, i64 p, RingCtx R, i64 k, int r_stage, int threads = 0);

struct ParahoricReport {
  bool ab_identity = false, ba_identity = false;
  bool b_ordinary_invertible = false;
  bool gram_adjoint = false;
};

ParahoricReport parahoric_transfer(i64 N, i64 p, RingCtx R, const Weight& lam, int threads = 0);

// One GL2 factor of the product machinery at a fixed stage.
struct FactorData {
  Weight lam{GroupTag::GL2, {0, 0}};
  std::shared_ptr<SymbolSpace> MV;   // H^1(V_r, lam)
  std::shared_ptr<CycleSpace> WV;    // compact-support companion at V_r
};

// Evaluator for the diagonal-cycle class xi^{[lambda]}_{G,r} at stage r of the
// product tower: the class is known through its pairings against dual-weight
// Kunneth vectors.
class DiagonalClass {
 public:
  DiagonalClass(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R, int r);

  int stage() const { return r_; }
  const FactorData& factor(int i) const { return fac_[i]; }

  // <xi_r, w1 (x) w2> for dual-weight cycle chains at the V_r level
  u64 eval(const std::vector<u64>& w1, const std::vector<u64>& w2) const;

  // <z_r, y1 (x) y2> for dual chains at the U_r level (before [tau^r]_*)
  u64 eval_z(const std::vector<u64>& y1, const std::vector<u64>& y2) const;

 private:
  EmbeddingSpec spec_;
  Weight lam4_;
  i64 N_;
  RingCtx R_;
  int r_;
  FactorData fac_[2];
  std::shared_ptr<SymbolSpace> dualU_[2];   // dual spaces at U_r
  std::shared_ptr<SymbolSpace> dualConj_[2]; // dual spaces at u_i U_r u_i^{-1}
  std::shared_ptr<SymbolSpace> dualH_[2];    // dual spaces at the H level (per factor weight)
  ChainOp tau_dual_[2];                      // W(V_r) -> W(U_r)
  ChainOp u_dual_[2];                        // W(U_r) -> W(conj_i)
  ChainOp toH_[2];                           // W(conj_i) -> W(H level)
  Mat form_br_;                              // min-dual x min-dual -> O through br
};

struct NormReport {
  bool pass = false;
  int table_dim = 0;
  bool nonzero = false;
};

// trace(xi_{r+1}) = T' xi_r as pairing tables over the stage-r dual basis
NormReport norm_compat_check(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R,
                             int r, int threads = 0);

struct TwistReport {
  bool pass = false;
  int table_dim = 0;
  bool nonzero = false;
};

// mom^lambda(xi_infty) = (T')^{-1} e' xi^{[lambda]}_1 as pairing tables; the
// left side runs through the weight-0 family at stage s, the right side is an
// independent weight-lambda run of the pushforward pipeline
TwistReport twist_compat_check(const EmbeddingSpec& spec, const Weight& lam4, i64 N, RingCtx R,
                               int threads = 0);

// the comparison map on an unmaterialized dual space (H^1_c -> H^1 model)
std::vector<u64> comparison_chain(const SymbolSpace& dual, const std::vector<u64>& w);

// sum over edges of a^T form b for chains in two dual coordinate systems
u64 pair_form(const SymbolSpace& dualA, const SymbolSpace& dualB, const Mat& form,
              const std::vector<u64>& a, const std::vector<u64>& b);

}  // namespace ptower
