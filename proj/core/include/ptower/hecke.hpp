#pragma once

#include "ptower/modsym.hpp"

namespace ptower {

// A chain-level operator between symbol spaces. All Hecke, level-change and
// translation maps are built from these; matrices on the quotient are derived
// afterwards and carry a well-definedness certificate.
class ChainOp {
 public:
  using Fn = std::function<std::vector<u64>(const std::vector<u64>&)>;

  ChainOp() = default;
  ChainOp(std::shared_ptr<SymbolSpace> from, std::shared_ptr<SymbolSpace> to, std::string label,
          Fn fn)
      : from_(std::move(from)), to_(std::move(to)), label_(std::move(label)), fn_(std::move(fn)) {}

  const SymbolSpace& from() const { return *from_; }
  const SymbolSpace& to() const { return *to_; }
  const std::string& label() const { return label_; }

  std::vector<u64> apply(const std::vector<u64>& x) const { return fn_(x); }

  // relations map into relations (exact check in the target quotient)
  bool well_defined() const;

  // matrix on the canonical coordinates (requires equal from/to space or at
  // least both materialized)
  Mat reduced() const;

 private:
  std::shared_ptr<SymbolSpace> from_, to_;
  std::string label_;
  Fn fn_;
};

struct HeckeOp {
  std::string label;
  Mat matrix;       // on canonical coordinates of the space
  bool certified = false;
};

// translation by an integral matrix with positive determinant, with an
// explicit coefficient map: x = [g, v] -> [beta g, Phi v]
ChainOp translate_op(std::shared_ptr<SymbolSpace> from, std::shared_ptr<SymbolSpace> to, M22 beta,
                     Mat Phi, const std::string& label);

// sum of translations (double-coset style)
ChainOp pieces_op(std::shared_ptr<SymbolSpace> from, std::shared_ptr<SymbolSpace> to,
                  std::vector<std::pair<M22, Mat>> pieces, const std::string& label);

// pullback along the covering (restriction of level): H^1(big) -> H^1(small)
ChainOp transfer_op(std::shared_ptr<SymbolSpace> big, std::shared_ptr<SymbolSpace> small);

// trace along the covering: H^1(small level group... i.e. deeper space) -> H^1(coarser)
ChainOp project_op(std::shared_ptr<SymbolSpace> deep, std::shared_ptr<SymbolSpace> coarse);

// the normalized anti-dominant Hecke operator T'_eta at an Iwahori-decomposed
// box level; eta in Sigma+ of GL2
ChainOp tprime_op(std::shared_ptr<SymbolSpace> space, const Cocharacter& eta);

// prime-to-Np Hecke operator
ChainOp tl_op(std::shared_ptr<SymbolSpace> space, i64 ell);

// diamond operator <d> for a unit d mod p^r
ChainOp diamond_op(std::shared_ptr<SymbolSpace> space, i64 d);

// the conjugation isomorphism H^1(U_r) -> H^1(V_r) with its normalized
// coefficient map
ChainOp tau_push_op(std::shared_ptr<SymbolSpace> from_Ur, std::shared_ptr<SymbolSpace> to_Vr,
                    int r);

// full chain-coordinate matrix of an operator (to.chain_dim x from.chain_dim)
Mat chain_matrix(const ChainOp& op);

// The dominant companions live on the compact-support model: the exact
// transpose under the intersection pairing. host_op: A -> B gives an operator
// W(B) -> W(A).
ChainOp pairing_transpose_op(const DualPair& A, const DualPair& B, const ChainOp& host_op);
ChainOp pairing_transpose_op(std::shared_ptr<CycleSpace> WA, std::shared_ptr<CycleSpace> WB,
                             const ChainOp& host_op);

// reduced matrix with certificate
HeckeOp reduce_op(const ChainOp& op);

// equality of operator matrices on canonical coordinates (respecting the
// per-coordinate moduli of the target space)
bool ops_equal(const SymbolSpace& target, Mat A, Mat B);

// operator matrix on a cycle space: applies the chain op to the basis and
// re-expresses in the basis; certifies that cycles map to cycles
Mat cycle_matrix(const CycleSpace& W, const ChainOp& op);

// the box exponents of a single-box level (errors on conjugated levels)
struct BoxExp {
  int beta, gamma, delta;
};
BoxExp box_exponents(const LevelSpec& spec);

// check the Iwahori decomposition |P| = |P ∩ Nbar| |P ∩ L| |P ∩ N| at p
bool has_iwahori_decomposition(const LevelSpec& spec);

// SL2(Z) lift of (I mod N', target mod p^e)
M22 crt_lift(i64 N, i64 p, int e, const M22& target_mod_pe);

// content-addressed cache of operator matrices in the line-oriented sparse
// format; empty cache_dir disables caching
Mat hecke_cached(const std::string& cache_dir, const SymbolSpace& sp, const std::string& label,
                 const std::function<Mat()>& build);
std::string cache_key(const SymbolSpace& sp, const std::string& label);

}  // namespace ptower
