#pragma once

#include <functional>
#include <map>
#include <mutex>

#include "ptower/levels.hpp"
#include "ptower/smith.hpp"

namespace ptower {

// Sparse chain vector on (edge, coefficient-basis) coordinates.
using Chain = std::vector<std::pair<int, u64>>;

// Finite presentation of H^1 of the open modular curve at a congruence level
// with coefficients in a highest-weight lattice mod p^s: one V-block of
// coordinates per unoriented Farey edge, modulo the triangle relations.
class SymbolSpace {
 public:
  // materialize = false skips the relation elimination and quotient (used for
  // the large auxiliary levels where only chain operations are needed).
  SymbolSpace(const LevelSpec& level, const Weight& lambda, LatticeKind kind, RingCtx R,
              bool materialize = true);

  const LevelSpec& level() const { return level_; }
  const CosetTable& cosets() const { return *tab_; }
  const RepModule& coeff() const { return V_; }
  RingCtx ring() const { return R_; }
  int chain_dim() const { return tab_->edge_count() * V_.dim(); }
  int coord(int edge, int j) const { return edge * V_.dim() + j; }

  bool materialized() const { return mat_; }
  const Presentation& presentation() const;
  int dim() const { return presentation().dim(); }
  const std::vector<Presentation::SparseVec>& relations() const { return relations_; }

  // the chain of the symbol (g, v): class of the geodesic g(0 -> inf) with
  // coefficient v, folded onto edge representatives
  Chain sym(const M22& g, const std::vector<u64>& v) const;

  // the chain [witness(coset), rho(transport_p) v], folded
  Chain sym_at_witness(int coset, const M22& transport_p, const std::vector<u64>& v) const;

  // path a -> b (rationals or infinity as (1,0)) with a global coefficient
  Chain path_chain(i64 ax, i64 ay, i64 bx, i64 by, const std::vector<u64>& v) const;

  std::vector<u64> dense(const Chain& x) const;
  Chain sparse(const std::vector<u64>& x) const;

  // rho of a p-part transport matrix (entries mod pstore), cached
  const Mat& rho_p(const M22& t) const;

  // expected rank at lambda = 0 from the genus/cusp oracle
  i64 rank_oracle_lambda0() const { return tab_->expected_h1_rank(); }

  // boundary map to the cusps, trivial coefficients only: for each coset edge
  // [g] the difference (cusp at g*inf) - (cusp at g*0)
  std::vector<u64> boundary(const Chain& x) const;
  int cusp_count() const { return tab_->cusp_count(); }

 private:
  LevelSpec level_;
  std::shared_ptr<const CosetTable> tab_;
  RepModule V_;
  RingCtx R_;
  bool mat_ = false;
  std::vector<Presentation::SparseVec> relations_;
  std::unique_ptr<Presentation> pres_;
  mutable std::unordered_map<u64, Mat> rho_cache_;
  mutable std::mutex rho_mutex_;

  void add_symbol_at_coset(int coset, const M22& transport_p, const std::vector<u64>& v, u64 scale,
                           std::map<int, u64>& acc) const;
};

std::shared_ptr<SymbolSpace> make_space(const LevelSpec& level, const Weight& lambda,
                                        LatticeKind kind, RingCtx R, bool materialize = true);

// Host/dual coordinate systems tied by the coefficient duality; the host
// need not be materialized. Used wherever only chain-level transposes and
// pairings are required.
struct DualPair {
  std::shared_ptr<SymbolSpace> host, dual;
  Mat C, Cinv;  // coefficient pairing host-max x dual-min and its inverse

  static DualPair make(std::shared_ptr<SymbolSpace> host_space, bool materialize_dual = false);
  std::vector<u64> to_host(const std::vector<u64>& w) const;
  std::vector<u64> from_host(const std::vector<u64>& x) const;
};

// The compactly-supported companion: the submodule of chains pairing to zero
// with every triangle relation at the dual weight; carries a spanning set and
// the intersection pairing against the H^1 model.
class CycleSpace {
 public:
  // host: the H^1 space whose relations cut out this kernel; the cycle space
  // itself carries the dual weight on the minimal lattice.
  explicit CycleSpace(std::shared_ptr<SymbolSpace> host);

  const SymbolSpace& host() const { return *host_; }
  std::shared_ptr<SymbolSpace> host_ptr() const { return host_; }
  SymbolSpace& dual_space() { return *dual_; }
  const SymbolSpace& dual_space() const { return *dual_; }
  std::shared_ptr<SymbolSpace> dual_ptr() const { return dual_; }
  int dim() const { return (int)basis_.size(); }
  const std::vector<std::vector<u64>>& basis() const { return basis_; }

  // intersection pairing <x, w> for x a chain in the host coordinates and w a
  // chain in the dual coordinates
  u64 pair_chain(const std::vector<u64>& x, const std::vector<u64>& w) const;

  // comparison map into the host-model chain coordinates of the dual space:
  // c(w) pairs H^1-classes with cycle classes of the same weight
  std::vector<u64> comparison(const std::vector<u64>& w) const;

  bool is_cycle(const std::vector<u64>& w) const;

  const Mat& coeff_pairing() const { return coeff_pairing_; }
  DualPair dual_pair() const;
  // host-chain vector <-> dual-chain vector through the coefficient pairing
  std::vector<u64> to_host_coords(const std::vector<u64>& w) const;
  std::vector<u64> from_host_coords(const std::vector<u64>& x) const;

 private:
  Mat coeff_pairing_inv_;
  std::shared_ptr<SymbolSpace> host_;
  std::shared_ptr<SymbolSpace> dual_;  // dual weight, min lattice, same level
  Mat coeff_pairing_;                  // dual_pairing_matrix(host V, dual V)
  std::vector<std::vector<u64>> basis_;
};

}  // namespace ptower
