#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ptower/mat.hpp"

namespace ptower {

// Smith form over Z/p^s: U*A*V = D with D diagonal, diagonal entries p-powers
// ordered by increasing valuation (0 entries count as p^s), U and V invertible.
struct SmithForm {
  Mat U, V, D;
  std::vector<int> divisor_exp;  // valuations of the diagonal entries, length min(rows,cols)
};

SmithForm smith_form(const Mat& A);
SmithForm smith_form(const SparseMat& A);

// Row echelon over Z/p^s with min-valuation pivoting (ties (row, col) lex):
// row operations and column permutations only. Solves A x = b and computes
// kernel generating sets without materializing the column transform.
class RowEchelon {
 public:
  explicit RowEchelon(const Mat& A, bool keep_transform = true);

  int rank_at_full_precision() const;                 // number of valuation-0 pivots
  const std::vector<std::pair<int, int>>& pivots() const { return piv_; }  // (col, exponent)

  // Solve A x = b; returns std::nullopt when inconsistent.
  std::optional<std::vector<u64>> solve(const std::vector<u64>& b) const;

  // Generating set for {x : A x = 0}.
  std::vector<std::vector<u64>> kernel() const;

 private:
  RingCtx R_;
  int m_, n_;
  Mat E_;                                  // echelon form (rows transformed, cols permuted)
  Mat T_;                                  // row transform: E = T * A (cols permuted)
  bool keepT_;
  std::vector<int> colperm_;               // E column j corresponds to A column colperm_[j]
  std::vector<std::pair<int, int>> piv_;   // per pivot row: (E-column, valuation)
};

// Solve A X ≡ B mod colspan(Rel) columnwise; X is (A.cols x B.cols).
// Returns nullopt if any column is unsolvable.
std::optional<Mat> solve_mod(const Mat& A, const Mat& B, const Mat* Rel);

// Inverse of a square matrix over Z/p^s; throws NotInvertible.
Mat inv(const Mat& A);

bool is_invertible(const Mat& A);

// Membership of b in the column span of A modulo p^s.
bool in_colspan(const Mat& A, const std::vector<u64>& b);

// Quotient-module presentation F/(relations) for F = (Z/p^s)^ncoords.
// Large relation sets are first reduced by deterministic unit-pivot sparse
// elimination; the torsion residue is finished by the dense Smith kernel.
class Presentation {
 public:
  using SparseVec = std::vector<std::pair<int, u64>>;

  Presentation() = default;
  Presentation(RingCtx R, int ncoords, const std::vector<SparseVec>& relations);

  RingCtx ring() const { return R_; }
  int ncoords() const { return n_; }
  int dim() const { return (int)alive_.size(); }      // canonical coordinates
  int free_rank() const { return free_rank_; }
  const std::vector<int>& modexp() const { return modexp_alive_; }  // per canonical coord

  // Canonical coordinates of a chain vector (length dim()).
  std::vector<u64> reduce(const std::vector<u64>& chain) const;
  std::vector<u64> reduce_sparse(const SparseVec& chain) const;

  // A chain representative of a canonical vector.
  std::vector<u64> lift(const std::vector<u64>& canon) const;

  bool is_zero(const std::vector<u64>& chain) const;

  // Matrix of a chain-level operator on canonical coordinates.
  Mat reduce_operator(const std::function<std::vector<u64>(const std::vector<u64>&)>& op) const;

  // Relations as a dense matrix on canonical coordinates: diag(p^{modexp_i}).
  Mat canonical_relations() const;

  // reduce each row of an operator matrix modulo its coordinate modulus
  void canonicalize_rows(Mat& M) const;

 private:
  RingCtx R_;
  int n_ = 0;
  struct Subst {
    int coord;
    SparseVec expr;
  };
  std::vector<Subst> substs_;
  std::vector<int> subst_of_coord_;  // -1 if not eliminated
  std::vector<int> residual_;        // surviving coords in order
  std::vector<int> residual_index_;  // coord -> residual position or -1
  Mat Ures_, UresInv_;               // torsion change of basis on residual coords
  std::vector<int> modexp_all_;      // per residual-canonical coordinate, 0 = dead
  std::vector<int> alive_;           // canonical coords with modexp > 0
  std::vector<int> modexp_alive_;
  int free_rank_ = 0;
};

}  // namespace ptower
