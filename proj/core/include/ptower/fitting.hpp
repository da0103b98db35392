#pragma once

#include "ptower/smith.hpp"

namespace ptower {

// Splitting data for the stable idempotent of an endomorphism A of a finite
// module M = (Z/p^s)^d / colspan(Rel): the unique idempotent e with
// e A = A e, A invertible on im(e), A topologically nilpotent on im(1-e).
struct OrdinaryData {
  Mat e;             // idempotent matrix on module coordinates
  Mat inv_on_image;  // J with J A ≡ A J ≡ e (mod Rel), J = e J e
  int power_exponent = 0;         // e was recovered from B = A^(2^t)
  std::vector<int> image_divisor_exp;  // ordinary part ≅ ⊕ Z/p^{g_i}, g_i in (0,s]
  int free_rank = 0;                   // #{g_i = s}
};

// Rel may be null (free module). Throws NonStabilization if the iteration cap
// ceil(log2(s*d)) + 2 is reached without all certificates holding.
OrdinaryData stable_idempotent(const Mat& A, const Mat* Rel, int threads = 0);

// Spec-level convenience on a plain square sparse matrix over Z/p^s.
SparseMat stable_idempotent(const SparseMat& A);

// Exact equality of matrices modulo the column span of Rel (columnwise).
bool equal_mod(const Mat& X, const Mat& Y, const Mat* Rel);

// Characteristic polynomial over Z/p^s by the division-free Berkowitz
// algorithm; coefficients returned lowest degree first, monic.
std::vector<u64> char_poly(const Mat& A);

// number of unit roots told by the Newton polygon of a monic polynomial
int newton_unit_roots(const RingCtx& R, const std::vector<u64>& poly);

}  // namespace ptower
