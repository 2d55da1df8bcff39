#pragma once

#include "gasym/numerics.hpp"

namespace gasym {

struct CoherenceResult {
  double c_l1 = 0.0;
  std::size_t basis_dim = 0;
  double ps_minus_guess = 0.0;  // P_s - 1/N
  double ratio_check = 0.0;     // N (P_s - 1/N) - C_l1, zero when the identity holds
};

/// l1 coherence: sum of |rho_pq| over the off-diagonal entries, in the basis
/// the matrix is given in. Input must be a valid density matrix.
double l1_coherence(const CMatrix& rho, std::size_t n);

/// For the full cyclic representation of C_n, the optimal orbit-discrimination
/// probability of a pure state and its l1 coherence obey
/// n (P_s - 1/n) = C_l1; ratio_check reports the residual of that identity.
CoherenceResult cyclic_equivalence_check(std::size_t n, const CVector& phi);

}  // namespace gasym
