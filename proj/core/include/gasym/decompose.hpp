#pragma once

#include <utility>
#include <vector>

#include "gasym/groups.hpp"

namespace gasym {

/// Isotypic analysis of a representation: how often each irrep occurs and the
/// orthogonal projector onto each occurring invariant subspace.
struct IsotypicDecomposition {
  Representation rep;
  std::vector<std::pair<int, std::size_t>> multiplicities;  // (label, m_p), every group irrep
  std::vector<int> present_labels;                          // m_p >= 1, ascending label order
  std::vector<CMatrix> projectors;                          // aligned with present_labels

  std::size_t n_present() const { return present_labels.size(); }
  std::size_t multiplicity(int label) const;
  const CMatrix& projector(int label) const;
  std::size_t irrep_dim(int label) const { return rep.group->irrep_by_label(label).dim; }
};

/// Computes multiplicities m_p = (1/|G|) sum_g conj(chi_p(g)) chi_U(g) and the
/// projectors 1_p = (d_p/|G|) sum_g conj(chi_p(g)) U(g) by character
/// averaging. The same code path runs for block direct sums, whose known
/// block structure then serves as an independent oracle in the tests.
/// Throws NonIntegerMultiplicity when a character sum is further than 1e-6
/// from an integer (an invalid representation).
IsotypicDecomposition isotypic_projectors(const Representation& rep);

/// Norms of the components of a normalized state in each occurring subspace,
/// as (label, ||1_p phi||) pairs. The squared norms sum to one.
std::vector<std::pair<int, double>> component_norms(const IsotypicDecomposition& dec,
                                                    const CVector& phi);

/// Throws RepeatedIrrep listing the offending labels unless every
/// multiplicity is at most one. The closed-form discrimination and duality
/// formulas are only valid for multiplicity-free representations.
void assert_multiplicity_free(const IsotypicDecomposition& dec);

/// Deterministic unit vector inside subspace p: the normalized projection of
/// the first standard basis vector that has nonvanishing overlap.
CVector subspace_basis_vector(const IsotypicDecomposition& dec, int label);

}  // namespace gasym
