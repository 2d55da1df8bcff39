#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gasym/numerics.hpp"

namespace gasym {

/// One unitary irreducible representation: a d x d unitary matrix per group
/// element, indexed in group-element order.
struct Irrep {
  int label = 0;
  std::size_t dim = 0;
  std::vector<CMatrix> matrices;

  /// chi_p(g) = tr Gamma_p(g), per element.
  std::vector<cdouble> character() const;
};

/// A finite group given by its Cayley table, together with a complete set of
/// unitary irreducible representations. Immutable after construction; share
/// freely across threads.
struct GroupWithIrreps {
  std::string name;
  std::size_t order = 0;
  std::vector<std::vector<std::size_t>> cayley;  // cayley[g][h] = g*h
  std::size_t identity_index = 0;
  std::vector<std::size_t> inverses;
  std::vector<Irrep> irreps;
  std::vector<std::vector<std::size_t>> conjugacy_classes;
  std::vector<std::string> element_names;  // synthesized when not meaningful

  std::size_t multiply(std::size_t g, std::size_t h) const { return cayley[g][h]; }
  std::size_t inverse(std::size_t g) const { return inverses[g]; }

  bool has_irrep(int label) const;
  const Irrep& irrep_by_label(int label) const;
};

using GroupPtr = std::shared_ptr<const GroupWithIrreps>;

/// Cyclic group C_n with the n one-dimensional irreps
/// Gamma_p(a^k) = exp(2 pi i p k / n), labels 0..n-1.
GroupPtr cyclic_group(std::size_t n);

/// Dihedral group D_n for odd n >= 3, order 2n. Elements are indexed
/// r^0..r^{n-1}, r^0 s..r^{n-1} s. Irreps: label 1 trivial, label 2 sign,
/// labels 3.. the (n-1)/2 two-dimensional rotation/reflection blocks.
GroupPtr dihedral_group(std::size_t n);

/// Checks every structural invariant: Latin-square Cayley table,
/// associativity, identity and inverses, unitary irreps, the homomorphism
/// property, sum d_p^2 = |G|, character-row orthonormality and
/// irreducibility. Throws ValidationError naming the first violation.
void validate_group(const GroupWithIrreps& g);

std::vector<std::vector<std::size_t>> conjugacy_classes_from_table(
    const std::vector<std::vector<std::size_t>>& cayley,
    const std::vector<std::size_t>& inverses);

/// A unitary representation on a finite-dimensional carrier space.
/// irrep_content lists the irrep labels in block order when the rep was
/// assembled as a direct sum; it is empty when the decomposition is unknown
/// (e.g. a tensor product before isotypic analysis).
struct Representation {
  GroupPtr group;
  std::size_t dim = 0;
  std::vector<CMatrix> matrices;
  std::vector<int> irrep_content;

  const CMatrix& matrix(std::size_t g) const { return matrices[g]; }
  std::vector<cdouble> character() const;
};

/// A single irrep viewed as a representation.
Representation irrep_rep(const GroupPtr& group, int label);

/// Block-diagonal direct sum of distinct irreps, in the given label order.
/// Repeated labels throw RepeatedIrrep (multiplicity greater than one is
/// unsupported throughout).
Representation direct_sum_rep(const GroupPtr& group, const std::vector<int>& labels);

/// Elementwise Kronecker product of two representations of the same group.
/// irrep_content is left empty; use isotypic_projectors to decompose.
Representation tensor_product_rep(const Representation& r1, const Representation& r2);

/// Block-diagonal sum of two representations of the same group (used by the
/// CLI expression grammar). irrep_content concatenates when both are known.
Representation direct_sum(const Representation& r1, const Representation& r2);

}  // namespace gasym
