#include "gasym/decompose.hpp"

#include <cmath>

namespace gasym {

std::size_t IsotypicDecomposition::multiplicity(int label) const {
  for (const auto& [l, m] : multiplicities)
    if (l == label) return m;
  throw InvalidInput("multiplicity: unknown irrep label " + std::to_string(label));
}

const CMatrix& IsotypicDecomposition::projector(int label) const {
  for (std::size_t i = 0; i < present_labels.size(); ++i)
    if (present_labels[i] == label) return projectors[i];
  throw InvalidInput("projector: irrep label " + std::to_string(label) +
                     " not present in this representation");
}

IsotypicDecomposition isotypic_projectors(const Representation& rep) {
  if (!rep.group) throw InvalidInput("isotypic_projectors: representation has no group");
  const GroupWithIrreps& grp = *rep.group;
  const std::size_t n = grp.order;
  const auto chi_u = rep.character();

  IsotypicDecomposition dec;
  dec.rep = rep;
  for (const auto& ir : grp.irreps) {
    const auto chi_p = ir.character();
    cdouble ip = 0.0;
    for (std::size_t g = 0; g < n; ++g) ip += std::conj(chi_p[g]) * chi_u[g];
    ip /= static_cast<double>(n);
    const double rounded = std::round(ip.real());
    if (std::abs(ip - cdouble(rounded, 0.0)) > tol::multiplicity || rounded < 0.0) {
      throw NonIntegerMultiplicity("isotypic_projectors: character inner product for label " +
                                   std::to_string(ir.label) +
                                   " is not a nonnegative integer; invalid representation");
    }
    const auto m = static_cast<std::size_t>(rounded);
    dec.multiplicities.emplace_back(ir.label, m);
    if (m == 0) continue;

    CMatrix proj(rep.dim, rep.dim);
    for (std::size_t g = 0; g < n; ++g) {
      proj += std::conj(chi_p[g]) * rep.matrices[g];
    }
    proj *= cdouble(static_cast<double>(ir.dim) / static_cast<double>(n));
    dec.present_labels.push_back(ir.label);
    dec.projectors.push_back(hermitize(proj));
  }
  return dec;
}

std::vector<std::pair<int, double>> component_norms(const IsotypicDecomposition& dec,
                                                    const CVector& phi) {
  if (phi.dim() != dec.rep.dim) {
    throw DimensionMismatch("component_norms: state dimension does not match representation");
  }
  if (std::abs(phi.norm() - 1.0) > tol::hermitian) {
    throw InvalidInput("component_norms: state is not normalized");
  }
  std::vector<std::pair<int, double>> out;
  out.reserve(dec.present_labels.size());
  for (std::size_t i = 0; i < dec.present_labels.size(); ++i) {
    out.emplace_back(dec.present_labels[i], (dec.projectors[i] * phi).norm());
  }
  return out;
}

void assert_multiplicity_free(const IsotypicDecomposition& dec) {
  std::string offending;
  for (const auto& [label, m] : dec.multiplicities) {
    if (m > 1) {
      if (!offending.empty()) offending += ", ";
      offending += std::to_string(label);
    }
  }
  if (!offending.empty()) {
    throw RepeatedIrrep("representation is not multiplicity-free; repeated labels: " +
                        offending);
  }
}

CVector subspace_basis_vector(const IsotypicDecomposition& dec, int label) {
  const CMatrix& proj = dec.projector(label);
  for (std::size_t j = 0; j < dec.rep.dim; ++j) {
    CVector candidate = proj * CVector::basis(dec.rep.dim, j);
    if (candidate.norm() > 1e-3) return candidate.normalized();
  }
  // trace(1_p) >= 1, so some basis vector always has overlap >= 1/dim.
  throw InvalidInput("subspace_basis_vector: projector is numerically null");
}

}  // namespace gasym
