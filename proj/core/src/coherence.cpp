#include "gasym/coherence.hpp"

#include <cmath>
#include <numeric>

#include "gasym/discrimination.hpp"

namespace gasym {

double l1_coherence(const CMatrix& rho, std::size_t n) {
  if (!rho.is_square() || rho.rows() != n) {
    throw InvalidDensity("l1_coherence: expected an n x n matrix");
  }
  if (!rho.is_hermitian(tol::structural)) {
    throw InvalidDensity("l1_coherence: matrix is not Hermitian");
  }
  if (std::abs(rho.trace().real() - 1.0) > tol::structural) {
    throw InvalidDensity("l1_coherence: trace differs from one");
  }
  if (psd_floor(hermitize(rho)) < -tol::structural) {
    throw InvalidDensity("l1_coherence: matrix is not positive semidefinite");
  }
  double sum = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (p != q) sum += std::abs(rho(p, q));
  return sum;
}

CoherenceResult cyclic_equivalence_check(std::size_t n, const CVector& phi) {
  if (n < 2) throw InvalidInput("cyclic_equivalence_check: need n >= 2");
  if (phi.dim() != n) throw InvalidInput("cyclic_equivalence_check: state dimension mismatch");
  if (std::abs(phi.norm() - 1.0) > tol::hermitian) {
    throw InvalidInput("cyclic_equivalence_check: state not normalized");
  }

  const GroupPtr group = cyclic_group(n);
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  const Representation rep = direct_sum_rep(group, labels);

  CoherenceResult out;
  out.basis_dim = n;
  const double ps = success_probability_pure(rep, phi);
  out.ps_minus_guess = ps - 1.0 / static_cast<double>(n);
  out.c_l1 = l1_coherence(outer(phi, phi), n);
  out.ratio_check = static_cast<double>(n) * out.ps_minus_guess - out.c_l1;
  return out;
}

}  // namespace gasym
