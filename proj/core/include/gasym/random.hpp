#pragma once

#include <vector>

#include "gasym/numerics.hpp"
#include "gasym/rng.hpp"

namespace gasym {

// Deterministic random objects for property checks and randomized sweeps.

inline CVector random_unit_vector(SampleRng& rng, std::size_t dim) {
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = rng.complex_normal();
  return v.normalized();
}

inline CMatrix random_matrix(SampleRng& rng, std::size_t rows, std::size_t cols) {
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.complex_normal();
  return m;
}

/// Random Hermitian matrix with entries bounded by 1 in modulus.
inline CMatrix random_hermitian(SampleRng& rng, std::size_t n) {
  CMatrix m = hermitize(random_matrix(rng, n, n));
  const double scale = m.max_abs();
  if (scale > 0.0) m *= cdouble(1.0 / scale);
  return m;
}

/// Random PSD matrix built as A^dagger A, scaled to max_abs <= 1.
inline CMatrix random_psd(SampleRng& rng, std::size_t n) {
  const CMatrix a = random_matrix(rng, n, n);
  CMatrix m = hermitize(a.adjoint() * a);
  const double scale = m.max_abs();
  if (scale > 0.0) m *= cdouble(1.0 / scale);
  return m;
}

/// Random full-rank density matrix (A^dagger A normalized to unit trace).
inline CMatrix random_density(SampleRng& rng, std::size_t n) {
  const CMatrix a = random_matrix(rng, n, n);
  CMatrix m = hermitize(a.adjoint() * a);
  m *= cdouble(1.0 / m.trace().real());
  return m;
}

/// Random valid POVM: S^{-1/2} A_k S^{-1/2} for random PSD A_k.
inline std::vector<CMatrix> random_povm_elements(SampleRng& rng, std::size_t dim,
                                                 std::size_t count) {
  std::vector<CMatrix> raw;
  raw.reserve(count);
  CMatrix total(dim, dim);
  for (std::size_t k = 0; k < count; ++k) {
    const CMatrix a = random_matrix(rng, dim, dim);
    raw.push_back(hermitize(a.adjoint() * a));
    total += raw.back();
  }
  const PinvSqrt w = psd_pinv_sqrt(total);
  std::vector<CMatrix> out;
  out.reserve(count);
  for (auto& a : raw) out.push_back(hermitize(w.inv_sqrt * a * w.inv_sqrt));
  return out;
}

}  // namespace gasym
