#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "gasym/errors.hpp"
#include "gasym/tolerances.hpp"

namespace gasym {

using cdouble = std::complex<double>;

/// Dense complex matrix, row-major. Carrier spaces of finite-group
/// representations are tiny (dim <= ~64), so everything is plain loops
/// over contiguous storage; no blocking, no sparsity.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix zero(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cdouble& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator*(cdouble s) const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cdouble s);

  CMatrix adjoint() const;
  CMatrix transpose() const;
  CMatrix conjugate() const;

  cdouble trace() const;
  double max_abs() const;
  double frobenius_norm() const;
  /// Frobenius norm of the off-diagonal part (square matrices).
  double offdiag_norm() const;

  bool is_square() const { return rows_ == cols_ && rows_ > 0; }
  bool is_hermitian(double tolerance = tol::hermitian) const;
  bool is_finite() const;

  const std::vector<cdouble>& data() const { return data_; }
  std::vector<cdouble>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cdouble> data_;
};

inline CMatrix operator*(cdouble s, const CMatrix& m) { return m * s; }

/// Complex column vector.
class CVector {
 public:
  CVector() = default;
  explicit CVector(std::size_t dim) : data_(dim) {}
  explicit CVector(std::vector<cdouble> entries) : data_(std::move(entries)) {}

  static CVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return data_.size(); }
  cdouble& operator[](std::size_t i) { return data_[i]; }
  const cdouble& operator[](std::size_t i) const { return data_[i]; }

  CVector operator+(const CVector& o) const;
  CVector operator-(const CVector& o) const;
  CVector operator*(cdouble s) const;
  CVector& operator+=(const CVector& o);
  CVector& operator*=(cdouble s);

  double norm() const;
  /// Returns this vector scaled to unit norm. Throws InvalidInput on (near) zero input.
  CVector normalized() const;
  bool is_finite() const;

  const std::vector<cdouble>& data() const { return data_; }

 private:
  std::vector<cdouble> data_;
};

/// <a|b>, conjugate-linear in the first argument.
cdouble inner(const CVector& a, const CVector& b);
/// |a><b|
CMatrix outer(const CVector& a, const CVector& b);
/// m |v>
CVector operator*(const CMatrix& m, const CVector& v);

/// (m + m^dagger)/2 with a real diagonal.
CMatrix hermitize(const CMatrix& m);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
double max_abs_diff(const CVector& a, const CVector& b);

struct EigenSystem {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // columns, orthonormal, aligned with eigenvalues
};

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Robust and accurate at the dimensions that occur here; cost is
/// irrelevant. Convergence: off-diagonal Frobenius norm <= 1e-14 (relative to
/// the matrix scale for inputs larger than O(1)), capped at 100 sweeps.
EigenSystem hermitian_eigensystem(const CMatrix& m);

/// Minimum eigenvalue of a Hermitian matrix; callers compare against their
/// own tolerance to decide positive semidefiniteness.
double psd_floor(const CMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to zero;
/// anything lower throws NotPsd.
CMatrix psd_sqrt(const CMatrix& m);

/// Tensor (Kronecker) product, first factor is the slow index.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

struct PinvSqrt {
  CMatrix inv_sqrt;  // pseudo-inverse square root
  CMatrix support;   // projector onto the support (eigenvalues above cutoff)
};

/// Pseudo-inverse square root of a Hermitian PSD matrix. Eigenvalues at or
/// below `cutoff` are treated as exact zeros; rank-deficient inputs are the
/// normal case for pure-state ensembles.
PinvSqrt psd_pinv_sqrt(const CMatrix& m, double cutoff = tol::pinv_cutoff);

}  // namespace gasym
