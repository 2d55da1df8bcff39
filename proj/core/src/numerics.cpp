#include "gasym/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gasym {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  require_same_shape(*this, o, "add");
  CMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  require_same_shape(*this, o, "sub");
  CMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "sub");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cdouble s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_) throw DimensionMismatch("matmul: inner dimensions differ");
  CMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const cdouble aik = (*this)(i, k);
      if (aik == cdouble{}) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        r(i, j) += aik * o(k, j);
      }
    }
  }
  return r;
}

CMatrix CMatrix::operator*(cdouble s) const {
  CMatrix r = *this;
  r *= s;
  return r;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

CMatrix CMatrix::transpose() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

CMatrix CMatrix::conjugate() const {
  CMatrix r = *this;
  for (auto& x : r.data_) x = std::conj(x);
  return r;
}

cdouble CMatrix::trace() const {
  if (!is_square()) throw DimensionMismatch("trace: matrix not square");
  cdouble t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

double CMatrix::offdiag_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j) s += std::norm((*this)(i, j));
  return std::sqrt(s);
}

bool CMatrix::is_hermitian(double tolerance) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tolerance) return false;
    }
  }
  return true;
}

bool CMatrix::is_finite() const {
  for (const auto& x : data_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

CVector CVector::basis(std::size_t dim, std::size_t index) {
  CVector v(dim);
  v[index] = 1.0;
  return v;
}

CVector CVector::operator+(const CVector& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("vector add: dimension mismatch");
  CVector r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

CVector CVector::operator-(const CVector& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("vector sub: dimension mismatch");
  CVector r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

CVector CVector::operator*(cdouble s) const {
  CVector r = *this;
  r *= s;
  return r;
}

CVector& CVector::operator+=(const CVector& o) {
  if (dim() != o.dim()) throw DimensionMismatch("vector add: dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CVector& CVector::operator*=(cdouble s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double CVector::norm() const {
  double s = 0.0;
  for (const auto& x : data_) s += std::norm(x);
  return std::sqrt(s);
}

CVector CVector::normalized() const {
  const double n = norm();
  if (n < 1e-300) throw InvalidInput("normalized: zero vector");
  return *this * cdouble(1.0 / n);
}

bool CVector::is_finite() const {
  for (const auto& x : data_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
  }
  return true;
}

cdouble inner(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("inner: dimension mismatch");
  cdouble s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

CMatrix outer(const CVector& a, const CVector& b) {
  CMatrix m(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CVector operator*(const CMatrix& m, const CVector& v) {
  if (m.cols() != v.dim()) throw DimensionMismatch("matvec: dimension mismatch");
  CVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    cdouble s = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

CMatrix hermitize(const CMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("hermitize: matrix not square");
  CMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      r(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    }
    r(i, i) = cdouble(r(i, i).real(), 0.0);
  }
  return r;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

double max_abs_diff(const CVector& a, const CVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

namespace {

// One two-sided Jacobi rotation zeroing A(p,q). A is Hermitian with exact
// conjugate symmetry (maintained by the caller); V accumulates eigenvectors.
void jacobi_rotate(CMatrix& a, CMatrix& v, std::size_t p, std::size_t q) {
  const cdouble apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;

  const cdouble phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  // small-magnitude root of t^2 - 2 tau t - 1 = 0
  double t;
  if (tau >= 0.0) {
    t = -1.0 / (tau + std::sqrt(tau * tau + 1.0));
  } else {
    t = 1.0 / (-tau + std::sqrt(tau * tau + 1.0));
  }
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cdouble s_phase = s * phase;             // s e^{i phi}
  const cdouble s_phase_conj = std::conj(s_phase);

  const std::size_t n = a.rows();
  // A <- V^dagger A V ; columns first, then rows.
  for (std::size_t i = 0; i < n; ++i) {
    const cdouble aip = a(i, p);
    const cdouble aiq = a(i, q);
    a(i, p) = c * aip + s_phase_conj * aiq;
    a(i, q) = -s_phase * aip + c * aiq;
  }
  for (std::size_t j = 0; j < n; ++j) {
    const cdouble apj = a(p, j);
    const cdouble aqj = a(q, j);
    a(p, j) = c * apj + s_phase * aqj;
    a(q, j) = -s_phase_conj * apj + c * aqj;
  }
  // Re-impose exact Hermitian structure on the touched entries.
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cdouble(a(p, p).real(), 0.0);
  a(q, q) = cdouble(a(q, q).real(), 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    const cdouble vip = v(i, p);
    const cdouble viq = v(i, q);
    v(i, p) = c * vip + s_phase_conj * viq;
    v(i, q) = -s_phase * vip + c * viq;
  }
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& m) {
  if (!m.is_square()) throw NotHermitian("hermitian_eigensystem: matrix not square");
  if (!m.is_finite()) throw InvalidInput("hermitian_eigensystem: non-finite entries");
  if (max_abs_diff(m, m.adjoint()) > tol::hermitian) {
    throw NotHermitian("hermitian_eigensystem: ||m - m^dagger||_max exceeds 1e-10");
  }

  const std::size_t n = m.rows();
  CMatrix a = hermitize(m);
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  const double target = 1e-14 * scale;
  constexpr int kMaxSweeps = 100;

  bool converged = (n == 1) || (a.offdiag_norm() <= target);
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    converged = a.offdiag_norm() <= target;
  }
  if (!converged) throw NoConvergence("hermitian_eigensystem: 100 Jacobi sweeps exhausted");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem es;
  es.eigenvalues.resize(n);
  es.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.eigenvectors(i, k) = v(i, order[k]);
  }
  return es;
}

double psd_floor(const CMatrix& m) {
  return hermitian_eigensystem(m).eigenvalues.front();
}

CMatrix psd_sqrt(const CMatrix& m) {
  const EigenSystem es = hermitian_eigensystem(m);
  const std::size_t n = m.rows();
  if (es.eigenvalues.front() < -tol::psd_clamp) {
    throw NotPsd("psd_sqrt: minimum eigenvalue below -1e-10");
  }
  CMatrix r(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = std::max(es.eigenvalues[k], 0.0);
    const double s = std::sqrt(lam);
    if (s == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble vik = es.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        r(i, j) += s * vik * std::conj(es.eigenvectors(j, k));
      }
    }
  }
  return hermitize(r);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cdouble aij = a(i, j);
      if (aij == cdouble{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector r(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < b.dim(); ++k) r[i * b.dim() + k] = a[i] * b[k];
  return r;
}

PinvSqrt psd_pinv_sqrt(const CMatrix& m, double cutoff) {
  const EigenSystem es = hermitian_eigensystem(m);
  const std::size_t n = m.rows();
  PinvSqrt out;
  out.inv_sqrt = CMatrix(n, n);
  out.support = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = es.eigenvalues[k];
    if (lam <= cutoff) continue;
    const double w = 1.0 / std::sqrt(lam);
    for (std::size_t i = 0; i < n; ++i) {
      const cdouble vik = es.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        const cdouble proj = vik * std::conj(es.eigenvectors(j, k));
        out.inv_sqrt(i, j) += w * proj;
        out.support(i, j) += proj;
      }
    }
  }
  out.inv_sqrt = hermitize(out.inv_sqrt);
  out.support = hermitize(out.support);
  return out;
}

}  // namespace gasym
