#pragma once

#include <cstddef>

namespace gasym {

// Numeric tolerances used throughout. The tight ones (1e-10 .. 1e-14) guard
// arithmetic identities; the loose ones absorb iterative truncation.
namespace tol {

inline constexpr double hermitian = 1e-10;    // symmetry pre-checks
inline constexpr double eigen = 1e-10;        // eigendecomposition residuals
inline constexpr double psd_clamp = 1e-10;    // eigenvalues above -psd_clamp count as >= 0
inline constexpr double structural = 1e-9;    // POVM completeness / PSD checks
inline constexpr double solver = 1e-6;        // iterative solver vs closed form
inline constexpr double certificate = 1e-7;   // optimality certificate floor
inline constexpr double normalized = 1e-12;   // unit-vector check
inline constexpr double multiplicity = 1e-6;  // character sums must be this close to an integer
inline constexpr double pinv_cutoff = 1e-12;  // eigenvalues below this are treated as exact zeros

}  // namespace tol

/// The user-overridable subset of the tolerances (CLI `--tolerance KEY=VAL`).
struct Tolerances {
  double structural = tol::structural;
  double solver = tol::solver;
  double certificate = tol::certificate;
};

/// Iteration limits for the minimum-error solver.
struct SolverOptions {
  std::size_t max_iterations = 10000;
  double step_tol = 1e-12;     // stop when the success probability moves less than this
  double pinv_cutoff = tol::pinv_cutoff;
  double certificate_tol = tol::certificate;
};

}  // namespace gasym
