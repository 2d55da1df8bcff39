#pragma once

#include <utility>
#include <vector>

#include "gasym/decompose.hpp"
#include "gasym/groups.hpp"
#include "gasym/tolerances.hpp"

namespace gasym {

/// A finite measurement: Hermitian PSD elements summing to the identity, one
/// per hypothesis.
struct Povm {
  std::vector<CMatrix> elements;
  std::vector<int> labels;

  std::size_t size() const { return elements.size(); }
};

Povm make_povm(std::vector<CMatrix> elements);

/// Throws InvalidPovm unless every element is PSD and the elements sum to the
/// identity, both within `tolerance`.
void validate_povm(const Povm& povm, double tolerance = tol::structural);

/// Group-covariant measurement, stored as the seed element only;
/// the element for g is U(g) seed U(g)^dagger.
struct CovariantPovm {
  CMatrix seed;
  Representation rep;

  CMatrix element(std::size_t g) const;
  Povm expand() const;
};

struct DiscriminationResult {
  Povm povm;
  double success_probability = 0.0;
  double certificate_floor = 0.0;  // min eigenvalue over the optimality operators
  std::size_t iterations = 0;
  bool converged = true;

  bool certified(double certificate_tol = tol::certificate) const {
    return converged && certificate_floor >= -certificate_tol;
  }
};

/// Average success probability sum_k p_k tr(rho_k Pi_k).
double povm_success(const std::vector<CMatrix>& states, const std::vector<double>& priors,
                    const Povm& povm);

/// Closed-form optimal success probability for discriminating the orbit
/// { U(g)|phi> } of a multiplicity-free representation with uniform priors:
/// ( sum_p sqrt(d_p/|G|) ||phi_p|| )^2.
double success_probability_pure(const Representation& rep, const CVector& phi);
double success_probability_pure(const IsotypicDecomposition& dec, const CVector& phi);

struct OptimalPureState {
  std::vector<std::pair<int, double>> weights;  // (label, ||phi_p||)
  double p_max = 0.0;                           // sum_p d_p / |G|
};

/// The component norms sqrt(d_p / sum d) that maximize the closed form, and
/// the maximum itself.
OptimalPureState optimal_pure_state(const Representation& rep);
OptimalPureState optimal_pure_state(const IsotypicDecomposition& dec);

/// Deterministic state realizing given per-subspace weights on the canonical
/// basis vector of each subspace.
CVector state_from_weights(const IsotypicDecomposition& dec,
                           const std::vector<std::pair<int, double>>& weights);

/// Robustness of asymmetry from the optimal success probability:
/// A_R = |G| p_s - 1. Values in [-1e-9, 0) are rounding of a free state and
/// clamp to zero.
double robustness_from_ps(double ps, std::size_t group_order);

/// Rank-one covariant seed |X><X| with |X_p| = sqrt(d_p/|G|), X_p along
/// phi_p with an adjustable phase per subspace. Subspaces where phi has no
/// component fall back to a deterministic basis direction so the expanded
/// family still sums to the identity.
CovariantPovm build_covariant_povm(const Representation& rep, const CVector& phi,
                                   const std::vector<double>& phases);

/// Group average Omega = (1/|G|) sum_g U(g)^dagger Pi_g U(g) of any valid
/// POVM over the orbit hypotheses. The covariant POVM seeded by Omega attains
/// exactly the success probability of the input POVM; this is verified
/// against `orbit_states` and InvalidPovm is thrown on disagreement.
CovariantPovm covariantize_povm(const Representation& rep, const Povm& povm,
                                const std::vector<CMatrix>& orbit_states);

/// Minimum-error discrimination of an arbitrary finite ensemble.
/// Two hypotheses use the closed-form optimal projective measurement; larger
/// ensembles run a fixed-point iteration seeded from the square-root
/// measurement, with the Holevo operator floor reported as an optimality
/// certificate. Hitting the iteration cap is not an error: the best iterate
/// comes back with converged = false.
DiscriminationResult solve_min_error(const std::vector<CMatrix>& states,
                                     const std::vector<double>& priors,
                                     const SolverOptions& options = {});

/// min over hypotheses h of the minimum eigenvalue of
/// herm( sum_k p_k rho_k Pi_k ) - p_h rho_h; nonnegative (within tolerance)
/// exactly when the POVM is minimum-error optimal.
double holevo_certificate(const std::vector<CMatrix>& states, const std::vector<double>& priors,
                          const Povm& povm);

/// Optimal two-hypothesis measurement (projector onto the positive part of
/// p1 rho1 - p2 rho2) and its success probability.
std::pair<double, Povm> helstrom_two(const CMatrix& rho1, const CMatrix& rho2, double p1,
                                     double p2);

/// The orbit { U(g) rho U(g)^dagger } in element order.
std::vector<CMatrix> group_orbit(const Representation& rep, const CMatrix& rho);

/// Twirl (1/|G|) sum_g U(g) rho U(g)^dagger; the canonical covariant channel.
CMatrix twirl(const Representation& rep, const CMatrix& rho);

}  // namespace gasym
