#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include "gasym/discrimination.hpp"
#include "gasym/rng.hpp"

namespace gasym {

/// N normalized ancilla vectors marking the invariant subspaces, with their
/// Gram matrix gram(i, j) = <eta_i | eta_j>.
struct TagEnsemble {
  std::size_t n = 0;
  std::size_t amb_dim = 0;
  std::vector<CVector> tags;
  CMatrix gram;

  double max_abs_overlap() const;
};

TagEnsemble make_tag_ensemble(std::vector<CVector> tags);

/// The first n basis vectors of an amb_dim-dimensional ancilla (amb_dim 0
/// defaults to n).
TagEnsemble orthogonal_tags(std::size_t n, std::size_t amb_dim = 0);
/// All tags equal to the first basis vector.
TagEnsemble identical_tags(std::size_t n, std::size_t amb_dim = 1);
/// Tags drawn as normalized complex-normal vectors.
TagEnsemble random_tags(std::size_t n, std::size_t amb_dim, SampleRng& rng);

/// System state (1/sqrt N) sum_p |u_p>|eta_p> with one normalized component
/// per occurring invariant subspace.
struct TaggedState {
  Representation rep;
  IsotypicDecomposition dec;
  std::vector<CVector> unit_components;
  TagEnsemble tags;
  CVector joint;

  std::size_t n() const { return tags.n; }
  std::size_t system_dim() const { return rep.dim; }
  std::size_t ancilla_dim() const { return tags.amb_dim; }
};

TaggedState build_tagged_state(const Representation& rep, std::vector<CVector> unit_components,
                               TagEnsemble tags);

/// Canonical per-subspace components: the deterministic basis vector of each
/// occurring subspace, in label order.
std::vector<CVector> default_unit_components(const IsotypicDecomposition& dec);

/// rho_g = U(g) rho_e U(g)^dagger with
/// rho_e = (1/N) sum_{p,p'} <eta_p'|eta_p> |u_p><u_p'|.
CMatrix reduced_system_state(const TaggedState& ts, std::size_t g);

/// rho_A = (1/N) sum_p |eta_p><eta_p|, independent of any applied channel.
CMatrix reduced_ancilla_state(const TaggedState& ts);

/// (U(g) x 1) |Psi>.
CVector apply_channel(const TaggedState& ts, std::size_t g);

CMatrix partial_trace_ancilla(const CMatrix& joint_density, std::size_t system_dim,
                              std::size_t ancilla_dim);
CMatrix partial_trace_system(const CMatrix& joint_density, std::size_t system_dim,
                             std::size_t ancilla_dim);

/// Channel-discrimination probability at orthogonal tags,
/// D = (1/(N|G|)) sum_p d_p; the floor of the achievable values.
double baseline_D(const Representation& rep);
double baseline_D(const IsotypicDecomposition& dec);

/// Upper bound on the squared pair-vector norms:
/// 1 + max_{p != p'} max(N^2 d_p d_p' / |G|^2 - 1, 0). Needs N >= 2.
double m_tilde(const Representation& rep);
double m_tilde(const IsotypicDecomposition& dec);

/// (1/(N|G|)) sum_{p,p'} sqrt(d_p d_p') |<eta_p'|eta_p>|; no covariant
/// measurement on the reduced states can beat this.
double channel_disc_bound(const TaggedState& ts);

struct ChannelDiscResult {
  double p_ug = 0.0;               // max of the two routes below
  double rank_one_value = 0.0;     // best rank-one covariant seed, phases optimized
  double solver_value = 0.0;       // iterative solver on the orbit, covariantized
  std::vector<double> phases;      // optimized subspace phases of the rank-one seed
  bool certified = false;          // solver certificate passed
};

/// Achieved channel-discrimination probability: the larger of (a) the best
/// rank-one covariant seed over the N-1 free subspace phases (coordinate
/// ascent on the exact per-coordinate maximizer, seeded by anchored phase
/// alignment) and (b) the general minimum-error solver on the orbit followed
/// by covariantization.
ChannelDiscResult channel_disc_achieved(const TaggedState& ts, const SolverOptions& options = {});

/// 1/N + (1/N^2) sum_{p != p'} sqrt(1 - |<eta_p|eta_p'>|^2). Needs N >= 2.
double tag_disc_bound(const TagEnsemble& tags);

struct TagDiscResult {
  double p_hp = 0.0;
  bool certified = false;
};

/// Optimal minimum-error probability of identifying the tag in the uniform
/// ensemble: closed form for N = 2, iterative solver with certificate above.
TagDiscResult tag_disc_achieved(const TagEnsemble& tags, const SolverOptions& options = {});

struct PairDiagnostic {
  int label_a = 0;
  int label_b = 0;
  double v_norm = 0.0;  // || v_pp' ||
};

/// All scalars of the duality relation
/// (P_Ug - D)^2 + (P_Hp - 1/N)^2 <= M~ (1 - 1/N)^2.
struct DualityReport {
  std::size_t n_subspaces = 0;
  std::size_t amb_dim = 0;
  double max_abs_overlap = 0.0;
  double d_baseline = 0.0;
  double m_tilde = 0.0;
  double p_ug_bound = 0.0;
  double p_ug_achieved = 0.0;
  double p_hp_bound = 0.0;
  double p_hp_achieved = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  std::vector<double> phases;
  std::vector<PairDiagnostic> v_norms;
  bool certified = false;
};

/// Assembles the full report from achieved (optimal) values and verifies the
/// inequality; slack below -1e-9 throws InequalityViolation, since the
/// relation is a theorem and a violation means an implementation bug.
DualityReport duality_report(const TaggedState& ts, const SolverOptions& options = {},
                             double slack_tol = tol::structural);

struct SweepOptions {
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::size_t amb_dim = 0;  // 0 -> number of subspaces
  std::optional<std::vector<CVector>> unit_components;
  unsigned threads = 0;  // 0 -> hardware concurrency
  SolverOptions solver;
};

/// Randomized verification sweep. Sample k draws its tags from an RNG derived
/// from (seed, k), so the result vector is identical for any worker count.
std::vector<DualityReport> random_tag_sweep(const Representation& rep, const SweepOptions& opt);

/// CSV emission; columns (in order): sample_id, seed, n_subspaces, amb_dim,
/// max_abs_overlap, p_ug_bound, p_ug_achieved, p_hp_bound, p_hp_achieved,
/// d_baseline, m_tilde, lhs, rhs, slack, certified. Floats carry 17
/// significant digits.
void write_sweep_csv(std::ostream& out, const std::vector<DualityReport>& reports,
                     std::uint64_t seed);

}  // namespace gasym
