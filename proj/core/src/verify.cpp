#include "gasym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "gasym/coherence.hpp"
#include "gasym/random.hpp"

namespace gasym {

namespace {

struct Battery {
  const VerifyOptions& opt;
  GroupPtr group;
  Representation rep;
  IsotypicDecomposition dec;
  std::vector<CheckResult> results;
  std::uint64_t stream = 0;

  SampleRng rng() { return SampleRng(opt.seed, stream++); }

  std::size_t trials(std::size_t fallback) const {
    return opt.trials > 0 ? opt.trials : fallback;
  }

  void record(const std::string& name, double residual, double tolerance,
              std::string detail = {}) {
    results.push_back({name, residual <= tolerance, residual, tolerance, std::move(detail)});
  }

  void record_skip(const std::string& name, std::string why) {
    results.push_back({name, true, 0.0, 0.0, std::move(why)});
  }

  // --- numerics -------------------------------------------------------------

  void numerics_eigen() {
    auto r = rng();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials(40); ++t) {
      const std::size_t dim = 2 + t % 7;
      const CMatrix m = random_hermitian(r, dim);
      const EigenSystem es = hermitian_eigensystem(m);
      CMatrix rebuilt(dim, dim);
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j)
            rebuilt(i, j) += es.eigenvalues[k] * es.eigenvectors(i, k) *
                             std::conj(es.eigenvectors(j, k));
      worst = std::max(worst, max_abs_diff(m, rebuilt));
    }
    record("numerics.eigen_reconstruction", worst, tol::eigen);
  }

  void numerics_psd_sqrt() {
    auto r = rng();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials(40); ++t) {
      const CMatrix m = random_psd(r, 2 + t % 7);
      const CMatrix root = psd_sqrt(m);
      worst = std::max(worst, max_abs_diff(root * root, m));
    }
    record("numerics.psd_sqrt", worst, 1e-9);
  }

  void numerics_kron() {
    auto r = rng();
    double worst_assoc = 0.0;
    double worst_trace = 0.0;
    for (std::size_t t = 0; t < trials(20); ++t) {
      // Gaussian-integer entries keep all products exact, so associativity
      // must hold bit for bit.
      auto int_matrix = [&](std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cdouble(static_cast<double>(r.next_u64() % 5) - 2.0,
                              static_cast<double>(r.next_u64() % 5) - 2.0);
        return m;
      };
      const CMatrix a = int_matrix(2), b = int_matrix(3), c = int_matrix(2);
      worst_assoc = std::max(worst_assoc, max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))));
      const CMatrix x = random_matrix(r, 3, 3), y = random_matrix(r, 2, 2);
      worst_trace = std::max(
          worst_trace, std::abs(kron(x, y).trace() - x.trace() * y.trace()));
    }
    record("numerics.kron_associative", worst_assoc, 0.0);
    record("numerics.kron_trace", worst_trace, 1e-12);
  }

  // --- groups ---------------------------------------------------------------

  void groups_structure() {
    try {
      validate_group(*group);
      record("groups.structure", 0.0, 0.0);
    } catch (const Error& e) {
      results.push_back({"groups.structure", false, 1.0, 0.0, e.what()});
    }
  }

  void groups_grand_orthogonality() {
    if (group->order > 12) {
      record_skip("groups.grand_orthogonality", "skipped: order above 12");
      return;
    }
    const double order = static_cast<double>(group->order);
    double worst = 0.0;
    for (const auto& irp : group->irreps) {
      for (const auto& irq : group->irreps) {
        for (std::size_t i = 0; i < irp.dim; ++i)
          for (std::size_t j = 0; j < irp.dim; ++j)
            for (std::size_t k = 0; k < irq.dim; ++k)
              for (std::size_t l = 0; l < irq.dim; ++l) {
                cdouble s = 0.0;
                for (std::size_t g = 0; g < group->order; ++g) {
                  s += irp.matrices[g](i, j) * std::conj(irq.matrices[g](k, l));
                }
                s *= static_cast<double>(irp.dim) / order;
                const double expect =
                    (irp.label == irq.label && i == k && j == l) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(s - cdouble(expect)));
              }
      }
    }
    record("groups.grand_orthogonality", worst, 1e-10);
  }

  void groups_tensor_character() {
    double worst = 0.0;
    for (const auto& irp : group->irreps) {
      for (const auto& irq : group->irreps) {
        const Representation prod =
            tensor_product_rep(irrep_rep(group, irp.label), irrep_rep(group, irq.label));
        const auto chi = prod.character();
        const auto cp = irp.character();
        const auto cq = irq.character();
        for (std::size_t g = 0; g < group->order; ++g) {
          worst = std::max(worst, std::abs(chi[g] - cp[g] * cq[g]));
        }
      }
    }
    record("groups.tensor_character", worst, 1e-12);
  }

  // --- decompose --------------------------------------------------------------

  void decompose_projectors() {
    double worst = 0.0;
    CMatrix sum(rep.dim, rep.dim);
    for (std::size_t i = 0; i < dec.n_present(); ++i) {
      const CMatrix& p = dec.projectors[i];
      worst = std::max(worst, max_abs_diff(p, p.adjoint()));
      worst = std::max(worst, max_abs_diff(p * p, p));
      const double expected_trace = static_cast<double>(
          dec.multiplicity(dec.present_labels[i]) * dec.irrep_dim(dec.present_labels[i]));
      worst = std::max(worst, std::abs(p.trace().real() - expected_trace));
      for (std::size_t j = 0; j < dec.n_present(); ++j) {
        if (i == j) continue;
        worst = std::max(worst, (p * dec.projectors[j]).max_abs());
      }
      for (const auto& u : rep.matrices) {
        worst = std::max(worst, max_abs_diff(p * u, u * p));
      }
      sum += p;
    }
    worst = std::max(worst, max_abs_diff(sum, CMatrix::identity(rep.dim)));
    record("decompose.projectors", worst, tol::eigen);
  }

  void decompose_averaging_identity() {
    auto r = rng();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials(20); ++t) {
      CVector x = random_unit_vector(r, rep.dim) * cdouble(0.5 + r.uniform01());
      const CMatrix averaged = twirl(rep, outer(x, x));
      CMatrix expect(rep.dim, rep.dim);
      for (std::size_t i = 0; i < dec.n_present(); ++i) {
        const double np = (dec.projectors[i] * x).norm();
        const double dp = static_cast<double>(dec.irrep_dim(dec.present_labels[i]));
        expect += dec.projectors[i] * cdouble(np * np / dp);
      }
      worst = std::max(worst, max_abs_diff(averaged, expect));
    }
    record("decompose.averaging_identity", worst, tol::eigen);
  }

  void decompose_component_norms() {
    auto r = rng();
    double worst = 0.0;
    for (std::size_t t = 0; t < trials(20); ++t) {
      const CVector phi = random_unit_vector(r, rep.dim);
      double s = 0.0;
      for (const auto& [label, norm] : component_norms(dec, phi)) s += norm * norm;
      worst = std::max(worst, std::abs(s - 1.0));
    }
    record("decompose.component_norms", worst, tol::eigen);
  }

  // --- discrimination ---------------------------------------------------------

  std::vector<CovariantPovm> sample_covariant_seeds(SampleRng& r, std::size_t count) {
    std::vector<CovariantPovm> seeds;
    for (std::size_t t = 0; t < count; ++t) {
      const CVector chi = random_unit_vector(r, rep.dim);
      std::vector<double> phases(dec.n_present());
      for (auto& th : phases) th = 2.0 * std::numbers::pi * r.uniform01();
      seeds.push_back(build_covariant_povm(rep, chi, phases));
      // A general (not rank-one) covariant seed via covariantization.
      const CVector psi = random_unit_vector(r, rep.dim);
      const auto orbit = group_orbit(rep, outer(psi, psi));
      const auto povm = make_povm(random_povm_elements(r, rep.dim, rep.group->order));
      seeds.push_back(covariantize_povm(rep, povm, orbit));
    }
    return seeds;
  }

  void discrimination_seed_bound() {
    auto r = rng();
    double worst_bound = -1.0;
    double worst_trace = 0.0;
    const double order = static_cast<double>(group->order);
    auto seeds = sample_covariant_seeds(r, trials(10));
    for (const auto& seed : seeds) {
      const CVector phi = random_unit_vector(r, rep.dim);
      const double lhs = (outer(phi, phi) * seed.seed).trace().real();
      const double bound = success_probability_pure(dec, phi);
      worst_bound = std::max(worst_bound, lhs - bound);
      for (std::size_t i = 0; i < dec.n_present(); ++i) {
        const CMatrix& p = dec.projectors[i];
        const double tr = (p * seed.seed * p).trace().real();
        const double dp = static_cast<double>(dec.irrep_dim(dec.present_labels[i]));
        worst_trace = std::max(worst_trace, std::abs(tr - dp / order));
      }
    }
    record("discrimination.seed_bound", std::max(worst_bound, 0.0), tol::structural);
    record("discrimination.seed_trace", worst_trace, tol::structural);
  }

  void discrimination_solver_vs_closed_form() {
    auto r = rng();
    double worst_gap = 0.0;
    double worst_cert = 0.0;
    for (std::size_t t = 0; t < trials(15); ++t) {
      const CVector phi = random_unit_vector(r, rep.dim);
      const double closed = success_probability_pure(dec, phi);
      const auto orbit = group_orbit(rep, outer(phi, phi));
      const std::vector<double> uniform(orbit.size(), 1.0 / static_cast<double>(orbit.size()));
      const DiscriminationResult res = solve_min_error(orbit, uniform, opt.solver);
      worst_gap = std::max(worst_gap, std::abs(res.success_probability - closed));
      worst_cert = std::max(worst_cert, -res.certificate_floor);
    }
    record("discrimination.solver_matches_closed_form", worst_gap, opt.tolerances.solver);
    record("discrimination.solver_certificate", std::max(worst_cert, 0.0),
           opt.tolerances.certificate);
  }

  double orbit_ps(const CMatrix& rho) {
    const auto orbit = group_orbit(rep, rho);
    const std::vector<double> uniform(orbit.size(), 1.0 / static_cast<double>(orbit.size()));
    return solve_min_error(orbit, uniform, opt.solver).success_probability;
  }

  void discrimination_monotone_and_convex() {
    auto r = rng();
    double worst_mono = 0.0;
    for (std::size_t t = 0; t < trials(10); ++t) {
      CMatrix base;
      if (t % 2 == 0) {
        const CVector v = random_unit_vector(r, rep.dim);
        base = outer(v, v);
      } else {
        base = random_density(r, rep.dim);
      }
      const double ps = orbit_ps(base);
      const CMatrix averaged = twirl(rep, base);
      for (const double lam : {0.25, 0.5, 0.75, 1.0}) {
        const CMatrix mixed = hermitize(averaged * cdouble(lam) + base * cdouble(1.0 - lam));
        worst_mono = std::max(worst_mono, orbit_ps(mixed) - ps);
      }
    }
    record("discrimination.twirl_monotonicity", std::max(worst_mono, 0.0),
           opt.tolerances.solver);

    double worst_convex = 0.0;
    for (std::size_t t = 0; t < trials(10); ++t) {
      const std::size_t terms = 2 + t % 2;
      std::vector<CMatrix> parts;
      std::vector<double> weights;
      double left = 1.0;
      for (std::size_t i = 0; i < terms; ++i) {
        parts.push_back(random_density(r, rep.dim));
        const double w = (i + 1 == terms) ? left : left * (0.3 + 0.4 * r.uniform01());
        weights.push_back(w);
        left -= w;
      }
      CMatrix mix(rep.dim, rep.dim);
      double rhs = 0.0;
      for (std::size_t i = 0; i < terms; ++i) {
        mix += parts[i] * cdouble(weights[i]);
        rhs += weights[i] * orbit_ps(parts[i]);
      }
      worst_convex = std::max(worst_convex, orbit_ps(hermitize(mix)) - rhs);
    }
    record("discrimination.convexity", std::max(worst_convex, 0.0), opt.tolerances.solver);
  }

  void discrimination_covariantization() {
    auto r = rng();
    double worst_pres = 0.0;
    double worst_comp = 0.0;
    for (std::size_t t = 0; t < trials(10); ++t) {
      const CVector psi = random_unit_vector(r, rep.dim);
      const auto orbit = group_orbit(rep, outer(psi, psi));
      const std::vector<double> uniform(orbit.size(), 1.0 / static_cast<double>(orbit.size()));
      const Povm povm = make_povm(random_povm_elements(r, rep.dim, rep.group->order));
      const double before = povm_success(orbit, uniform, povm);
      const CovariantPovm cov = covariantize_povm(rep, povm, orbit);
      const Povm expanded = cov.expand();
      const double after = povm_success(orbit, uniform, expanded);
      worst_pres = std::max(worst_pres, std::abs(before - after));
      CMatrix sum(rep.dim, rep.dim);
      for (const auto& e : expanded.elements) sum += e;
      worst_comp = std::max(worst_comp, max_abs_diff(sum, CMatrix::identity(rep.dim)));
    }
    record("discrimination.covariantization_preserves", worst_pres, 1e-10);
    record("discrimination.covariantization_complete", worst_comp, opt.tolerances.structural);
  }

  void povm_completeness() {
    const auto optimal = optimal_pure_state(dec);
    const CVector phi = state_from_weights(dec, optimal.weights);
    CovariantPovm cov = build_covariant_povm(rep, phi, {});
    if (opt.perturb != 0.0) {
      cov.seed += CMatrix::identity(rep.dim) * cdouble(opt.perturb);
    }
    CMatrix sum(rep.dim, rep.dim);
    for (std::size_t g = 0; g < group->order; ++g) sum += cov.element(g);
    record("povm.completeness", max_abs_diff(sum, CMatrix::identity(rep.dim)),
           opt.tolerances.structural,
           opt.perturb != 0.0 ? "seed perturbed by " + std::to_string(opt.perturb) : "");
  }

  // --- duality ------------------------------------------------------------------

  void duality_checks() {
    if (dec.n_present() < 2) {
      record_skip("duality.inequality", "skipped: representation has a single subspace");
      return;
    }
    SweepOptions sweep;
    sweep.samples = trials(40);
    sweep.seed = opt.seed ^ 0xD0A11Cull;
    sweep.threads = opt.threads;
    sweep.solver = opt.solver;
    double min_slack = std::numeric_limits<double>::infinity();
    double worst_chain = 0.0;
    try {
      const auto reports = random_tag_sweep(rep, sweep);
      for (const auto& rep_row : reports) {
        min_slack = std::min(min_slack, rep_row.slack);
        worst_chain = std::max(worst_chain, rep_row.d_baseline - rep_row.p_ug_achieved);
        worst_chain = std::max(worst_chain, rep_row.p_ug_achieved - rep_row.p_ug_bound);
        worst_chain =
            std::max(worst_chain, 1.0 / static_cast<double>(rep_row.n_subspaces) -
                                      rep_row.p_hp_achieved);
        worst_chain = std::max(worst_chain, rep_row.p_hp_achieved - rep_row.p_hp_bound);
      }
      record("duality.inequality", std::max(-min_slack, 0.0), opt.tolerances.structural);
      record("duality.order_chain", std::max(worst_chain, 0.0), opt.tolerances.structural);
    } catch (const Error& e) {
      results.push_back({"duality.inequality", false, 1.0, 0.0, e.what()});
    }

    auto r = rng();
    double worst_anc = 0.0;
    double worst_commute = 0.0;
    for (std::size_t t = 0; t < trials(10); ++t) {
      TagEnsemble tags = random_tags(dec.n_present(), dec.n_present(), r);
      const TaggedState ts = build_tagged_state(rep, default_unit_components(dec), tags);
      const CMatrix rho_a = reduced_ancilla_state(ts);
      for (std::size_t g = 0; g < group->order; ++g) {
        const CVector psi_g = apply_channel(ts, g);
        worst_anc = std::max(
            worst_anc, max_abs_diff(partial_trace_system(outer(psi_g, psi_g), ts.system_dim(),
                                                         ts.ancilla_dim()),
                                    rho_a));
        // Tag after the channel: components U(g) u_p with the same tags.
        std::vector<CVector> rotated;
        for (const auto& u : ts.unit_components) rotated.push_back(rep.matrices[g] * u);
        const TaggedState ts_after = build_tagged_state(rep, rotated, ts.tags);
        worst_commute = std::max(worst_commute, max_abs_diff(ts_after.joint, psi_g));
      }
    }
    record("duality.ancilla_invariance", worst_anc, 1e-12);
    record("duality.tag_channel_commute", worst_commute, 1e-12);

    // Tags interpolating from identical (c = 1) to orthogonal (c = 0) in an
    // (N+1)-dimensional ancilla: common component sqrt(c), private sqrt(1-c).
    const std::size_t n = dec.n_present();
    double prev_php = -1.0;
    double prev_bound = std::numeric_limits<double>::infinity();
    double worst_interp = 0.0;
    for (const double c : {1.0, 0.75, 0.5, 0.25, 0.0}) {
      std::vector<CVector> tags;
      for (std::size_t p = 0; p < n; ++p) {
        CVector v(n + 1);
        v[p] = std::sqrt(1.0 - c);
        v[n] = std::sqrt(c);
        tags.push_back(std::move(v));
      }
      const TaggedState ts =
          build_tagged_state(rep, default_unit_components(dec), make_tag_ensemble(tags));
      const double php = tag_disc_achieved(ts.tags, opt.solver).p_hp;
      const double bound = channel_disc_bound(ts);
      if (prev_php >= 0.0) {
        worst_interp = std::max(worst_interp, prev_php - php);   // must not decrease
        worst_interp = std::max(worst_interp, bound - prev_bound);  // must not increase
      }
      prev_php = php;
      prev_bound = bound;
    }
    record("duality.monotone_interpolation", std::max(worst_interp, 0.0),
           opt.tolerances.structural);
  }

  // --- coherence ------------------------------------------------------------------

  void coherence_checks() {
    auto r = rng();
    double worst_ratio = 0.0;
    for (std::size_t n = 2; n <= 8; ++n) {
      for (std::size_t t = 0; t < trials(20); ++t) {
        const CVector phi = random_unit_vector(r, n);
        worst_ratio = std::max(worst_ratio,
                               std::abs(cyclic_equivalence_check(n, phi).ratio_check));
      }
    }
    record("coherence.cyclic_equivalence", worst_ratio, 1e-10);

    double worst_phase = 0.0;
    double worst_zero = 0.0;
    for (std::size_t t = 0; t < trials(10); ++t) {
      const std::size_t n = 2 + t % 4;
      const CMatrix rho = random_density(r, n);
      const double before = l1_coherence(rho, n);
      CMatrix diag(n, n);
      for (std::size_t i = 0; i < n; ++i) diag(i, i) = std::polar(1.0, 2.0 * r.uniform01());
      worst_phase = std::max(
          worst_phase, std::abs(l1_coherence(hermitize(diag * rho * diag.adjoint()), n) - before));
      CMatrix diagonal(n, n);
      for (std::size_t i = 0; i < n; ++i) diagonal(i, i) = rho(i, i);
      diagonal *= cdouble(1.0 / diagonal.trace().real());
      worst_zero = std::max(worst_zero, l1_coherence(diagonal, n));
    }
    record("coherence.phase_invariance", worst_phase, 1e-12);
    record("coherence.zero_on_diagonal", worst_zero, 1e-12);
  }
};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  VerifyOptions opt = options;
  if (!opt.group) opt.group = dihedral_group(3);

  Battery b{opt};
  b.group = opt.group;
  if (opt.rep) {
    b.rep = *opt.rep;
  } else {
    std::vector<int> labels;
    for (const auto& ir : b.group->irreps) labels.push_back(ir.label);
    b.rep = direct_sum_rep(b.group, labels);
  }
  b.dec = isotypic_projectors(b.rep);

  b.numerics_eigen();
  b.numerics_psd_sqrt();
  b.numerics_kron();
  b.groups_structure();
  b.groups_grand_orthogonality();
  b.groups_tensor_character();
  b.decompose_projectors();
  b.decompose_averaging_identity();
  b.decompose_component_norms();
  b.discrimination_seed_bound();
  b.discrimination_solver_vs_closed_form();
  b.discrimination_monotone_and_convex();
  b.discrimination_covariantization();
  b.povm_completeness();
  b.duality_checks();
  b.coherence_checks();

  return b.results;
}

}  // namespace gasym
