#include "gasym/duality.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <thread>

namespace gasym {

double TagEnsemble::max_abs_overlap() const {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m = std::max(m, std::abs(gram(i, j)));
  return m;
}

TagEnsemble make_tag_ensemble(std::vector<CVector> tags) {
  if (tags.empty()) throw InvalidInput("make_tag_ensemble: no tags");
  TagEnsemble ens;
  ens.n = tags.size();
  ens.amb_dim = tags.front().dim();
  for (const auto& t : tags) {
    if (t.dim() != ens.amb_dim) {
      throw DimensionMismatch("make_tag_ensemble: tags must share one dimension");
    }
    if (std::abs(t.norm() - 1.0) > tol::normalized) {
      throw InvalidInput("make_tag_ensemble: tag not normalized");
    }
  }
  ens.gram = CMatrix(ens.n, ens.n);
  for (std::size_t i = 0; i < ens.n; ++i)
    for (std::size_t j = 0; j < ens.n; ++j) ens.gram(i, j) = inner(tags[i], tags[j]);
  ens.tags = std::move(tags);
  return ens;
}

TagEnsemble orthogonal_tags(std::size_t n, std::size_t amb_dim) {
  if (amb_dim == 0) amb_dim = n;
  if (amb_dim < n) throw InvalidInput("orthogonal_tags: need amb_dim >= n");
  std::vector<CVector> tags;
  tags.reserve(n);
  for (std::size_t p = 0; p < n; ++p) tags.push_back(CVector::basis(amb_dim, p));
  return make_tag_ensemble(std::move(tags));
}

TagEnsemble identical_tags(std::size_t n, std::size_t amb_dim) {
  if (amb_dim == 0) amb_dim = 1;
  std::vector<CVector> tags(n, CVector::basis(amb_dim, 0));
  return make_tag_ensemble(std::move(tags));
}

TagEnsemble random_tags(std::size_t n, std::size_t amb_dim, SampleRng& rng) {
  std::vector<CVector> tags;
  tags.reserve(n);
  for (std::size_t p = 0; p < n; ++p) {
    CVector v(amb_dim);
    for (std::size_t i = 0; i < amb_dim; ++i) v[i] = rng.complex_normal();
    tags.push_back(v.normalized());
  }
  return make_tag_ensemble(std::move(tags));
}

std::vector<CVector> default_unit_components(const IsotypicDecomposition& dec) {
  std::vector<CVector> comps;
  comps.reserve(dec.n_present());
  for (int label : dec.present_labels) comps.push_back(subspace_basis_vector(dec, label));
  return comps;
}

TaggedState build_tagged_state(const Representation& rep, std::vector<CVector> unit_components,
                               TagEnsemble tags) {
  TaggedState ts;
  ts.dec = isotypic_projectors(rep);
  assert_multiplicity_free(ts.dec);
  ts.rep = rep;

  const std::size_t n = ts.dec.n_present();
  if (tags.n != n) {
    throw CountMismatch("build_tagged_state: tag count differs from subspace count");
  }
  if (unit_components.size() != n) {
    throw CountMismatch("build_tagged_state: component count differs from subspace count");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const CVector& u = unit_components[i];
    if (u.dim() != rep.dim) {
      throw DimensionMismatch("build_tagged_state: component dimension mismatch");
    }
    if (std::abs(u.norm() - 1.0) > tol::hermitian) {
      throw InvalidInput("build_tagged_state: component not normalized");
    }
    if ((u - ts.dec.projectors[i] * u).norm() > tol::hermitian) {
      throw SubspaceViolation("build_tagged_state: component " + std::to_string(i) +
                              " leaves its invariant subspace");
    }
  }

  CVector joint(rep.dim * tags.amb_dim);
  const cdouble scale(1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t p = 0; p < n; ++p) {
    joint += kron(unit_components[p], tags.tags[p]) * scale;
  }
  ts.joint = std::move(joint);
  ts.unit_components = std::move(unit_components);
  ts.tags = std::move(tags);
  return ts;
}

CMatrix reduced_system_state(const TaggedState& ts, std::size_t g) {
  if (g >= ts.rep.group->order) throw InvalidInput("reduced_system_state: element out of range");
  const std::size_t n = ts.n();
  CMatrix rho(ts.rep.dim, ts.rep.dim);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t pp = 0; pp < n; ++pp) {
      rho += outer(ts.unit_components[p], ts.unit_components[pp]) * ts.tags.gram(pp, p);
    }
  }
  rho *= cdouble(1.0 / static_cast<double>(n));
  if (g != ts.rep.group->identity_index) {
    const CMatrix& u = ts.rep.matrices[g];
    rho = u * rho * u.adjoint();
  }
  return hermitize(rho);
}

CMatrix reduced_ancilla_state(const TaggedState& ts) {
  const std::size_t n = ts.n();
  CMatrix rho(ts.ancilla_dim(), ts.ancilla_dim());
  for (std::size_t p = 0; p < n; ++p) rho += outer(ts.tags.tags[p], ts.tags.tags[p]);
  rho *= cdouble(1.0 / static_cast<double>(n));
  return hermitize(rho);
}

CVector apply_channel(const TaggedState& ts, std::size_t g) {
  return kron(ts.rep.matrices[g], CMatrix::identity(ts.ancilla_dim())) * ts.joint;
}

CMatrix partial_trace_ancilla(const CMatrix& joint_density, std::size_t system_dim,
                              std::size_t ancilla_dim) {
  if (joint_density.rows() != system_dim * ancilla_dim || !joint_density.is_square()) {
    throw DimensionMismatch("partial_trace_ancilla: dimension mismatch");
  }
  CMatrix rho(system_dim, system_dim);
  for (std::size_t i = 0; i < system_dim; ++i)
    for (std::size_t j = 0; j < system_dim; ++j) {
      cdouble s = 0.0;
      for (std::size_t a = 0; a < ancilla_dim; ++a) {
        s += joint_density(i * ancilla_dim + a, j * ancilla_dim + a);
      }
      rho(i, j) = s;
    }
  return rho;
}

CMatrix partial_trace_system(const CMatrix& joint_density, std::size_t system_dim,
                             std::size_t ancilla_dim) {
  if (joint_density.rows() != system_dim * ancilla_dim || !joint_density.is_square()) {
    throw DimensionMismatch("partial_trace_system: dimension mismatch");
  }
  CMatrix rho(ancilla_dim, ancilla_dim);
  for (std::size_t a = 0; a < ancilla_dim; ++a)
    for (std::size_t b = 0; b < ancilla_dim; ++b) {
      cdouble s = 0.0;
      for (std::size_t i = 0; i < system_dim; ++i) {
        s += joint_density(i * ancilla_dim + a, i * ancilla_dim + b);
      }
      rho(a, b) = s;
    }
  return rho;
}

double baseline_D(const IsotypicDecomposition& dec) {
  assert_multiplicity_free(dec);
  const auto n = static_cast<double>(dec.n_present());
  if (n == 0) throw InvalidInput("baseline_D: empty representation");
  double dim_sum = 0.0;
  for (int label : dec.present_labels) dim_sum += static_cast<double>(dec.irrep_dim(label));
  return dim_sum / (n * static_cast<double>(dec.rep.group->order));
}

double baseline_D(const Representation& rep) { return baseline_D(isotypic_projectors(rep)); }

double m_tilde(const IsotypicDecomposition& dec) {
  assert_multiplicity_free(dec);
  const std::size_t n = dec.n_present();
  if (n < 2) throw NeedTwoSubspaces("m_tilde: need at least two occurring subspaces");
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  const double order2 = static_cast<double>(dec.rep.group->order) *
                        static_cast<double>(dec.rep.group->order);
  double excess = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dp = static_cast<double>(dec.irrep_dim(dec.present_labels[i]));
      const double dq = static_cast<double>(dec.irrep_dim(dec.present_labels[j]));
      excess = std::max(excess, n2 * dp * dq / order2 - 1.0);
    }
  return 1.0 + std::max(excess, 0.0);
}

double m_tilde(const Representation& rep) { return m_tilde(isotypic_projectors(rep)); }

namespace {

// sqrt(d_p d_p')/(N |G|) <eta_p'|eta_p>, the coefficient of e^{i(theta_p' -
// theta_p)} in the rank-one covariant success probability.
CMatrix rank_one_coeffs(const TaggedState& ts) {
  const std::size_t n = ts.n();
  const double order = static_cast<double>(ts.rep.group->order);
  CMatrix c(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    const double dp = static_cast<double>(ts.dec.irrep_dim(ts.dec.present_labels[p]));
    for (std::size_t pp = 0; pp < n; ++pp) {
      const double dpp = static_cast<double>(ts.dec.irrep_dim(ts.dec.present_labels[pp]));
      c(p, pp) = std::sqrt(dp * dpp) / (static_cast<double>(n) * order) * ts.tags.gram(pp, p);
    }
  }
  return c;
}

double rank_one_objective(const CMatrix& c, const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  cdouble sum = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t pp = 0; pp < n; ++pp) {
      sum += c(p, pp) * std::polar(1.0, theta[pp] - theta[p]);
    }
  return sum.real();
}

// Coordinate ascent on theta. Holding the others fixed, the objective is
// const + 2 Re(e^{-i theta_q} w_q), maximized exactly at theta_q = arg w_q.
std::vector<double> optimize_phases(const CMatrix& c, std::size_t n) {
  std::vector<double> theta(n, 0.0);
  // Anchored alignment seed: theta_p - theta_0 = arg <eta_0|eta_p>, exact
  // whenever the overlap phases are pairwise consistent.
  for (std::size_t p = 1; p < n; ++p) {
    const cdouble g0p = c(0, p);  // carries <eta_p|eta_0>... see coefficient layout
    if (std::abs(g0p) > 0.0) theta[p] = -std::arg(g0p);
  }
  double value = rank_one_objective(c, theta);
  for (int sweep = 0; sweep < 200; ++sweep) {
    for (std::size_t q = 0; q < n; ++q) {
      cdouble w = 0.0;
      for (std::size_t p = 0; p < n; ++p) {
        if (p == q) continue;
        // terms with theta_q appearing as e^{-i theta_q}: c(q, p) e^{i theta_p}
        w += std::conj(c(p, q)) * std::polar(1.0, theta[p]);
      }
      if (std::abs(w) > 0.0) theta[q] = std::arg(w);
    }
    const double next = rank_one_objective(c, theta);
    if (next - value < 1e-14) {
      value = next;
      break;
    }
    value = next;
  }
  // Report phases relative to the first subspace.
  const double base = theta[0];
  for (auto& t : theta) t -= base;
  return theta;
}

}  // namespace

double channel_disc_bound(const TaggedState& ts) {
  const CMatrix c = rank_one_coeffs(ts);
  double sum = 0.0;
  for (std::size_t p = 0; p < ts.n(); ++p)
    for (std::size_t pp = 0; pp < ts.n(); ++pp) sum += std::abs(c(p, pp));
  return sum;
}

ChannelDiscResult channel_disc_achieved(const TaggedState& ts, const SolverOptions& options) {
  ChannelDiscResult out;
  const std::size_t n = ts.n();
  const CMatrix c = rank_one_coeffs(ts);

  out.phases = optimize_phases(c, n);
  out.rank_one_value = rank_one_objective(c, out.phases);

  const CMatrix rho_e = reduced_system_state(ts, ts.rep.group->identity_index);
  const std::vector<CMatrix> orbit = group_orbit(ts.rep, rho_e);
  const std::vector<double> uniform(orbit.size(), 1.0 / static_cast<double>(orbit.size()));
  const DiscriminationResult solved = solve_min_error(orbit, uniform, options);
  const CovariantPovm cov = covariantize_povm(ts.rep, solved.povm, orbit);
  out.solver_value = povm_success(orbit, uniform, cov.expand());
  out.certified = solved.certified(options.certificate_tol);

  out.p_ug = std::max(out.rank_one_value, out.solver_value);
  return out;
}

double tag_disc_bound(const TagEnsemble& tags) {
  const std::size_t n = tags.n;
  if (n < 2) throw NeedTwoSubspaces("tag_disc_bound: need at least two tags");
  double sum = 0.0;
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      sum += std::sqrt(std::max(0.0, 1.0 - std::norm(tags.gram(p, q))));
    }
  const double dn = static_cast<double>(n);
  return 1.0 / dn + sum / (dn * dn);
}

TagDiscResult tag_disc_achieved(const TagEnsemble& tags, const SolverOptions& options) {
  const std::size_t n = tags.n;
  if (n < 2) throw NeedTwoSubspaces("tag_disc_achieved: need at least two tags");
  std::vector<CMatrix> states;
  states.reserve(n);
  for (const auto& t : tags.tags) states.push_back(outer(t, t));
  const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));

  TagDiscResult out;
  if (n == 2) {
    out.p_hp = helstrom_two(states[0], states[1], 0.5, 0.5).first;
    out.certified = true;
    return out;
  }
  const DiscriminationResult solved = solve_min_error(states, uniform, options);
  out.p_hp = solved.success_probability;
  out.certified = solved.certified(options.certificate_tol);
  return out;
}

DualityReport duality_report(const TaggedState& ts, const SolverOptions& options,
                             double slack_tol) {
  const std::size_t n = ts.n();
  if (n < 2) throw NeedTwoSubspaces("duality_report: need at least two subspaces");

  DualityReport r;
  r.n_subspaces = n;
  r.amb_dim = ts.ancilla_dim();
  r.max_abs_overlap = ts.tags.max_abs_overlap();
  r.d_baseline = baseline_D(ts.dec);
  r.m_tilde = m_tilde(ts.dec);
  r.p_ug_bound = channel_disc_bound(ts);

  const ChannelDiscResult channel = channel_disc_achieved(ts, options);
  r.p_ug_achieved = channel.p_ug;
  r.phases = channel.phases;

  r.p_hp_bound = tag_disc_bound(ts.tags);
  const TagDiscResult tag = tag_disc_achieved(ts.tags, options);
  r.p_hp_achieved = tag.p_hp;
  r.certified = channel.certified && tag.certified;

  const double dn = static_cast<double>(n);
  const double du = r.p_ug_achieved - r.d_baseline;
  const double dh = r.p_hp_achieved - 1.0 / dn;
  r.lhs = du * du + dh * dh;
  r.rhs = r.m_tilde * (1.0 - 1.0 / dn) * (1.0 - 1.0 / dn);
  r.slack = r.rhs - r.lhs;

  const double order = static_cast<double>(ts.rep.group->order);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dp = static_cast<double>(ts.dec.irrep_dim(ts.dec.present_labels[i]));
      const double dq = static_cast<double>(ts.dec.irrep_dim(ts.dec.present_labels[j]));
      const double ov = std::abs(ts.tags.gram(i, j));
      const double a = std::sqrt(std::max(0.0, 1.0 - ov * ov)) / dn;
      const double b = std::sqrt(dp * dq) / order * ov;
      r.v_norms.push_back({ts.dec.present_labels[i], ts.dec.present_labels[j],
                           std::sqrt(a * a + b * b)});
    }

  if (r.slack < -slack_tol) {
    throw InequalityViolation("duality_report: slack " + std::to_string(r.slack) +
                              " below -tolerance; implementation bug");
  }
  return r;
}

std::vector<DualityReport> random_tag_sweep(const Representation& rep, const SweepOptions& opt) {
  if (opt.samples < 1) throw InvalidInput("random_tag_sweep: need samples >= 1");
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  assert_multiplicity_free(dec);
  const std::size_t n = dec.n_present();
  if (n < 2) throw NeedTwoSubspaces("random_tag_sweep: need at least two subspaces");
  const std::size_t amb_dim = opt.amb_dim == 0 ? n : opt.amb_dim;

  const std::vector<CVector> components =
      opt.unit_components ? *opt.unit_components : default_unit_components(dec);

  std::vector<DualityReport> reports(opt.samples);
  std::vector<std::exception_ptr> errors(opt.samples);

  auto run_sample = [&](std::size_t k) {
    try {
      SampleRng rng(opt.seed, k);
      TagEnsemble tags = random_tags(n, amb_dim, rng);
      const TaggedState ts = build_tagged_state(rep, components, std::move(tags));
      reports[k] = duality_report(ts, opt.solver);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  unsigned workers = opt.threads;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, opt.samples));

  if (workers <= 1) {
    for (std::size_t k = 0; k < opt.samples; ++k) run_sample(k);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t k = w; k < opt.samples; k += workers) run_sample(k);
      });
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t k = 0; k < opt.samples; ++k) {
    if (errors[k]) std::rethrow_exception(errors[k]);
  }
  return reports;
}

void write_sweep_csv(std::ostream& out, const std::vector<DualityReport>& reports,
                     std::uint64_t seed) {
  out << "sample_id,seed,n_subspaces,amb_dim,max_abs_overlap,p_ug_bound,p_ug_achieved,"
         "p_hp_bound,p_hp_achieved,d_baseline,m_tilde,lhs,rhs,slack,certified\n";
  char buf[512];
  for (std::size_t k = 0; k < reports.size(); ++k) {
    const DualityReport& r = reports[k];
    std::snprintf(buf, sizeof buf,
                  "%zu,%" PRIu64 ",%zu,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g,%.17g,%d\n",
                  k, seed, r.n_subspaces, r.amb_dim, r.max_abs_overlap, r.p_ug_bound,
                  r.p_ug_achieved, r.p_hp_bound, r.p_hp_achieved, r.d_baseline, r.m_tilde,
                  r.lhs, r.rhs, r.slack, r.certified ? 1 : 0);
    out << buf;
  }
}

}  // namespace gasym
