#include "gasym/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gasym {

namespace {

void check_ensemble(const std::vector<CMatrix>& states, const std::vector<double>& priors) {
  if (states.empty() || states.size() != priors.size()) {
    throw InvalidInput("ensemble: need one prior per state");
  }
  const std::size_t dim = states.front().rows();
  double prior_sum = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const CMatrix& rho = states[k];
    if (!rho.is_square() || rho.rows() != dim) {
      throw InvalidInput("ensemble: states must be square and same-dimensional");
    }
    if (!rho.is_hermitian(tol::structural)) {
      throw InvalidInput("ensemble: state is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > tol::structural) {
      throw InvalidInput("ensemble: state trace differs from one");
    }
    if (priors[k] < -tol::structural) throw InvalidInput("ensemble: negative prior");
    prior_sum += priors[k];
  }
  if (std::abs(prior_sum - 1.0) > tol::structural) {
    throw InvalidInput("ensemble: priors do not sum to one");
  }
}

}  // namespace

Povm make_povm(std::vector<CMatrix> elements) {
  Povm p;
  p.labels.resize(elements.size());
  std::iota(p.labels.begin(), p.labels.end(), 0);
  p.elements = std::move(elements);
  return p;
}

void validate_povm(const Povm& povm, double tolerance) {
  if (povm.elements.empty()) throw InvalidPovm("povm: no elements");
  const std::size_t dim = povm.elements.front().rows();
  CMatrix sum(dim, dim);
  for (const auto& e : povm.elements) {
    if (!e.is_square() || e.rows() != dim) {
      throw InvalidPovm("povm: elements must be square and same-dimensional");
    }
    if (!e.is_hermitian(tolerance)) throw InvalidPovm("povm: element not Hermitian");
    if (psd_floor(hermitize(e)) < -tolerance) {
      throw InvalidPovm("povm: element has an eigenvalue below -tolerance");
    }
    sum += e;
  }
  if (max_abs_diff(sum, CMatrix::identity(dim)) > tolerance) {
    throw InvalidPovm("povm: elements do not sum to the identity");
  }
}

CMatrix CovariantPovm::element(std::size_t g) const {
  return rep.matrices[g] * seed * rep.matrices[g].adjoint();
}

Povm CovariantPovm::expand() const {
  std::vector<CMatrix> elements;
  elements.reserve(rep.matrices.size());
  for (std::size_t g = 0; g < rep.matrices.size(); ++g) {
    elements.push_back(hermitize(element(g)));
  }
  return make_povm(std::move(elements));
}

double povm_success(const std::vector<CMatrix>& states, const std::vector<double>& priors,
                    const Povm& povm) {
  if (states.size() != povm.size()) {
    throw InvalidInput("povm_success: hypothesis count mismatch");
  }
  double p = 0.0;
  for (std::size_t k = 0; k < states.size(); ++k) {
    p += priors[k] * (states[k] * povm.elements[k]).trace().real();
  }
  return p;
}

double success_probability_pure(const IsotypicDecomposition& dec, const CVector& phi) {
  assert_multiplicity_free(dec);
  const double order = static_cast<double>(dec.rep.group->order);
  double sum = 0.0;
  for (const auto& [label, norm] : component_norms(dec, phi)) {
    sum += std::sqrt(static_cast<double>(dec.irrep_dim(label)) / order) * norm;
  }
  return sum * sum;
}

double success_probability_pure(const Representation& rep, const CVector& phi) {
  return success_probability_pure(isotypic_projectors(rep), phi);
}

OptimalPureState optimal_pure_state(const IsotypicDecomposition& dec) {
  assert_multiplicity_free(dec);
  double dim_sum = 0.0;
  for (int label : dec.present_labels) dim_sum += static_cast<double>(dec.irrep_dim(label));
  OptimalPureState out;
  for (int label : dec.present_labels) {
    out.weights.emplace_back(label,
                             std::sqrt(static_cast<double>(dec.irrep_dim(label)) / dim_sum));
  }
  out.p_max = dim_sum / static_cast<double>(dec.rep.group->order);
  return out;
}

OptimalPureState optimal_pure_state(const Representation& rep) {
  return optimal_pure_state(isotypic_projectors(rep));
}

CVector state_from_weights(const IsotypicDecomposition& dec,
                           const std::vector<std::pair<int, double>>& weights) {
  CVector phi(dec.rep.dim);
  for (const auto& [label, w] : weights) {
    phi += subspace_basis_vector(dec, label) * cdouble(w);
  }
  return phi;
}

double robustness_from_ps(double ps, std::size_t group_order) {
  if (ps < -tol::structural || ps > 1.0 + tol::structural) {
    throw OutOfRange("robustness_from_ps: success probability outside [0, 1]");
  }
  const double r = static_cast<double>(group_order) * ps - 1.0;
  if (r < 0.0 && r >= -tol::structural) return 0.0;
  return r;
}

CovariantPovm build_covariant_povm(const Representation& rep, const CVector& phi,
                                   const std::vector<double>& phases) {
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  assert_multiplicity_free(dec);
  if (phi.dim() != rep.dim) {
    throw DimensionMismatch("build_covariant_povm: state dimension mismatch");
  }
  if (!phases.empty() && phases.size() != dec.n_present()) {
    throw InvalidInput("build_covariant_povm: need one phase per occurring subspace");
  }

  const double order = static_cast<double>(rep.group->order);
  CVector x(rep.dim);
  for (std::size_t i = 0; i < dec.n_present(); ++i) {
    const int label = dec.present_labels[i];
    const double target = std::sqrt(static_cast<double>(dec.irrep_dim(label)) / order);
    CVector comp = dec.projectors[i] * phi;
    const double nrm = comp.norm();
    CVector direction =
        (nrm > 1e-14) ? comp * cdouble(1.0 / nrm) : subspace_basis_vector(dec, label);
    const double theta = phases.empty() ? 0.0 : phases[i];
    x += direction * (std::polar(1.0, theta) * target);
  }
  CovariantPovm povm;
  povm.seed = outer(x, x);
  povm.rep = rep;
  return povm;
}

CovariantPovm covariantize_povm(const Representation& rep, const Povm& povm,
                                const std::vector<CMatrix>& orbit_states) {
  if (povm.size() != rep.group->order) {
    throw InvalidPovm("covariantize_povm: need one element per group element");
  }
  validate_povm(povm);
  const std::size_t n = rep.group->order;
  CMatrix omega(rep.dim, rep.dim);
  for (std::size_t g = 0; g < n; ++g) {
    omega += rep.matrices[g].adjoint() * povm.elements[g] * rep.matrices[g];
  }
  omega *= cdouble(1.0 / static_cast<double>(n));

  CovariantPovm cov;
  cov.seed = hermitize(omega);
  cov.rep = rep;

  if (orbit_states.size() == n) {
    const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
    const double before = povm_success(orbit_states, uniform, povm);
    const double after = povm_success(orbit_states, uniform, cov.expand());
    if (std::abs(before - after) > 1e-10) {
      throw InvalidPovm(
          "covariantize_povm: success probability not preserved; the states are not the group "
          "orbit matching this POVM");
    }
  }
  return cov;
}

std::pair<double, Povm> helstrom_two(const CMatrix& rho1, const CMatrix& rho2, double p1,
                                     double p2) {
  const CMatrix gap = hermitize(rho1 * cdouble(p1) - rho2 * cdouble(p2));
  const EigenSystem es = hermitian_eigensystem(gap);
  const std::size_t dim = gap.rows();
  CMatrix pi1(dim, dim);
  double positive_part = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    if (es.eigenvalues[k] <= 0.0) continue;
    positive_part += es.eigenvalues[k];
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        pi1(i, j) += es.eigenvectors(i, k) * std::conj(es.eigenvectors(j, k));
  }
  pi1 = hermitize(pi1);
  const CMatrix pi2 = CMatrix::identity(dim) - pi1;
  return {p2 + positive_part, make_povm({pi1, pi2})};
}

double holevo_certificate(const std::vector<CMatrix>& states, const std::vector<double>& priors,
                          const Povm& povm) {
  check_ensemble(states, priors);
  if (povm.size() != states.size()) {
    throw InvalidInput("holevo_certificate: hypothesis count mismatch");
  }
  const std::size_t dim = states.front().rows();
  CMatrix gamma(dim, dim);
  for (std::size_t k = 0; k < states.size(); ++k) {
    gamma += states[k] * povm.elements[k] * cdouble(priors[k]);
  }
  gamma = hermitize(gamma);
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t h = 0; h < states.size(); ++h) {
    floor = std::min(floor, psd_floor(hermitize(gamma - states[h] * cdouble(priors[h]))));
  }
  return floor;
}

DiscriminationResult solve_min_error(const std::vector<CMatrix>& states,
                                     const std::vector<double>& priors,
                                     const SolverOptions& options) {
  check_ensemble(states, priors);
  const std::size_t n = states.size();
  const std::size_t dim = states.front().rows();

  DiscriminationResult result;

  if (n == 1) {
    result.povm = make_povm({CMatrix::identity(dim)});
    result.success_probability = 1.0;
    result.certificate_floor = 0.0;
    return result;
  }
  if (n == 2) {
    auto [p, povm] = helstrom_two(states[0], states[1], priors[0], priors[1]);
    result.success_probability = p;
    result.certificate_floor = holevo_certificate(states, priors, povm);
    result.povm = std::move(povm);
    return result;
  }

  std::vector<CMatrix> weighted;  // G_k = p_k rho_k
  weighted.reserve(n);
  CMatrix total(dim, dim);
  for (std::size_t k = 0; k < n; ++k) {
    weighted.push_back(states[k] * cdouble(priors[k]));
    total += weighted.back();
  }

  // Square-root (pretty good) measurement seed, with the kernel of the mean
  // state shared uniformly so the elements always sum to the identity.
  const double share = 1.0 / static_cast<double>(n);
  auto distribute_complement = [&](std::vector<CMatrix>& elems, const CMatrix& support) {
    const CMatrix leftover = (CMatrix::identity(dim) - support) * cdouble(share);
    for (auto& e : elems) e += leftover;
  };

  std::vector<CMatrix> elems;
  {
    const PinvSqrt w = psd_pinv_sqrt(total, options.pinv_cutoff);
    elems.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      elems.push_back(hermitize(w.inv_sqrt * weighted[k] * w.inv_sqrt));
    }
    distribute_complement(elems, w.support);
  }

  auto success_of = [&](const std::vector<CMatrix>& es) {
    double p = 0.0;
    for (std::size_t k = 0; k < n; ++k) p += (weighted[k] * es[k]).trace().real();
    return p;
  };

  double p_current = success_of(elems);
  std::vector<CMatrix> best = elems;
  double p_best = p_current;
  std::size_t iterations = 0;
  bool converged = false;

  // Fixed-point iteration Pi_k <- S^{-1/2} G_k Pi_k G_k S^{-1/2},
  // S = sum_k G_k Pi_k G_k. Fixed points satisfy the optimality conditions;
  // the certificate below is the arbiter, not the iteration count.
  for (; iterations < options.max_iterations; ++iterations) {
    CMatrix s(dim, dim);
    std::vector<CMatrix> transported;
    transported.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      transported.push_back(hermitize(weighted[k] * elems[k] * weighted[k]));
      s += transported.back();
    }
    const PinvSqrt w = psd_pinv_sqrt(hermitize(s), options.pinv_cutoff);
    std::vector<CMatrix> next;
    next.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      next.push_back(hermitize(w.inv_sqrt * transported[k] * w.inv_sqrt));
    }
    distribute_complement(next, w.support);

    const double p_next = success_of(next);
    elems = std::move(next);
    if (p_next > p_best) {
      p_best = p_next;
      best = elems;
    }
    const bool settled = std::abs(p_next - p_current) < options.step_tol;
    p_current = p_next;
    if (settled) {
      converged = true;
      ++iterations;
      break;
    }
  }

  result.povm = make_povm(std::move(best));
  result.success_probability = p_best;
  result.iterations = iterations;
  result.converged = converged;
  result.certificate_floor = holevo_certificate(states, priors, result.povm);
  return result;
}

std::vector<CMatrix> group_orbit(const Representation& rep, const CMatrix& rho) {
  std::vector<CMatrix> orbit;
  orbit.reserve(rep.matrices.size());
  for (const auto& u : rep.matrices) {
    orbit.push_back(hermitize(u * rho * u.adjoint()));
  }
  return orbit;
}

CMatrix twirl(const Representation& rep, const CMatrix& rho) {
  CMatrix avg(rep.dim, rep.dim);
  for (const auto& u : rep.matrices) avg += u * rho * u.adjoint();
  avg *= cdouble(1.0 / static_cast<double>(rep.matrices.size()));
  return hermitize(avg);
}

}  // namespace gasym
