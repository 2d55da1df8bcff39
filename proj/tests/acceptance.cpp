// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

#include "gasym/coherence.hpp"
#include "gasym/discrimination.hpp"
#include "gasym/duality.hpp"
#include "gasym/random.hpp"

using namespace gasym;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Representation d3_full() { return direct_sum_rep(dihedral_group(3), {1, 2, 3}); }

Representation cyclic_full(std::size_t n) {
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  return direct_sum_rep(cyclic_group(n), labels);
}

std::vector<double> uniform_priors(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args, const std::string& env = {}) {
  static int counter = 0;
  const fs::path dir = fs::temp_directory_path() / "gasym_acceptance";
  fs::create_directories(dir);
  const fs::path out_path = dir / ("out" + std::to_string(counter++) + ".txt");
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += std::string("\"") + GASYM_CLI_PATH + "\" " + args + " > \"" + out_path.string() +
         "\" 2> /dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

// 1. CLI reports the D3 optimum: P_s = 2/3 and weights (1/2, 1/2, 1/sqrt2).
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const CliRun r =
      run_cli("discriminate --group dihedral:3 --rep \"g1+g2+g3\" --state optimal");
  const double elapsed = seconds_since(t0);
  bool ok = r.exit_code == 0;
  std::string detail = "exit=" + std::to_string(r.exit_code);
  if (ok) {
    const json res = json::parse(r.out).at("result");
    const double ps = res.at("closed_form_ps").get<double>();
    const auto& w = res.at("optimal_weights");
    const double w1 = w.at(0).at("norm").get<double>();
    const double w2 = w.at(1).at("norm").get<double>();
    const double w3 = w.at(2).at("norm").get<double>();
    ok = std::abs(ps - 2.0 / 3.0) <= 1e-9 && std::abs(w1 - 0.5) <= 1e-9 &&
         std::abs(w2 - 0.5) <= 1e-9 && std::abs(w3 - 1.0 / std::sqrt(2.0)) <= 1e-9 &&
         elapsed < 1.0;
    char buf[160];
    std::snprintf(buf, sizeof buf, "ps=%.12f weights=(%.9f, %.9f, %.9f) runtime=%.3fs", ps,
                  w1, w2, w3, elapsed);
    detail = buf;
  }
  report(1, ok, "D3 optimum via the CLI", detail);
}

// 2. Baseline constants for D3: D = 2/9, M~ = 1 exactly, rhs = 4/9.
void criterion_2() {
  const Representation rep = d3_full();
  const double d = baseline_D(rep);
  const double mt = m_tilde(rep);
  const double rhs = mt * (1.0 - 1.0 / 3.0) * (1.0 - 1.0 / 3.0);
  const bool ok =
      std::abs(d - 2.0 / 9.0) <= 1e-12 && mt == 1.0 && std::abs(rhs - 4.0 / 9.0) <= 1e-12;
  char buf[120];
  std::snprintf(buf, sizeof buf, "D=%.17g m_tilde=%.17g rhs=%.17g", d, mt, rhs);
  report(2, ok, "baseline and bound constants", buf);
}

// 3. Orthogonal tags over D3 make the duality relation an equality.
void criterion_3() {
  const Representation rep = d3_full();
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  const TaggedState ts =
      build_tagged_state(rep, default_unit_components(dec), orthogonal_tags(3));
  const DualityReport r = duality_report(ts);
  const bool ok = std::abs(r.lhs - 4.0 / 9.0) <= 1e-9 &&
                  std::abs(r.p_ug_achieved - 2.0 / 9.0) <= 1e-9 &&
                  std::abs(r.p_hp_achieved - 1.0) <= 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf, "lhs=%.12f p_ug=%.12f p_hp=%.12f slack=%.3g", r.lhs,
                r.p_ug_achieved, r.p_hp_achieved, r.slack);
  report(3, ok, "duality equality at orthogonal tags", buf);
}

// 4. 1000-sample sweeps for D3, C3, C4: slack >= -1e-9 everywhere, under 60 s.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  double min_slack = std::numeric_limits<double>::infinity();
  std::size_t rows = 0;
  bool ok = true;
  std::string where;
  for (const auto& [name, rep] :
       {std::pair<std::string, Representation>{"D3", d3_full()},
        {"C3", cyclic_full(3)},
        {"C4", cyclic_full(4)}}) {
    SweepOptions opt;
    opt.samples = 1000;
    opt.seed = 20250042;
    try {
      const auto reports = random_tag_sweep(rep, opt);
      for (const auto& row : reports) {
        min_slack = std::min(min_slack, row.slack);
        if (row.slack < -1e-9) ok = false;
      }
      rows += reports.size();
    } catch (const Error& e) {
      ok = false;
      where = std::string(" [") + name + ": " + e.what() + "]";
      break;
    }
  }
  const double elapsed = seconds_since(t0);
  ok = ok && rows == 3000 && elapsed < 60.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "rows=%zu min_slack=%.3g runtime=%.2fs%s", rows, min_slack,
                elapsed, where.c_str());
  report(4, ok, "sweep soundness for D3, C3, C4", buf);
}

// 5. n (P_s - 1/n) equals the l1 coherence on random pure states, n = 2..8.
void criterion_5() {
  double worst = 0.0;
  SampleRng rng(5005, 0);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 200; ++t) {
      const CVector phi = random_unit_vector(rng, n);
      worst = std::max(worst, std::abs(cyclic_equivalence_check(n, phi).ratio_check));
    }
  }
  char buf[80];
  std::snprintf(buf, sizeof buf, "worst residual=%.3g over 1400 states", worst);
  report(5, worst <= 1e-10, "cyclic coherence identity", buf);
}

// 6. The iterative solver agrees with the closed form and certifies.
void criterion_6() {
  SampleRng rng(6006, 0);
  double worst_gap = 0.0;
  double worst_cert = 0.0;
  std::size_t converged = 0, total = 0;
  const std::vector<Representation> reps = {d3_full(), cyclic_full(3), cyclic_full(4),
                                            cyclic_full(5)};
  for (const auto& rep : reps) {
    const IsotypicDecomposition dec = isotypic_projectors(rep);
    for (int t = 0; t < 25; ++t) {
      const CVector phi = random_unit_vector(rng, rep.dim);
      const auto orbit = group_orbit(rep, outer(phi, phi));
      const auto res = solve_min_error(orbit, uniform_priors(orbit.size()));
      ++total;
      if (res.converged) {
        ++converged;
        worst_cert = std::max(worst_cert, -res.certificate_floor);
      }
      worst_gap =
          std::max(worst_gap, std::abs(res.success_probability -
                                       success_probability_pure(dec, phi)));
    }
  }
  const bool ok = worst_gap <= 1e-6 && worst_cert <= 1e-7 && converged == total;
  char buf[160];
  std::snprintf(buf, sizeof buf, "worst |solver-closed|=%.3g worst -cert=%.3g converged=%zu/%zu",
                worst_gap, worst_cert, converged, total);
  report(6, ok, "oracle equivalence of solver and closed form", buf);
}

// 7. Covariantization preserves success probability and completeness.
void criterion_7() {
  SampleRng rng(7007, 0);
  double worst_pres = 0.0;
  double worst_comp = 0.0;
  for (const auto& rep : {cyclic_full(3), d3_full()}) {
    const std::vector<double> priors = uniform_priors(rep.group->order);
    for (int t = 0; t < 50; ++t) {
      const CVector psi = random_unit_vector(rng, rep.dim);
      const auto orbit = group_orbit(rep, outer(psi, psi));
      const Povm povm = make_povm(random_povm_elements(rng, rep.dim, rep.group->order));
      const double before = povm_success(orbit, priors, povm);
      const Povm cov = covariantize_povm(rep, povm, orbit).expand();
      worst_pres = std::max(worst_pres, std::abs(before - povm_success(orbit, priors, cov)));
      CMatrix sum(rep.dim, rep.dim);
      for (const auto& e : cov.elements) sum += e;
      worst_comp = std::max(worst_comp, max_abs_diff(sum, CMatrix::identity(rep.dim)));
    }
  }
  const bool ok = worst_pres <= 1e-10 && worst_comp <= 1e-9;
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst |dP|=%.3g worst completeness=%.3g over 100 POVMs",
                worst_pres, worst_comp);
  report(7, ok, "covariantization preserves success probability", buf);
}

// 8. Twirl monotonicity and mixture convexity of the orbit success probability.
void criterion_8() {
  const Representation rep = d3_full();
  SampleRng rng(8008, 0);
  auto orbit_ps = [&](const CMatrix& rho) {
    const auto orbit = group_orbit(rep, rho);
    return solve_min_error(orbit, uniform_priors(orbit.size())).success_probability;
  };

  double worst_mono = 0.0;
  for (int t = 0; t < 100; ++t) {
    CMatrix rho;
    if (t % 2 == 0) {
      const CVector v = random_unit_vector(rng, rep.dim);
      rho = outer(v, v);
    } else {
      rho = random_density(rng, rep.dim);
    }
    const double base = orbit_ps(rho);
    const CMatrix averaged = twirl(rep, rho);
    const double lam = 0.25 * (1.0 + static_cast<double>(t % 4));
    const CMatrix mixed = hermitize(averaged * cdouble(lam) + rho * cdouble(1.0 - lam));
    worst_mono = std::max(worst_mono, orbit_ps(mixed) - base);
  }

  double worst_convex = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t terms = 2 + t % 2;
    std::vector<CMatrix> parts;
    std::vector<double> weights;
    double left = 1.0;
    for (std::size_t i = 0; i < terms; ++i) {
      parts.push_back(random_density(rng, rep.dim));
      const double w = (i + 1 == terms) ? left : left * (0.25 + 0.5 * rng.uniform01());
      weights.push_back(w);
      left -= w;
    }
    CMatrix mix(rep.dim, rep.dim);
    double bound = 0.0;
    for (std::size_t i = 0; i < terms; ++i) {
      mix += parts[i] * cdouble(weights[i]);
      bound += weights[i] * orbit_ps(parts[i]);
    }
    worst_convex = std::max(worst_convex, orbit_ps(hermitize(mix)) - bound);
  }

  const bool ok = worst_mono <= 1e-6 && worst_convex <= 1e-6;
  char buf[120];
  std::snprintf(buf, sizeof buf, "worst monotonicity=%.3g worst convexity=%.3g",
                std::max(worst_mono, 0.0), std::max(worst_convex, 0.0));
  report(8, ok, "covariant-map monotonicity and convexity", buf);
}

// 9. gamma3 x gamma3 decomposition fixture.
void criterion_9() {
  const GroupPtr g = dihedral_group(3);
  const Representation rep = tensor_product_rep(irrep_rep(g, 3), irrep_rep(g, 3));
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  bool ok = dec.present_labels == std::vector<int>{1, 2, 3};
  for (int label : {1, 2, 3}) ok = ok && dec.multiplicity(label) == 1;
  CVector v1(4);
  v1[0] = 1.0 / std::sqrt(2.0);
  v1[3] = 1.0 / std::sqrt(2.0);
  const double residual = ok ? max_abs_diff(dec.projector(1), outer(v1, v1)) : 1.0;
  ok = ok && residual <= 1e-10;
  char buf[120];
  std::snprintf(buf, sizeof buf, "multiplicities=(1,1,1) projector residual=%.3g", residual);
  report(9, ok, "two-qubit decomposition fixture", buf);
}

// 10. Sweep output is byte-identical across runs and worker counts.
void criterion_10() {
  const std::string args = "sweep --group dihedral:3 --samples 100 --seed 42";
  const CliRun base = run_cli(args);
  bool ok = base.exit_code == 0 && !base.out.empty();
  std::size_t matched = 0;
  const std::vector<std::string> envs = {"", "GASYM_THREADS=1", "GASYM_THREADS=4",
                                         "GASYM_THREADS=7"};
  for (const auto& env : envs) {
    const CliRun again = run_cli(args, env);
    if (again.exit_code == 0 && again.out == base.out) ++matched;
  }
  ok = ok && matched == envs.size();
  char buf[120];
  std::snprintf(buf, sizeof buf, "identical outputs=%zu/%zu (plus the reference run)", matched,
                envs.size());
  report(10, ok, "sweep determinism across runs and GASYM_THREADS", buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  std::printf("SUMMARY: %d/10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
