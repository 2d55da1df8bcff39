#include <benchmark/benchmark.h>

#include "gasym/discrimination.hpp"
#include "gasym/duality.hpp"
#include "gasym/random.hpp"

using namespace gasym;

static void BM_HermitianEigensystem(benchmark::State& state) {
  SampleRng rng(7, 0);
  const CMatrix m = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto es = hermitian_eigensystem(m);
    benchmark::DoNotOptimize(es.eigenvalues);
  }
}
BENCHMARK(BM_HermitianEigensystem)->Arg(4)->Arg(8)->Arg(16);

static void BM_SolveMinErrorOrbit(benchmark::State& state) {
  const GroupPtr d3 = dihedral_group(3);
  const Representation rep = direct_sum_rep(d3, {1, 2, 3});
  SampleRng rng(11, 0);
  const CVector phi = random_unit_vector(rng, rep.dim);
  const auto orbit = group_orbit(rep, outer(phi, phi));
  const std::vector<double> uniform(orbit.size(), 1.0 / 6.0);
  for (auto _ : state) {
    auto res = solve_min_error(orbit, uniform);
    benchmark::DoNotOptimize(res.success_probability);
  }
}
BENCHMARK(BM_SolveMinErrorOrbit);

static void BM_DualitySample(benchmark::State& state) {
  const GroupPtr d3 = dihedral_group(3);
  const Representation rep = direct_sum_rep(d3, {1, 2, 3});
  const IsotypicDecomposition dec = isotypic_projectors(rep);
  const auto components = default_unit_components(dec);
  std::uint64_t k = 0;
  for (auto _ : state) {
    SampleRng rng(42, k++);
    TagEnsemble tags = random_tags(3, 3, rng);
    const TaggedState ts = build_tagged_state(rep, components, std::move(tags));
    auto report = duality_report(ts);
    benchmark::DoNotOptimize(report.slack);
  }
}
BENCHMARK(BM_DualitySample);

BENCHMARK_MAIN();
