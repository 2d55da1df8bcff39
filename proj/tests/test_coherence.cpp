#include <doctest.h>

#include <cmath>

#include "gasym/coherence.hpp"
#include "gasym/random.hpp"

using namespace gasym;

TEST_CASE("l1 coherence on fixed states") {
  SUBCASE("diagonal states carry none") {
    CMatrix rho(3, 3);
    rho(0, 0) = 0.5;
    rho(1, 1) = 0.3;
    rho(2, 2) = 0.2;
    CHECK(l1_coherence(rho, 3) == 0.0);
  }
  SUBCASE("the uniform pure state of dimension 3 gives 2") {
    CVector phi(3);
    for (std::size_t i = 0; i < 3; ++i) phi[i] = 1.0 / std::sqrt(3.0);
    CHECK(l1_coherence(outer(phi, phi), 3) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("|+><+| gives 1") {
    CVector plus(2);
    plus[0] = plus[1] = 1.0 / std::sqrt(2.0);
    CHECK(l1_coherence(outer(plus, plus), 2) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("invalid densities are rejected") {
    CHECK_THROWS_AS(l1_coherence(CMatrix::identity(2), 2), InvalidDensity);  // trace 2
    CMatrix not_psd(2, 2);
    not_psd(0, 0) = 1.5;
    not_psd(1, 1) = -0.5;
    CHECK_THROWS_AS(l1_coherence(not_psd, 2), InvalidDensity);
  }
}

TEST_CASE("cyclic equivalence between orbit discrimination and coherence") {
  SUBCASE("uniform state over C3") {
    CVector phi(3);
    for (std::size_t i = 0; i < 3; ++i) phi[i] = 1.0 / std::sqrt(3.0);
    const CoherenceResult r = cyclic_equivalence_check(3, phi);
    CHECK(r.ps_minus_guess == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(r.c_l1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(r.ratio_check) <= 1e-10);
  }
  SUBCASE("basis states are free") {
    const CoherenceResult r = cyclic_equivalence_check(4, CVector::basis(4, 2));
    CHECK(std::abs(r.ps_minus_guess) <= 1e-12);
    CHECK(r.c_l1 == 0.0);
    CHECK(std::abs(r.ratio_check) <= 1e-10);
  }
  SUBCASE("n = 2 with weights 0.9/0.1") {
    CVector phi(2);
    phi[0] = std::sqrt(0.9);
    phi[1] = std::sqrt(0.1);
    const CoherenceResult r = cyclic_equivalence_check(2, phi);
    CHECK(r.c_l1 == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(r.ps_minus_guess == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::abs(r.ratio_check) <= 1e-10);
  }
}

TEST_CASE("the identity holds for random pure states on every small cycle") {
  SampleRng rng(31, 0);
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int t = 0; t < 25; ++t) {
      const CVector phi = random_unit_vector(rng, n);
      CHECK(std::abs(cyclic_equivalence_check(n, phi).ratio_check) <= 1e-10);
    }
  }
}

TEST_CASE("coherence is invariant under diagonal phase rotations") {
  SampleRng rng(32, 0);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t) % 4;
    const CMatrix rho = random_density(rng, n);
    const double before = l1_coherence(rho, n);
    CMatrix phases(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      phases(i, i) = std::polar(1.0, 6.28 * rng.uniform01());
    }
    const double after = l1_coherence(hermitize(phases * rho * phases.adjoint()), n);
    CHECK(std::abs(after - before) <= 1e-12);
    CHECK(before >= 0.0);
  }
}

TEST_CASE("coherence vanishes exactly on diagonal states and only there") {
  SampleRng rng(33, 0);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t) % 3;
    const CMatrix rho = random_density(rng, n);
    CMatrix diagonal(n, n);
    double offdiag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      diagonal(i, i) = rho(i, i);
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) offdiag = std::max(offdiag, std::abs(rho(i, j)));
    }
    diagonal *= cdouble(1.0 / diagonal.trace().real());
    CHECK(l1_coherence(diagonal, n) <= 1e-12);
    if (offdiag > 1e-12) CHECK(l1_coherence(rho, n) > 1e-12);
  }
}

TEST_CASE("pure-state coherence is bounded by n - 1") {
  SampleRng rng(34, 0);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t) % 6;
    const CVector phi = random_unit_vector(rng, n);
    CHECK(l1_coherence(outer(phi, phi), n) <= static_cast<double>(n) - 1.0 + 1e-12);
  }
}
