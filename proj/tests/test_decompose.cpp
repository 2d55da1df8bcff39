#include <doctest.h>

#include <cmath>
#include <numeric>

#include "gasym/decompose.hpp"
#include "gasym/random.hpp"

using namespace gasym;

namespace {

Representation d3_two_qubit_rep() {
  const GroupPtr g = dihedral_group(3);
  return tensor_product_rep(irrep_rep(g, 3), irrep_rep(g, 3));
}

}  // namespace

TEST_CASE("gamma3 x gamma3 over D3 decomposes into one copy of each irrep") {
  const Representation rep = d3_two_qubit_rep();
  const IsotypicDecomposition dec = isotypic_projectors(rep);

  CHECK(dec.present_labels == std::vector<int>{1, 2, 3});
  for (int label : {1, 2, 3}) CHECK(dec.multiplicity(label) == 1);
  CHECK_NOTHROW(assert_multiplicity_free(dec));

  SUBCASE("the trivial subspace is spanned by (|00> + |11>)/sqrt 2") {
    CVector v1(4);
    v1[0] = 1.0 / std::sqrt(2.0);
    v1[3] = 1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(dec.projector(1), outer(v1, v1)) <= 1e-10);
  }
  SUBCASE("the sign subspace is spanned by (|01> - |10>)/sqrt 2") {
    CVector v2(4);
    v2[1] = 1.0 / std::sqrt(2.0);
    v2[2] = -1.0 / std::sqrt(2.0);
    CHECK(max_abs_diff(dec.projector(2), outer(v2, v2)) <= 1e-10);
  }
  SUBCASE("projector traces are m_p d_p") {
    CHECK(dec.projector(1).trace().real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dec.projector(2).trace().real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(dec.projector(3).trace().real() == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("full cyclic direct sum yields coordinate projectors") {
  const std::size_t n = 5;
  const GroupPtr g = cyclic_group(n);
  std::vector<int> labels(n);
  std::iota(labels.begin(), labels.end(), 0);
  const IsotypicDecomposition dec = isotypic_projectors(direct_sum_rep(g, labels));
  REQUIRE(dec.n_present() == n);
  for (std::size_t p = 0; p < n; ++p) {
    CMatrix unit(n, n);
    unit(p, p) = 1.0;
    CHECK(max_abs_diff(dec.projectors[p], unit) <= 1e-10);
  }
}

TEST_CASE("component norms") {
  const Representation rep = d3_two_qubit_rep();
  const IsotypicDecomposition dec = isotypic_projectors(rep);

  SUBCASE("state inside one subspace") {
    const CVector u = subspace_basis_vector(dec, 3);
    const auto norms = component_norms(dec, u);
    for (const auto& [label, norm] : norms) {
      CHECK(norm == doctest::Approx(label == 3 ? 1.0 : 0.0).epsilon(1e-10));
    }
  }

  SUBCASE("two-qubit coefficients map to (|c1|, |c2|, sqrt(|c3|^2 + |c4|^2))") {
    // Basis of the decomposition: v1, v2 span the one-dimensional subspaces,
    // v3 = (|00> - |11>)/sqrt2 and v4 = (|01> + |10>)/sqrt2 span the third.
    const double s = 1.0 / std::sqrt(2.0);
    CVector v1(4), v2(4), v3(4), v4(4);
    v1[0] = s;
    v1[3] = s;
    v2[1] = s;
    v2[2] = -s;
    v3[0] = s;
    v3[3] = -s;
    v4[1] = s;
    v4[2] = s;
    const cdouble c1(0.5, 0.0), c2(0.0, 0.5), c3(0.5, 0.0), c4(0.0, -0.5);
    const CVector phi = v1 * c1 + v2 * c2 + v3 * c3 + v4 * c4;
    REQUIRE(phi.norm() == doctest::Approx(1.0));
    const auto norms = component_norms(dec, phi);
    CHECK(norms[0].second == doctest::Approx(std::abs(c1)).epsilon(1e-10));
    CHECK(norms[1].second == doctest::Approx(std::abs(c2)).epsilon(1e-10));
    CHECK(norms[2].second ==
          doctest::Approx(std::sqrt(std::norm(c3) + std::norm(c4))).epsilon(1e-10));
  }

  SUBCASE("equal weights across N subspaces give norms 1/sqrt N") {
    const GroupPtr g = cyclic_group(4);
    const IsotypicDecomposition cdec =
        isotypic_projectors(direct_sum_rep(g, {0, 1, 2, 3}));
    CVector phi(4);
    for (std::size_t i = 0; i < 4; ++i) phi[i] = 0.5;
    for (const auto& [label, norm] : component_norms(cdec, phi)) {
      CHECK(norm == doctest::Approx(0.5).epsilon(1e-12));
    }
  }

  SUBCASE("squared norms sum to one for random states") {
    SampleRng rng(7, 3);
    for (int t = 0; t < 30; ++t) {
      const CVector phi = random_unit_vector(rng, 4);
      double sum = 0.0;
      for (const auto& [label, norm] : component_norms(dec, phi)) sum += norm * norm;
      CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
  }

  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(component_norms(dec, CVector::basis(3, 0)), DimensionMismatch);
  }
}

TEST_CASE("multiplicity handling") {
  SUBCASE("repeated irrep is reported") {
    // Trivial + trivial over C2, assembled by hand since direct_sum_rep
    // refuses repeated labels.
    const GroupPtr g = cyclic_group(2);
    Representation rep;
    rep.group = g;
    rep.dim = 2;
    rep.matrices = {CMatrix::identity(2), CMatrix::identity(2)};
    const IsotypicDecomposition dec = isotypic_projectors(rep);
    CHECK(dec.multiplicity(0) == 2);
    CHECK_THROWS_AS(assert_multiplicity_free(dec), RepeatedIrrep);
  }
  SUBCASE("single irrep is fine") {
    const GroupPtr g = dihedral_group(3);
    CHECK_NOTHROW(assert_multiplicity_free(isotypic_projectors(irrep_rep(g, 3))));
  }
  SUBCASE("invalid representation raises NonIntegerMultiplicity") {
    const GroupPtr g = cyclic_group(2);
    Representation rep;
    rep.group = g;
    rep.dim = 1;
    CMatrix half(1, 1);
    half(0, 0) = 0.5;  // not a unitary representation
    rep.matrices = {CMatrix::identity(1), half};
    CHECK_THROWS_AS(isotypic_projectors(rep), NonIntegerMultiplicity);
  }
}

TEST_CASE("projector structure on random direct sums") {
  SampleRng rng(11, 0);
  const GroupPtr d3 = dihedral_group(3);
  const GroupPtr c4 = cyclic_group(4);
  const std::vector<std::vector<int>> d3_subsets = {{1}, {2, 3}, {1, 3}, {1, 2, 3}};
  const std::vector<std::vector<int>> c4_subsets = {{0, 2}, {1, 3}, {0, 1, 2, 3}};

  auto check_rep = [&](const GroupPtr& g, const std::vector<int>& labels) {
    const Representation rep = direct_sum_rep(g, labels);
    const IsotypicDecomposition dec = isotypic_projectors(rep);
    REQUIRE(dec.present_labels == labels);

    CMatrix sum(rep.dim, rep.dim);
    for (std::size_t i = 0; i < dec.n_present(); ++i) {
      const CMatrix& p = dec.projectors[i];
      CHECK(max_abs_diff(p, p.adjoint()) <= 1e-10);
      CHECK(max_abs_diff(p * p, p) <= 1e-10);
      for (std::size_t j = 0; j < dec.n_present(); ++j)
        if (i != j) CHECK((p * dec.projectors[j]).max_abs() <= 1e-10);
      for (const auto& u : rep.matrices) CHECK(max_abs_diff(p * u, u * p) <= 1e-10);
      sum += p;
    }
    CHECK(max_abs_diff(sum, CMatrix::identity(rep.dim)) <= 1e-10);

    // Group-average identity: twirling a rank-one operator lands on the
    // projectors weighted by ||1_p X||^2 / d_p.
    for (int t = 0; t < 5; ++t) {
      const CVector x = random_unit_vector(rng, rep.dim);
      CMatrix averaged(rep.dim, rep.dim);
      for (const auto& u : rep.matrices) {
        const CVector ux = u * x;
        averaged += outer(ux, ux);
      }
      averaged *= cdouble(1.0 / static_cast<double>(g->order));
      CMatrix expect(rep.dim, rep.dim);
      for (std::size_t i = 0; i < dec.n_present(); ++i) {
        const double np = (dec.projectors[i] * x).norm();
        expect += dec.projectors[i] *
                  cdouble(np * np / static_cast<double>(dec.irrep_dim(dec.present_labels[i])));
      }
      CHECK(max_abs_diff(averaged, expect) <= 1e-10);
    }
  };

  for (const auto& labels : d3_subsets) check_rep(d3, labels);
  for (const auto& labels : c4_subsets) check_rep(c4, labels);
}
