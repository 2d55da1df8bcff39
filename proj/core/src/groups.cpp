#include "gasym/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace gasym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string index_name(std::size_t g) { return "g" + std::to_string(g); }

}  // namespace

std::vector<cdouble> Irrep::character() const {
  std::vector<cdouble> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

bool GroupWithIrreps::has_irrep(int label) const {
  for (const auto& ir : irreps)
    if (ir.label == label) return true;
  return false;
}

const Irrep& GroupWithIrreps::irrep_by_label(int label) const {
  for (const auto& ir : irreps)
    if (ir.label == label) return ir;
  throw InvalidInput("irrep label " + std::to_string(label) + " not present in group " + name);
}

std::vector<std::vector<std::size_t>> conjugacy_classes_from_table(
    const std::vector<std::vector<std::size_t>>& cayley,
    const std::vector<std::size_t>& inverses) {
  const std::size_t n = cayley.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t g = 0; g < n; ++g) {
    if (seen[g]) continue;
    std::set<std::size_t> cls;
    for (std::size_t h = 0; h < n; ++h) {
      cls.insert(cayley[cayley[h][g]][inverses[h]]);  // h g h^{-1}
    }
    std::vector<std::size_t> sorted(cls.begin(), cls.end());
    for (std::size_t x : sorted) seen[x] = true;
    classes.push_back(std::move(sorted));
  }
  // Order classes by their smallest element so output is deterministic.
  std::sort(classes.begin(), classes.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

GroupPtr cyclic_group(std::size_t n) {
  if (n < 2) throw InvalidOrder("cyclic_group: order must be >= 2");
  auto g = std::make_shared<GroupWithIrreps>();
  g->name = "C" + std::to_string(n);
  g->order = n;
  g->identity_index = 0;
  g->cayley.assign(n, std::vector<std::size_t>(n));
  g->inverses.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) g->cayley[a][b] = (a + b) % n;
    g->inverses[a] = (n - a) % n;
    g->element_names.push_back(a == 0 ? "e" : (a == 1 ? "a" : "a^" + std::to_string(a)));
  }
  for (std::size_t p = 0; p < n; ++p) {
    Irrep ir;
    ir.label = static_cast<int>(p);
    ir.dim = 1;
    for (std::size_t k = 0; k < n; ++k) {
      CMatrix m(1, 1);
      const double angle = kTwoPi * static_cast<double>(p * k % n) / static_cast<double>(n);
      m(0, 0) = std::polar(1.0, angle);
      ir.matrices.push_back(std::move(m));
    }
    g->irreps.push_back(std::move(ir));
  }
  g->conjugacy_classes = conjugacy_classes_from_table(g->cayley, g->inverses);
  validate_group(*g);
  return g;
}

GroupPtr dihedral_group(std::size_t n) {
  if (n < 3 || n % 2 == 0) {
    throw InvalidOrder("dihedral_group: built-in supports odd n >= 3 only");
  }
  const std::size_t order = 2 * n;
  auto g = std::make_shared<GroupWithIrreps>();
  g->name = "D" + std::to_string(n);
  g->order = order;
  g->identity_index = 0;

  // Element k < n is the rotation r^k; element n + k is the reflection r^k s.
  auto rot = [n](std::size_t k) { return k % n; };
  auto ref = [n](std::size_t k) { return n + (k % n); };
  g->cayley.assign(order, std::vector<std::size_t>(order));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      g->cayley[rot(a)][rot(b)] = rot(a + b);        // r^a r^b = r^{a+b}
      g->cayley[rot(a)][ref(b)] = ref(a + b);        // r^a (r^b s) = r^{a+b} s
      g->cayley[ref(a)][rot(b)] = ref(a + n - b);    // (r^a s) r^b = r^{a-b} s
      g->cayley[ref(a)][ref(b)] = rot(a + n - b);    // (r^a s)(r^b s) = r^{a-b}
    }
  }
  g->inverses.resize(order);
  for (std::size_t k = 0; k < n; ++k) {
    g->inverses[rot(k)] = rot(n - k);
    g->inverses[ref(k)] = ref(k);  // reflections are involutions
  }
  for (std::size_t k = 0; k < n; ++k) {
    g->element_names.push_back(k == 0 ? "e" : (k == 1 ? "r" : "r^" + std::to_string(k)));
  }
  for (std::size_t k = 0; k < n; ++k) {
    g->element_names.push_back(k == 0 ? "s" : (k == 1 ? "rs" : "r^" + std::to_string(k) + "s"));
  }

  // Label 1: trivial. Label 2: sign. Labels 3..: two-dimensional blocks.
  Irrep trivial;
  trivial.label = 1;
  trivial.dim = 1;
  Irrep sign;
  sign.label = 2;
  sign.dim = 1;
  for (std::size_t e = 0; e < order; ++e) {
    CMatrix one(1, 1), sgn(1, 1);
    one(0, 0) = 1.0;
    sgn(0, 0) = (e < n) ? 1.0 : -1.0;
    trivial.matrices.push_back(std::move(one));
    sign.matrices.push_back(std::move(sgn));
  }
  g->irreps.push_back(std::move(trivial));
  g->irreps.push_back(std::move(sign));

  for (std::size_t j = 1; j <= (n - 1) / 2; ++j) {
    Irrep two;
    two.label = static_cast<int>(2 + j);
    two.dim = 2;
    for (std::size_t k = 0; k < n; ++k) {
      const double theta = kTwoPi * static_cast<double>(j * k % n) / static_cast<double>(n);
      CMatrix m(2, 2);
      m(0, 0) = std::cos(theta);
      m(0, 1) = -std::sin(theta);
      m(1, 0) = std::sin(theta);
      m(1, 1) = std::cos(theta);
      two.matrices.push_back(std::move(m));
    }
    for (std::size_t k = 0; k < n; ++k) {
      // Gamma(r^k s) = Gamma(r^k) diag(1, -1)
      CMatrix m = two.matrices[k];
      m(0, 1) = -m(0, 1);
      m(1, 1) = -m(1, 1);
      two.matrices.push_back(std::move(m));
    }
    g->irreps.push_back(std::move(two));
  }

  g->conjugacy_classes = conjugacy_classes_from_table(g->cayley, g->inverses);
  validate_group(*g);
  return g;
}

void validate_group(const GroupWithIrreps& g) {
  const std::size_t n = g.order;
  if (n == 0 || g.cayley.size() != n) {
    throw ValidationError("group validation: order/table size mismatch");
  }
  for (const auto& row : g.cayley) {
    if (row.size() != n) throw ValidationError("group validation: ragged Cayley table");
    for (std::size_t x : row) {
      if (x >= n) throw ValidationError("group validation: table entry out of range");
    }
  }

  // Latin square: each row and column is a permutation.
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[g.cayley[i][j]] || col_seen[g.cayley[j][i]]) {
        throw ValidationError("group validation: Cayley table is not a Latin square");
      }
      row_seen[g.cayley[i][j]] = true;
      col_seen[g.cayley[j][i]] = true;
    }
  }

  // Associativity, exhaustive (order is capped at 64).
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        if (g.cayley[g.cayley[a][b]][c] != g.cayley[a][g.cayley[b][c]]) {
          throw ValidationError("group validation: associativity fails");
        }
      }

  const std::size_t e = g.identity_index;
  if (e >= n) throw ValidationError("group validation: identity index out of range");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.cayley[e][a] != a || g.cayley[a][e] != a) {
      throw ValidationError("group validation: identity element does not act as identity");
    }
  }
  if (g.inverses.size() != n) throw ValidationError("group validation: inverses size mismatch");
  for (std::size_t a = 0; a < n; ++a) {
    if (g.cayley[a][g.inverses[a]] != e || g.cayley[g.inverses[a]][a] != e) {
      throw ValidationError("group validation: inverse table inconsistent");
    }
  }

  // Irrep set: distinct labels, unitarity, homomorphism, completeness,
  // orthonormal characters, irreducibility.
  std::set<int> labels;
  std::size_t dim_sq_sum = 0;
  for (const auto& ir : g.irreps) {
    if (!labels.insert(ir.label).second) {
      throw ValidationError("group validation: duplicate irrep label " +
                            std::to_string(ir.label));
    }
    if (ir.dim == 0 || ir.matrices.size() != n) {
      throw ValidationError("group validation: irrep matrix count/dim mismatch");
    }
    dim_sq_sum += ir.dim * ir.dim;
    const CMatrix id = CMatrix::identity(ir.dim);
    for (const auto& m : ir.matrices) {
      if (m.rows() != ir.dim || m.cols() != ir.dim) {
        throw ValidationError("group validation: irrep matrix has wrong shape");
      }
      if (max_abs_diff(m * m.adjoint(), id) > tol::hermitian) {
        throw ValidationError("group validation: non-unitary irrep matrix (label " +
                              std::to_string(ir.label) + ")");
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (max_abs_diff(ir.matrices[a] * ir.matrices[b], ir.matrices[g.cayley[a][b]]) >
            tol::hermitian) {
          throw ValidationError("group validation: homomorphism failure (label " +
                                std::to_string(ir.label) + ")");
        }
      }
    // (1/|G|) sum_g |chi(g)|^2 = 1 for an irreducible representation.
    double norm2 = 0.0;
    for (const auto& m : ir.matrices) norm2 += std::norm(m.trace());
    if (std::abs(norm2 / static_cast<double>(n) - 1.0) > tol::hermitian) {
      throw ValidationError("group validation: representation is reducible (label " +
                            std::to_string(ir.label) + ")");
    }
  }
  if (dim_sq_sum != n) throw ValidationError("incomplete irrep set");

  for (std::size_t p = 0; p < g.irreps.size(); ++p) {
    const auto chi_p = g.irreps[p].character();
    for (std::size_t q = 0; q <= p; ++q) {
      const auto chi_q = g.irreps[q].character();
      cdouble ip = 0.0;
      for (std::size_t a = 0; a < n; ++a) ip += chi_p[a] * std::conj(chi_q[a]);
      ip /= static_cast<double>(n);
      const double expect = (p == q) ? 1.0 : 0.0;
      if (std::abs(ip - expect) > tol::hermitian) {
        throw ValidationError("group validation: character rows not orthonormal");
      }
    }
  }

  if (g.conjugacy_classes.empty()) {
    throw ValidationError("group validation: conjugacy classes missing");
  }
}

std::vector<cdouble> Representation::character() const {
  std::vector<cdouble> chi;
  chi.reserve(matrices.size());
  for (const auto& m : matrices) chi.push_back(m.trace());
  return chi;
}

Representation irrep_rep(const GroupPtr& group, int label) {
  const Irrep& ir = group->irrep_by_label(label);
  Representation r;
  r.group = group;
  r.dim = ir.dim;
  r.matrices = ir.matrices;
  r.irrep_content = {label};
  return r;
}

Representation direct_sum_rep(const GroupPtr& group, const std::vector<int>& labels) {
  std::set<int> seen;
  for (int l : labels) {
    if (!seen.insert(l).second) {
      throw RepeatedIrrep("direct_sum_rep: repeated irrep label " + std::to_string(l) +
                          "; multiplicity greater than one is unsupported");
    }
  }
  if (labels.empty()) throw InvalidInput("direct_sum_rep: no labels given");

  std::size_t dim = 0;
  std::vector<const Irrep*> parts;
  for (int l : labels) {
    parts.push_back(&group->irrep_by_label(l));
    dim += parts.back()->dim;
  }
  Representation r;
  r.group = group;
  r.dim = dim;
  r.irrep_content = labels;
  r.matrices.reserve(group->order);
  for (std::size_t g = 0; g < group->order; ++g) {
    CMatrix m(dim, dim);
    std::size_t off = 0;
    for (const Irrep* ir : parts) {
      const CMatrix& block = ir->matrices[g];
      for (std::size_t i = 0; i < ir->dim; ++i)
        for (std::size_t j = 0; j < ir->dim; ++j) m(off + i, off + j) = block(i, j);
      off += ir->dim;
    }
    r.matrices.push_back(std::move(m));
  }
  return r;
}

Representation tensor_product_rep(const Representation& r1, const Representation& r2) {
  if (r1.group != r2.group) throw GroupMismatch("tensor_product_rep: different groups");
  Representation r;
  r.group = r1.group;
  r.dim = r1.dim * r2.dim;
  r.matrices.reserve(r1.matrices.size());
  for (std::size_t g = 0; g < r1.matrices.size(); ++g) {
    r.matrices.push_back(kron(r1.matrices[g], r2.matrices[g]));
  }
  return r;  // irrep_content intentionally empty
}

Representation direct_sum(const Representation& r1, const Representation& r2) {
  if (r1.group != r2.group) throw GroupMismatch("direct_sum: different groups");
  Representation r;
  r.group = r1.group;
  r.dim = r1.dim + r2.dim;
  r.matrices.reserve(r1.matrices.size());
  for (std::size_t g = 0; g < r1.matrices.size(); ++g) {
    CMatrix m(r.dim, r.dim);
    for (std::size_t i = 0; i < r1.dim; ++i)
      for (std::size_t j = 0; j < r1.dim; ++j) m(i, j) = r1.matrices[g](i, j);
    for (std::size_t i = 0; i < r2.dim; ++i)
      for (std::size_t j = 0; j < r2.dim; ++j) m(r1.dim + i, r1.dim + j) = r2.matrices[g](i, j);
    r.matrices.push_back(std::move(m));
  }
  if (!r1.irrep_content.empty() && !r2.irrep_content.empty()) {
    r.irrep_content = r1.irrep_content;
    r.irrep_content.insert(r.irrep_content.end(), r2.irrep_content.begin(),
                           r2.irrep_content.end());
  }
  return r;
}

}  // namespace gasym
