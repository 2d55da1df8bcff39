#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gasym/duality.hpp"
#include "gasym/groups.hpp"

namespace gasym {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;   // worst observed deviation
  double tolerance = 0.0;  // what it was compared against
  std::string detail;
};

struct VerifyOptions {
  GroupPtr group;                      // default: dihedral D3
  std::optional<Representation> rep;   // default: direct sum of all irreps
  std::uint64_t seed = 0x67a5;
  std::size_t trials = 0;              // 0 -> per-check defaults
  double perturb = 0.0;                // test hook: inflate a POVM seed so
                                       // the completeness check fails
  Tolerances tolerances;
  SolverOptions solver;
  unsigned threads = 0;
};

/// Runs the whole invariant battery (numerics, group structure, isotypic
/// projectors, discrimination bounds and solver cross-checks, duality
/// inequality sweeps, coherence identities) against the configured group and
/// representation. Returns one result per check; callers decide what a
/// failure means.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace gasym
