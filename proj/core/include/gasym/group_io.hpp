#pragma once

#include <string>

#include "gasym/groups.hpp"

namespace gasym {

/// Loads a group-definition JSON file:
///   name     string
///   order    int
///   identity int
///   cayley   order x order array of element indices
///   irreps   array of { label:int, dim:int,
///                       matrices: [order][dim][dim] entries, entry = [re, im] }
/// Files above 1 MiB and groups of order above 64 are rejected. The group is
/// fully validated before it is returned; structural problems throw
/// ParseError, mathematical ones ValidationError.
GroupPtr load_group(const std::string& path);

/// Writes a group in the same format (round-trips through load_group).
void save_group(const std::string& path, const GroupWithIrreps& group);

}  // namespace gasym
