#pragma once

#include <stdexcept>
#include <string>

namespace gasym {

/// Base class for every error this library throws. The message always names
/// the violated precondition or invariant.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GASYM_DEFINE_ERROR(Name)             \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

// numerics
GASYM_DEFINE_ERROR(NotHermitian)
GASYM_DEFINE_ERROR(NotPsd)
GASYM_DEFINE_ERROR(NoConvergence)
GASYM_DEFINE_ERROR(DimensionMismatch)

// groups
GASYM_DEFINE_ERROR(InvalidOrder)
GASYM_DEFINE_ERROR(ParseError)
GASYM_DEFINE_ERROR(ValidationError)
GASYM_DEFINE_ERROR(GroupMismatch)
GASYM_DEFINE_ERROR(RepeatedIrrep)

// decompose
GASYM_DEFINE_ERROR(NonIntegerMultiplicity)

// discrimination
GASYM_DEFINE_ERROR(InvalidPovm)
GASYM_DEFINE_ERROR(InvalidInput)
GASYM_DEFINE_ERROR(OutOfRange)

// duality
GASYM_DEFINE_ERROR(SubspaceViolation)
GASYM_DEFINE_ERROR(CountMismatch)
GASYM_DEFINE_ERROR(NeedTwoSubspaces)
GASYM_DEFINE_ERROR(InequalityViolation)

// coherence
GASYM_DEFINE_ERROR(InvalidDensity)

#undef GASYM_DEFINE_ERROR

}  // namespace gasym
