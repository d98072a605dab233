#pragma once

#include <stdexcept>
#include <string>

namespace perturb_rank {

/// Base of every error raised by the library. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PERTURB_RANK_DEFINE_ERROR(Name) \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  };

// exact_linalg
PERTURB_RANK_DEFINE_ERROR(InconsistentSystem)
PERTURB_RANK_DEFINE_ERROR(DegenerateConstraint)
PERTURB_RANK_DEFINE_ERROR(SizeLimitExceeded)
PERTURB_RANK_DEFINE_ERROR(ZeroPolynomial)

// model
PERTURB_RANK_DEFINE_ERROR(KernelDimensionError)
PERTURB_RANK_DEFINE_ERROR(NotStable)
PERTURB_RANK_DEFINE_ERROR(NonNormalizable)
PERTURB_RANK_DEFINE_ERROR(GenerationFailed)

// asymptotics
PERTURB_RANK_DEFINE_ERROR(NotDissipative)
PERTURB_RANK_DEFINE_ERROR(SingularCovariance)
PERTURB_RANK_DEFINE_ERROR(InvalidQuery)

// symbolic
PERTURB_RANK_DEFINE_ERROR(ZeroDenominator)
PERTURB_RANK_DEFINE_ERROR(RankIdentityFailed)

// io / cli
PERTURB_RANK_DEFINE_ERROR(ParseError)
PERTURB_RANK_DEFINE_ERROR(DimensionError)
PERTURB_RANK_DEFINE_ERROR(IoError)

#undef PERTURB_RANK_DEFINE_ERROR

}  // namespace perturb_rank
