#pragma once

#include <stdexcept>
#include <string>

namespace rklab {

// Base of every error raised by the library. Each failure mode named in the
// public contracts has its own subclass so callers can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RKLAB_DEFINE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

// rk_core
RKLAB_DEFINE_ERROR(ExplicitnessViolation);
RKLAB_DEFINE_ERROR(ConsistencyViolation);
RKLAB_DEFINE_ERROR(DimensionMismatch);
RKLAB_DEFINE_ERROR(NonFiniteStage);
RKLAB_DEFINE_ERROR(InvalidPair);

// problems
RKLAB_DEFINE_ERROR(UnknownProblem);
RKLAB_DEFINE_ERROR(OracleDivergence);
RKLAB_DEFINE_ERROR(InvalidProblem);

// error_analysis
RKLAB_DEFINE_ERROR(StepUnderflow);
RKLAB_DEFINE_ERROR(DegenerateFit);
RKLAB_DEFINE_ERROR(MissingOracle);

// controller
RKLAB_DEFINE_ERROR(InvalidConfig);
RKLAB_DEFINE_ERROR(StepsizeUnderflow);
RKLAB_DEFINE_ERROR(MaxStepsExceeded);
RKLAB_DEFINE_ERROR(MaxRejectsExceeded);
RKLAB_DEFINE_ERROR(NonFiniteState);

// cli
RKLAB_DEFINE_ERROR(UsageError);
RKLAB_DEFINE_ERROR(UnknownName);
RKLAB_DEFINE_ERROR(MissingDiagnostics);
RKLAB_DEFINE_ERROR(IoError);

#undef RKLAB_DEFINE_ERROR

}  // namespace rklab
