#pragma once

#include <stdexcept>
#include <string>

namespace liftgap {

// Error families map onto CLI exit codes: validation -> 2 (bad input),
// precondition -> 3 (well-formed input, unmet hypothesis), internal -> 4
// (a check that should never fail did fail).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InternalCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LIFTGAP_DEFINE_ERROR(Name, Base)          \
  class Name : public Base {                      \
   public:                                        \
    using Base::Base;                             \
  }

LIFTGAP_DEFINE_ERROR(DisconnectedGraph, ValidationError);
LIFTGAP_DEFINE_ERROR(LeafVertex, ValidationError);
LIFTGAP_DEFINE_ERROR(DuplicateEdgeId, ValidationError);
LIFTGAP_DEFINE_ERROR(UnknownVertex, ValidationError);
LIFTGAP_DEFINE_ERROR(NotSymmetric, ValidationError);
LIFTGAP_DEFINE_ERROR(NotASpanningTree, ValidationError);
LIFTGAP_DEFINE_ERROR(InvalidChoice, ValidationError);
LIFTGAP_DEFINE_ERROR(NotAPermutation, ValidationError);
LIFTGAP_DEFINE_ERROR(NotUnit, ValidationError);
LIFTGAP_DEFINE_ERROR(NegativeEntry, ValidationError);
LIFTGAP_DEFINE_ERROR(NotNonnegative, ValidationError);
LIFTGAP_DEFINE_ERROR(NegativeMoment, ValidationError);
LIFTGAP_DEFINE_ERROR(GraphMismatch, ValidationError);

LIFTGAP_DEFINE_ERROR(ConnectivityUnreachable, PreconditionError);
LIFTGAP_DEFINE_ERROR(NotAdmissible, PreconditionError);
LIFTGAP_DEFINE_ERROR(Disconnected, PreconditionError);
LIFTGAP_DEFINE_ERROR(NotGroundState, PreconditionError);
LIFTGAP_DEFINE_ERROR(NotPositive, PreconditionError);

LIFTGAP_DEFINE_ERROR(ConvergenceFailure, InternalCheckError);

#undef LIFTGAP_DEFINE_ERROR

}  // namespace liftgap
