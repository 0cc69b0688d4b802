#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilgeo {

enum class ErrorCode {
  InvalidShape,
  InvalidBasis,
  InvalidForm,
  DimensionMismatch,
  SchemaError,
  JacobiViolation,
  NotNilpotent,
  NotTwoStep,
  DegenerateCenter,
  DegeneratePlane,
  NotSkewAdjoint,
  SingularT,
  AdInvarianceViolation,
  NotHomomorphism,
  NotFaithful,
  TrivialSubrep,
  RhoNotSkew,
  RhoNotInjective,
  RhoUUNonzero,
  NotAdInvariant,
  UnknownExample,
  InternalInconsistency,
};

std::string_view to_string(ErrorCode code);

/// Domain error. `witness()` holds zero-based basis indices that exhibit the
/// failure (e.g. the triple violating Jacobi), when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace nilgeo
