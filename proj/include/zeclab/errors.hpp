#pragma once

#include <stdexcept>

namespace zeclab {

// Shape/size disagreements between operands.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input violates a documented precondition (non-orthonormal vectors,
// malformed sign matrix, non-unit norm, ...).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Value outside the mathematical domain of an operation (non-Hermitian
// input to a PSD square root, negative spectrum, ...).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Numerically dependent spanning set where independence is required.
struct DegeneracyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested size exceeds a configured cap.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bracketing failure in certified root finding.
struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A by-construction invariant failed after construction; unreachable
// unless the build itself is wrong.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace zeclab
