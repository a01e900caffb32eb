#pragma once

#include <stdexcept>
#include <string>

namespace lieweight {

/// Operands live on charts of different dimension.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A construction hit a condition the theory rules out (for example a
/// vanishing normalization constant). Indicates a bug or invalid input data.
class InternalInconsistency : public std::logic_error {
 public:
  explicit InternalInconsistency(const std::string& what) : std::logic_error(what) {}
};

/// A precondition on the geometric input is not met (cleanness not
/// certified, denominator vanishing on N, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lieweight
