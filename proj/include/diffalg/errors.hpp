#pragma once

#include <stdexcept>
#include <string>

namespace diffalg {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (presentation files, spec files, plan files, scalars,
// CLI word arguments). Maps to exit code 2 in the CLI.
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error("parse error: " + msg) {}
};

// Semantically invalid but well-formed input (violated parameter constraint,
// inapplicable transform, ...). Maps to exit code 1 in the CLI.
struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A named parameter or shape constraint was violated when building or
// validating an object.
struct ConstraintError : DomainError {
  explicit ConstraintError(const std::string& condition)
      : DomainError("constraint violated: " + condition) {}
};

// An operation that requires the diamond property was called on a
// presentation that fails it.
struct NotPBWError : DomainError {
  explicit NotPBWError(const std::string& detail)
      : DomainError("not a PBW presentation: " + detail) {}
};

// The diamond check passed but the structural pattern expected of such a
// presentation is absent. Reaching this indicates a bug in the library, so
// it is reported loudly instead of being folded into a normal result.
struct InternalInconsistencyError : Error {
  explicit InternalInconsistencyError(const std::string& detail)
      : Error("internal inconsistency: " + detail) {}
};

// A transform that is only defined on part of its domain was applied outside
// that part.
struct NotApplicableError : DomainError {
  explicit NotApplicableError(const std::string& reason)
      : DomainError("not applicable: " + reason) {}
};

// A relabeling does not preserve the required index-order structure.
struct OrderViolationError : DomainError {
  explicit OrderViolationError(const std::string& pairs)
      : DomainError("order violation: " + pairs) {}
};

// Exhaustive state-space exploration exceeded its configured cap.
struct StateCapError : DomainError {
  explicit StateCapError(const std::string& detail)
      : DomainError("state cap exceeded: " + detail) {}
};

}  // namespace diffalg
