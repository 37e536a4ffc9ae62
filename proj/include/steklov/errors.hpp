#pragma once

#include <stdexcept>
#include <string>

namespace steklov {

// Error taxonomy shared by all modules.  The CLI maps kinds to exit codes:
// every user-caused kind (Parameter through Unsupported) exits with 2 and
// violated internal invariants (Internal) exit with 3.  Inequality violations
// are reported through InequalityReport::pass, not through exceptions.
enum class ErrorKind {
  Parameter,     // invalid argument values (counts, exponents, weights)
  Parse,         // malformed input file
  Config,        // inconsistent run configuration
  Geometry,      // degenerate or self-intersecting geometry
  Topology,      // unsupported mesh topology for the requested operation
  Precondition,  // runtime precondition (e.g. input not harmonic)
  Construction,  // an internal construction could not be completed
  Index,         // spectrum/matrix index out of range
  Unsupported,   // valid request outside the implemented scope
  Internal,      // "cannot happen": an internal invariant failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace steklov
