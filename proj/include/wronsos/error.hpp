#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wronsos {

enum class ErrorKind {
  Structural,             // mismatched variable counts, index out of range
  Precondition,           // an operation's stated precondition does not hold
  Degenerate,             // input is degenerate (e.g. both polynomials zero)
  UndefinedGcd,           // gcd(0, 0)
  NotRepresentable,       // polynomial has a monomial outside the basis square
  Capacity,               // problem too large for the dense exact routines
  InapplicableTransform,  // elementary monomial transformation not allowed
  InconclusiveScan,       // every sample point was skipped
  NoCertificate,          // SOS certification failed
  NoCompletion,           // representation-defect system has no symmetric solution
  InternalConsistency,    // a checked identity failed after construction
  Parse,                  // polynomial grammar error
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wronsos
