#pragma once

#include <stdexcept>
#include <string>

namespace ces {

enum class ErrorKind {
  InvalidArgument,
  UnsupportedOrder,
  CollapseDomain,
  UnsupportedForm,
  NonCanonicalForm,
  NoBoundState,
  NoNonvanishingZeros,
  NotBoundState,
  NoDecayingBranch,
  InvalidGrid,
  Overflow,
};

const char* to_string(ErrorKind kind);

// Every domain failure in the library is reported through this type; the CLI
// maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ces
