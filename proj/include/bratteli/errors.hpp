#pragma once

#include <stdexcept>
#include <string>

namespace bratteli {

// Error taxonomy maps onto the CLI exit-code contract:
//   input errors -> 2, horizon/scale exhaustion -> 3,
//   verification findings are reports, not exceptions.
enum class ErrorKind {
  InvalidInput,   // malformed or contract-violating input
  Unsupported,    // input outside the supported model (e.g. Q policy)
  Exhausted,      // search ran past the truncation horizon
  CapExceeded,    // path universe beyond the desk-scale cap
  Internal,       // broken internal invariant; a bug, not a finding
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace bratteli
