#pragma once

#include <stdexcept>

namespace cliquelab {

// Thrown when an exhaustive enumeration or tree build would exceed its
// configured budget. Callers report it as skipped-with-reason rather than as
// a check failure.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cliquelab
