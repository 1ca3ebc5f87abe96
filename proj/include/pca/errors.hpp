#pragma once

#include <stdexcept>
#include <string>

namespace pca {

struct PcaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed term text or an operation applied to the wrong term shape.
struct TermError : PcaError {
  using PcaError::PcaError;
};

// Standard-library construction failed (missing combinators, smoke test).
struct StdlibError : PcaError {
  using PcaError::PcaError;
};

// Dialogue plan fails validation (bad answer index, unreachable step, depth).
struct PlanError : PcaError {
  using PcaError::PcaError;
};

}  // namespace pca
