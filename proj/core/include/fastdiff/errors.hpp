#pragma once

#include <stdexcept>

namespace fastdiff {

/// Adaptive step control collapsed (step below the machine floor).
struct IntegrationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// wbar_rho <= 0 detected on an integrated profile; signals a bug or
/// out-of-regime parameters.
struct MonotonicityViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A far-field query needs radii beyond the integrated profile range.
struct InsufficientRange : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Implicit time step failed to converge even after halving down to the
/// substep floor.
struct NewtonDivergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A converged parabolic state lost positivity (scheme bug by construction).
struct PositivityLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two parabolic solutions on different grids were compared.
struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rate fit requested on norms at or below solver noise.
struct DegenerateFit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed run configuration (missing/unknown key, bad value).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fastdiff
