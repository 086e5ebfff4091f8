#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "fastdiff/profile.hpp"

namespace fastdiff {

/// Tail diagnostics for w(r) = r^2 v(r). Assertion-grade only at m = 0,
/// where the limit is w_inf; for m > 0 everything is reported, nothing
/// asserted.
struct FarFieldReport {
  std::vector<double> r;
  std::vector<double> w;
  double raw_limit = 0;           ///< last sample
  double extrapolated_limit = 0;  ///< least-squares fit of w = a + b/r
  double target = 0;              ///< w_inf from the derived constants
  double rel_error_raw = 0;
  double rel_error_extrapolated = 0;
  double tail_slope = 0;  ///< slope of log|w - target| vs log r
  /// False when the measured tail slope strays from -1 by more than 0.3, in
  /// which case the 1/r correction model (see docs/farfield_tail.md) does not
  /// apply and extrapolated_limit should not be trusted.
  bool model_reliable = true;
  bool assertion_mode = false;  ///< m == 0
  std::string closest_branch;   ///< "w_inf", "w1" or "zero"
};

/// Samples w(r) at the given radii (strictly increasing); the 1/r correction
/// model is fitted on the last three samples (the tail). Throws
/// InsufficientRange when the profile does not reach the largest radius.
FarFieldReport farfield_limit(const ProfileSolution& s,
                              std::span<const double> r_values);

/// Intercept of the least-squares fit w = a + b/r; exact when the samples
/// follow a + b/r exactly.
double extrapolate_inverse_r(std::span<const double> r,
                             std::span<const double> w);

/// r in {10, 10^{1.5}, 10^2, 10^{2.5}, 10^3}.
std::vector<double> default_radius_ladder();

/// Residual of the m = 0 tail equation
///   (w'/w)' + (n-1)/r (w'/w) + (beta/r) w' + ((alpha-2beta) w - 2(n-2))/r^2
/// for an arbitrary w evaluator, via central differences on the 5-point
/// stencil {r-2h, ..., r+2h}; O(h^2) for smooth w.
double w_ode_residual(const std::function<double(double)>& w, int n,
                      double alpha, double beta, double r, double h);

/// Same residual evaluated on w(r) = r^2 v(r) of an integrated profile
/// (m = 0 only; std::domain_error otherwise, std::out_of_range if the
/// stencil leaves the profile range).
double w_ode_residual(const ProfileSolution& s, double r, double h);

}  // namespace fastdiff
