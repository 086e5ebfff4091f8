#pragma once

#include <utility>
#include <vector>

#include "fastdiff/interp.hpp"
#include "fastdiff/numerics.hpp"
#include "fastdiff/params.hpp"

namespace fastdiff {

struct ProfileOptions {
  double rho_max = 10.0;
  /// Contract-level tolerance pair of the returned solution. The stepper
  /// runs its per-step control one order tighter (rel_tol/10, floored at
  /// 3e-15) so that accumulated error stays near rel_tol; abs_tol adds an
  /// absolute error floor on wbar (0 keeps the control purely relative,
  /// which is well-posed since wbar >= wbar(0) > 0).
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  /// Initialization abscissa; 0 selects
  ///   rho0 = min(1e-4, (rel_tol/|wbar_rhorho(0)|)^{1/3}),
  /// which keeps the truncated-Taylor error at rho0 below rel_tol.
  double rho0 = 0.0;
};

/// The desingularized radial profile wbar(rho) = r^{alpha_m/beta} v(r),
/// rho = r^{rho1/beta}, integrated outward from a series-initialized point
/// near rho = 0, with evaluators for v(r) and v'(r).
class ProfileSolution {
 public:
  ProfileSolution(Params p, DerivedConstants c, ProfileOptions opt,
                  std::vector<double> rho, std::vector<double> wbar,
                  std::vector<double> wbar_rho, std::vector<double> wbar_rho2);

  const Params& params() const { return params_; }
  const DerivedConstants& consts() const { return consts_; }
  const std::vector<double>& rho_grid() const { return rho_; }
  const std::vector<double>& wbar_grid() const { return wbar_; }
  const std::vector<double>& wbar_rho_grid() const { return wbar_rho_; }
  double rho0() const { return opt_.rho0; }
  double rho_max() const { return opt_.rho_max; }
  double rel_tol() const { return opt_.rel_tol; }
  double abs_tol() const { return opt_.abs_tol; }
  const OriginExpansion& origin() const { return origin_; }

  /// Taylor form below rho0; interpolated above. Throws std::out_of_range
  /// beyond rho_max.
  double wbar_at(double rho) const;
  double wbar_rho_at(double rho) const;

  double rho_of_r(double r) const;
  double r_of_rho(double rho) const;
  double r_max() const;

  /// v(r) = r^{-alpha_m/beta} wbar(r^{rho1/beta}). Throws std::out_of_range
  /// for r = 0 (v blows up there; see the scaled limits) and beyond the
  /// integrated range.
  double v(double r) const;

  /// Assembled from wbar, wbar_rho through
  ///   r^{alpha_m/beta+1} v'(r)
  ///     = (rho1/beta) rho wbar_rho(rho) - (alpha_m/beta) r^{alpha_m/beta} v.
  double v_prime(double r) const;

  /// Second derivative through the radial equation identity
  ///   v'' = (1-m) v^{-1} (v')^2 - (n-1) v'/r - alpha_m v^{2-m}
  ///         - beta r v^{1-m} v'.
  double v_second(double r) const;

  /// lim_{r->0} r^{alpha_m/beta} v(r) = lambda^{-rho1/((1-m)beta)}.
  double v_scaled_origin_limit() const { return origin_.w0; }
  /// lim_{r->0} r^{alpha_m/beta+1} v'(r) = -(alpha_m/beta) * that limit.
  double v_prime_scaled_origin_limit() const;

 private:
  Params params_;
  DerivedConstants consts_;
  ProfileOptions opt_;
  OriginExpansion origin_;
  std::vector<double> rho_, wbar_, wbar_rho_;
  CubicHermite wbar_itp_, wbar_rho_itp_;
};

/// Second-order Taylor value and derivative of wbar at rho, from the origin
/// expansion coefficients.
std::pair<double, double> taylor_init(const Params& p,
                                      const DerivedConstants& c, double rho);

/// Integrates the first-order system in (wbar, y), y = wbar_rho/wbar:
///   wbar' = y wbar
///   y'    = a3/rho^2 - m y^2 - a1 y/rho - (a2/rho^2) y wbar^{1-m},
/// with the step capped at rho/4 (geometric, i.e. log-rho, stepping once
/// rho > 1). Requires the strict regime. Throws IntegrationFailure or
/// MonotonicityViolation.
ProfileSolution integrate_profile(const Params& p, const DerivedConstants& c,
                                  const ProfileOptions& opt = {});

/// Per-node slack against the two-sided envelope
///   w0 <= wbar(rho) <= w0 exp(Cm lambda^{rho1/beta} rho),
/// reported logarithmically (== relative slack to first order), which keeps
/// the upper bound representable at large rho.
struct EnvelopeReport {
  std::vector<double> rho;
  std::vector<double> lower_slack;  ///< log wbar - log w0
  std::vector<double> upper_slack;  ///< log bound - log wbar
  double min_lower_slack = 0;
  double min_upper_slack = 0;
  bool admissible = true;  ///< upper bound only valid when admissible
  bool ok(double tol) const {
    return min_lower_slack >= -tol && (!admissible || min_upper_slack >= -tol);
  }
};

EnvelopeReport check_envelope(const ProfileSolution& s);

/// Finite-difference substitution of the stored (wbar, wbar_rho) grid into
/// the profile equation. rel_residual is normalized by the source magnitude
/// a3/rho^2; bound = kBoundFactor * (rel_tol + (h/rho)^2) with h the larger
/// adjacent spacing (the (h/rho)^2 term is the non-uniform-stencil truncation
/// scale).
struct OdeResidualReport {
  std::vector<double> rho;
  std::vector<double> rel_residual;
  std::vector<double> bound;
  double worst_ratio = 0;  ///< max rel_residual/bound
  bool all_within = true;
  static constexpr double kBoundFactor = 10.0;
};

OdeResidualReport ode_residual(const ProfileSolution& s);

/// Least-squares slope of wbar over the grid nodes with rho in
/// [rho0, 10*rho0]; estimates wbar_rho(0).
LineFit origin_slope(const ProfileSolution& s);

/// |wbar(rho) - quadratic Taylor| / rho^2.
double taylor_residual_over_rho2(const ProfileSolution& s, double rho);

}  // namespace fastdiff
