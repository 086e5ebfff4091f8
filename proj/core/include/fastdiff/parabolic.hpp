#pragma once

#include <span>
#include <string>
#include <vector>

#include "fastdiff/exact.hpp"
#include "fastdiff/params.hpp"

namespace fastdiff {

/// Radial annulus, log-uniform in r (uniform in s = log r), with the origin
/// excluded. Time interval [0, t_end] split into nt implicit steps.
struct AnnulusGrid {
  double r_in = 0.05;
  double r_out = 20.0;
  int nr = 201;
  double t_end = 0.5;
  int nt = 400;
  std::vector<double> r;

  static AnnulusGrid make(double r_in, double r_out, int nr, double t_end,
                          int nt);
  bool same_layout(const AnnulusGrid& o) const;
};

struct SolverOptions {
  double newton_tol = 1e-11;   ///< scaled max-norm of the nonlinear residual
  int max_newton_iters = 60;
  int max_step_halvings = 14;  ///< substep floor = dt / 2^max_step_halvings
  bool quarter_first_step = true;  ///< damps rough (L^inf-only) initial data
};

struct SchemeStats {
  long newton_iterations = 0;
  int max_newton_iterations = 0;
  double max_residual = 0;  ///< worst accepted scaled residual
  int step_retries = 0;     ///< halvings forced by Newton divergence
};

struct ParabolicSolution {
  AnnulusGrid grid;
  std::vector<double> t;                 ///< size nt+1
  std::vector<std::vector<double>> u;    ///< (nt+1) x nr, all positive
  std::string boundary_source;
  SchemeStats stats;
};

/// Backward-Euler / Newton solve of u_t = Laplacian(phi_m(u)) on the annulus
/// with Dirichlet data bc_in(t), bc_out(t) and initial node data u0.
/// Space discretization is the conservative flux form
///   (r^{n-1} phi_m(u)_r)_r / r^{n-1}
/// on the log-uniform grid. The scheme matrix is an M-matrix, so the discrete
/// comparison principle holds; positivity is maintained by the damped Newton
/// line search (never by clipping).
ParabolicSolution solve(const Params& p, const AnnulusGrid& grid,
                        std::span<const double> u0, const SpaceTimeField& bc_in,
                        const SpaceTimeField& bc_out,
                        const SolverOptions& opt = {},
                        std::string boundary_source = "custom");

/// Per-time-slice minimum slack of a solution against lower/upper space-time
/// envelopes, relative to the envelope value at each node.
struct SandwichReport {
  std::vector<double> t;
  std::vector<double> min_lower_slack;  ///< min_i (u - lower)/lower per slice
  std::vector<double> min_upper_slack;  ///< min_i (upper - u)/upper per slice
  double worst_lower = 0;
  double worst_upper = 0;
  /// min over all nodes/times of (upper - lower)/upper. Negative means the
  /// envelopes cross inside the domain, i.e. the ordering hypothesis behind
  /// the sandwich has no solution there and violations are forced.
  double min_envelope_gap = 0;
  bool ok(double tol) const { return worst_lower >= -tol && worst_upper >= -tol; }
};

SandwichReport check_sandwich(const ParabolicSolution& sol,
                              const SpaceTimeField& lower,
                              const SpaceTimeField& upper);

/// min over all nodes and times of (u_b - u_a), absolute and relative to the
/// local magnitude. Throws GridMismatch unless both solutions share a layout.
struct ComparisonReport {
  double min_difference = 0;
  double min_relative_difference = 0;
};

ComparisonReport check_comparison(const ParabolicSolution& a,
                                  const ParabolicSolution& b);

}  // namespace fastdiff
