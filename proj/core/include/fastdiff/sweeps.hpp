#pragma once

#include <string>
#include <vector>

#include "fastdiff/parabolic.hpp"
#include "fastdiff/params.hpp"

namespace fastdiff {

/// One m-value of a singular-limit study. For the elliptic sweep c0/c1/c2
/// hold the sup-norm differences of v, v', v'' against the m = 0 reference
/// on the annulus mesh; the parabolic sweep fills c0 with the space-time
/// sup-norm and the sandwich fields.
struct SweepRow {
  double m = 0;
  double c0 = 0;
  double c1 = 0;
  double c2 = 0;
  double sandwich_worst_lower = 0;
  double sandwich_worst_upper = 0;
  double envelope_gap = 0;   ///< min (upper-lower)/upper over the data
  double disc_error = 0;     ///< measured vs the exact self-similar lift
  bool sandwich_ok = true;   ///< slacks >= -5 * disc_error
  bool failed = false;       ///< per-m failures recorded, not fatal
  std::string error;
};

struct SweepReport {
  std::string kind;  ///< "elliptic" or "parabolic"
  std::vector<SweepRow> rows;  ///< ordered as given (decreasing m)
  double annulus_lo = 0;
  double annulus_hi = 0;
  double fitted_rate = 0;  ///< log-log slope of c0 vs m (diagnostic only)
  double fit_r2 = 0;
};

struct EllipticSweepOptions {
  std::vector<double> m_values{0.2, 0.1, 0.05, 0.025};
  double r_lo = 0.5;
  double r_hi = 2.0;
  int mesh_points = 200;  ///< fixed log-uniform mesh, shared across m
  double profile_tol = 1e-10;
};

/// sup-norms of v^(m)-v^(0) and its first two radial derivatives on the
/// annulus, per m, against the m = 0 profile computed by the same code path.
/// An m = 0 entry in m_values reuses the reference (its row is exactly 0).
SweepReport elliptic_sweep(const Params& base, const EllipticSweepOptions& opt);

struct ParabolicSweepOptions {
  std::vector<double> m_values{0.2, 0.1, 0.05};
  double lambda1 = 2.0;  ///< lower envelope normalization (lambda1 > lambda2)
  double lambda2 = 1.0;
  AnnulusGrid grid = AnnulusGrid::make(0.05, 20.0, 201, 0.5, 400);
  std::string init = "geomean";  ///< "lower" | "upper" | "geomean"
  double window_lo = 0.1;  ///< time window, fractions of t_end
  double window_hi = 0.9;
  double profile_tol = 1e-10;
};

/// Space-time sup-norm of u^(m)-u^(0) over interior nodes and the stated
/// time window, with initial/boundary data built from each m's own envelope
/// pair; every u^(m) is sandwich-checked against its own envelopes with the
/// per-m measured discretization error.
SweepReport parabolic_sweep(const Params& base,
                            const ParabolicSweepOptions& opt);

struct RateFit {
  double rate = 0;
  double r2 = 0;
};

/// Least-squares slope of log(c0) vs log(m) over the rows with m > 0.
/// Purely descriptive. Throws DegenerateFit with fewer than 3 usable rows or
/// norms at solver-noise level (< 1e-13).
RateFit fit_rate(const SweepReport& report);

}  // namespace fastdiff
