#pragma once

#include <string>
#include <vector>

namespace fastdiff {

/// Problem instance for the radial fast-diffusion / log-diffusion family
///   u_t = Laplacian(phi_m(u)),  phi_m(u) = (u^m - 1)/m  (log u at m = 0),
/// and its singular radial profile equation. All fields dimensionless except
/// T (time units, used only by the space-time lifts).
struct Params {
  int n = 3;          ///< spatial dimension, n >= 3
  double m = 0.0;     ///< diffusion exponent, 0 <= m < (n-2)/n
  double rho1 = 1.0;  ///< rate parameter, > 0
  double beta = 1.0;  ///< similarity exponent
  double lambda = 1.0;///< profile normalization, > 0
  double T = 1.0;     ///< extinction horizon, > 0

  bool operator==(const Params&) const = default;
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

/// Checks the admissible regime. With strict=true additionally requires
/// beta > beta0(m) (needed by everything beyond bare existence); strict=false
/// only asks beta >= beta0(m).
ValidationReport validate(const Params& p, bool strict = true);

/// Every closed-form constant derived from a Params instance.
struct DerivedConstants {
  double alpha_m = 0;  ///< (2*beta + rho1)/(1 - m)
  double alpha = 0;    ///< 2*beta + rho1 (the m = 0 exponent)
  double beta0 = 0;    ///< m*rho1/(n - 2 - n*m)
  double beta1_0 = 0;  ///< rho1/(n - 2)
  double a1 = 0;       ///< ((n-2)*beta - 2*m*alpha_m + rho1)/rho1
  double a2 = 0;       ///< beta^2/rho1
  double a3 = 0;       ///< (alpha_m*beta*(n-2) - m*alpha_m^2)/rho1^2
  double A1 = 0;       ///< a3/a2
  double A2 = 0;       ///< a3*(m*a3 - a1)/a2^2
  double Cm = 0;       ///< (alpha_m/(rho1*beta))*(n - 2 - m*alpha_m/beta)
  double w_inf = 0;    ///< 2*(n-2)/(alpha - 2*beta) = 2*(n-2)/rho1
  double w1 = 0;       ///< 2/beta (beta > 0 branch only; NaN otherwise)
};

/// Direct closed-form evaluation; m = 0 is a first-class value (all formulas
/// are polynomial in m). Throws std::domain_error when n - 2 - n*m <= 0.
DerivedConstants derive(const Params& p);

/// n - 2 - 2*m*alpha_m/beta > 0: the exponent range on which the two-sided
/// envelope bound is available. Strictly stronger than beta > beta0(m).
bool envelope_admissible(const Params& p, const DerivedConstants& c);

/// wbar and its first two derivatives at rho = 0:
///   w0 = lambda^{-rho1/((1-m)beta)},  w1 = A1*lambda^{-m*rho1/((1-m)beta)},
///   w2 = A2*lambda^{-(2m-1)*rho1/((1-m)beta)}.
struct OriginExpansion {
  double w0 = 0;
  double w1 = 0;
  double w2 = 0;
};

OriginExpansion origin_expansion(const Params& p, const DerivedConstants& c);

}  // namespace fastdiff
