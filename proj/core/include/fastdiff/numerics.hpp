#pragma once

#include <span>
#include <vector>

namespace fastdiff {

/// Ordinary least squares y = intercept + slope*x.
struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r2 = 1.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x); x, y must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

/// count points, geometrically spaced from lo to hi inclusive (lo, hi > 0).
std::vector<double> geomspace(double lo, double hi, int count);

/// count points, uniformly spaced from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, int count);

/// Central first-derivative weight-exact on a non-uniform 3-point stencil.
double central_derivative(double x_prev, double x0, double x_next,
                          double f_prev, double f0, double f_next);

}  // namespace fastdiff
