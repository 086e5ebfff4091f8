#pragma once

#include <vector>

namespace fastdiff {

/// Piecewise cubic Hermite interpolant on a strictly increasing grid, built
/// from nodal values and nodal derivatives.
///
/// With monotone=true the nodal slopes are run through the Fritsch-Carlson
/// safeguard, so monotone data yields a monotone (hence sign-preserving)
/// interpolant. When the supplied derivatives already satisfy the safeguard
/// (smooth well-resolved data) they are used untouched and the interpolant is
/// 4th-order accurate.
class CubicHermite {
 public:
  CubicHermite() = default;
  CubicHermite(std::vector<double> x, std::vector<double> f,
               std::vector<double> df, bool monotone);

  double value(double x) const;
  double derivative(double x) const;

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

 private:
  std::size_t cell(double x) const;

  std::vector<double> x_, f_, d_;
};

}  // namespace fastdiff
