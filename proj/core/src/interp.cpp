#include "fastdiff/interp.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace fastdiff {

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> f,
                           std::vector<double> df, bool monotone)
    : x_(std::move(x)), f_(std::move(f)), d_(std::move(df)) {
  if (x_.size() < 2 || x_.size() != f_.size() || x_.size() != d_.size()) {
    throw std::invalid_argument("CubicHermite: inconsistent node arrays");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw std::invalid_argument("CubicHermite: abscissae not increasing");
    }
  }
  if (!monotone) return;

  // Fritsch-Carlson: clamp slopes into the monotonicity region of each cell.
  for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
    const double delta = (f_[i + 1] - f_[i]) / (x_[i + 1] - x_[i]);
    if (delta == 0.0) {
      d_[i] = 0.0;
      d_[i + 1] = 0.0;
      continue;
    }
    double a = d_[i] / delta;
    double b = d_[i + 1] / delta;
    if (a < 0.0) d_[i] = 0.0, a = 0.0;
    if (b < 0.0) d_[i + 1] = 0.0, b = 0.0;
    const double s = a * a + b * b;
    if (s > 9.0) {
      const double tau = 3.0 / std::sqrt(s);
      d_[i] = tau * a * delta;
      d_[i + 1] = tau * b * delta;
    }
  }
}

std::size_t CubicHermite::cell(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double CubicHermite::value(double x) const {
  const std::size_t i = cell(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * f_[i] + h * h10 * d_[i] + h01 * f_[i + 1] + h * h11 * d_[i + 1];
}

double CubicHermite::derivative(double x) const {
  const std::size_t i = cell(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double g00 = (6 * t2 - 6 * t) / h;
  const double g10 = 3 * t2 - 4 * t + 1;
  const double g01 = (-6 * t2 + 6 * t) / h;
  const double g11 = 3 * t2 - 2 * t;
  return g00 * f_[i] + g10 * d_[i] + g01 * f_[i + 1] + g11 * d_[i + 1];
}

}  // namespace fastdiff
