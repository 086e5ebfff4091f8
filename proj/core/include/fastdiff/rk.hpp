#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "fastdiff/errors.hpp"

namespace fastdiff {

/// Controls for the embedded adaptive pair. Error per accepted step is kept
/// at or below rel_tol relative to |y| componentwise (plus the scale floors
/// supplied by the caller).
struct StepControl {
  double rel_tol = 1e-12;
  double safety = 0.9;
  double max_growth = 5.0;
  double max_shrink = 0.2;
  double first_step = 0.0;  ///< 0 -> start from a small fraction of the cap
};

/// Dormand-Prince 5(4) embedded pair with FSAL.
///
/// rhs(x, y, dydx)          fills the derivative
/// step_cap(x)              hard cap on |h| at abscissa x
/// scale_floor(x, y, s)     fills per-component absolute error scales that are
///                          added to rel_tol*|y_i|
/// on_accept(x, y, dydx)    called after each accepted step (and once at x0)
///
/// Throws IntegrationFailure if step control collapses below the machine
/// floor. Integration is forward only (x1 > x0).
template <std::size_t N, class Rhs, class StepCap, class ScaleFloor,
          class OnAccept>
void integrate_dp54(Rhs&& rhs, double x0, double x1, std::array<double, N> y,
                    const StepControl& ctl, StepCap&& step_cap,
                    ScaleFloor&& scale_floor, OnAccept&& on_accept) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                          c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // y5 - y4 error weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                          e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  using Vec = std::array<double, N>;
  const double eps = std::numeric_limits<double>::epsilon();

  double x = x0;
  Vec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, scale;
  rhs(x, y, k1);
  on_accept(x, y, k1);

  double h = ctl.first_step > 0.0 ? ctl.first_step : 1e-3 * step_cap(x);
  int consecutive_rejects = 0;

  while (x < x1) {
    h = std::min({h, step_cap(x), x1 - x});
    if (!(h > 16.0 * eps * std::max(std::abs(x), 1e-300))) {
      throw IntegrationFailure("integrate_dp54: step underflow at x = " +
                               std::to_string(x));
    }

    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    rhs(x + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(x + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    rhs(x + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] =
          y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs(x + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                            a64 * k4[i] + a65 * k5[i]);
    rhs(x + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    rhs(x + h, ynew, k7);

    scale_floor(x, y, scale);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                             e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc =
          ctl.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i])) + scale[i];
      const double ratio = std::abs(ei) / sc;
      // non-finite states must reject the step, never slip through max()
      err = std::isfinite(ratio) ? std::max(err, ratio) : 1e300;
    }

    if (err <= 1.0) {
      x += h;
      y = ynew;
      k1 = k7;  // FSAL
      on_accept(x, y, k1);
      consecutive_rejects = 0;
      const double grow =
          err > 0.0 ? ctl.safety * std::pow(err, -0.2) : ctl.max_growth;
      h *= std::min(ctl.max_growth, std::max(1.0, grow));
    } else {
      ++consecutive_rejects;
      if (consecutive_rejects > 200) {
        throw IntegrationFailure(
            "integrate_dp54: persistent step rejection at x = " +
            std::to_string(x));
      }
      h *= std::max(ctl.max_shrink, ctl.safety * std::pow(err, -0.2));
    }
  }
}

}  // namespace fastdiff
