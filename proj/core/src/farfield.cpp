#include "fastdiff/farfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fastdiff/errors.hpp"
#include "fastdiff/numerics.hpp"

namespace fastdiff {

FarFieldReport farfield_limit(const ProfileSolution& s,
                              std::span<const double> r_values) {
  if (r_values.size() < 1) {
    throw std::invalid_argument("farfield_limit: need at least one radius");
  }
  for (std::size_t i = 1; i < r_values.size(); ++i) {
    if (!(r_values[i] > r_values[i - 1])) {
      throw std::invalid_argument("farfield_limit: radii must increase");
    }
  }
  const double r_top = r_values.back();
  if (s.rho_of_r(r_top) > s.rho_max() * (1.0 + 1e-12)) {
    throw InsufficientRange("farfield_limit: profile integrated to r = " +
                            std::to_string(s.r_max()) + ", requested r = " +
                            std::to_string(r_top));
  }

  FarFieldReport rep;
  rep.assertion_mode = s.params().m == 0.0;
  rep.target = s.consts().w_inf;
  for (double r : r_values) {
    rep.r.push_back(r);
    rep.w.push_back(r * r * s.v(r));
  }
  rep.raw_limit = rep.w.back();

  const std::size_t tail_begin = rep.w.size() >= 3 ? rep.w.size() - 3 : 0;
  if (rep.w.size() >= 3) {
    rep.extrapolated_limit = extrapolate_inverse_r(
        std::span(rep.r).subspan(tail_begin),
        std::span(rep.w).subspan(tail_begin));
  } else {
    rep.extrapolated_limit = rep.raw_limit;
  }

  rep.rel_error_raw = std::abs(rep.raw_limit / rep.target - 1.0);
  rep.rel_error_extrapolated =
      std::abs(rep.extrapolated_limit / rep.target - 1.0);

  // Tail-correction model check: log|w - target| should fall like -log r.
  std::vector<double> rr, dd;
  for (std::size_t i = tail_begin; i < rep.r.size(); ++i) {
    const double d = std::abs(rep.w[i] - rep.target);
    if (d > 0.0) {
      rr.push_back(rep.r[i]);
      dd.push_back(d);
    }
  }
  if (rr.size() >= 2) {
    rep.tail_slope = fit_loglog(rr, dd).slope;
    rep.model_reliable = std::abs(rep.tail_slope + 1.0) <= 0.3;
  } else {
    rep.tail_slope = -1.0;  // already converged to the target
    rep.model_reliable = true;
  }

  const double w1 = s.consts().w1;
  const double measured = rep.extrapolated_limit;
  double d_inf = std::abs(measured - rep.target);
  double d_w1 = std::isfinite(w1) ? std::abs(measured - w1)
                                  : std::numeric_limits<double>::infinity();
  double d_zero = std::abs(measured);
  if (d_inf <= d_w1 && d_inf <= d_zero) {
    rep.closest_branch = "w_inf";
  } else if (d_w1 <= d_zero) {
    rep.closest_branch = "w1";
  } else {
    rep.closest_branch = "zero";
  }
  return rep;
}

double extrapolate_inverse_r(std::span<const double> r,
                             std::span<const double> w) {
  std::vector<double> inv_r(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) inv_r[i] = 1.0 / r[i];
  return fit_line(inv_r, w).intercept;
}

std::vector<double> default_radius_ladder() {
  return {10.0, std::pow(10.0, 1.5), 100.0, std::pow(10.0, 2.5), 1000.0};
}

double w_ode_residual(const std::function<double(double)>& w, int n,
                      double alpha, double beta, double r, double h) {
  if (!(h > 0.0) || !(r - 2.0 * h > 0.0)) {
    throw std::invalid_argument("w_ode_residual: need r - 2h > 0");
  }
  auto wprime = [&](double x) { return (w(x + h) - w(x - h)) / (2.0 * h); };
  auto g = [&](double x) { return wprime(x) / w(x); };
  const double gp = (g(r + h) - g(r - h)) / (2.0 * h);
  return gp + (n - 1.0) / r * g(r) + beta / r * wprime(r) +
         ((alpha - 2.0 * beta) * w(r) - 2.0 * (n - 2.0)) / (r * r);
}

double w_ode_residual(const ProfileSolution& s, double r, double h) {
  if (s.params().m != 0.0) {
    throw std::domain_error("w_ode_residual: tail equation holds at m = 0");
  }
  auto w = [&s](double x) { return x * x * s.v(x); };
  return w_ode_residual(w, s.params().n, s.consts().alpha, s.params().beta, r,
                        h);
}

}  // namespace fastdiff
