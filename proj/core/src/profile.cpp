#include "fastdiff/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "fastdiff/errors.hpp"
#include "fastdiff/rk.hpp"

namespace fastdiff {

namespace {

double auto_rho0(double rel_tol, const OriginExpansion& o) {
  const double w2 = std::max(std::abs(o.w2), 1e-300);
  return std::min(1e-4, std::cbrt(rel_tol / w2));
}

}  // namespace

std::pair<double, double> taylor_init(const Params& p,
                                      const DerivedConstants& c, double rho) {
  const OriginExpansion o = origin_expansion(p, c);
  const double w = o.w0 + o.w1 * rho + 0.5 * o.w2 * rho * rho;
  const double w_rho = o.w1 + o.w2 * rho;
  return {w, w_rho};
}

ProfileSolution::ProfileSolution(Params p, DerivedConstants c,
                                 ProfileOptions opt, std::vector<double> rho,
                                 std::vector<double> wbar,
                                 std::vector<double> wbar_rho,
                                 std::vector<double> wbar_rho2)
    : params_(p),
      consts_(c),
      opt_(opt),
      origin_(origin_expansion(p, c)),
      rho_(std::move(rho)),
      wbar_(std::move(wbar)),
      wbar_rho_(std::move(wbar_rho)) {
  wbar_itp_ = CubicHermite(rho_, wbar_, wbar_rho_, /*monotone=*/true);
  wbar_rho_itp_ =
      CubicHermite(rho_, wbar_rho_, std::move(wbar_rho2), /*monotone=*/false);
}

double ProfileSolution::wbar_at(double rho) const {
  if (!(rho >= 0.0)) throw std::out_of_range("wbar_at: rho must be >= 0");
  if (rho < opt_.rho0) {
    return origin_.w0 + origin_.w1 * rho + 0.5 * origin_.w2 * rho * rho;
  }
  if (rho > opt_.rho_max * (1.0 + 1e-12)) {
    throw std::out_of_range("wbar_at: rho beyond integrated range");
  }
  return wbar_itp_.value(std::min(rho, rho_.back()));
}

double ProfileSolution::wbar_rho_at(double rho) const {
  if (!(rho >= 0.0)) throw std::out_of_range("wbar_rho_at: rho must be >= 0");
  if (rho < opt_.rho0) return origin_.w1 + origin_.w2 * rho;
  if (rho > opt_.rho_max * (1.0 + 1e-12)) {
    throw std::out_of_range("wbar_rho_at: rho beyond integrated range");
  }
  return wbar_rho_itp_.value(std::min(rho, rho_.back()));
}

double ProfileSolution::rho_of_r(double r) const {
  return std::pow(r, params_.rho1 / params_.beta);
}

double ProfileSolution::r_of_rho(double rho) const {
  return std::pow(rho, params_.beta / params_.rho1);
}

double ProfileSolution::r_max() const { return r_of_rho(opt_.rho_max); }

double ProfileSolution::v(double r) const {
  if (!(r > 0.0)) {
    throw std::out_of_range(
        "v: r must be > 0 (v(0) = +inf; use v_scaled_origin_limit)");
  }
  const double rho = rho_of_r(r);
  return std::pow(r, -consts_.alpha_m / params_.beta) * wbar_at(rho);
}

double ProfileSolution::v_prime(double r) const {
  if (!(r > 0.0)) {
    throw std::out_of_range(
        "v_prime: r must be > 0 (use v_prime_scaled_origin_limit)");
  }
  const double rho = rho_of_r(r);
  const double ab = consts_.alpha_m / params_.beta;
  const double w = wbar_at(rho);
  const double w_rho = wbar_rho_at(rho);
  return std::pow(r, -ab - 1.0) *
         (params_.rho1 / params_.beta * rho * w_rho - ab * w);
}

double ProfileSolution::v_second(double r) const {
  const double vr = v(r);
  const double vp = v_prime(r);
  const double m = params_.m;
  return (1.0 - m) * vp * vp / vr - (params_.n - 1.0) * vp / r -
         consts_.alpha_m * std::pow(vr, 2.0 - m) -
         params_.beta * r * std::pow(vr, 1.0 - m) * vp;
}

double ProfileSolution::v_prime_scaled_origin_limit() const {
  return -consts_.alpha_m / params_.beta * origin_.w0;
}

ProfileSolution integrate_profile(const Params& p, const DerivedConstants& c,
                                  const ProfileOptions& opt_in) {
  const ValidationReport rep = validate(p, /*strict=*/true);
  if (!rep.ok()) {
    throw std::invalid_argument("integrate_profile: " + rep.to_string());
  }

  ProfileOptions opt = opt_in;
  const OriginExpansion o = origin_expansion(p, c);
  if (opt.rho0 <= 0.0) opt.rho0 = auto_rho0(opt.rel_tol, o);
  if (!(opt.rho_max > opt.rho0)) {
    throw std::invalid_argument("integrate_profile: rho_max must exceed rho0");
  }

  const double m = p.m, a1 = c.a1, a2 = c.a2, a3 = c.a3;
  auto rhs = [&](double rho, const std::array<double, 2>& s,
                 std::array<double, 2>& ds) {
    const double w = s[0], y = s[1];
    ds[0] = y * w;
    ds[1] = a3 / (rho * rho) - m * y * y - a1 * y / rho -
            a2 / (rho * rho) * y * std::pow(w, 1.0 - m);
  };

  auto [w_init, w_rho_init] = taylor_init(p, c, opt.rho0);
  std::array<double, 2> state = {w_init, w_rho_init / w_init};

  StepControl ctl;
  ctl.rel_tol = std::clamp(opt.rel_tol / 10.0, 3e-15, 1e-6);
  const double y_floor = ctl.rel_tol * std::max(1.0, std::abs(state[1]));

  std::vector<double> rho_nodes, w_nodes, w_rho_nodes, w_rho2_nodes;
  auto on_accept = [&](double rho, const std::array<double, 2>& s,
                       const std::array<double, 2>& ds) {
    const double w = s[0], y = s[1];
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw MonotonicityViolation("integrate_profile: wbar <= 0 at rho = " +
                                  std::to_string(rho));
    }
    if (!(y > 0.0) || !std::isfinite(y)) {
      throw MonotonicityViolation(
          "integrate_profile: wbar_rho <= 0 at rho = " + std::to_string(rho));
    }
    rho_nodes.push_back(rho);
    w_nodes.push_back(w);
    w_rho_nodes.push_back(y * w);
    // wbar_rhorho = d(y w)/drho = w*(y' + y^2)
    w_rho2_nodes.push_back(w * (ds[1] + y * y));
  };

  integrate_dp54<2>(
      rhs, opt.rho0, opt.rho_max, state, ctl,
      [](double rho) { return rho / 4.0; },
      [y_floor, abs_tol = opt.abs_tol](double, const std::array<double, 2>&,
                                       std::array<double, 2>& sc) {
        sc[0] = abs_tol; // wbar >= wbar(0) > 0, relative control is well-posed
        sc[1] = y_floor; // y -> 0 in the far field; keep it from binding
      },
      on_accept);

  return ProfileSolution(p, c, opt, std::move(rho_nodes), std::move(w_nodes),
                         std::move(w_rho_nodes), std::move(w_rho2_nodes));
}

EnvelopeReport check_envelope(const ProfileSolution& s) {
  const Params& p = s.params();
  const DerivedConstants& c = s.consts();
  EnvelopeReport rep;
  rep.admissible = envelope_admissible(p, c);
  const double log_w0 = std::log(s.origin().w0);
  const double growth = c.Cm * std::pow(p.lambda, p.rho1 / p.beta);
  const auto& rho = s.rho_grid();
  const auto& wbar = s.wbar_grid();
  rep.rho = rho;
  rep.lower_slack.resize(rho.size());
  rep.upper_slack.resize(rho.size());
  rep.min_lower_slack = rep.min_upper_slack =
      std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double lw = std::log(wbar[i]);
    rep.lower_slack[i] = lw - log_w0;
    rep.upper_slack[i] = (log_w0 + growth * rho[i]) - lw;
    rep.min_lower_slack = std::min(rep.min_lower_slack, rep.lower_slack[i]);
    rep.min_upper_slack = std::min(rep.min_upper_slack, rep.upper_slack[i]);
  }
  return rep;
}

OdeResidualReport ode_residual(const ProfileSolution& s) {
  const Params& p = s.params();
  const DerivedConstants& c = s.consts();
  const auto& rho = s.rho_grid();
  const auto& w = s.wbar_grid();
  const auto& w_rho = s.wbar_rho_grid();
  OdeResidualReport rep;
  for (std::size_t i = 1; i + 1 < rho.size(); ++i) {
    const double yl = w_rho[i - 1] / w[i - 1];
    const double y0 = w_rho[i] / w[i];
    const double yr = w_rho[i + 1] / w[i + 1];
    const double dy =
        central_derivative(rho[i - 1], rho[i], rho[i + 1], yl, y0, yr);
    const double r2 = rho[i] * rho[i];
    const double res = dy + p.m * y0 * y0 + c.a1 * y0 / rho[i] +
                       c.a2 / r2 * w_rho[i] / std::pow(w[i], p.m) - c.a3 / r2;
    const double rel = std::abs(res) * r2 / c.a3;
    const double h =
        std::max(rho[i] - rho[i - 1], rho[i + 1] - rho[i]) / rho[i];
    const double bound =
        OdeResidualReport::kBoundFactor * (s.rel_tol() + h * h);
    rep.rho.push_back(rho[i]);
    rep.rel_residual.push_back(rel);
    rep.bound.push_back(bound);
    rep.worst_ratio = std::max(rep.worst_ratio, rel / bound);
    if (rel > bound) rep.all_within = false;
  }
  return rep;
}

LineFit origin_slope(const ProfileSolution& s) {
  const auto& rho = s.rho_grid();
  const auto& w = s.wbar_grid();
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < rho.size() && rho[i] <= 10.0 * s.rho0(); ++i) {
    xs.push_back(rho[i]);
    ys.push_back(w[i]);
  }
  if (xs.size() < 8) {
    throw std::runtime_error("origin_slope: too few nodes in [rho0, 10 rho0]");
  }
  return fit_line(xs, ys);
}

double taylor_residual_over_rho2(const ProfileSolution& s, double rho) {
  const OriginExpansion& o = s.origin();
  const double quad = o.w0 + o.w1 * rho + 0.5 * o.w2 * rho * rho;
  return std::abs(s.wbar_at(rho) - quad) / (rho * rho);
}

}  // namespace fastdiff
