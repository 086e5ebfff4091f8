#include "fastdiff/exact.hpp"

#include <cmath>
#include <stdexcept>

#include "fastdiff/numerics.hpp"

namespace fastdiff {

double phi_m(double u, double m) {
  if (m == 0.0) return std::log(u);
  return (std::pow(u, m) - 1.0) / m;
}

double phi_m_prime(double u, double m) { return std::pow(u, m - 1.0); }

BarenblattSolution::BarenblattSolution(const Params& p, double k)
    : params_(p), k_(k) {
  const double denom = p.n - 2.0 - p.n * p.m;
  if (!(denom > 0.0)) {
    throw std::domain_error("BarenblattSolution: need n - 2 - n*m > 0");
  }
  if (!(k > 0.0)) {
    throw std::invalid_argument("BarenblattSolution: k must be > 0");
  }
  c_star_ = 2.0 * (p.n - 2.0 - p.m * p.n) / (1.0 - p.m);
  two_over_denom_ = 2.0 / denom;
  n_over_denom_ = p.n / denom;
}

double BarenblattSolution::operator()(double r, double t) const {
  if (!(t > 0.0) || !(t < params_.T)) {
    throw std::domain_error("BarenblattSolution: t must lie in (0, T)");
  }
  const double tau = params_.T - t;
  const double base =
      c_star_ / (k_ + std::pow(tau, two_over_denom_) * r * r);
  return std::pow(base, 1.0 / (1.0 - params_.m)) *
         std::pow(tau, n_over_denom_);
}

double BarenblattSolution::initial_value(double r) const {
  const double tau = params_.T;
  const double base =
      c_star_ / (k_ + std::pow(tau, two_over_denom_) * r * r);
  return std::pow(base, 1.0 / (1.0 - params_.m)) *
         std::pow(tau, n_over_denom_);
}

SelfSimilarSolution::SelfSimilarSolution(
    std::shared_ptr<const ProfileSolution> profile, double T)
    : profile_(std::move(profile)), T_(T) {
  if (!profile_) {
    throw std::invalid_argument("SelfSimilarSolution: null profile");
  }
  if (!(T > 0.0)) {
    throw std::invalid_argument("SelfSimilarSolution: T must be > 0");
  }
}

double SelfSimilarSolution::operator()(double r, double t) const {
  if (!(t < T_)) {
    throw std::domain_error("SelfSimilarSolution: t must be < T");
  }
  const double tau = T_ - t;
  const double alpha_m = profile_->consts().alpha_m;
  const double beta = profile_->params().beta;
  return std::pow(tau, alpha_m) * profile_->v(std::pow(tau, beta) * r);
}

double pde_residual(const SpaceTimeField& u, int n, double m, double r,
                    double t, double h_r, double h_t) {
  if (!(h_r > 0.0) || !(h_t > 0.0)) {
    throw std::invalid_argument("pde_residual: steps must be positive");
  }
  if (!(r - h_r > 0.0)) {
    throw std::invalid_argument("pde_residual: stencil leaves r > 0");
  }
  const double u_t = (u(r, t + h_t) - u(r, t - h_t)) / (2.0 * h_t);
  const double pc = phi_m(u(r, t), m);
  const double pp = phi_m(u(r + h_r, t), m);
  const double pm = phi_m(u(r - h_r, t), m);
  const double lap = (pp - 2.0 * pc + pm) / (h_r * h_r) +
                     (n - 1.0) / r * (pp - pm) / (2.0 * h_r);
  return u_t - lap;
}

ResidualStudy residual_refinement_study(const SpaceTimeField& u, int n,
                                        double m, std::string oracle_name,
                                        std::span<const double> r_samples,
                                        std::span<const double> t_samples,
                                        std::span<const double> h_ladder) {
  ResidualStudy study;
  study.oracle = std::move(oracle_name);
  std::vector<double> hs, res;
  for (double h : h_ladder) {
    double worst = 0.0;
    for (double r : r_samples) {
      for (double t : t_samples) {
        worst = std::max(worst, std::abs(pde_residual(u, n, m, r, t, h, h)));
      }
    }
    study.rows.push_back({h, worst});
    hs.push_back(h);
    res.push_back(worst);
  }
  study.fitted_order = fit_loglog(hs, res).slope;
  return study;
}

std::vector<double> default_h_ladder() {
  return {1e-2, std::pow(10.0, -2.5), 1e-3};
}

}  // namespace fastdiff
