#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fastdiff/params.hpp"
#include "fastdiff/profile.hpp"

namespace fastdiff {

/// phi_m(u) = (u^m - 1)/m for m != 0, log u at m = 0. The -1/m shift leaves
/// the Laplacian untouched and makes the family continuous in m at 0, so one
/// code path covers the whole sweep.
double phi_m(double u, double m);
/// d(phi_m)/du = u^{m-1}.
double phi_m_prime(double u, double m);

/// Closed-form solution of u_t = Laplacian(phi_m(u)) that vanishes at time T:
///   B_k(r,t) = (C*/(k + (T-t)^{2/(n-2-nm)} r^2))^{1/(1-m)}
///              * (T-t)^{n/(n-2-nm)},  C* = 2(n-2-mn)/(1-m).
/// Regular at r = 0; requires k > 0 and 0 < t < T.
class BarenblattSolution {
 public:
  BarenblattSolution(const Params& p, double k);

  double operator()(double r, double t) const;
  /// Continuous extension to t = 0 (used to sample initial data; the
  /// operator itself keeps the open-interval domain).
  double initial_value(double r) const;
  double k() const { return k_; }
  double C_star() const { return c_star_; }
  const Params& params() const { return params_; }

 private:
  Params params_;
  double k_;
  double c_star_;
  double two_over_denom_;
  double n_over_denom_;
};

/// Self-similar lift of an integrated profile:
///   V(r,t) = (T-t)^{alpha_m} v((T-t)^beta r),  0 < t < T.
class SelfSimilarSolution {
 public:
  SelfSimilarSolution(std::shared_ptr<const ProfileSolution> profile,
                      double T);

  double operator()(double r, double t) const;
  const ProfileSolution& profile() const { return *profile_; }
  double T() const { return T_; }

 private:
  std::shared_ptr<const ProfileSolution> profile_;
  double T_;
};

using SpaceTimeField = std::function<double(double r, double t)>;

/// Central-difference residual of u_t = phi_m(u)_rr + (n-1)/r phi_m(u)_r;
/// O(h_r^2 + h_t^2) for exact solutions. Requires r - h_r > 0 and the field
/// evaluable on the whole stencil.
double pde_residual(const SpaceTimeField& u, int n, double m, double r,
                    double t, double h_r, double h_t);

struct ResidualStudyRow {
  double h = 0;
  double max_residual = 0;
};

struct ResidualStudy {
  std::string oracle;
  std::vector<ResidualStudyRow> rows;
  double fitted_order = 0;
};

/// Max |residual| over the (r, t) sample set, for each h in the ladder
/// (h_r = h_t = h), plus the log-log fitted order.
ResidualStudy residual_refinement_study(const SpaceTimeField& u, int n,
                                        double m, std::string oracle_name,
                                        std::span<const double> r_samples,
                                        std::span<const double> t_samples,
                                        std::span<const double> h_ladder);

/// The geometric ladder used by the refinement studies:
/// {1e-2, 10^{-2.5}, 1e-3}.
std::vector<double> default_h_ladder();

}  // namespace fastdiff
