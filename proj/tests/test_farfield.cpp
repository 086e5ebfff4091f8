#include <doctest.h>

#include <cmath>
#include <vector>

#include "fastdiff/errors.hpp"
#include "fastdiff/farfield.hpp"
#include "fastdiff/numerics.hpp"

using namespace fastdiff;

namespace {

Params make(int n, double m, double rho1, double beta) {
  Params p;
  p.n = n;
  p.m = m;
  p.rho1 = rho1;
  p.beta = beta;
  return p;
}

ProfileSolution far_profile(const Params& p, double r_top) {
  ProfileOptions opt;
  opt.rho_max = std::pow(r_top, p.rho1 / p.beta) * 1.05;
  opt.rel_tol = 1e-10;
  return integrate_profile(p, derive(p), opt);
}

}  // namespace

TEST_CASE("tail targets from the derived constants") {
  CHECK(derive(make(3, 0.0, 1.0, 1.0)).w_inf == doctest::Approx(2.0));
  CHECK(derive(make(5, 0.0, 2.0, 1.0)).w_inf == doctest::Approx(3.0));
}

TEST_CASE("inverse-r extrapolation is exact on an exact c/r tail") {
  std::vector<double> r = {10.0, 100.0, 1000.0};
  std::vector<double> w;
  for (double ri : r) w.push_back(2.0 - 1.0 / ri);
  CHECK(extrapolate_inverse_r(r, w) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("default log-diffusion profile approaches w_inf") {
  const auto prof = far_profile(make(3, 0.0, 1.0, 1.0), 1000.0);
  const auto rep = farfield_limit(prof, default_radius_ladder());
  CHECK(rep.assertion_mode);
  CHECK(rep.target == doctest::Approx(2.0));

  // two-sided boundedness of the samples
  for (double w : rep.w) {
    CHECK(w > 0.0);
    CHECK(std::isfinite(w));
  }
  // |w - w_inf| eventually decreases along the geometric ladder
  for (std::size_t i = 1; i < rep.w.size(); ++i) {
    CHECK(std::abs(rep.w[i] - rep.target) <
          std::abs(rep.w[i - 1] - rep.target));
  }
  // tail extrapolation at least halves the raw error (regression bound)
  CHECK(rep.rel_error_extrapolated <= 0.5 * rep.rel_error_raw);
  CHECK(rep.model_reliable);
  CHECK(rep.closest_branch == "w_inf");
}

TEST_CASE("farfield on an m > 0 profile reports but never asserts") {
  const auto prof = far_profile(make(3, 0.1, 1.0, 1.0), 100.0);
  std::vector<double> ladder = {10.0, 30.0, 100.0};
  const auto rep = farfield_limit(prof, ladder);
  CHECK_FALSE(rep.assertion_mode);
  for (double w : rep.w) CHECK(w > 0.0);
}

TEST_CASE("insufficient profile range is detected") {
  const auto prof = far_profile(make(3, 0.0, 1.0, 1.0), 50.0);
  std::vector<double> ladder = {10.0, 100.0, 1000.0};
  CHECK_THROWS_AS(farfield_limit(prof, ladder), InsufficientRange);
}

TEST_CASE("tail equation residual vanishes on the constant solution") {
  const int n = 3;
  const double alpha = 3.0, beta = 1.0;
  auto w_const = [&](double) { return 2.0 * (n - 2) / (alpha - 2 * beta); };
  CHECK(w_ode_residual(w_const, n, alpha, beta, 10.0, 1e-3) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("tail equation residual of the profile is small and 2nd order") {
  const auto prof = far_profile(make(3, 0.0, 1.0, 1.0), 120.0);
  // documented bound at h = 0.02 r
  for (double r : {5.0, 10.0, 50.0}) {
    CHECK(std::abs(w_ode_residual(prof, r, 0.02 * r)) < 5e-4);
  }
  // refinement at r = 10: slope about 2
  std::vector<double> hs = {0.4, 0.2, 0.1};
  std::vector<double> res;
  for (double h : hs) res.push_back(std::abs(w_ode_residual(prof, 10.0, h)));
  const double slope = fit_loglog(hs, res).slope;
  CHECK(slope > 1.5);
  CHECK(slope < 2.5);
}

TEST_CASE("tail residual is restricted to the log-diffusion member") {
  const auto prof = far_profile(make(3, 0.1, 1.0, 1.0), 50.0);
  CHECK_THROWS_AS(w_ode_residual(prof, 10.0, 0.1), std::domain_error);
}
