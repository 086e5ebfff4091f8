#include <doctest.h>

#include <cmath>
#include <memory>

#include "fastdiff/exact.hpp"
#include "fastdiff/profile.hpp"

using namespace fastdiff;

namespace {

std::shared_ptr<const ProfileSolution> shared_profile(const Params& p,
                                                      double rho_max,
                                                      double tol = 1e-11) {
  ProfileOptions opt;
  opt.rho_max = rho_max;
  opt.rel_tol = tol;
  return std::make_shared<const ProfileSolution>(
      integrate_profile(p, derive(p), opt));
}

}  // namespace

TEST_CASE("phi_m family") {
  CHECK(phi_m(2.0, 0.0) == doctest::Approx(std::log(2.0)));
  CHECK(phi_m(2.0, 0.5) == doctest::Approx((std::sqrt(2.0) - 1.0) / 0.5));
  // continuous in m at 0 thanks to the -1/m shift
  CHECK(phi_m(3.0, 1e-8) == doctest::Approx(std::log(3.0)).epsilon(1e-6));
  CHECK(phi_m_prime(2.0, 0.2) == doctest::Approx(std::pow(2.0, -0.8)));
  CHECK(phi_m_prime(2.0, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("Barenblatt values at the pinned points") {
  Params p;  // n = 3, m = 0, T = 1
  const BarenblattSolution bk(p, 1.0);
  CHECK(bk.C_star() == doctest::Approx(2.0));
  // r = 1 at t -> 0+: (2/(1+1)) * 1 = 1
  CHECK(bk.initial_value(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bk(1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  // r = 0 plug-in: (C*/k)^{1/(1-m)} (T-t)^{n/(n-2-nm)}
  const double t = 0.5;
  CHECK(bk(0.0, t) ==
        doctest::Approx(2.0 * std::pow(0.5, 3.0)).epsilon(1e-13));
  // vanishes towards the extinction time
  CHECK(bk(1.0, 1.0 - 1e-9) < 1e-20);
}

TEST_CASE("Barenblatt domain checks") {
  Params p;
  const BarenblattSolution bk(p, 1.0);
  CHECK_THROWS_AS(bk(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(bk(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(bk(1.0, -0.5), std::domain_error);
  CHECK_THROWS_AS(BarenblattSolution(p, 0.0), std::invalid_argument);
  Params bad;
  bad.m = 0.35;  // n - 2 - n m < 0
  CHECK_THROWS_AS(BarenblattSolution(bad, 1.0), std::domain_error);
}

TEST_CASE("self-similar lift equals the profile at unit time-to-extinction") {
  Params p;
  p.T = 2.0;
  auto prof = shared_profile(p, 8.0);
  const SelfSimilarSolution lift(prof, p.T);
  for (double r : {0.3, 1.0, 1.9}) {
    CHECK(lift(r, 1.0) == doctest::Approx(prof->v(r)).epsilon(1e-14));
  }
}

TEST_CASE("self-similar lift satisfies its defining scaling") {
  Params p;
  auto prof = shared_profile(p, 9.0);
  const SelfSimilarSolution lift(prof, p.T);
  for (double t : {0.1, 0.5, 0.8}) {
    const double tau = p.T - t;
    const double expect =
        std::pow(tau, prof->consts().alpha_m) * prof->v(tau * 1.3);
    CHECK(lift(1.3, t) == doctest::Approx(expect).epsilon(1e-14));
  }
}

TEST_CASE("lifted envelopes are ordered by the normalization") {
  Params p1;
  p1.lambda = 2.0;
  Params p2;
  p2.lambda = 1.0;
  const SelfSimilarSolution v1(shared_profile(p1, 6.0), 1.0);
  const SelfSimilarSolution v2(shared_profile(p2, 6.0), 1.0);
  for (double r : {0.2, 0.7, 1.8, 4.0}) {
    for (double t : {0.0, 0.3, 0.7}) {
      CHECK(v1(r, t) <= v2(r, t));
    }
  }
}

TEST_CASE("pde_residual vanishes for constants") {
  const SpaceTimeField c = [](double, double) { return 4.2; };
  CHECK(pde_residual(c, 3, 0.0, 1.0, 0.5, 1e-3, 1e-3) ==
        doctest::Approx(0.0).epsilon(1e-14));
  CHECK(pde_residual(c, 5, 0.2, 1.0, 0.5, 1e-3, 1e-3) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pde_residual of the Barenblatt solution is tiny at h = 1e-3") {
  Params p;
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  CHECK(std::abs(pde_residual(f, p.n, p.m, 1.0, 0.5, 1e-3, 1e-3)) <= 1e-4);
}

TEST_CASE("residual refinement studies fit second order") {
  const std::vector<double> rs = {0.5, 1.0, 2.0};
  const std::vector<double> ts = {0.25, 0.5, 0.75};
  const std::vector<double> hs = default_h_ladder();

  Params p;
  const BarenblattSolution bk(p, 1.0);
  const auto bk_study = residual_refinement_study(
      [&](double r, double t) { return bk(r, t); }, p.n, p.m, "bk", rs, ts,
      hs);
  CHECK(std::abs(bk_study.fitted_order - 2.0) <= 0.3);
  // max residual must actually fall with h
  CHECK(bk_study.rows.back().max_residual <
        bk_study.rows.front().max_residual);

  auto prof = shared_profile(p, 3.0, 1e-12);
  const SelfSimilarSolution lift(prof, p.T);
  const auto lift_study = residual_refinement_study(
      [&](double r, double t) { return lift(r, t); }, p.n, p.m, "lift", rs,
      ts, hs);
  CHECK(std::abs(lift_study.fitted_order - 2.0) <= 0.3);
}

TEST_CASE("pde_residual rejects degenerate stencils") {
  const SpaceTimeField c = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(pde_residual(c, 3, 0.0, 1e-4, 0.5, 1e-3, 1e-3),
                  std::invalid_argument);
  CHECK_THROWS_AS(pde_residual(c, 3, 0.0, 1.0, 0.5, 0.0, 1e-3),
                  std::invalid_argument);
}
