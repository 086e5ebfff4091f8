#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "fastdiff/errors.hpp"
#include "fastdiff/exact.hpp"
#include "fastdiff/parabolic.hpp"
#include "fastdiff/profile.hpp"

using namespace fastdiff;

namespace {

std::shared_ptr<const ProfileSolution> shared_profile(const Params& p,
                                                      double rho_max) {
  ProfileOptions opt;
  opt.rho_max = rho_max;
  opt.rel_tol = 1e-11;
  return std::make_shared<const ProfileSolution>(
      integrate_profile(p, derive(p), opt));
}

double linf_vs(const ParabolicSolution& sol, const SpaceTimeField& f) {
  double worst = 0.0;
  for (std::size_t k = 1; k < sol.t.size(); ++k) {
    for (int i = 0; i < sol.grid.nr; ++i) {
      worst = std::max(worst,
                       std::abs(sol.u[k][i] - f(sol.grid.r[i], sol.t[k])));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("grid construction validates its inputs") {
  CHECK_THROWS_AS(AnnulusGrid::make(0.0, 1.0, 11, 0.5, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(AnnulusGrid::make(1.0, 0.5, 11, 0.5, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(AnnulusGrid::make(0.1, 5.0, 2, 0.5, 10),
                  std::invalid_argument);
  const auto g = AnnulusGrid::make(0.1, 5.0, 21, 0.5, 10);
  CHECK(g.r.front() == 0.1);
  CHECK(g.r.back() == 5.0);
  for (int i = 1; i < g.nr; ++i) CHECK(g.r[i] > g.r[i - 1]);
}

TEST_CASE("constants are fixed points of the scheme") {
  Params p;
  p.m = 0.2;
  const auto grid = AnnulusGrid::make(0.1, 5.0, 41, 0.25, 20);
  std::vector<double> u0(grid.nr, 3.7);
  const SpaceTimeField c = [](double, double) { return 3.7; };
  const auto sol = solve(p, grid, u0, c, c, SolverOptions{}, "const");
  for (const auto& row : sol.u) {
    for (double v : row) CHECK(v == doctest::Approx(3.7).epsilon(1e-13));
  }
  CHECK(sol.stats.step_retries == 0);
}

TEST_CASE("boundary rows equal the prescribed data") {
  Params p;
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  const auto grid = AnnulusGrid::make(0.1, 5.0, 31, 0.25, 10);
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);
  const auto sol = solve(p, grid, u0, f, f, SolverOptions{}, "bk");
  for (std::size_t k = 1; k < sol.t.size(); ++k) {
    CHECK(sol.u[k][0] == doctest::Approx(f(grid.r_in, sol.t[k])));
    CHECK(sol.u[k][grid.nr - 1] ==
          doctest::Approx(f(grid.r_out, sol.t[k])));
  }
}

TEST_CASE("positivity and rejection of bad inputs") {
  Params p;
  const auto grid = AnnulusGrid::make(0.1, 5.0, 21, 0.25, 5);
  std::vector<double> u0(grid.nr, 1.0);
  u0[3] = -1.0;
  const SpaceTimeField c = [](double, double) { return 1.0; };
  CHECK_THROWS_AS(solve(p, grid, u0, c, c), std::invalid_argument);
  u0[3] = 1.0;
  const SpaceTimeField bad = [](double, double) { return -1.0; };
  CHECK_THROWS_AS(solve(p, grid, u0, bad, bad), std::invalid_argument);
  std::vector<double> short_u0(grid.nr - 1, 1.0);
  CHECK_THROWS_AS(solve(p, grid, short_u0, c, c), std::invalid_argument);
}

TEST_CASE("Barenblatt error shrinks under space-time refinement") {
  Params p;
  p.m = 0.2;
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  double prev = 0.0;
  for (int level = 0; level < 2; ++level) {
    const int nr = 41 << level;
    const int nt = 50 << (2 * level);  // dt ~ ds^2
    const auto grid = AnnulusGrid::make(0.1, 5.0, nr + 1, 0.5, nt);
    std::vector<double> u0(grid.nr);
    for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);
    const auto sol = solve(p, grid, u0, f, f, SolverOptions{}, "bk");
    const double err = linf_vs(sol, f);
    if (level) CHECK(err < 0.35 * prev);
    prev = err;
  }
}

TEST_CASE("identical inputs give identical solutions") {
  Params p;
  const auto grid = AnnulusGrid::make(0.1, 5.0, 31, 0.25, 10);
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);
  const auto a = solve(p, grid, u0, f, f, SolverOptions{}, "bk");
  const auto b = solve(p, grid, u0, f, f, SolverOptions{}, "bk");
  const auto cmp = check_comparison(a, b);
  CHECK(cmp.min_difference == 0.0);
}

TEST_CASE("ordered data stay ordered (discrete comparison)") {
  Params p;  // log-diffusion
  const auto grid = AnnulusGrid::make(0.1, 5.0, 41, 0.25, 20);
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField fb = [&](double r, double t) { return bk(r, t); };
  const SpaceTimeField fa = [&](double r, double t) {
    return 0.9 * bk(r, t);
  };
  std::vector<double> u0b(grid.nr), u0a(grid.nr);
  for (int i = 0; i < grid.nr; ++i) {
    u0b[i] = bk.initial_value(grid.r[i]);
    u0a[i] = 0.9 * u0b[i];
  }
  const auto sb = solve(p, grid, u0b, fb, fb, SolverOptions{}, "b");
  const auto sa = solve(p, grid, u0a, fa, fa, SolverOptions{}, "a");
  const auto cmp = check_comparison(sa, sb);
  CHECK(cmp.min_relative_difference >= -1e-10);
  CHECK(cmp.min_difference >= -1e-10);
}

TEST_CASE("envelope-driven runs are ordered for all times") {
  Params p;  // m = 0
  Params p1 = p;
  p1.lambda = 2.0;
  Params p2 = p;
  p2.lambda = 1.0;
  const SelfSimilarSolution v1(shared_profile(p1, 9.0), p.T);
  const SelfSimilarSolution v2(shared_profile(p2, 9.0), p.T);
  const SpaceTimeField lo = [&](double r, double t) { return v1(r, t); };
  const SpaceTimeField up = [&](double r, double t) { return v2(r, t); };
  const auto grid = AnnulusGrid::make(0.2, 8.0, 41, 0.25, 20);
  std::vector<double> u0lo(grid.nr), u0up(grid.nr);
  for (int i = 0; i < grid.nr; ++i) {
    u0lo[i] = lo(grid.r[i], 0.0);
    u0up[i] = up(grid.r[i], 0.0);
  }
  const auto sa = solve(p, grid, u0lo, lo, lo, SolverOptions{}, "lower");
  const auto sb = solve(p, grid, u0up, up, up, SolverOptions{}, "upper");
  CHECK(check_comparison(sa, sb).min_relative_difference >= -1e-10);
}

TEST_CASE("grid mismatch is detected") {
  Params p;
  const SpaceTimeField c = [](double, double) { return 1.0; };
  const auto g1 = AnnulusGrid::make(0.1, 5.0, 21, 0.25, 5);
  const auto g2 = AnnulusGrid::make(0.1, 5.0, 31, 0.25, 5);
  std::vector<double> u1(g1.nr, 1.0), u2(g2.nr, 1.0);
  const auto s1 = solve(p, g1, u1, c, c);
  const auto s2 = solve(p, g2, u2, c, c);
  CHECK_THROWS_AS(check_comparison(s1, s2), GridMismatch);
}

TEST_CASE("sandwich bookkeeping") {
  Params p;  // m = 0
  Params p1 = p;
  p1.lambda = 2.0;
  Params p2 = p;
  p2.lambda = 1.0;
  const SelfSimilarSolution v1(shared_profile(p1, 9.0), p.T);
  const SelfSimilarSolution v2(shared_profile(p2, 9.0), p.T);
  const SpaceTimeField lo = [&](double r, double t) { return v1(r, t); };
  const SpaceTimeField up = [&](double r, double t) { return v2(r, t); };
  const auto grid = AnnulusGrid::make(0.2, 8.0, 61, 0.25, 25);

  SUBCASE("starting on the lower envelope pins the initial slack to zero") {
    std::vector<double> u0(grid.nr);
    for (int i = 0; i < grid.nr; ++i) u0[i] = lo(grid.r[i], 0.0);
    const auto sol = solve(p, grid, u0, lo, lo, SolverOptions{}, "lower");
    const auto rep = check_sandwich(sol, lo, up);
    CHECK(rep.min_lower_slack.front() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.min_envelope_gap > 0.0);
  }

  SUBCASE("a collapsed envelope pair pins the solution") {
    // lambda1 = lambda2: both slacks stay at discretization size
    const auto sol = [&] {
      std::vector<double> u0(grid.nr);
      for (int i = 0; i < grid.nr; ++i) u0[i] = up(grid.r[i], 0.0);
      return solve(p, grid, u0, up, up, SolverOptions{}, "upper");
    }();
    const auto rep = check_sandwich(sol, up, up);
    CHECK(std::abs(rep.worst_lower) <= 5e-4);
    CHECK(std::abs(rep.worst_upper) <= 5e-4);
  }
}

TEST_CASE("solutions become m-continuous as m decreases") {
  Params p;
  const auto grid = AnnulusGrid::make(0.2, 8.0, 41, 0.25, 20);
  const BarenblattSolution bk(p, 1.0);  // m-independent data source
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);

  auto field_at = [&](double m) {
    Params pm = p;
    pm.m = m;
    return solve(pm, grid, u0, f, f, SolverOptions{}, "bk");
  };
  const auto s1 = field_at(0.2);
  const auto s2 = field_at(0.1);
  const auto s3 = field_at(0.05);
  double d12 = 0.0, d23 = 0.0;
  for (std::size_t k = 0; k < s1.t.size(); ++k) {
    for (int i = 0; i < grid.nr; ++i) {
      d12 = std::max(d12, std::abs(s1.u[k][i] - s2.u[k][i]));
      d23 = std::max(d23, std::abs(s2.u[k][i] - s3.u[k][i]));
    }
  }
  CHECK(d23 < d12);
}

TEST_CASE("inner-truncation sensitivity stays within the documented bound") {
  Params p;
  Params p1 = p;
  p1.lambda = 2.0;
  const SelfSimilarSolution v1(shared_profile(p1, 18.0), p.T);
  const SpaceTimeField lo = [&](double r, double t) { return v1(r, t); };

  // Nested log grids: r_out/r_in = 2^8 with 120 cells, so halving r_in
  // prepends exactly 15 aligned cells and shared nodes coincide bitwise.
  const auto ga = AnnulusGrid::make(0.06, 15.36, 121, 0.25, 40);
  const auto gb = AnnulusGrid::make(0.03, 15.36, 136, 0.25, 40);
  auto run = [&](const AnnulusGrid& g) {
    std::vector<double> u0(g.nr);
    for (int i = 0; i < g.nr; ++i) u0[i] = lo(g.r[i], 0.0);
    return solve(p, g, u0, lo, lo, SolverOptions{}, "lower");
  };
  const auto a = run(ga);
  const auto b = run(gb);

  // measured discretization error of run a against the exact lift
  double disc = 0.0;
  for (std::size_t k = 1; k < a.t.size(); ++k) {
    for (int i = 1; i + 1 < ga.nr; ++i) {
      const double ref = lo(ga.r[i], a.t[k]);
      disc = std::max(disc, std::abs(a.u[k][i] - ref) / ref);
    }
  }

  double worst = 0.0;
  for (std::size_t k = 1; k < a.t.size(); ++k) {
    for (int i = 0; i < ga.nr; ++i) {
      if (ga.r[i] < 0.2 || ga.r[i] > 5.0) continue;
      worst = std::max(
          worst, std::abs(a.u[k][i] - b.u[k][i + 15]) / a.u[k][i]);
    }
  }
  CHECK(worst < 5.0 * disc);
}

TEST_CASE("Newton divergence surfaces after the substep floor") {
  Params p;
  p.m = 0.2;
  const auto grid = AnnulusGrid::make(0.1, 5.0, 31, 0.5, 1);
  const BarenblattSolution bk(p, 1.0);
  const SpaceTimeField f = [&](double r, double t) { return bk(r, t); };
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) u0[i] = bk.initial_value(grid.r[i]);
  SolverOptions opt;
  opt.max_newton_iters = 1;  // starve the solver
  opt.max_step_halvings = 0;
  opt.quarter_first_step = false;
  CHECK_THROWS_AS(solve(p, grid, u0, f, f, opt, "bk"), NewtonDivergence);
}
