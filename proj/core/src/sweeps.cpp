#include "fastdiff/sweeps.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <memory>

#include "fastdiff/errors.hpp"
#include "fastdiff/numerics.hpp"

namespace fastdiff {

namespace {

ProfileSolution make_profile(const Params& p, double rho_max, double tol) {
  ProfileOptions opt;
  opt.rho_max = rho_max;
  opt.rel_tol = tol;
  return integrate_profile(p, derive(p), opt);
}

void fill_rate(SweepReport& rep) {
  std::vector<double> ms, norms;
  for (const auto& row : rep.rows) {
    if (!row.failed && row.m > 0.0 && row.c0 > 1e-13) {
      ms.push_back(row.m);
      norms.push_back(row.c0);
    }
  }
  if (ms.size() >= 3) {
    const LineFit f = fit_loglog(ms, norms);
    rep.fitted_rate = f.slope;
    rep.fit_r2 = f.r2;
  } else {
    rep.fitted_rate = std::numeric_limits<double>::quiet_NaN();
    rep.fit_r2 = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

SweepReport elliptic_sweep(const Params& base, const EllipticSweepOptions& opt) {
  SweepReport rep;
  rep.kind = "elliptic";
  rep.annulus_lo = opt.r_lo;
  rep.annulus_hi = opt.r_hi;

  Params ref_params = base;
  ref_params.m = 0.0;
  const double rho_max =
      std::pow(opt.r_hi * 1.05, base.rho1 / base.beta) + 1e-6;
  const ProfileSolution ref =
      make_profile(ref_params, rho_max, opt.profile_tol);
  const std::vector<double> mesh =
      geomspace(opt.r_lo, opt.r_hi, opt.mesh_points);

  std::vector<double> v0(mesh.size()), v0p(mesh.size()), v0pp(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    v0[i] = ref.v(mesh[i]);
    v0p[i] = ref.v_prime(mesh[i]);
    v0pp[i] = ref.v_second(mesh[i]);
  }

  auto run_one = [&](double m) {
    SweepRow row;
    row.m = m;
    if (m == 0.0) return row;  // self-comparison: exactly zero by reuse
    try {
      Params pm = base;
      pm.m = m;
      const ValidationReport vr = validate(pm, /*strict=*/true);
      if (!vr.ok()) throw std::invalid_argument(vr.to_string());
      const ProfileSolution prof = make_profile(pm, rho_max, opt.profile_tol);
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        row.c0 = std::max(row.c0, std::abs(prof.v(mesh[i]) - v0[i]));
        row.c1 = std::max(row.c1, std::abs(prof.v_prime(mesh[i]) - v0p[i]));
        row.c2 = std::max(row.c2, std::abs(prof.v_second(mesh[i]) - v0pp[i]));
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    return row;
  };

  std::vector<std::future<SweepRow>> jobs;
  for (double m : opt.m_values) {
    jobs.push_back(std::async(std::launch::async, run_one, m));
  }
  for (auto& j : jobs) rep.rows.push_back(j.get());
  fill_rate(rep);
  return rep;
}

namespace {

struct EnvelopePair {
  SelfSimilarSolution lower;  // lambda1 (larger lambda -> smaller profile)
  SelfSimilarSolution upper;  // lambda2
};

EnvelopePair make_envelopes(const Params& base, double m, double lambda1,
                            double lambda2, double rho_max, double tol) {
  Params p1 = base;
  p1.m = m;
  p1.lambda = lambda1;
  Params p2 = p1;
  p2.lambda = lambda2;
  ProfileOptions popt;
  popt.rho_max = rho_max;
  popt.rel_tol = tol;
  auto prof1 = std::make_shared<const ProfileSolution>(
      integrate_profile(p1, derive(p1), popt));
  auto prof2 = std::make_shared<const ProfileSolution>(
      integrate_profile(p2, derive(p2), popt));
  return {SelfSimilarSolution(prof1, base.T),
          SelfSimilarSolution(prof2, base.T)};
}

std::vector<double> initial_data(const AnnulusGrid& grid,
                                 const SpaceTimeField& lo,
                                 const SpaceTimeField& up,
                                 const std::string& kind) {
  std::vector<double> u0(grid.nr);
  for (int i = 0; i < grid.nr; ++i) {
    const double a = lo(grid.r[i], 0.0);
    const double b = up(grid.r[i], 0.0);
    if (kind == "lower") {
      u0[i] = a;
    } else if (kind == "upper") {
      u0[i] = b;
    } else if (kind == "geomean") {
      u0[i] = std::sqrt(a * b);
    } else {
      throw std::invalid_argument("parabolic sweep: unknown init '" + kind +
                                  "'");
    }
  }
  return u0;
}

}  // namespace

SweepReport parabolic_sweep(const Params& base,
                            const ParabolicSweepOptions& opt) {
  if (!(opt.lambda1 > opt.lambda2)) {
    throw std::invalid_argument("parabolic_sweep: need lambda1 > lambda2");
  }
  SweepReport rep;
  rep.kind = "parabolic";
  rep.annulus_lo = opt.grid.r_in;
  rep.annulus_hi = opt.grid.r_out;

  // Profile range must cover (T-t)^beta * r for all grid radii and times.
  const double rho_max =
      std::pow(std::pow(base.T, base.beta) * opt.grid.r_out * 1.02,
               base.rho1 / base.beta) +
      1e-6;

  const int k_lo = static_cast<int>(std::ceil(opt.window_lo * opt.grid.nt));
  const int k_hi = static_cast<int>(std::floor(opt.window_hi * opt.grid.nt));

  auto run_field = [&](double m) {
    const EnvelopePair env = make_envelopes(base, m, opt.lambda1, opt.lambda2,
                                            rho_max, opt.profile_tol);
    SpaceTimeField lo = env.lower;
    SpaceTimeField up = env.upper;
    Params pm = base;
    pm.m = m;
    const std::vector<double> u0 = initial_data(opt.grid, lo, up, opt.init);
    ParabolicSolution sol =
        solve(pm, opt.grid, u0, lo, up, SolverOptions{}, opt.init);

    // Discretization error measured against the exact lower lift.
    std::vector<double> u0_cal(opt.grid.nr);
    for (int i = 0; i < opt.grid.nr; ++i) u0_cal[i] = lo(opt.grid.r[i], 0.0);
    ParabolicSolution cal =
        solve(pm, opt.grid, u0_cal, lo, lo, SolverOptions{}, "calibration");
    double disc = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
      for (int i = 1; i + 1 < opt.grid.nr; ++i) {
        const double exact = lo(opt.grid.r[i], cal.t[k]);
        disc = std::max(disc, std::abs(cal.u[k][i] - exact) / exact);
      }
    }

    const SandwichReport sand = check_sandwich(sol, lo, up);
    SweepRow row;
    row.m = m;
    row.disc_error = disc;
    row.sandwich_worst_lower = sand.worst_lower;
    row.sandwich_worst_upper = sand.worst_upper;
    row.envelope_gap = sand.min_envelope_gap;
    row.sandwich_ok = sand.ok(5.0 * disc);
    return std::make_pair(row, std::move(sol));
  };

  auto [ref_row, ref_sol] = run_field(0.0);

  auto run_one = [&](double m) {
    SweepRow row;
    row.m = m;
    if (m == 0.0) {
      row = ref_row;  // self-comparison row: norm exactly zero
      row.c0 = 0.0;
      return row;
    }
    try {
      const ValidationReport vr = [&] {
        Params pm = base;
        pm.m = m;
        return validate(pm, /*strict=*/true);
      }();
      if (!vr.ok()) throw std::invalid_argument(vr.to_string());
      auto [r, sol] = run_field(m);
      row = r;
      for (int k = k_lo; k <= k_hi; ++k) {
        for (int i = 1; i + 1 < opt.grid.nr; ++i) {
          row.c0 = std::max(row.c0,
                            std::abs(sol.u[k][i] - ref_sol.u[k][i]));
        }
      }
    } catch (const std::exception& e) {
      row.failed = true;
      row.error = e.what();
    }
    return row;
  };

  std::vector<std::future<SweepRow>> jobs;
  for (double m : opt.m_values) {
    jobs.push_back(std::async(std::launch::async, run_one, m));
  }
  for (auto& j : jobs) rep.rows.push_back(j.get());
  fill_rate(rep);
  return rep;
}

RateFit fit_rate(const SweepReport& report) {
  std::vector<double> ms, norms;
  for (const auto& row : report.rows) {
    if (row.failed || !(row.m > 0.0)) continue;
    if (row.c0 < 1e-13) {
      throw DegenerateFit("fit_rate: norm at solver-noise level for m = " +
                          std::to_string(row.m));
    }
    ms.push_back(row.m);
    norms.push_back(row.c0);
  }
  if (ms.size() < 3) {
    throw DegenerateFit("fit_rate: need at least 3 positive-norm rows");
  }
  const LineFit f = fit_loglog(ms, norms);
  return {f.slope, f.r2};
}

}  // namespace fastdiff
