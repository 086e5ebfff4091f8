#include "fastdiff/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fastdiff/errors.hpp"

namespace fastdiff {

AnnulusGrid AnnulusGrid::make(double r_in, double r_out, int nr, double t_end,
                              int nt) {
  if (!(r_in > 0.0) || !(r_out > r_in)) {
    throw std::invalid_argument("AnnulusGrid: need 0 < r_in < r_out");
  }
  if (nr < 3 || nt < 1) {
    throw std::invalid_argument("AnnulusGrid: need nr >= 3 and nt >= 1");
  }
  if (!(t_end > 0.0)) {
    throw std::invalid_argument("AnnulusGrid: t_end must be > 0");
  }
  AnnulusGrid g;
  g.r_in = r_in;
  g.r_out = r_out;
  g.nr = nr;
  g.t_end = t_end;
  g.nt = nt;
  const double s0 = std::log(r_in);
  const double ds = std::log(r_out / r_in) / (nr - 1);
  g.r.resize(nr);
  for (int i = 0; i < nr; ++i) g.r[i] = std::exp(s0 + i * ds);
  g.r.front() = r_in;
  g.r.back() = r_out;
  return g;
}

bool AnnulusGrid::same_layout(const AnnulusGrid& o) const {
  return nr == o.nr && nt == o.nt && r_in == o.r_in && r_out == o.r_out &&
         t_end == o.t_end;
}

namespace {

// One backward-Euler step with Newton + positivity-preserving line search.
// Returns true and overwrites u on convergence; u untouched on failure.
class ImplicitStepper {
 public:
  ImplicitStepper(const Params& p, const AnnulusGrid& g,
                  const SolverOptions& opt)
      : m_(p.m), opt_(opt), nr_(g.nr) {
    // Flux weights of (r^{n-1} phi_r)_r / r^{n-1} on the log grid:
    // in s = log r the operator is e^{-ns} d/ds (e^{(n-2)s} d(phi)/ds).
    const double ds = std::log(g.r_out / g.r_in) / (g.nr - 1);
    const double s0 = std::log(g.r_in);
    wm_.resize(nr_, 0.0);
    wp_.resize(nr_, 0.0);
    for (int i = 1; i + 1 < nr_; ++i) {
      const double si = s0 + i * ds;
      const double scale = std::exp(-p.n * si) / (ds * ds);
      wp_[i] = scale * std::exp((p.n - 2.0) * (si + 0.5 * ds));
      wm_[i] = scale * std::exp((p.n - 2.0) * (si - 0.5 * ds));
    }
  }

  bool step(std::vector<double>& u, double dt, double bc_lo, double bc_hi,
            SchemeStats& stats) const {
    const int n = nr_;
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> U = u;
    U[0] = bc_lo;
    U[n - 1] = bc_hi;

    std::vector<double> F(n, 0.0), floor(n, 0.0), phi(n, 0.0), dphi(n, 0.0);
    std::vector<double> lo(n), di(n), up(n), rhs(n), delta(n);

    // floor[i] estimates the roundoff-limited magnitude of F[i]; the large
    // flux weights make residuals below it unreachable, so convergence is
    // judged on the excess above the floor.
    auto residual = [&](const std::vector<double>& x, std::vector<double>& f) {
      for (int i = 0; i < n; ++i) phi[i] = phi_m(x[i], m_);
      for (int i = 1; i + 1 < n; ++i) {
        const double flux = wp_[i] * (phi[i + 1] - phi[i]) -
                            wm_[i] * (phi[i] - phi[i - 1]);
        f[i] = x[i] - u[i] - dt * flux;
        floor[i] =
            8.0 * eps *
            (std::abs(x[i]) + std::abs(u[i]) +
             dt * (wp_[i] * (std::abs(phi[i + 1]) + std::abs(phi[i])) +
                   wm_[i] * (std::abs(phi[i]) + std::abs(phi[i - 1]))));
      }
    };

    auto excess_norm = [&](const std::vector<double>& f) {
      double worst = 0.0;
      for (int i = 1; i + 1 < n; ++i) {
        const double ex = std::max(0.0, std::abs(f[i]) - floor[i]);
        worst = std::max(worst, ex / (1.0 + std::abs(u[i])));
      }
      return worst;
    };
    // The Newton direction is a descent direction for the l2 residual, not
    // for the max norm; the line search tests the former.
    auto scaled_norm2 = [&](const std::vector<double>& f) {
      double sum = 0.0;
      for (int i = 1; i + 1 < n; ++i) {
        const double s = f[i] / (1.0 + std::abs(u[i]));
        sum += s * s;
      }
      return std::sqrt(sum);
    };

    residual(U, F);
    double norm = excess_norm(F);
    double norm2 = scaled_norm2(F);
    int iters = 0;
    while (norm > opt_.newton_tol) {
      if (++iters > opt_.max_newton_iters) return false;
      for (int i = 0; i < n; ++i) dphi[i] = phi_m_prime(U[i], m_);
      for (int i = 1; i + 1 < n; ++i) {
        lo[i] = -dt * wm_[i] * dphi[i - 1];
        di[i] = 1.0 + dt * (wp_[i] + wm_[i]) * dphi[i];
        up[i] = -dt * wp_[i] * dphi[i + 1];
        rhs[i] = -F[i];
      }
      // Thomas solve on interior nodes 1..n-2 (boundary columns are fixed).
      lo[1] = 0.0;
      up[n - 2] = 0.0;
      for (int i = 2; i + 1 < n; ++i) {
        const double w = lo[i] / di[i - 1];
        di[i] -= w * up[i - 1];
        rhs[i] -= w * rhs[i - 1];
      }
      delta[n - 2] = rhs[n - 2] / di[n - 2];
      for (int i = n - 3; i >= 1; --i) {
        delta[i] = (rhs[i] - up[i] * delta[i + 1]) / di[i];
      }

      // Largest step keeping the iterate safely positive.
      double sigma = 1.0;
      for (int i = 1; i + 1 < n; ++i) {
        if (delta[i] < 0.0) {
          sigma = std::min(sigma, 0.95 * U[i] / (-delta[i]));
        }
      }
      std::vector<double> trial(n);
      bool improved = false;
      for (; sigma > 1e-10; sigma *= 0.5) {
        trial = U;
        for (int i = 1; i + 1 < n; ++i) trial[i] += sigma * delta[i];
        residual(trial, F);
        const double trial_norm2 = scaled_norm2(F);
        if (trial_norm2 <= (1.0 - 0.25 * sigma) * norm2 ||
            excess_norm(F) <= opt_.newton_tol) {
          U = trial;
          norm = excess_norm(F);
          norm2 = trial_norm2;
          improved = true;
          break;
        }
      }
      if (!improved) return false;
    }

    stats.newton_iterations += iters;
    stats.max_newton_iterations = std::max(stats.max_newton_iterations, iters);
    stats.max_residual = std::max(stats.max_residual, norm);
    for (int i = 0; i < n; ++i) {
      if (!(U[i] > 0.0)) {
        throw PositivityLoss("parabolic solve: nonpositive state at node " +
                             std::to_string(i));
      }
    }
    u = std::move(U);
    return true;
  }

 private:
  double m_;
  SolverOptions opt_;
  int nr_;
  std::vector<double> wm_, wp_;
};

}  // namespace

ParabolicSolution solve(const Params& p, const AnnulusGrid& grid,
                        std::span<const double> u0, const SpaceTimeField& bc_in,
                        const SpaceTimeField& bc_out, const SolverOptions& opt,
                        std::string boundary_source) {
  if (static_cast<int>(u0.size()) != grid.nr) {
    throw std::invalid_argument("solve: u0 size does not match grid");
  }
  for (double v : u0) {
    if (!(v > 0.0)) {
      throw std::invalid_argument("solve: initial data must be positive");
    }
  }
  const ValidationReport rep = validate(p, /*strict=*/false);
  if (!rep.ok()) {
    throw std::invalid_argument("solve: " + rep.to_string());
  }

  ParabolicSolution sol;
  sol.grid = grid;
  sol.boundary_source = std::move(boundary_source);
  sol.t.resize(grid.nt + 1);
  sol.u.assign(grid.nt + 1, std::vector<double>(grid.nr));
  std::copy(u0.begin(), u0.end(), sol.u[0].begin());

  const ImplicitStepper stepper(p, grid, opt);
  const double dt = grid.t_end / grid.nt;

  // Advances state across [t0, t0+span], halving on Newton divergence down
  // to span / 2^max_step_halvings.
  auto advance = [&](auto&& self, std::vector<double>& state, double t0,
                     double span, int depth) -> void {
    const double t1 = t0 + span;
    const double lo = bc_in(grid.r_in, t1);
    const double hi = bc_out(grid.r_out, t1);
    if (!(lo > 0.0) || !(hi > 0.0)) {
      throw std::invalid_argument("solve: boundary data must be positive");
    }
    if (stepper.step(state, span, lo, hi, sol.stats)) return;
    if (depth >= opt.max_step_halvings) {
      throw NewtonDivergence("solve: Newton failed at t = " +
                             std::to_string(t0) + " with substep " +
                             std::to_string(span));
    }
    ++sol.stats.step_retries;
    self(self, state, t0, 0.5 * span, depth + 1);
    self(self, state, t0 + 0.5 * span, 0.5 * span, depth + 1);
  };

  std::vector<double> state = sol.u[0];
  for (int k = 0; k < grid.nt; ++k) {
    const double t0 = k * dt;
    if (k == 0 && opt.quarter_first_step) {
      for (int q = 0; q < 4; ++q) {
        advance(advance, state, t0 + 0.25 * q * dt, 0.25 * dt, 0);
      }
    } else {
      advance(advance, state, t0, dt, 0);
    }
    sol.t[k + 1] = (k + 1) * dt;
    sol.u[k + 1] = state;
  }
  sol.t[0] = 0.0;
  return sol;
}

SandwichReport check_sandwich(const ParabolicSolution& sol,
                              const SpaceTimeField& lower,
                              const SpaceTimeField& upper) {
  SandwichReport rep;
  rep.worst_lower = rep.worst_upper = rep.min_envelope_gap =
      std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < sol.t.size(); ++k) {
    double min_lo = std::numeric_limits<double>::infinity();
    double min_up = std::numeric_limits<double>::infinity();
    for (int i = 0; i < sol.grid.nr; ++i) {
      const double lo = lower(sol.grid.r[i], sol.t[k]);
      const double up = upper(sol.grid.r[i], sol.t[k]);
      const double u = sol.u[k][i];
      min_lo = std::min(min_lo, (u - lo) / lo);
      min_up = std::min(min_up, (up - u) / up);
      rep.min_envelope_gap = std::min(rep.min_envelope_gap, (up - lo) / up);
    }
    rep.t.push_back(sol.t[k]);
    rep.min_lower_slack.push_back(min_lo);
    rep.min_upper_slack.push_back(min_up);
    rep.worst_lower = std::min(rep.worst_lower, min_lo);
    rep.worst_upper = std::min(rep.worst_upper, min_up);
  }
  return rep;
}

ComparisonReport check_comparison(const ParabolicSolution& a,
                                  const ParabolicSolution& b) {
  if (!a.grid.same_layout(b.grid)) {
    throw GridMismatch("check_comparison: solutions on different grids");
  }
  ComparisonReport rep;
  rep.min_difference = std::numeric_limits<double>::infinity();
  rep.min_relative_difference = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < a.u.size(); ++k) {
    for (int i = 0; i < a.grid.nr; ++i) {
      const double d = b.u[k][i] - a.u[k][i];
      const double scale = std::max(std::abs(a.u[k][i]), std::abs(b.u[k][i]));
      rep.min_difference = std::min(rep.min_difference, d);
      rep.min_relative_difference =
          std::min(rep.min_relative_difference, d / scale);
    }
  }
  return rep;
}

}  // namespace fastdiff
