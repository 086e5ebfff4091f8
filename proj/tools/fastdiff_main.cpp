// Command-line front end: profile integration, far-field diagnostics, the
// implicit annulus solver, singular-limit sweeps, and the verification
// suites. Exit codes: 0 success, 1 failed verification or runtime error,
// 2 configuration errors.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fastdiff/acceptance.hpp"
#include "fastdiff/config.hpp"
#include "fastdiff/errors.hpp"
#include "fastdiff/exact.hpp"
#include "fastdiff/farfield.hpp"
#include "fastdiff/numerics.hpp"
#include "fastdiff/parabolic.hpp"
#include "fastdiff/params.hpp"
#include "fastdiff/profile.hpp"
#include "fastdiff/sweeps.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace fastdiff;

// 10 significant digits, C locale, no trailing noise.
std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::string& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open output file " + path.string());
    out_ << header << "\n";
  }
  void row(std::initializer_list<double> cells) {
    bool first = true;
    for (double c : cells) {
      if (!first) out_ << ",";
      out_ << num(c);
      first = false;
    }
    out_ << "\n";
  }

 private:
  std::ofstream out_;
};

struct GlobalOpts {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
};

RunConfig resolve_config(const GlobalOpts& g) {
  RunConfig cfg;
  if (g.config_path) cfg = load_config(*g.config_path);
  if (g.out_dir) cfg.out = *g.out_dir;
  if (g.seed) cfg.seed = *g.seed;
  if (g.tol) {
    cfg.tol = *g.tol;
    cfg.profile.tol = *g.tol;
  }
  return cfg;
}

std::filesystem::path out_file(const RunConfig& cfg, const std::string& name,
                               const std::optional<std::string>& override) {
  if (override) return *override;
  std::filesystem::create_directories(cfg.out);
  return std::filesystem::path(cfg.out) / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << text;
}

json constants_json(const DerivedConstants& c) {
  return json{{"alpha_m", c.alpha_m}, {"alpha", c.alpha},
              {"beta0", c.beta0},     {"beta1_0", c.beta1_0},
              {"a1", c.a1},           {"a2", c.a2},
              {"a3", c.a3},           {"A1", c.A1},
              {"A2", c.A2},           {"Cm", c.Cm},
              {"w_inf", c.w_inf},     {"w1", c.w1}};
}

void require_valid(const Params& p, bool strict) {
  const ValidationReport rep = validate(p, strict);
  if (!rep.ok()) throw ConfigError("invalid params: " + rep.to_string());
}

// --- subcommand bodies ------------------------------------------------------

int cmd_constants(const RunConfig& cfg) {
  require_valid(cfg.params, /*strict=*/false);
  std::cout << constants_json(derive(cfg.params)).dump() << "\n";
  return 0;
}

int cmd_profile(const RunConfig& cfg, const std::optional<std::string>& out) {
  require_valid(cfg.params, /*strict=*/true);
  const DerivedConstants c = derive(cfg.params);
  ProfileOptions opt;
  opt.rho_max = cfg.profile.rho_max;
  opt.rel_tol = cfg.profile.tol;
  opt.rho0 = cfg.profile.rho0;
  const ProfileSolution prof = integrate_profile(cfg.params, c, opt);

  const auto path = out_file(cfg, "profile.csv", out);
  CsvWriter csv(path, "rho,wbar,wbar_rho,r,v,v_prime");
  const auto& rho = prof.rho_grid();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = prof.r_of_rho(rho[i]);
    csv.row({rho[i], prof.wbar_grid()[i], prof.wbar_rho_grid()[i], r,
             prof.v(r), prof.v_prime(r)});
  }
  json summary{{"nodes", rho.size()},
               {"rho0", prof.rho0()},
               {"rho_max", prof.rho_max()},
               {"tol", prof.rel_tol()},
               {"file", path.string()}};
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_farfield(const RunConfig& cfg) {
  require_valid(cfg.params, /*strict=*/true);
  const DerivedConstants c = derive(cfg.params);
  ProfileOptions opt;
  opt.rel_tol = cfg.profile.tol;
  opt.rho_max =
      std::pow(cfg.farfield.r_max, cfg.params.rho1 / cfg.params.beta) * 1.02;
  const ProfileSolution prof = integrate_profile(cfg.params, c, opt);
  const std::vector<double> ladder =
      geomspace(cfg.farfield.r_min, cfg.farfield.r_max, cfg.farfield.samples);
  const FarFieldReport rep = farfield_limit(prof, ladder);

  CsvWriter csv(out_file(cfg, "farfield.csv", std::nullopt),
                "r,w,abs_err,rel_err");
  for (std::size_t i = 0; i < rep.r.size(); ++i) {
    const double abs_err = std::abs(rep.w[i] - rep.target);
    csv.row({rep.r[i], rep.w[i], abs_err, abs_err / rep.target});
  }
  json summary{{"target", rep.target},
               {"raw_limit", rep.raw_limit},
               {"extrapolated_limit", rep.extrapolated_limit},
               {"rel_error_raw", rep.rel_error_raw},
               {"rel_error_extrapolated", rep.rel_error_extrapolated},
               {"tail_slope", rep.tail_slope},
               {"model_reliable", rep.model_reliable},
               {"assertion_mode", rep.assertion_mode},
               {"closest_branch", rep.closest_branch}};
  const std::string line = summary.dump();
  write_text(out_file(cfg, "farfield_summary.json", std::nullopt),
             line + "\n");
  std::cout << line << "\n";
  return 0;
}

struct ParabolicSetup {
  std::vector<double> u0;
  SpaceTimeField bc;
  std::string source;
};

ParabolicSetup parabolic_setup(const RunConfig& cfg, const AnnulusGrid& grid) {
  const auto& pc = cfg.parabolic;
  ParabolicSetup s;
  if (pc.init == "barenblatt") {
    const BarenblattSolution bk(cfg.params, pc.k);
    s.bc = [bk](double r, double t) { return bk(r, t); };
    s.u0.resize(grid.nr);
    for (int i = 0; i < grid.nr; ++i) s.u0[i] = bk.initial_value(grid.r[i]);
    s.source = "barenblatt";
    return s;
  }

  // Envelope-based data need the two profile lifts.
  Params p1 = cfg.params;
  p1.lambda = pc.lambda1;
  Params p2 = cfg.params;
  p2.lambda = pc.lambda2;
  require_valid(p1, /*strict=*/true);
  ProfileOptions popt;
  popt.rel_tol = cfg.profile.tol;
  popt.rho_max =
      std::pow(std::pow(cfg.params.T, cfg.params.beta) * pc.r_out * 1.02,
               cfg.params.rho1 / cfg.params.beta) +
      1e-6;
  auto prof1 = std::make_shared<const ProfileSolution>(
      integrate_profile(p1, derive(p1), popt));
  auto prof2 = std::make_shared<const ProfileSolution>(
      integrate_profile(p2, derive(p2), popt));
  const SelfSimilarSolution lo(prof1, cfg.params.T);
  const SelfSimilarSolution up(prof2, cfg.params.T);

  if (pc.init == "lower") {
    s.bc = [lo](double r, double t) { return lo(r, t); };
  } else if (pc.init == "upper") {
    s.bc = [up](double r, double t) { return up(r, t); };
  } else if (pc.init == "geomean" || pc.init == "file") {
    s.bc = [lo, up](double r, double t) {
      return std::sqrt(lo(r, t) * up(r, t));
    };
  } else {
    throw ConfigError("unknown parabolic init '" + pc.init + "'");
  }

  if (pc.init == "file") {
    if (pc.init_file.empty()) {
      throw ConfigError("parabolic init 'file' needs parabolic.init_file");
    }
    std::ifstream in(pc.init_file);
    if (!in) throw ConfigError("cannot read init file " + pc.init_file);
    double v;
    while (in >> v) s.u0.push_back(v);
    if (static_cast<int>(s.u0.size()) != grid.nr) {
      throw ConfigError("init file must hold exactly nr = " +
                        std::to_string(grid.nr) + " values");
    }
    s.source = "file:" + pc.init_file;
  } else {
    s.u0.resize(grid.nr);
    for (int i = 0; i < grid.nr; ++i) s.u0[i] = s.bc(grid.r[i], 0.0);
    s.source = pc.init;
  }
  return s;
}

int cmd_parabolic(const RunConfig& cfg, const std::optional<std::string>& out) {
  require_valid(cfg.params, /*strict=*/false);
  const auto& pc = cfg.parabolic;
  if (!(pc.t_end < cfg.params.T)) {
    throw ConfigError("parabolic t_end must be below the horizon T");
  }
  const AnnulusGrid grid =
      AnnulusGrid::make(pc.r_in, pc.r_out, pc.nr, pc.t_end, pc.nt);
  const ParabolicSetup setup = parabolic_setup(cfg, grid);
  const ParabolicSolution sol = solve(cfg.params, grid, setup.u0, setup.bc,
                                      setup.bc, SolverOptions{}, setup.source);

  CsvWriter csv(out_file(cfg, "parabolic.csv", out), "t,r,u");
  for (std::size_t k = 0; k < sol.t.size(); ++k) {
    for (int i = 0; i < grid.nr; ++i) {
      csv.row({sol.t[k], grid.r[i], sol.u[k][i]});
    }
  }
  json stats{{"boundary_source", sol.boundary_source},
             {"newton_iterations", sol.stats.newton_iterations},
             {"max_newton_iterations", sol.stats.max_newton_iterations},
             {"max_residual", sol.stats.max_residual},
             {"step_retries", sol.stats.step_retries}};
  const std::string line = stats.dump();
  write_text(out_file(cfg, "parabolic_stats.json", std::nullopt), line + "\n");
  std::cout << line << "\n";
  return 0;
}

int cmd_sweep_elliptic(const RunConfig& cfg) {
  require_valid(cfg.params, /*strict=*/false);
  EllipticSweepOptions opt;
  opt.m_values = cfg.sweep.elliptic_m;
  opt.r_lo = cfg.sweep.annulus_lo;
  opt.r_hi = cfg.sweep.annulus_hi;
  opt.mesh_points = cfg.sweep.mesh_points;
  opt.profile_tol = cfg.profile.tol;
  const SweepReport rep = elliptic_sweep(cfg.params, opt);

  CsvWriter csv(out_file(cfg, "sweep_elliptic.csv", std::nullopt),
                "m,c0_norm,c1_norm,c2_norm");
  for (const auto& row : rep.rows) {
    csv.row({row.m, row.c0, row.c1, row.c2});
  }
  json summary{{"kind", rep.kind},
               {"fitted_rate", rep.fitted_rate},
               {"r2", rep.fit_r2},
               {"annulus", {rep.annulus_lo, rep.annulus_hi}}};
  const std::string line = summary.dump();
  write_text(out_file(cfg, "sweep_elliptic_summary.json", std::nullopt),
             line + "\n");
  std::cout << line << "\n";
  return 0;
}

int cmd_sweep_parabolic(const RunConfig& cfg) {
  require_valid(cfg.params, /*strict=*/false);
  ParabolicSweepOptions opt;
  opt.m_values = cfg.sweep.parabolic_m;
  opt.lambda1 = cfg.parabolic.lambda1;
  opt.lambda2 = cfg.parabolic.lambda2;
  opt.grid = AnnulusGrid::make(cfg.parabolic.r_in, cfg.parabolic.r_out,
                               cfg.parabolic.nr, cfg.parabolic.t_end,
                               cfg.parabolic.nt);
  opt.init = cfg.parabolic.init == "file" ? "geomean" : cfg.parabolic.init;
  opt.window_lo = cfg.sweep.window_lo;
  opt.window_hi = cfg.sweep.window_hi;
  opt.profile_tol = cfg.profile.tol;
  const SweepReport rep = parabolic_sweep(cfg.params, opt);

  CsvWriter csv(out_file(cfg, "sweep_parabolic.csv", std::nullopt),
                "m,sup_norm");
  for (const auto& row : rep.rows) {
    csv.row({row.m, row.c0});
  }
  json summary{{"kind", rep.kind},
               {"fitted_rate", rep.fitted_rate},
               {"r2", rep.fit_r2}};
  json rows = json::array();
  for (const auto& row : rep.rows) {
    rows.push_back(json{{"m", row.m},
                        {"sup_norm", row.c0},
                        {"sandwich_ok", row.sandwich_ok},
                        {"disc_error", row.disc_error}});
  }
  summary["rows"] = rows;
  const std::string line = summary.dump();
  write_text(out_file(cfg, "sweep_parabolic_summary.json", std::nullopt),
             line + "\n");
  std::cout << line << "\n";
  return 0;
}

int cmd_verify_exact(const RunConfig& cfg) {
  const std::vector<double> h_ladder = default_h_ladder();
  const std::vector<double> r_samples = {0.5, 1.0, 2.0};
  const std::vector<double> t_samples = {0.25, 0.5, 0.75};
  json table = json::array();
  bool ok = true;

  auto add = [&](const ResidualStudy& st) {
    json rows = json::array();
    for (const auto& row : st.rows) {
      rows.push_back(json{{"h", row.h}, {"max_residual", row.max_residual}});
    }
    table.push_back(json{{"oracle", st.oracle},
                         {"rows", rows},
                         {"fitted_order", st.fitted_order}});
    ok = ok && std::abs(st.fitted_order - 2.0) <= 0.3;
  };

  for (double m : {0.0, 0.2}) {
    Params p = cfg.params;
    p.m = m;
    const BarenblattSolution bk(p, cfg.parabolic.k);
    add(residual_refinement_study(
        [bk](double r, double t) { return bk(r, t); }, p.n, p.m,
        "barenblatt m=" + num(m), r_samples, t_samples, h_ladder));
  }
  for (double m : {0.0, 0.2}) {
    Params p = cfg.params;
    p.m = m;
    require_valid(p, /*strict=*/true);
    ProfileOptions popt;
    popt.rel_tol = 1e-12;
    popt.rho_max =
        std::pow(std::pow(p.T, p.beta) * 2.1, p.rho1 / p.beta) + 1.0;
    auto prof = std::make_shared<const ProfileSolution>(
        integrate_profile(p, derive(p), popt));
    const SelfSimilarSolution lift(prof, p.T);
    add(residual_refinement_study(
        [lift](double r, double t) { return lift(r, t); }, p.n, p.m,
        "selfsimilar m=" + num(m), r_samples, t_samples, h_ladder));
  }

  const std::string text = table.dump(2) + "\n";
  write_text(out_file(cfg, "verify_exact.json", std::nullopt), text);
  std::cout << text;
  return ok ? 0 : 1;
}

int cmd_verify_all(const RunConfig& cfg, const std::vector<int>& only,
                   const std::vector<int>& skip) {
  const auto results = run_acceptance(cfg.seed, only, skip, &std::cout);
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Radial fast-diffusion and log-diffusion profile toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "JSON run configuration");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--seed", g.seed, "seed for the randomized trials");
  app.add_option("--tol", g.tol, "integrator tolerance override");

  auto* constants = app.add_subcommand("constants", "print derived constants");

  auto* profile = app.add_subcommand("profile", "integrate the radial profile");
  std::optional<int> f_n;
  std::optional<double> f_m, f_rho1, f_beta, f_lambda, f_rho_max, f_tol;
  std::optional<std::string> f_out;
  profile->add_option("--n", f_n);
  profile->add_option("--m", f_m);
  profile->add_option("--rho1", f_rho1);
  profile->add_option("--beta", f_beta);
  profile->add_option("--lambda", f_lambda);
  profile->add_option("--rho-max", f_rho_max);
  profile->add_option("--tol", f_tol);
  profile->add_option("--out", f_out, "CSV output path");

  auto* farfield = app.add_subcommand("farfield", "tail decay diagnostics");
  std::optional<double> ff_rmin, ff_rmax;
  std::optional<int> ff_samples;
  farfield->add_option("--r-min", ff_rmin);
  farfield->add_option("--r-max", ff_rmax);
  farfield->add_option("--samples", ff_samples);

  auto* parabolic = app.add_subcommand("parabolic", "implicit annulus solve");
  std::optional<double> pb_m, pb_l1, pb_l2, pb_rin, pb_rout, pb_tend;
  std::optional<int> pb_nr, pb_nt;
  std::optional<std::string> pb_init, pb_out, pb_init_file;
  parabolic->add_option("--m", pb_m);
  parabolic->add_option("--lambda1", pb_l1);
  parabolic->add_option("--lambda2", pb_l2);
  parabolic->add_option("--r-in", pb_rin);
  parabolic->add_option("--r-out", pb_rout);
  parabolic->add_option("--nr", pb_nr);
  parabolic->add_option("--t-end", pb_tend);
  parabolic->add_option("--nt", pb_nt);
  parabolic->add_option("--init", pb_init)
      ->check(CLI::IsMember({"lower", "upper", "geomean", "barenblatt",
                             "file"}));
  parabolic->add_option("--init-file", pb_init_file);
  parabolic->add_option("--out", pb_out, "CSV output path");

  auto* sweep_e = app.add_subcommand("sweep-elliptic", "m -> 0 profile sweep");
  auto* sweep_p =
      app.add_subcommand("sweep-parabolic", "m -> 0 space-time sweep");

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  auto* verify_exact =
      verify->add_subcommand("exact", "exact-solution residual studies");
  auto* verify_all =
      verify->add_subcommand("all", "run every acceptance criterion");
  std::vector<int> v_only, v_skip;
  verify_all->add_option("--only", v_only, "criterion ids to run (1..10)");
  verify_all->add_option("--skip", v_skip, "criterion ids to skip");

  try {
    app.parse(argc, argv);

    RunConfig cfg = resolve_config(g);
    if (f_n) cfg.params.n = *f_n;
    if (f_m) cfg.params.m = *f_m;
    if (f_rho1) cfg.params.rho1 = *f_rho1;
    if (f_beta) cfg.params.beta = *f_beta;
    if (f_lambda) cfg.params.lambda = *f_lambda;
    if (f_rho_max) cfg.profile.rho_max = *f_rho_max;
    if (f_tol) cfg.profile.tol = *f_tol;
    if (ff_rmin) cfg.farfield.r_min = *ff_rmin;
    if (ff_rmax) cfg.farfield.r_max = *ff_rmax;
    if (ff_samples) cfg.farfield.samples = *ff_samples;
    if (pb_m) cfg.params.m = *pb_m;
    if (pb_l1) cfg.parabolic.lambda1 = *pb_l1;
    if (pb_l2) cfg.parabolic.lambda2 = *pb_l2;
    if (pb_rin) cfg.parabolic.r_in = *pb_rin;
    if (pb_rout) cfg.parabolic.r_out = *pb_rout;
    if (pb_nr) cfg.parabolic.nr = *pb_nr;
    if (pb_tend) cfg.parabolic.t_end = *pb_tend;
    if (pb_nt) cfg.parabolic.nt = *pb_nt;
    if (pb_init) cfg.parabolic.init = *pb_init;
    if (pb_init_file) cfg.parabolic.init_file = *pb_init_file;

    if (constants->parsed()) return cmd_constants(cfg);
    if (profile->parsed()) return cmd_profile(cfg, f_out);
    if (farfield->parsed()) return cmd_farfield(cfg);
    if (parabolic->parsed()) return cmd_parabolic(cfg, pb_out);
    if (sweep_e->parsed()) return cmd_sweep_elliptic(cfg);
    if (sweep_p->parsed()) return cmd_sweep_parabolic(cfg);
    if (verify->parsed()) {
      if (verify_exact->parsed()) return cmd_verify_exact(cfg);
      if (verify_all->parsed()) return cmd_verify_all(cfg, v_only, v_skip);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
