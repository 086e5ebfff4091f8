#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fastdiff/params.hpp"

namespace fastdiff {

struct ProfileConfig {
  double rho_max = 10.0;
  double tol = 1e-10;
  double rho0 = 0.0;  ///< 0 -> automatic placement
  bool operator==(const ProfileConfig&) const = default;
};

struct FarfieldConfig {
  double r_min = 10.0;
  double r_max = 1000.0;
  int samples = 5;
  bool operator==(const FarfieldConfig&) const = default;
};

struct ParabolicConfig {
  double lambda1 = 2.0;
  double lambda2 = 1.0;
  double r_in = 0.05;
  double r_out = 20.0;
  int nr = 201;
  double t_end = 0.5;
  int nt = 400;
  std::string init = "geomean";
  double k = 1.0;              ///< Barenblatt shape, init = "barenblatt"
  std::string init_file;       ///< node data, init = "file"
  bool operator==(const ParabolicConfig&) const = default;
};

struct SweepConfig {
  std::vector<double> elliptic_m{0.2, 0.1, 0.05, 0.025};
  std::vector<double> parabolic_m{0.2, 0.1, 0.05};
  double annulus_lo = 0.5;
  double annulus_hi = 2.0;
  int mesh_points = 200;
  double window_lo = 0.1;
  double window_hi = 0.9;
  bool operator==(const SweepConfig&) const = default;
};

/// Everything a CLI run needs. Round-trips through JSON:
/// parse_config(emit_config(c)) == c.
struct RunConfig {
  Params params;
  std::uint64_t seed = 12345;
  double tol = 1e-10;
  std::string out = ".";
  ProfileConfig profile;
  FarfieldConfig farfield;
  ParabolicConfig parabolic;
  SweepConfig sweep;
  bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON run configuration. Every block is optional; a present
/// "params" block must carry exactly the keys n, m, rho1, beta, lambda, T.
/// Throws ConfigError naming the offending key.
RunConfig parse_config(const std::string& json_text);

/// Loads and parses a config file. Throws ConfigError when unreadable.
RunConfig load_config(const std::string& path);

/// Stable, human-readable JSON emission (fixed key order).
std::string emit_config(const RunConfig& c);

}  // namespace fastdiff
