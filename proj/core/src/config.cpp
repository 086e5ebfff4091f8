#include "fastdiff/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fastdiff/errors.hpp"

namespace fastdiff {

namespace {

using json = nlohmann::ordered_json;

void require_keys(const json& obj, const std::string& block,
                  const std::vector<std::string>& keys) {
  for (const auto& k : keys) {
    if (!obj.contains(k)) {
      throw ConfigError("config: missing key '" + block + "." + k + "'");
    }
  }
  for (const auto& [k, v] : obj.items()) {
    (void)v;
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw ConfigError("config: unknown key '" + block + "." + k + "'");
    }
  }
}

template <class T>
T get_as(const json& obj, const std::string& block, const std::string& key) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config: bad value for key '" + block + "." + key + "'");
  }
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: root must be an object");

  RunConfig c;
  for (const auto& [key, val] : root.items()) {
    if (key == "params") {
      require_keys(val, "params", {"n", "m", "rho1", "beta", "lambda", "T"});
      c.params.n = get_as<int>(val, "params", "n");
      c.params.m = get_as<double>(val, "params", "m");
      c.params.rho1 = get_as<double>(val, "params", "rho1");
      c.params.beta = get_as<double>(val, "params", "beta");
      c.params.lambda = get_as<double>(val, "params", "lambda");
      c.params.T = get_as<double>(val, "params", "T");
    } else if (key == "seed") {
      c.seed = get_as<std::uint64_t>(root, "", "seed");
    } else if (key == "tol") {
      c.tol = get_as<double>(root, "", "tol");
    } else if (key == "out") {
      c.out = get_as<std::string>(root, "", "out");
    } else if (key == "profile") {
      require_keys(val, "profile", {"rho_max", "tol", "rho0"});
      c.profile.rho_max = get_as<double>(val, "profile", "rho_max");
      c.profile.tol = get_as<double>(val, "profile", "tol");
      c.profile.rho0 = get_as<double>(val, "profile", "rho0");
    } else if (key == "farfield") {
      require_keys(val, "farfield", {"r_min", "r_max", "samples"});
      c.farfield.r_min = get_as<double>(val, "farfield", "r_min");
      c.farfield.r_max = get_as<double>(val, "farfield", "r_max");
      c.farfield.samples = get_as<int>(val, "farfield", "samples");
    } else if (key == "parabolic") {
      require_keys(val, "parabolic",
                   {"lambda1", "lambda2", "r_in", "r_out", "nr", "t_end", "nt",
                    "init", "k", "init_file"});
      c.parabolic.lambda1 = get_as<double>(val, "parabolic", "lambda1");
      c.parabolic.lambda2 = get_as<double>(val, "parabolic", "lambda2");
      c.parabolic.r_in = get_as<double>(val, "parabolic", "r_in");
      c.parabolic.r_out = get_as<double>(val, "parabolic", "r_out");
      c.parabolic.nr = get_as<int>(val, "parabolic", "nr");
      c.parabolic.t_end = get_as<double>(val, "parabolic", "t_end");
      c.parabolic.nt = get_as<int>(val, "parabolic", "nt");
      c.parabolic.init = get_as<std::string>(val, "parabolic", "init");
      c.parabolic.k = get_as<double>(val, "parabolic", "k");
      c.parabolic.init_file = get_as<std::string>(val, "parabolic", "init_file");
    } else if (key == "sweep") {
      require_keys(val, "sweep",
                   {"elliptic_m", "parabolic_m", "annulus_lo", "annulus_hi",
                    "mesh_points", "window_lo", "window_hi"});
      c.sweep.elliptic_m =
          get_as<std::vector<double>>(val, "sweep", "elliptic_m");
      c.sweep.parabolic_m =
          get_as<std::vector<double>>(val, "sweep", "parabolic_m");
      c.sweep.annulus_lo = get_as<double>(val, "sweep", "annulus_lo");
      c.sweep.annulus_hi = get_as<double>(val, "sweep", "annulus_hi");
      c.sweep.mesh_points = get_as<int>(val, "sweep", "mesh_points");
      c.sweep.window_lo = get_as<double>(val, "sweep", "window_lo");
      c.sweep.window_hi = get_as<double>(val, "sweep", "window_hi");
    } else {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
  json root;
  root["params"] = {{"n", c.params.n},         {"m", c.params.m},
                    {"rho1", c.params.rho1},   {"beta", c.params.beta},
                    {"lambda", c.params.lambda}, {"T", c.params.T}};
  root["seed"] = c.seed;
  root["tol"] = c.tol;
  root["out"] = c.out;
  root["profile"] = {{"rho_max", c.profile.rho_max},
                     {"tol", c.profile.tol},
                     {"rho0", c.profile.rho0}};
  root["farfield"] = {{"r_min", c.farfield.r_min},
                      {"r_max", c.farfield.r_max},
                      {"samples", c.farfield.samples}};
  root["parabolic"] = {{"lambda1", c.parabolic.lambda1},
                       {"lambda2", c.parabolic.lambda2},
                       {"r_in", c.parabolic.r_in},
                       {"r_out", c.parabolic.r_out},
                       {"nr", c.parabolic.nr},
                       {"t_end", c.parabolic.t_end},
                       {"nt", c.parabolic.nt},
                       {"init", c.parabolic.init},
                       {"k", c.parabolic.k},
                       {"init_file", c.parabolic.init_file}};
  root["sweep"] = {{"elliptic_m", c.sweep.elliptic_m},
                   {"parabolic_m", c.sweep.parabolic_m},
                   {"annulus_lo", c.sweep.annulus_lo},
                   {"annulus_hi", c.sweep.annulus_hi},
                   {"mesh_points", c.sweep.mesh_points},
                   {"window_lo", c.sweep.window_lo},
                   {"window_hi", c.sweep.window_hi}};
  return root.dump(2) + "\n";
}

}  // namespace fastdiff
