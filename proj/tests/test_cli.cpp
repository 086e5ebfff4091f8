// End-to-end checks of the installed command-line surface. The test harness
// exports FASTDIFF_CLI with the binary path; without it these tests are
// skipped.

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("FASTDIFF_CLI"); }

struct RunResult {
  int status = -1;
  std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
  RunResult res;
  const std::string cmd = std::string(cli_path()) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) {
    res.output.append(buf.data(), n);
  }
  const int rc = pclose(pipe);
  res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("fastdiff_cli_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli surface") {
  if (!cli_path()) {
    MESSAGE("FASTDIFF_CLI not set; skipping CLI tests");
    return;
  }

  SUBCASE("constants prints the derived constants as flat JSON") {
    const auto res = run("constants");
    CHECK(res.status == 0);
    CHECK(res.output.find("\"A1\":3.0") != std::string::npos);
    CHECK(res.output.find("\"A2\":-6.0") != std::string::npos);
    CHECK(res.output.find("\"w_inf\":2.0") != std::string::npos);
  }

  SUBCASE("profile emits the documented CSV header") {
    const auto dir = fresh_dir("profile");
    const auto res =
        run("--out " + dir.string() + " profile --rho-max 2 --tol 1e-8");
    CHECK(res.status == 0);
    const std::string csv = slurp(dir / "profile.csv");
    CHECK(csv.rfind("rho,wbar,wbar_rho,r,v,v_prime\n", 0) == 0);
    CHECK(csv.find("\r") == std::string::npos);
  }

  SUBCASE("outputs are byte-stable across repeated runs") {
    const auto d1 = fresh_dir("det1");
    const auto d2 = fresh_dir("det2");
    const std::string flags =
        " farfield --r-min 10 --r-max 100 --samples 4";
    CHECK(run("--out " + d1.string() + " --seed 7" + flags).status == 0);
    CHECK(run("--out " + d2.string() + " --seed 7" + flags).status == 0);
    CHECK(slurp(d1 / "farfield.csv") == slurp(d2 / "farfield.csv"));
    CHECK(slurp(d1 / "farfield_summary.json") ==
          slurp(d2 / "farfield_summary.json"));
    CHECK_FALSE(slurp(d1 / "farfield.csv").empty());
  }

  SUBCASE("missing config keys exit with code 2 and name the key") {
    const auto dir = fresh_dir("badcfg");
    const auto cfg = dir / "bad.json";
    std::ofstream(cfg) << R"({"params":{"n":3,"m":0.0,"rho1":1.0,"lambda":1.0,"T":1.0}})";
    const auto res = run("--config " + cfg.string() + " constants");
    CHECK(res.status == 2);
    CHECK(res.output.find("params.beta") != std::string::npos);
  }

  SUBCASE("unknown flags exit with code 2") {
    CHECK(run("constants --no-such-flag").status == 2);
  }

  SUBCASE("invalid params exit with code 2") {
    CHECK(run("profile --m 0.5").status == 2);
  }

  SUBCASE("verify all --only runs a single criterion") {
    const auto res = run("verify all --only 1");
    CHECK(res.status == 0);
    CHECK(res.output.find("PASS c01") != std::string::npos);
    CHECK(res.output.find("c02") == std::string::npos);
  }

  SUBCASE("parabolic writes long-format CSV and scheme stats") {
    const auto dir = fresh_dir("parab");
    const auto res = run("--out " + dir.string() +
                         " parabolic --m 0.2 --init barenblatt --r-in 0.1 "
                         "--r-out 5 --nr 41 --t-end 0.25 --nt 20");
    CHECK(res.status == 0);
    const std::string csv = slurp(dir / "parabolic.csv");
    CHECK(csv.rfind("t,r,u\n", 0) == 0);
    CHECK(res.output.find("\"boundary_source\":\"barenblatt\"") !=
          std::string::npos);
    CHECK(res.output.find("\"step_retries\":0") != std::string::npos);
  }

  SUBCASE("sweep-elliptic emits the documented CSV and summary") {
    const auto dir = fresh_dir("sweepe");
    const auto cfg = dir / "cfg.json";
    std::ofstream(cfg) << R"({"sweep":{"elliptic_m":[0.1,0.05,0.025],
      "parabolic_m":[0.1],"annulus_lo":0.5,"annulus_hi":2.0,
      "mesh_points":60,"window_lo":0.1,"window_hi":0.9}})";
    const auto res = run("--config " + cfg.string() + " --out " +
                         dir.string() + " --tol 1e-9 sweep-elliptic");
    CHECK(res.status == 0);
    const std::string csv = slurp(dir / "sweep_elliptic.csv");
    CHECK(csv.rfind("m,c0_norm,c1_norm,c2_norm\n", 0) == 0);
    CHECK(res.output.find("\"fitted_rate\":") != std::string::npos);
  }
}
