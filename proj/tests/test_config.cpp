#include <doctest.h>

#include <string>

#include "fastdiff/config.hpp"
#include "fastdiff/errors.hpp"

using namespace fastdiff;

TEST_CASE("defaults round-trip through emit/parse") {
  const RunConfig cfg;
  CHECK(parse_config(emit_config(cfg)) == cfg);
}

TEST_CASE("a modified configuration round-trips") {
  RunConfig cfg;
  cfg.params.n = 5;
  cfg.params.m = 0.2;
  cfg.params.rho1 = 2.0;
  cfg.params.lambda = 0.7;
  cfg.seed = 999;
  cfg.tol = 1e-8;
  cfg.out = "results";
  cfg.profile.rho_max = 42.0;
  cfg.parabolic.init = "barenblatt";
  cfg.parabolic.nr = 101;
  cfg.sweep.elliptic_m = {0.1, 0.01};
  CHECK(parse_config(emit_config(cfg)) == cfg);
}

TEST_CASE("params block requires exactly the six keys") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"params":{"n":3,"m":0.0,"rho1":1.0,"lambda":1.0,"T":1.0}})"),
      doctest::Contains("params.beta"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"params":{"n":3,"m":0.0,"rho1":1.0,"beta":1.0,"lambda":1.0,"T":1.0,"extra":2}})"),
      doctest::Contains("params.extra"), ConfigError);
}

TEST_CASE("unknown top-level keys and bad JSON are config errors") {
  CHECK_THROWS_AS(parse_config(R"({"params":{},"oops":1})"), ConfigError);
  CHECK_THROWS_AS(parse_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), ConfigError);
}

TEST_CASE("bad value types name the key") {
  CHECK_THROWS_WITH_AS(
      parse_config(
          R"({"params":{"n":3,"m":"zero","rho1":1.0,"beta":1.0,"lambda":1.0,"T":1.0}})"),
      doctest::Contains("params.m"), ConfigError);
}

TEST_CASE("missing files are reported") {
  CHECK_THROWS_AS(load_config("/nonexistent/path.json"), ConfigError);
}
