#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fastdiff/params.hpp"

using namespace fastdiff;

namespace {
Params make(int n, double m, double rho1, double beta, double lambda = 1.0) {
  Params p;
  p.n = n;
  p.m = m;
  p.rho1 = rho1;
  p.beta = beta;
  p.lambda = lambda;
  return p;
}
}  // namespace

TEST_CASE("validate rejects the m boundary") {
  const auto rep = validate(make(3, 1.0 / 3.0, 1.0, 1.0));
  CHECK_FALSE(rep.ok());
  CHECK(rep.to_string().find("m must satisfy") != std::string::npos);
}

TEST_CASE("validate strict rejects beta at or below beta0") {
  // beta0(n=5, m=0.2) = 0.1
  CHECK_FALSE(validate(make(5, 0.2, 1.0, 0.05), true).ok());
  CHECK_FALSE(validate(make(5, 0.2, 1.0, 0.1), true).ok());
  CHECK(validate(make(5, 0.2, 1.0, 0.1), false).ok());
  CHECK(validate(make(5, 0.2, 1.0, 0.2), true).ok());
}

TEST_CASE("m = 0 makes beta0 vanish") {
  CHECK(validate(make(3, 0.0, 1.0, 1.0), true).ok());
}

TEST_CASE("validate flags nonpositive rho1, lambda, T and nan") {
  Params p = make(3, 0.0, -1.0, 1.0);
  CHECK_FALSE(validate(p).ok());
  p = make(3, 0.0, 1.0, 1.0);
  p.lambda = 0.0;
  CHECK_FALSE(validate(p).ok());
  p.lambda = 1.0;
  p.T = -2.0;
  CHECK_FALSE(validate(p).ok());
  p.T = 1.0;
  p.m = std::numeric_limits<double>::quiet_NaN();
  CHECK_FALSE(validate(p).ok());
}

TEST_CASE("derive matches the hand-evaluated n=3 row") {
  const DerivedConstants c = derive(make(3, 0.0, 1.0, 1.0));
  CHECK(c.alpha_m == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.a1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.a2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.a3 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.A1 == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.A2 == doctest::Approx(-6.0).epsilon(1e-14));
  CHECK(c.Cm == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(c.w_inf == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.w1 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.beta1_0 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("derive matches the hand-evaluated n=5, m=0.2 row") {
  const DerivedConstants c = derive(make(5, 0.2, 1.0, 1.0));
  CHECK(c.alpha_m == doctest::Approx(3.75).epsilon(1e-14));
  CHECK(c.beta0 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(c.a1 == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(c.a2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.a3 == doctest::Approx(8.4375).epsilon(1e-14));
  CHECK(c.A1 == doctest::Approx(8.4375).epsilon(1e-14));
  CHECK(c.A2 == doctest::Approx(-6.85546875).epsilon(1e-14));
}

TEST_CASE("derive throws outside the admissible exponent range") {
  CHECK_THROWS_AS(derive(make(3, 0.4, 1.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(derive(make(3, 1.0 / 3.0, 1.0, 1.0)), std::domain_error);
}

TEST_CASE("strict regime equivalences hold on a random lattice") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double eps = std::numeric_limits<double>::epsilon();
  int tried = 0;
  while (tried < 200) {
    Params p;
    p.n = 3 + static_cast<int>(u(rng) * 5.0);
    p.m = u(rng) * 0.95 * (p.n - 2.0) / p.n;
    p.rho1 = 0.1 + 5.0 * u(rng);
    p.lambda = 0.2 + 5.0 * u(rng);
    const double beta0 = p.m * p.rho1 / (p.n - 2.0 - p.n * p.m);
    p.beta = beta0 * (1.0 + u(rng)) + 0.01 + 2.0 * u(rng);
    if (!validate(p, true).ok()) continue;
    ++tried;
    const DerivedConstants c = derive(p);
    // alpha_m (1-m) = 2 beta + rho1, to rounding
    const double rhs = 2.0 * p.beta + p.rho1;
    CHECK(std::abs(c.alpha_m * (1.0 - p.m) - rhs) <= 4.0 * eps * rhs);
    // a3 > 0 and n-2-m*alpha_m/beta > 0 are both equivalent to strictness
    CHECK(c.a3 > 0.0);
    CHECK(p.n - 2.0 - p.m * c.alpha_m / p.beta > 0.0);
  }
}

TEST_CASE("m = 0 reductions of the expansion constants") {
  for (double rho1 : {0.5, 1.0, 2.0}) {
    for (double beta : {0.5, 1.0, 3.0}) {
      const Params p = make(4, 0.0, rho1, beta);
      const DerivedConstants c = derive(p);
      CHECK(c.a1 == doctest::Approx(((p.n - 2) * beta + rho1) / rho1));
      CHECK(c.a3 ==
            doctest::Approx(c.alpha * beta * (p.n - 2) / (rho1 * rho1)));
      CHECK(c.A2 == doctest::Approx(-c.a3 * c.a1 / (c.a2 * c.a2)));
      CHECK(c.w_inf == doctest::Approx(2.0 * (p.n - 2) / rho1));
      // Cm at m = 0 collapses to (2 beta + rho1)(n-2)/(rho1 beta)
      CHECK(c.Cm ==
            doctest::Approx((2 * beta + rho1) * (p.n - 2) / (rho1 * beta)));
    }
  }
}

TEST_CASE("derive is continuous in m") {
  const Params base = make(4, 0.1, 1.5, 0.8);
  const DerivedConstants c0 = derive(base);
  double prev_gap = std::numeric_limits<double>::infinity();
  for (double delta : {1e-2, 1e-4, 1e-6}) {
    Params p = base;
    p.m += delta;
    const DerivedConstants c1 = derive(p);
    double gap = 0.0;
    gap = std::max(gap, std::abs(c1.alpha_m - c0.alpha_m));
    gap = std::max(gap, std::abs(c1.a1 - c0.a1));
    gap = std::max(gap, std::abs(c1.a3 - c0.a3));
    gap = std::max(gap, std::abs(c1.A1 - c0.A1));
    gap = std::max(gap, std::abs(c1.A2 - c0.A2));
    gap = std::max(gap, std::abs(c1.Cm - c0.Cm));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-4);
}

TEST_CASE("envelope admissibility is the stronger bound") {
  // n=3, beta=1: strict up to m < 0.25 but envelope holds only for m < 1/7.
  Params p = make(3, 0.2, 1.0, 1.0);
  CHECK(validate(p, true).ok());
  CHECK_FALSE(envelope_admissible(p, derive(p)));
  p.m = 0.1;
  CHECK(envelope_admissible(p, derive(p)));
}

TEST_CASE("origin expansion values") {
  const Params p = make(3, 0.0, 1.0, 1.0, 2.0);
  const OriginExpansion o = origin_expansion(p, derive(p));
  CHECK(o.w0 == doctest::Approx(0.5).epsilon(1e-14));  // lambda^{-1}
  CHECK(o.w1 == doctest::Approx(3.0).epsilon(1e-14));  // A1 * lambda^0
  CHECK(o.w2 == doctest::Approx(-12.0).epsilon(1e-14));  // A2 * lambda^{+1}
}
