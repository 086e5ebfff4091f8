#include "fastdiff/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fastdiff {

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ValidationReport validate(const Params& p, bool strict) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) { rep.violations.push_back(msg); };

  if (!(p.n >= 3)) fail("n must be an integer >= 3");

  const double m_max = (p.n - 2.0) / p.n;
  // Written so NaN lands in the violation branch.
  if (!(p.m >= 0.0 && p.m < m_max)) {
    std::ostringstream os;
    os << "m must satisfy 0 <= m < (n-2)/n = " << m_max;
    fail(os.str());
  }
  if (!(p.rho1 > 0.0)) fail("rho1 must be > 0");
  if (!(p.lambda > 0.0)) fail("lambda must be > 0");
  if (!(p.T > 0.0)) fail("T must be > 0");

  // beta0 is only defined inside the admissible m range.
  if (p.n >= 3 && p.m >= 0.0 && p.m < m_max && p.rho1 > 0.0) {
    const double beta0 = p.m * p.rho1 / (p.n - 2.0 - p.n * p.m);
    if (strict) {
      if (!(p.beta > beta0)) {
        std::ostringstream os;
        os << "beta must be > beta0(m) = " << beta0 << " (strict regime)";
        fail(os.str());
      }
    } else {
      if (!(p.beta >= beta0)) {
        std::ostringstream os;
        os << "beta must be >= beta0(m) = " << beta0;
        fail(os.str());
      }
    }
  }
  return rep;
}

DerivedConstants derive(const Params& p) {
  const double denom = p.n - 2.0 - p.n * p.m;
  if (!(denom > 0.0)) {
    throw std::domain_error("derive: n - 2 - n*m must be positive");
  }
  DerivedConstants c;
  c.alpha = 2.0 * p.beta + p.rho1;
  c.alpha_m = c.alpha / (1.0 - p.m);
  c.beta0 = p.m * p.rho1 / denom;
  c.beta1_0 = p.rho1 / (p.n - 2.0);
  c.a1 = ((p.n - 2.0) * p.beta - 2.0 * p.m * c.alpha_m + p.rho1) / p.rho1;
  c.a2 = p.beta * p.beta / p.rho1;
  c.a3 = (c.alpha_m * p.beta * (p.n - 2.0) - p.m * c.alpha_m * c.alpha_m) /
         (p.rho1 * p.rho1);
  c.A1 = c.a3 / c.a2;
  c.A2 = c.a3 * (p.m * c.a3 - c.a1) / (c.a2 * c.a2);
  c.Cm = c.alpha_m / (p.rho1 * p.beta) *
         (p.n - 2.0 - p.m * c.alpha_m / p.beta);
  c.w_inf = 2.0 * (p.n - 2.0) / (c.alpha - 2.0 * p.beta);
  c.w1 = p.beta > 0.0 ? 2.0 / p.beta
                      : std::numeric_limits<double>::quiet_NaN();
  return c;
}

bool envelope_admissible(const Params& p, const DerivedConstants& c) {
  return p.n - 2.0 - 2.0 * p.m * c.alpha_m / p.beta > 0.0;
}

OriginExpansion origin_expansion(const Params& p, const DerivedConstants& c) {
  const double e = p.rho1 / ((1.0 - p.m) * p.beta);
  OriginExpansion o;
  o.w0 = std::pow(p.lambda, -e);
  o.w1 = c.A1 * std::pow(p.lambda, -p.m * e);
  o.w2 = c.A2 * std::pow(p.lambda, -(2.0 * p.m - 1.0) * e);
  return o;
}

}  // namespace fastdiff
