#include "zicount/calibration.hpp"

#include <cmath>
#include <string>

#include "zicount/errors.hpp"
#include "zicount/special.hpp"

namespace zicount {

GeneratorParams constrained_generator(double beta1, double gamma1, double gamma2) {
  GeneratorParams g;
  g.beta1 = beta1;
  g.beta0 = 0.8 - beta1;
  g.beta2 = 0.2;
  g.gamma1 = gamma1;
  g.gamma2 = gamma2;
  g.gamma0 = 2.0 * gamma2;
  return g;
}

namespace {

double arm_zero_rate(const GeneratorParams& g, const QuadratureRule& rule,
                     double a) {
  return normal_expectation(rule, [&](double c) {
    const double pi = sigmoid(g.gamma0 + g.gamma1 * a + g.gamma2 * c);
    const double mu = std::exp(g.beta0 + g.beta1 * a + g.beta2 * c);
    return pi + (1.0 - pi) * std::exp(-mu);
  });
}

}  // namespace

double marginal_zero_rate(const GeneratorParams& g, const QuadratureRule& rule,
                          ZeroRateReference ref) {
  if (rule.nodes.empty()) throw DomainError("marginal_zero_rate: empty rule");
  if (ref == ZeroRateReference::Control) return arm_zero_rate(g, rule, 0.0);
  return 0.5 * (arm_zero_rate(g, rule, 0.0) + arm_zero_rate(g, rule, 1.0));
}

GeneratorParams solve_gamma2(double target, double beta1, double gamma1,
                             const QuadratureRule& rule, ZeroRateReference ref) {
  if (!(target > 0.0 && target < 1.0))
    throw DomainError("solve_gamma2: target must lie in (0,1)");

  auto rate_at = [&](double g2) {
    return marginal_zero_rate(constrained_generator(beta1, gamma1, g2), rule, ref);
  };

  double lo = -20.0, hi = 20.0;
  double rlo = rate_at(lo), rhi = rate_at(hi);
  if (!(rhi >= rlo))
    throw DomainError("solve_gamma2: zero rate not increasing across bracket");
  if (target < rlo || target > rhi) {
    // one symmetric expansion before giving up
    lo = -50.0;
    hi = 50.0;
    rlo = rate_at(lo);
    rhi = rate_at(hi);
    if (target < rlo || target > rhi)
      throw UnreachableZeroRate(
          "zero rate " + std::to_string(target) + " unreachable; achievable [" +
              std::to_string(rlo) + ", " + std::to_string(rhi) + "]",
          rlo, rhi);
  }

  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double r = rate_at(mid);
    if (std::fabs(r - target) <= 1e-10 || hi - lo < 1e-14) break;
    if (r < target)
      lo = mid;
    else
      hi = mid;
  }
  return constrained_generator(beta1, gamma1, mid);
}

}  // namespace zicount
