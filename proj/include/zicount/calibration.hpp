#pragma once

#include "zicount/distributions.hpp"

namespace zicount {

/// Whether the targeted zero rate is marginal over both arms (the default,
/// exact half-half average over the Bernoulli(0.5) assignment) or the
/// control arm only.
enum class ZeroRateReference { Marginal, Control };

/// Data-generating coefficients: logit pi = gamma0 + gamma1*A + gamma2*Cov,
/// ln mu = beta0 + beta1*A + beta2*Cov with A ~ Bernoulli(0.5), Cov ~ N(0,1).
struct GeneratorParams {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

/// Applies the protocol constraints beta0 = 0.8 - beta1, beta2 = 0.2,
/// gamma0 = 2*gamma2.
GeneratorParams constrained_generator(double beta1, double gamma1, double gamma2);

/// P(y = 0) under the generator: expectation of pi + (1-pi) e^{-mu} over the
/// covariate (Gauss-Hermite) and the arm assignment (exact 1/2-1/2 average,
/// or control arm only).
double marginal_zero_rate(const GeneratorParams& g, const QuadratureRule& rule,
                          ZeroRateReference ref = ZeroRateReference::Marginal);

/// Solves for gamma2 (with gamma0 = 2*gamma2) so the zero rate hits target to
/// within 1e-8. Bisection on gamma2 in [-20, 20], expanded once to [-50, 50];
/// an unreachable target throws UnreachableZeroRate carrying the achievable
/// interval.
GeneratorParams solve_gamma2(double target, double beta1, double gamma1,
                             const QuadratureRule& rule,
                             ZeroRateReference ref = ZeroRateReference::Marginal);

}  // namespace zicount
