#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zicount/rng.hpp"

namespace zicount {

/// log P(Y = y) for Y ~ Poisson(mean). Throws DomainError for mean <= 0 or y < 0.
double log_poisson_pmf(long long y, double mean);

/// log P(Y = y) for Y ~ NB2(mean, k): variance = mean + mean^2 / k.
/// Stable for k up to ~e^690 (Poisson limit). Throws DomainError for
/// nonpositive mean or k, or y < 0.
double log_nb2_pmf(long long y, double mean, double k);

/// Poisson draw: sequential inversion for mean < 10, transformed rejection
/// for mean >= 10. Throws DomainError for mean <= 0.
long long sample_poisson(RngStream& rng, double mean);

/// Bernoulli(p) draw in {0,1}. Throws DomainError for p outside [0,1].
int sample_bernoulli(RngStream& rng, double p);

/// Standard normal draw via inverse-CDF transform of one uniform.
double sample_std_normal(RngStream& rng);

/// Two-sided normal tail 2*(1 - Phi(|z|)), clamped into (0, 1].
double normal_two_sided_p(double z);

/// Gauss-Hermite rule in the physicists' convention:
/// sum_j w_j f(x_j) ~ integral e^{-x^2} f(x) dx, so
/// E[g(Z)] = sum_j w_j g(sqrt(2) x_j) / sqrt(pi) for Z ~ N(0,1).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Nodes/weights for an n-point Gauss-Hermite rule, 1 <= n <= 64.
QuadratureRule gauss_hermite(std::size_t n);

/// E[g(Z)] for Z ~ N(0,1) using the supplied rule.
double normal_expectation(const QuadratureRule& rule,
                          const std::function<double(double)>& g);

}  // namespace zicount
