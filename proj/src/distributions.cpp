#include "zicount/distributions.hpp"

#include <cmath>
#include <limits>

#include "zicount/errors.hpp"
#include "zicount/special.hpp"

namespace zicount {

double log_poisson_pmf(long long y, double mean) {
  if (!(mean > 0.0)) throw DomainError("log_poisson_pmf: mean must be positive");
  if (y < 0) throw DomainError("log_poisson_pmf: y must be nonnegative");
  const double yd = static_cast<double>(y);
  return yd * std::log(mean) - mean - log_gamma(yd + 1.0);
}

double log_nb2_pmf(long long y, double mean, double k) {
  if (!(mean > 0.0)) throw DomainError("log_nb2_pmf: mean must be positive");
  if (!(k > 0.0)) throw DomainError("log_nb2_pmf: k must be positive");
  if (y < 0) throw DomainError("log_nb2_pmf: y must be nonnegative");
  const double yd = static_cast<double>(y);
  const double lnk = std::log(k);
  const double lnm = std::log(mean);
  // k*ln(k/(k+mean)) = -k*log1p(mean/k); product via exp when mean/k underflows
  const double x = lnm - lnk;
  const double k_term = (x < -37.0) ? -std::exp(lnm) : -k * log1pexp(x);
  return log_gamma_ratio(yd, k) - log_gamma(yd + 1.0) + k_term +
         yd * (lnm - logaddexp(lnk, lnm));
}

long long sample_poisson(RngStream& rng, double mean) {
  if (!(mean > 0.0)) throw DomainError("sample_poisson: mean must be positive");
  if (mean < 10.0) {
    // sequential inversion on one uniform
    const double u = rng.next_double();
    double p = std::exp(-mean);
    double cdf = p;
    long long k = 0;
    const long long cap = static_cast<long long>(mean + 40.0 * std::sqrt(mean) + 100.0);
    while (u > cdf && k < cap) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }
  // transformed rejection (Hormann's PTRD)
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  const double lnmu = std::log(mean);
  for (;;) {
    const double u = rng.next_double() - 0.5;
    const double v = rng.next_open_double();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * lnmu - mean - log_gamma(kf + 1.0))
      return static_cast<long long>(kf);
  }
}

int sample_bernoulli(RngStream& rng, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("sample_bernoulli: p outside [0,1]");
  return rng.next_double() < p ? 1 : 0;
}

double sample_std_normal(RngStream& rng) {
  return inv_normal_cdf(rng.next_open_double());
}

double normal_two_sided_p(double z) {
  if (!std::isfinite(z)) throw DomainError("normal_two_sided_p: z not finite");
  double p = std::erfc(std::fabs(z) / std::sqrt(2.0));
  if (p < std::numeric_limits<double>::min()) p = std::numeric_limits<double>::min();
  if (p > 1.0) p = 1.0;
  return p;
}

QuadratureRule gauss_hermite(std::size_t n) {
  if (n < 1 || n > 64) throw DomainError("gauss_hermite: order must be in [1,64]");
  QuadratureRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double eps = 1e-14;
  const std::size_t m = (n + 1) / 2;
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  double z = 0.0;
  double pp = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) -
          1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[i - 2];
    }
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4;
      double p2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 -
             std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) <= eps) break;
    }
    rule.nodes[i] = z;
    rule.nodes[n - 1 - i] = -z;
    rule.weights[i] = 2.0 / (pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  if (n % 2 == 1) rule.nodes[m - 1] = 0.0;  // exact center node
  return rule;
}

double normal_expectation(const QuadratureRule& rule,
                          const std::function<double(double)>& g) {
  const double root2 = std::sqrt(2.0);
  const double inv_root_pi = 1.0 / std::sqrt(M_PI);
  double s = 0.0;
  for (std::size_t j = 0; j < rule.nodes.size(); ++j)
    s += rule.weights[j] * g(root2 * rule.nodes[j]);
  return s * inv_root_pi;
}

}  // namespace zicount
