#pragma once

namespace zicount {

/// ln Gamma(x) for x > 0, Lanczos approximation (g=7), |error| <= ~1e-13.
double log_gamma(double x);

/// Digamma psi(x) for x > 0 (recurrence + asymptotic series).
double digamma(double x);

/// ln Gamma(y + k) - ln Gamma(k) for integer-valued y >= 0, stable for huge k.
double log_gamma_ratio(double y, double k);

/// psi(y + k) - psi(k) for integer-valued y >= 0, stable for huge k.
double digamma_diff(double y, double k);

/// ln(1 + e^x) without overflow/underflow.
double log1pexp(double x);

/// ln(e^a + e^b); tolerates -inf arguments.
double logaddexp(double a, double b);

/// Logistic function 1 / (1 + e^-x), stable at both tails.
double sigmoid(double x);

/// Inverse standard normal CDF for p in (0,1) (rational approximation plus
/// one Halley refinement; near machine accuracy).
double inv_normal_cdf(double p);

/// Regularized incomplete beta function I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

/// Two-sided Student-t tail probability P(|T_df| >= t).
double student_t_two_sided_p(double t, double df);

}  // namespace zicount
