#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zicount/dataset.hpp"
#include "zicount/linalg.hpp"
#include "zicount/optimize.hpp"

namespace zicount {

enum class ModelKind { LinearRaw, LinearLog, Poisson, NB, ZIP, MZIP };

enum class LinearTransform { Raw, Log1p };

const char* model_kind_name(ModelKind kind);

/// One fitted model: named coefficients, covariance from the inverse observed
/// information (or sigma^2 (X^T X)^{-1} for linear models), maximized
/// log-likelihood and convergence diagnostics.
///
/// Count-part coefficients of ZIP/MZIP are named "count.<column>" and the
/// structural-zero part "zero.<column>"; other models use the design column
/// names directly. NB appends the joint "log_k" parameter.
struct FitResult {
  ModelKind model_kind = ModelKind::Poisson;
  std::vector<std::string> parameter_names;
  std::vector<double> coefficients;
  Matrix covariance;  // n_params x n_params; empty when the fit failed
  double loglik = 0.0;
  bool converged = false;
  std::size_t n_params = 0;
  std::size_t n_obs = 0;
  std::vector<std::string> design_columns;

  /// NB only: the dispersion profile is flat up to ln k = 30 and the MLE sits
  /// on that bound (data effectively Poisson). log_k is pinned at 30 and its
  /// covariance row is zero.
  bool dispersion_at_bound = false;

  /// ZIP/MZIP only: the sample has no zeros (or only zeros), so the
  /// structural-zero intercept diverges. The zero block is pinned at
  /// gamma_0 = -30 with a zero covariance row; count-part inference remains
  /// usable.
  bool boundary_zero_part = false;

  /// Linear models only: residual variance RSS/(n-p).
  std::optional<double> sigma2;

  std::optional<std::size_t> find(const std::string& name) const;
  double coefficient(const std::string& name) const;  // DomainError if absent
};

/// Log-likelihoods with analytic gradients. theta layouts:
///   poisson: beta (p)       nb: beta (p), ln k          zip/mzip: beta (p), gamma (p)
/// A linear predictor that would overflow exp() yields value = -inf (the
/// optimizer's step halving recovers); no exception is thrown here.
ValueGradient loglik_poisson(const std::vector<double>& theta, const Dataset& d);
ValueGradient loglik_nb(const std::vector<double>& theta, const Dataset& d);
ValueGradient loglik_zip(const std::vector<double>& theta, const Dataset& d);
ValueGradient loglik_mzip(const std::vector<double>& theta, const Dataset& d);

std::vector<double> default_start_poisson(const Dataset& d);
std::vector<double> default_start_nb(const Dataset& d);
std::vector<double> default_start_zip(const Dataset& d);
std::vector<double> default_start_mzip(const Dataset& d);

FitResult fit_linear(const Dataset& d, LinearTransform transform);
FitResult fit_poisson(const Dataset& d, const std::vector<double>* start = nullptr);
FitResult fit_nb(const Dataset& d, const std::vector<double>* start = nullptr);
FitResult fit_zip(const Dataset& d, const std::vector<double>* start = nullptr);
FitResult fit_mzip(const Dataset& d, const std::vector<double>* start = nullptr);

struct WaldReport {
  std::string parameter_name;
  double estimate = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  double p_value = 1.0;
  bool reject = false;  // strict p < alpha
};

/// Wald test of a single coefficient. Linear models use a Student-t reference
/// with n-p degrees of freedom; count models use the normal reference.
/// Throws DomainError for unusable fits or unknown parameters and
/// SingularInformation for a nonpositive variance entry.
WaldReport wald_test(const FitResult& fit, const std::string& parameter_name,
                     double alpha);

struct ModelPrediction {
  double overall_mean = 0.0;        // v
  double poisson_mean = 0.0;        // mu (= v for non-mixture models)
  double structural_zero_prob = 0;  // pi (= 0 for non-mixture models)
};

/// Fitted v, mu, pi at one design row; v = (1-pi)*mu holds for ZIP/MZIP.
ModelPrediction predict_row(const FitResult& fit, const std::vector<double>& x_row);

enum class EffectKind { RR, OR, IRR };

struct EffectSummary {
  EffectKind kind = EffectKind::RR;
  double value = 1.0;
  std::vector<double> covariate_profile;  // IRR only
};

/// Overall-mean incidence rate ratio of a fitted ZIP between arms at a fixed
/// covariate profile (length p-2).
EffectSummary zip_overall_irr(const FitResult& fit,
                              const std::vector<double>& covariate_profile);

/// RR = exp(count-part treatment coefficient); OR = exp(zero-part treatment
/// coefficient) for ZIP/MZIP. Empty for linear models or designs without a
/// treatment column.
std::vector<EffectSummary> effect_summaries(const FitResult& fit);

}  // namespace zicount
