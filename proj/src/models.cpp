#include "zicount/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "zicount/distributions.hpp"
#include "zicount/errors.hpp"
#include "zicount/special.hpp"

namespace zicount {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEtaMax = 690.0;       // exp() overflow guard (~1e300)
constexpr double kLnkBound = 30.0;      // NB dispersion wall on the ln k scale
constexpr double kZeroPartPin = -30.0;  // pinned gamma intercept when no zeros

double row_dot(const Dataset& d, std::size_t i, const double* theta) {
  double s = 0.0;
  for (std::size_t j = 0; j < d.p(); ++j) s += d.X(i, j) * theta[j];
  return s;
}

std::vector<double> log_factorials(const Dataset& d) {
  std::vector<double> lf(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) lf[i] = log_gamma(d.y[i] + 1.0);
  return lf;
}

ValueGradient non_finite(std::size_t dim) {
  return ValueGradient{-kInf, std::vector<double>(dim, 0.0)};
}

ValueGradient poisson_impl(const std::vector<double>& theta, const Dataset& d,
                           const std::vector<double>& lf) {
  const std::size_t p = d.p();
  ValueGradient out;
  out.gradient.assign(p, 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double eta = row_dot(d, i, theta.data());
    if (eta > kEtaMax) return non_finite(p);
    const double mu = std::exp(eta);
    out.value += d.y[i] * eta - mu - lf[i];
    const double r = d.y[i] - mu;
    for (std::size_t j = 0; j < p; ++j) out.gradient[j] += r * d.X(i, j);
  }
  return out;
}

ValueGradient nb_impl(const std::vector<double>& theta, const Dataset& d,
                      const std::vector<double>& lf) {
  const std::size_t p = d.p();
  ValueGradient out;
  out.gradient.assign(p + 1, 0.0);
  const double lnk = std::clamp(theta[p], -kEtaMax, kEtaMax);
  const double k = std::exp(lnk);
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double eta = row_dot(d, i, theta.data());
    if (eta > kEtaMax) return non_finite(p + 1);
    const double mu = std::exp(eta);
    const double y = d.y[i];
    const double x = eta - lnk;  // ln(mu/k)
    const double k_ln_term = (x < -37.0) ? mu : k * log1pexp(x);  // k*ln(1+mu/k)
    const double ln_kpm = logaddexp(lnk, eta);                    // ln(k+mu)
    out.value += log_gamma_ratio(y, k) - lf[i] - k_ln_term + y * (eta - ln_kpm);
    const double w = sigmoid(lnk - eta);  // k/(k+mu)
    const double rb = (y - mu) * w;
    for (std::size_t j = 0; j < p; ++j) out.gradient[j] += rb * d.X(i, j);
    const double bracket =
        digamma_diff(y, k) - log1pexp(x) + (mu - y) / std::exp(ln_kpm);
    out.gradient[p] += k * bracket;
  }
  return out;
}

ValueGradient zip_impl(const std::vector<double>& theta, const Dataset& d,
                       const std::vector<double>& lf) {
  const std::size_t p = d.p();
  ValueGradient out;
  out.gradient.assign(2 * p, 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double eta = row_dot(d, i, theta.data());
    const double s = row_dot(d, i, theta.data() + p);
    const double y = d.y[i];
    double a, b;
    if (eta > kEtaMax) {
      // exp overflow: a zero outcome degenerates gracefully to the point
      // mass (e^-mu -> 0); a positive outcome makes the likelihood vanish
      if (y > 0.0) return non_finite(2 * p);
      out.value += s - log1pexp(s);
      const double b0 = sigmoid(-s);
      for (std::size_t j = 0; j < p; ++j) out.gradient[p + j] += b0 * d.X(i, j);
      continue;
    }
    const double mu = std::exp(eta);
    if (y == 0.0) {
      const double t = s + mu;
      out.value += logaddexp(s, -mu) - log1pexp(s);
      a = -mu * sigmoid(-t);
      b = sigmoid(t) - sigmoid(s);
    } else {
      out.value += -log1pexp(s) + y * eta - mu - lf[i];
      a = y - mu;
      b = -sigmoid(s);
    }
    for (std::size_t j = 0; j < p; ++j) {
      out.gradient[j] += a * d.X(i, j);
      out.gradient[p + j] += b * d.X(i, j);
    }
  }
  return out;
}

ValueGradient mzip_impl(const std::vector<double>& theta, const Dataset& d,
                        const std::vector<double>& lf) {
  const std::size_t p = d.p();
  ValueGradient out;
  out.gradient.assign(2 * p, 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double etav = row_dot(d, i, theta.data());  // ln v
    const double s = row_dot(d, i, theta.data() + p);
    const double l1s = log1pexp(s);
    const double lnmu = l1s + etav;  // mu = v * (1 + e^s)
    const double y = d.y[i];
    if (lnmu > kEtaMax) {
      if (y > 0.0) return non_finite(2 * p);
      out.value += s - l1s;
      const double b0 = sigmoid(-s);
      for (std::size_t j = 0; j < p; ++j) out.gradient[p + j] += b0 * d.X(i, j);
      continue;
    }
    const double mu = std::exp(lnmu);
    const double sig_s = sigmoid(s);
    double a, b;
    if (y == 0.0) {
      const double t = s + mu;
      out.value += logaddexp(s, -mu) - l1s;
      const double sig_negt = sigmoid(-t);
      a = -mu * sig_negt;
      b = -sig_s + sigmoid(t) - mu * sig_s * sig_negt;
    } else {
      out.value += (y - 1.0) * l1s - mu + y * etav - lf[i];
      a = y - mu;
      b = sig_s * (y - 1.0 - mu);
    }
    for (std::size_t j = 0; j < p; ++j) {
      out.gradient[j] += a * d.X(i, j);
      out.gradient[p + j] += b * d.X(i, j);
    }
  }
  return out;
}

// Logistic log-likelihood of an indicator vector on the dataset design;
// only used to seed ZIP/MZIP zero-part starts.
ValueGradient logistic_impl(const std::vector<double>& theta, const Dataset& d,
                            const std::vector<char>& z) {
  const std::size_t p = d.p();
  ValueGradient out;
  out.gradient.assign(p, 0.0);
  for (std::size_t i = 0; i < d.n(); ++i) {
    const double s = row_dot(d, i, theta.data());
    out.value += (z[i] ? s : 0.0) - log1pexp(s);
    const double r = (z[i] ? 1.0 : 0.0) - sigmoid(s);
    for (std::size_t j = 0; j < p; ++j) out.gradient[j] += r * d.X(i, j);
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

std::vector<double> count_start(const Dataset& d) {
  std::vector<double> s(d.p(), 0.0);
  s[0] = std::log(mean_of(d.y) + 0.1);
  return s;
}

// Cheap MLE used only for starting values: looser tolerances, capped
// iterations, and failures fall back to the caller's default.
std::vector<double> try_start_fit(const Objective& obj, std::vector<double> start) {
  OptimControls c;
  c.gradient_tol = 1e-6;
  c.rel_obj_tol = 1e-9;
  c.max_iterations = 100;
  try {
    return maximize(obj, std::move(start), c).argmax;
  } catch (const NonFiniteObjective&) {
    return {};
  }
}

std::vector<std::string> two_block_names(const Dataset& d) {
  std::vector<std::string> names;
  names.reserve(2 * d.p());
  for (const auto& c : d.column_names) names.push_back("count." + c);
  for (const auto& c : d.column_names) names.push_back("zero." + c);
  return names;
}

// Covariance with only the leading block estimated; trailing rows stay zero.
Matrix block_covariance(const Matrix& inv_block, std::size_t total) {
  Matrix cov(total, total, 0.0);
  for (std::size_t i = 0; i < inv_block.rows; ++i)
    for (std::size_t j = 0; j < inv_block.cols; ++j) cov(i, j) = inv_block(i, j);
  return cov;
}

}  // namespace

const char* model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::LinearRaw: return "linear-raw";
    case ModelKind::LinearLog: return "linear-log";
    case ModelKind::Poisson: return "poisson";
    case ModelKind::NB: return "nb";
    case ModelKind::ZIP: return "zip";
    case ModelKind::MZIP: return "mzip";
  }
  return "unknown";
}

std::optional<std::size_t> FitResult::find(const std::string& name) const {
  for (std::size_t i = 0; i < parameter_names.size(); ++i)
    if (parameter_names[i] == name) return i;
  return std::nullopt;
}

double FitResult::coefficient(const std::string& name) const {
  const auto idx = find(name);
  if (!idx) throw DomainError("parameter '" + name + "' not present in fit");
  return coefficients[*idx];
}

ValueGradient loglik_poisson(const std::vector<double>& theta, const Dataset& d) {
  if (theta.size() != d.p()) throw DomainError("loglik_poisson: theta length != p");
  return poisson_impl(theta, d, log_factorials(d));
}

ValueGradient loglik_nb(const std::vector<double>& theta, const Dataset& d) {
  if (theta.size() != d.p() + 1) throw DomainError("loglik_nb: theta length != p+1");
  return nb_impl(theta, d, log_factorials(d));
}

ValueGradient loglik_zip(const std::vector<double>& theta, const Dataset& d) {
  if (theta.size() != 2 * d.p()) throw DomainError("loglik_zip: theta length != 2p");
  return zip_impl(theta, d, log_factorials(d));
}

ValueGradient loglik_mzip(const std::vector<double>& theta, const Dataset& d) {
  if (theta.size() != 2 * d.p()) throw DomainError("loglik_mzip: theta length != 2p");
  return mzip_impl(theta, d, log_factorials(d));
}

std::vector<double> default_start_poisson(const Dataset& d) {
  return count_start(d);
}

std::vector<double> default_start_nb(const Dataset& d) {
  std::vector<double> s = count_start(d);
  const double m = mean_of(d.y);
  double var = 1.0;
  if (d.n() > 1) {
    double acc = 0.0;
    for (double yi : d.y) acc += (yi - m) * (yi - m);
    var = acc / static_cast<double>(d.n() - 1);
  }
  const double k_mom = m * m / std::max(var - m, 1e-8);
  s.push_back(std::clamp(std::log(std::max(k_mom, 1e-4)), -4.6, 4.6));
  return s;
}

namespace {

std::vector<double> zero_part_start(const Dataset& d) {
  std::vector<char> z(d.n());
  for (std::size_t i = 0; i < d.n(); ++i) z[i] = d.y[i] == 0.0 ? 1 : 0;
  Objective obj = [&](const std::vector<double>& t) {
    return logistic_impl(t, d, z);
  };
  std::vector<double> g = try_start_fit(obj, std::vector<double>(d.p(), 0.0));
  if (g.empty()) g.assign(d.p(), 0.0);
  return g;
}

std::vector<double> poisson_block_start(const Dataset& d, bool positives_only) {
  if (!positives_only) {
    const auto lf = log_factorials(d);
    Objective obj = [&](const std::vector<double>& t) {
      return poisson_impl(t, d, lf);
    };
    std::vector<double> b = try_start_fit(obj, count_start(d));
    if (!b.empty()) return b;
    return count_start(d);
  }
  std::vector<double> ypos;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < d.n(); ++i)
    if (d.y[i] > 0.0) {
      ypos.push_back(d.y[i]);
      keep.push_back(i);
    }
  std::vector<double> fallback(d.p(), 0.0);
  fallback[0] = std::log(mean_of(ypos) + 0.1);
  if (keep.size() < d.p()) return fallback;
  Matrix X(keep.size(), d.p());
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t j = 0; j < d.p(); ++j) X(r, j) = d.X(keep[r], j);
  Dataset sub;
  sub.y = std::move(ypos);
  sub.X = std::move(X);
  sub.column_names = d.column_names;
  const auto lf = log_factorials(sub);
  Objective obj = [&](const std::vector<double>& t) {
    return poisson_impl(t, sub, lf);
  };
  std::vector<double> b = try_start_fit(obj, count_start(sub));
  if (!b.empty()) return b;
  return fallback;
}

}  // namespace

std::vector<double> default_start_zip(const Dataset& d) {
  std::vector<double> s = poisson_block_start(d, /*positives_only=*/true);
  const std::vector<double> g = zero_part_start(d);
  s.insert(s.end(), g.begin(), g.end());
  return s;
}

std::vector<double> default_start_mzip(const Dataset& d) {
  std::vector<double> s = poisson_block_start(d, /*positives_only=*/false);
  const std::vector<double> g = zero_part_start(d);
  s.insert(s.end(), g.begin(), g.end());
  return s;
}

FitResult fit_linear(const Dataset& d, LinearTransform transform) {
  const std::size_t n = d.n();
  const std::size_t p = d.p();
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i)
    z[i] = transform == LinearTransform::Raw ? d.y[i] : std::log1p(d.y[i]);

  Matrix xtx(p, p, 0.0);
  std::vector<double> xtz(p, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      xtz[j] += d.X(i, j) * z[i];
      for (std::size_t k = j; k < p; ++k) xtx(j, k) += d.X(i, j) * d.X(i, k);
    }
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t k = 0; k < j; ++k) xtx(j, k) = xtx(k, j);

  const std::vector<double> beta = solve_spd(xtx, xtz);
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < p; ++j) fit += d.X(i, j) * beta[j];
    rss += (z[i] - fit) * (z[i] - fit);
  }
  const double dof = static_cast<double>(n) - static_cast<double>(p);
  const double sigma2 = dof > 0.0 ? rss / dof : 0.0;

  Matrix cov = invert_spd(xtx);
  for (double& v : cov.data) v *= sigma2;

  FitResult fr;
  fr.model_kind =
      transform == LinearTransform::Raw ? ModelKind::LinearRaw : ModelKind::LinearLog;
  fr.parameter_names = d.column_names;
  fr.coefficients = beta;
  fr.covariance = std::move(cov);
  fr.loglik = sigma2 > 0.0
                  ? -0.5 * n * std::log(2.0 * M_PI * sigma2) - 0.5 * dof
                  : kInf;
  fr.converged = true;
  fr.n_params = p;
  fr.n_obs = n;
  fr.design_columns = d.column_names;
  fr.sigma2 = sigma2;
  return fr;
}

namespace {

// Shared tail of the count-model fits: maximize, then invert the observed
// information at the maximum. When inversion_failed is non-null, a singular
// information matrix is reported through it (covariance left empty) instead
// of thrown, so callers can attempt boundary recovery.
FitResult finish_count_fit(ModelKind kind, const Dataset& d,
                           const Objective& obj, std::vector<double> start,
                           std::vector<std::string> names,
                           bool* inversion_failed = nullptr) {
  const OptimResult res = maximize(obj, std::move(start));
  FitResult fr;
  fr.model_kind = kind;
  fr.parameter_names = std::move(names);
  fr.coefficients = res.argmax;
  fr.loglik = res.max_value;
  fr.converged = res.converged;
  fr.n_params = res.argmax.size();
  fr.n_obs = d.n();
  fr.design_columns = d.column_names;
  if (res.converged) {
    GradientFn grad = [&obj](const std::vector<double>& t) {
      return obj(t).gradient;
    };
    try {
      fr.covariance = invert_spd(observed_information(grad, res.argmax));
    } catch (const SingularInformation&) {
      if (!inversion_failed) throw;
      *inversion_failed = true;
    }
  }
  return fr;
}

}  // namespace

FitResult fit_poisson(const Dataset& d, const std::vector<double>* start) {
  const auto lf = log_factorials(d);
  Objective obj = [&d, &lf](const std::vector<double>& t) {
    return poisson_impl(t, d, lf);
  };
  return finish_count_fit(ModelKind::Poisson, d, obj,
                          start ? *start : default_start_poisson(d),
                          d.column_names);
}

FitResult fit_nb(const Dataset& d, const std::vector<double>* start) {
  const std::size_t p = d.p();
  const auto lf = log_factorials(d);
  Objective walled = [&d, &lf, p](const std::vector<double>& t) {
    if (std::fabs(t[p]) > kLnkBound) return non_finite(p + 1);
    return nb_impl(t, d, lf);
  };
  std::vector<std::string> names = d.column_names;
  names.push_back("log_k");

  bool inversion_failed = false;
  FitResult fr =
      finish_count_fit(ModelKind::NB, d, walled,
                       start ? *start : default_start_nb(d), names,
                       &inversion_failed);

  // The dispersion profile of near-equidispersed data rises monotonically to
  // its supremum at k -> inf; detect that by probing the wall. A profile that
  // is flat to ~1e-4 cannot support dispersion inference either, so a failed
  // information inversion in that regime is also folded into the bound case.
  std::vector<double> theta_bound = fr.coefficients;
  theta_bound[p] = kLnkBound;
  const double ll_bound = nb_impl(theta_bound, d, lf).value;
  const double scale = std::max(1.0, std::fabs(fr.loglik));
  bool at_bound =
      std::isfinite(ll_bound) && ll_bound >= fr.loglik - 1e-8 * scale;
  if (!at_bound && inversion_failed && std::isfinite(ll_bound) &&
      ll_bound >= fr.loglik - 1e-4 * scale) {
    at_bound = true;
  }
  if (!at_bound && inversion_failed)
    throw SingularInformation("nb fit: information not positive definite");
  if (at_bound) {
    Objective beta_obj = [&d, &lf, p](const std::vector<double>& b) {
      std::vector<double> full = b;
      full.push_back(kLnkBound);
      ValueGradient vg = nb_impl(full, d, lf);
      vg.gradient.resize(p);
      return vg;
    };
    std::vector<double> bstart(fr.coefficients.begin(),
                               fr.coefficients.begin() + p);
    const OptimResult res = maximize(beta_obj, bstart);
    fr.coefficients.assign(res.argmax.begin(), res.argmax.end());
    fr.coefficients.push_back(kLnkBound);
    fr.loglik = res.max_value;
    fr.converged = res.converged;
    fr.dispersion_at_bound = true;
    if (res.converged) {
      GradientFn grad = [&beta_obj](const std::vector<double>& t) {
        return beta_obj(t).gradient;
      };
      fr.covariance = block_covariance(
          invert_spd(observed_information(grad, res.argmax)), p + 1);
    } else {
      fr.covariance = Matrix();
    }
  }
  return fr;
}

namespace {

using TwoBlockImpl = ValueGradient (*)(const std::vector<double>&, const Dataset&,
                                       const std::vector<double>&);

// State of the zero part at a parameter point. Collapsed: every pi ~ 0 (the
// sample shows no zero inflation). Boundary: some gamma direction ran to a
// degenerate optimum but the labelling is coherent. Invalid: a positive count
// carries pi ~ 1, which no likelihood optimum allows.
enum class ZeroPartState { Collapsed, Boundary, Invalid };

ZeroPartState zero_part_state(const std::vector<double>& theta, const Dataset& d) {
  const std::size_t p = d.p();
  bool all_low = true;
  for (std::size_t i = 0; i < d.n(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p; ++j) s += theta[p + j] * d.X(i, j);
    const double pi = sigmoid(s);
    if (pi > 0.5 && d.y[i] > 0.0) return ZeroPartState::Invalid;
    if (pi >= 1e-3) all_low = false;
  }
  return all_low ? ZeroPartState::Collapsed : ZeroPartState::Boundary;
}

// Zero block frozen at `pinned` (default: gamma_0 = -30, pi ~ 0, degenerate
// Poisson). Count-part inference comes from the restricted information; the
// zero part carries a zero covariance row.
FitResult pinned_two_block(ModelKind kind, TwoBlockImpl impl, const Dataset& d,
                           const std::vector<double>& lf,
                           std::vector<double> pinned = {}) {
  const std::size_t p = d.p();
  if (pinned.empty()) {
    pinned.assign(p, 0.0);
    pinned[0] = kZeroPartPin;
  }
  Objective beta_obj = [&](const std::vector<double>& b) {
    std::vector<double> full = b;
    full.insert(full.end(), pinned.begin(), pinned.end());
    ValueGradient vg = impl(full, d, lf);
    vg.gradient.resize(p);
    return vg;
  };
  const OptimResult res = maximize(beta_obj, poisson_block_start(d, false));
  FitResult fr;
  fr.model_kind = kind;
  fr.parameter_names = two_block_names(d);
  fr.coefficients = res.argmax;
  fr.coefficients.insert(fr.coefficients.end(), pinned.begin(), pinned.end());
  fr.loglik = res.max_value;
  fr.converged = false;
  fr.boundary_zero_part = true;
  fr.n_params = 2 * p;
  fr.n_obs = d.n();
  fr.design_columns = d.column_names;
  if (res.converged) {
    GradientFn grad = [&beta_obj](const std::vector<double>& t) {
      return beta_obj(t).gradient;
    };
    fr.covariance = block_covariance(
        invert_spd(observed_information(grad, res.argmax)), 2 * p);
  }
  return fr;
}

FitResult fit_two_block(ModelKind kind, TwoBlockImpl impl, const Dataset& d,
                        const std::vector<double>* start,
                        std::vector<double> (*default_start)(const Dataset&)) {
  const std::size_t p = d.p();
  const auto lf = log_factorials(d);
  const std::size_t zeros = d.zero_count();

  if (zeros == d.n()) {
    // all-zero sample: the count part is unidentified and the zero intercept
    // diverges upward; nothing is testable
    FitResult fr;
    fr.model_kind = kind;
    fr.loglik = 0.0;  // supremum as pi -> 1
    fr.converged = false;
    fr.boundary_zero_part = true;
    fr.n_obs = d.n();
    fr.design_columns = d.column_names;
    return fr;
  }

  // no zeros at all: gamma_0 -> -inf immediately
  if (zeros == 0) return pinned_two_block(kind, impl, d, lf);

  // Track the best finite iterate so a blow-up mid-search can still be
  // diagnosed as a zero-part collapse.
  std::vector<double> best_theta;
  double best_val = -kInf;
  Objective obj = [&](const std::vector<double>& t) {
    ValueGradient vg = impl(t, d, lf);
    if (std::isfinite(vg.value) && vg.value > best_val) {
      best_val = vg.value;
      best_theta = t;
    }
    return vg;
  };

  bool hard_fail = false;
  bool inversion_failed = false;
  FitResult fr;
  try {
    fr = finish_count_fit(kind, d, obj, start ? *start : default_start(d),
                          two_block_names(d), &inversion_failed);
  } catch (const NonFiniteObjective&) {
    hard_fail = true;
  }

  if (!hard_fail && fr.converged && !inversion_failed) return fr;

  // Boundary pathologies of the zero part (no curvature left in some gamma
  // direction): a sample with fewer zeros than the Poisson part predicts
  // collapses pi to 0, small samples drive the zero part to a perfect
  // separator, and either can happen for one arm only. The count block stays
  // identified throughout, so inference continues from the restricted fit
  // with the zero block frozen where the search stopped.
  const std::vector<double>& probe = hard_fail ? best_theta : fr.coefficients;
  if (probe.size() == 2 * p) {
    switch (zero_part_state(probe, d)) {
      case ZeroPartState::Collapsed:
        return pinned_two_block(kind, impl, d, lf);
      case ZeroPartState::Boundary:
        return pinned_two_block(
            kind, impl, d, lf,
            std::vector<double>(probe.begin() + p, probe.end()));
      case ZeroPartState::Invalid: break;
    }
  }

  if (inversion_failed)
    throw SingularInformation(std::string(model_kind_name(kind)) +
                              " fit: information not positive definite");
  if (hard_fail)
    throw NonFiniteObjective(std::string(model_kind_name(kind)) +
                             " fit: objective non-finite beyond step control");
  return fr;  // plain nonconvergence, carried in the result
}

}  // namespace

FitResult fit_zip(const Dataset& d, const std::vector<double>* start) {
  return fit_two_block(ModelKind::ZIP, &zip_impl, d, start, &default_start_zip);
}

FitResult fit_mzip(const Dataset& d, const std::vector<double>* start) {
  return fit_two_block(ModelKind::MZIP, &mzip_impl, d, start, &default_start_mzip);
}

WaldReport wald_test(const FitResult& fit, const std::string& parameter_name,
                     double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("wald_test: bad alpha");
  if (!fit.converged && !fit.boundary_zero_part)
    throw DomainError("wald_test: fit did not converge");
  const auto idx = fit.find(parameter_name);
  if (!idx) throw DomainError("wald_test: unknown parameter '" + parameter_name + "'");
  if (fit.covariance.empty() || *idx >= fit.covariance.rows)
    throw SingularInformation("wald_test: no covariance available");
  const double var = fit.covariance(*idx, *idx);
  if (!(var > 0.0))
    throw SingularInformation("wald_test: nonpositive variance for '" +
                              parameter_name + "'");
  WaldReport w;
  w.parameter_name = parameter_name;
  w.estimate = fit.coefficients[*idx];
  w.std_error = std::sqrt(var);
  w.z = w.estimate / w.std_error;
  const bool linear = fit.model_kind == ModelKind::LinearRaw ||
                      fit.model_kind == ModelKind::LinearLog;
  if (linear) {
    const double df =
        static_cast<double>(fit.n_obs) - static_cast<double>(fit.n_params);
    w.p_value = student_t_two_sided_p(w.z, df);
  } else {
    w.p_value = normal_two_sided_p(w.z);
  }
  w.reject = w.p_value < alpha;
  return w;
}

ModelPrediction predict_row(const FitResult& fit, const std::vector<double>& x_row) {
  const std::size_t p = fit.design_columns.size();
  if (x_row.size() != p) throw DomainError("predict_row: row length != p");
  ModelPrediction pr;
  switch (fit.model_kind) {
    case ModelKind::LinearRaw:
    case ModelKind::LinearLog: {
      double v = 0.0;
      for (std::size_t j = 0; j < p; ++j) v += fit.coefficients[j] * x_row[j];
      pr.overall_mean = v;
      pr.poisson_mean = v;
      return pr;
    }
    case ModelKind::Poisson:
    case ModelKind::NB: {
      double eta = 0.0;
      for (std::size_t j = 0; j < p; ++j) eta += fit.coefficients[j] * x_row[j];
      pr.overall_mean = std::exp(eta);
      pr.poisson_mean = pr.overall_mean;
      return pr;
    }
    case ModelKind::ZIP: {
      double eta = 0.0, s = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        eta += fit.coefficients[j] * x_row[j];
        s += fit.coefficients[p + j] * x_row[j];
      }
      pr.poisson_mean = std::exp(eta);
      pr.structural_zero_prob = sigmoid(s);
      pr.overall_mean = (1.0 - pr.structural_zero_prob) * pr.poisson_mean;
      return pr;
    }
    case ModelKind::MZIP: {
      double etav = 0.0, s = 0.0;
      for (std::size_t j = 0; j < p; ++j) {
        etav += fit.coefficients[j] * x_row[j];
        s += fit.coefficients[p + j] * x_row[j];
      }
      pr.overall_mean = std::exp(etav);
      pr.structural_zero_prob = sigmoid(s);
      pr.poisson_mean = pr.overall_mean / (1.0 - pr.structural_zero_prob);
      return pr;
    }
  }
  return pr;
}

EffectSummary zip_overall_irr(const FitResult& fit,
                              const std::vector<double>& covariate_profile) {
  if (fit.model_kind != ModelKind::ZIP)
    throw DomainError("zip_overall_irr: fit is not a ZIP model");
  const std::size_t p = fit.design_columns.size();
  if (p < 2) throw DomainError("zip_overall_irr: design has no treatment column");
  if (covariate_profile.size() != p - 2)
    throw DomainError("zip_overall_irr: covariate profile length != p-2");
  const double b1 = fit.coefficients[1];
  const double g0 = fit.coefficients[p];
  const double g1 = fit.coefficients[p + 1];
  double zx = 0.0;
  for (std::size_t j = 2; j < p; ++j)
    zx += fit.coefficients[p + j] * covariate_profile[j - 2];
  EffectSummary e;
  e.kind = EffectKind::IRR;
  e.covariate_profile = covariate_profile;
  e.value = std::exp(b1 + log1pexp(g0 + zx) - log1pexp(g0 + g1 + zx));
  return e;
}

std::vector<EffectSummary> effect_summaries(const FitResult& fit) {
  std::vector<EffectSummary> out;
  if (fit.design_columns.size() < 2) return out;
  const bool mixture =
      fit.model_kind == ModelKind::ZIP || fit.model_kind == ModelKind::MZIP;
  const std::size_t p = fit.design_columns.size();
  switch (fit.model_kind) {
    case ModelKind::LinearRaw:
    case ModelKind::LinearLog:
      return out;
    default:
      break;
  }
  EffectSummary rr;
  rr.kind = EffectKind::RR;
  rr.value = std::exp(fit.coefficients[1]);
  out.push_back(rr);
  if (mixture) {
    EffectSummary orr;
    orr.kind = EffectKind::OR;
    orr.value = std::exp(fit.coefficients[p + 1]);
    out.push_back(orr);
  }
  return out;
}

}  // namespace zicount
