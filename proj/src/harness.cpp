#include "zicount/harness.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "zicount/errors.hpp"
#include "zicount/parallel.hpp"
#include "zicount/special.hpp"

namespace zicount {

const char* condition_name(Condition c) {
  switch (c) {
    case Condition::C1: return "C1";
    case Condition::C2: return "C2";
    case Condition::C3: return "C3";
    case Condition::C4: return "C4";
  }
  return "?";
}

Condition condition_from_name(const std::string& name) {
  if (name == "C1") return Condition::C1;
  if (name == "C2") return Condition::C2;
  if (name == "C3") return Condition::C3;
  if (name == "C4") return Condition::C4;
  throw InputError("unknown condition '" + name + "'");
}

std::vector<double> condition_beta1_values(Condition c) {
  switch (c) {
    case Condition::C1:
    case Condition::C2: return {-0.1, -0.2, -0.3};
    case Condition::C3:
    case Condition::C4: return {0.0};
  }
  return {};
}

double condition_gamma1(Condition c) {
  return (c == Condition::C1 || c == Condition::C3) ? 0.5 : 0.0;
}

const std::vector<std::size_t>& default_ns() {
  static const std::vector<std::size_t> ns = {100, 200, 300, 500};
  return ns;
}

const std::vector<double>& default_zero_rates() {
  static const std::vector<double> zr = {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
  return zr;
}

namespace {

std::size_t index_of_n(std::size_t n) {
  const auto& ns = default_ns();
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == n) return i;
  throw DomainError("sample size " + std::to_string(n) +
                    " is not in the grid {100,200,300,500}");
}

std::size_t index_of_zero_rate(double zr) {
  const auto& zrs = default_zero_rates();
  for (std::size_t i = 0; i < zrs.size(); ++i)
    if (std::fabs(zrs[i] - zr) < 1e-9) return i;
  throw DomainError("zero rate outside the grid {0.2,...,0.8}");
}

std::size_t condition_combo_index(Condition c, double beta1) {
  std::size_t base = 0;
  for (Condition cc : {Condition::C1, Condition::C2, Condition::C3, Condition::C4}) {
    const auto betas = condition_beta1_values(cc);
    if (cc == c) {
      for (std::size_t i = 0; i < betas.size(); ++i)
        if (std::fabs(betas[i] - beta1) < 1e-9) return base + i;
      throw DomainError(std::string("beta1 value not defined for condition ") +
                        condition_name(c));
    }
    base += betas.size();
  }
  throw DomainError("bad condition");
}

}  // namespace

std::size_t full_grid_index(Condition c, double beta1, std::size_t n,
                            double zero_rate) {
  const std::size_t combo = condition_combo_index(c, beta1);
  return combo * (default_ns().size() * default_zero_rates().size()) +
         index_of_n(n) * default_zero_rates().size() + index_of_zero_rate(zero_rate);
}

bool ScenarioResult::failure_flagged() const {
  for (const auto& t : tests) {
    if (replications_completed > 0 &&
        static_cast<double>(t.failures) / replications_completed > 0.02)
      return true;
  }
  return false;
}

std::vector<ScenarioConfig> build_grid(const std::vector<Condition>& conditions,
                                       const std::vector<std::size_t>& ns,
                                       const std::vector<double>& zero_rates,
                                       const QuadratureRule& rule,
                                       const std::vector<double>& beta1_filter,
                                       double alpha, std::size_t replications,
                                       ZeroRateReference ref) {
  std::vector<ScenarioConfig> grid;
  for (Condition c : conditions) {
    std::vector<double> betas;
    for (double b : condition_beta1_values(c)) {
      bool keep = beta1_filter.empty() || condition_beta1_values(c).size() == 1;
      for (double f : beta1_filter)
        if (std::fabs(f - b) < 1e-9) keep = true;
      if (keep) betas.push_back(b);
    }
    const double gamma1 = condition_gamma1(c);
    for (double b1 : betas) {
      for (std::size_t n : ns) {
        for (double zr : zero_rates) {
          ScenarioConfig s;
          s.condition = c;
          s.n = n;
          s.zero_rate = default_zero_rates()[index_of_zero_rate(zr)];
          s.alpha = alpha;
          s.replications = replications;
          s.grid_index = full_grid_index(c, b1, n, zr);
          try {
            s.generator = solve_gamma2(s.zero_rate, b1, gamma1, rule, ref);
          } catch (const UnreachableZeroRate& e) {
            throw UnreachableZeroRate(
                std::string("cell ") + condition_name(c) + " beta1=" +
                    std::to_string(b1) + " n=" + std::to_string(n) +
                    " zero_rate=" + std::to_string(zr) + ": " + e.what(),
                e.achievable_low, e.achievable_high);
          }
          grid.push_back(std::move(s));
        }
      }
    }
  }
  return grid;
}

Dataset generate_dataset(const ScenarioConfig& s, RngStream& stream,
                         std::vector<int>* structural_flags) {
  const GeneratorParams& g = s.generator;
  const std::size_t n = s.n;
  std::vector<double> y(n);
  Matrix X(n, 3);
  if (structural_flags) structural_flags->assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int a = sample_bernoulli(stream, 0.5);
    const double c = sample_std_normal(stream);
    const double pi = sigmoid(g.gamma0 + g.gamma1 * a + g.gamma2 * c);
    const double mu = std::exp(g.beta0 + g.beta1 * a + g.beta2 * c);
    const int structural = sample_bernoulli(stream, pi);
    y[i] = structural ? 0.0 : static_cast<double>(sample_poisson(stream, mu));
    if (structural_flags) (*structural_flags)[i] = structural;
    X(i, 0) = 1.0;
    X(i, 1) = static_cast<double>(a);
    X(i, 2) = c;
  }
  return make_dataset(std::move(y), std::move(X),
                      {"intercept", "treatment", "cov"});
}

namespace {

// Fit with one jittered-start retry on nonconvergence or singular information.
template <typename Fit, typename StartFn>
FitResult fit_with_retry(const Dataset& d, Fit fit, StartFn default_start,
                         RngStream* jitter_stream) {
  FitResult fr;
  bool failed = false;
  try {
    fr = fit(d, nullptr);
  } catch (const SingularInformation&) {
    failed = true;
  } catch (const NonFiniteObjective&) {
    failed = true;
  }
  const bool usable = !failed && (fr.converged || fr.boundary_zero_part);
  if (usable || jitter_stream == nullptr) {
    if (failed) fr.converged = false;
    return fr;
  }
  std::vector<double> start = default_start(d);
  for (double& v : start) {
    const double u = 2.0 * jitter_stream->next_double() - 1.0;
    v *= 1.0 + 0.1 * u;
  }
  try {
    FitResult retry = fit(d, &start);
    return retry;
  } catch (const SingularInformation&) {
  } catch (const NonFiniteObjective&) {
  }
  fr.converged = false;
  return fr;
}

TestOutcome wald_outcome(const FitResult& fit, const std::string& name,
                         double alpha) {
  try {
    return wald_test(fit, name, alpha).reject ? TestOutcome::Reject
                                              : TestOutcome::Accept;
  } catch (const std::runtime_error&) {
    return TestOutcome::FitFailed;
  }
}

}  // namespace

ReplicationRecord run_replication(const Dataset& d, double alpha,
                                  RngStream* jitter_stream) {
  ReplicationRecord rec;
  if (jitter_stream) {
    rec.key = jitter_stream->key();
    rec.stream_id = jitter_stream->stream_id();
    rec.substream_id = jitter_stream->substream_id();
  }
  const std::string treat = d.column_names.size() > 1 ? d.column_names[1] : "";
  const std::string count_treat = "count." + treat;
  const std::string zero_treat = "zero." + treat;

  const FitResult poisson = fit_with_retry(
      d, [](const Dataset& dd, const std::vector<double>* s) { return fit_poisson(dd, s); },
      &default_start_poisson, jitter_stream);
  const FitResult nb = fit_with_retry(
      d, [](const Dataset& dd, const std::vector<double>* s) { return fit_nb(dd, s); },
      &default_start_nb, jitter_stream);
  const FitResult zip = fit_with_retry(
      d, [](const Dataset& dd, const std::vector<double>* s) { return fit_zip(dd, s); },
      &default_start_zip, jitter_stream);
  const FitResult mzip = fit_with_retry(
      d, [](const Dataset& dd, const std::vector<double>* s) { return fit_mzip(dd, s); },
      &default_start_mzip, jitter_stream);

  FitResult lin_raw, lin_log;
  bool lin_raw_ok = true, lin_log_ok = true;
  try {
    lin_raw = fit_linear(d, LinearTransform::Raw);
  } catch (const SingularInformation&) {
    lin_raw_ok = false;
  }
  try {
    lin_log = fit_linear(d, LinearTransform::Log1p);
  } catch (const SingularInformation&) {
    lin_log_ok = false;
  }

  rec.outcomes[0] = wald_outcome(poisson, treat, alpha);
  rec.outcomes[1] = wald_outcome(nb, treat, alpha);
  rec.outcomes[2] = wald_outcome(zip, count_treat, alpha);
  rec.outcomes[3] = wald_outcome(zip, zero_treat, alpha);
  rec.outcomes[4] = wald_outcome(mzip, count_treat, alpha);
  rec.outcomes[5] =
      lin_raw_ok ? wald_outcome(lin_raw, treat, alpha) : TestOutcome::FitFailed;
  rec.outcomes[6] =
      lin_log_ok ? wald_outcome(lin_log, treat, alpha) : TestOutcome::FitFailed;
  return rec;
}

ScenarioResult run_scenario(const ScenarioConfig& s, std::uint64_t base_seed,
                            std::size_t threads) {
  const std::size_t reps = s.replications;
  std::vector<ReplicationRecord> records(reps);
  std::vector<std::size_t> zero_counts(reps, 0);

  parallel_for(reps, threads, [&](std::size_t r) {
    RngStream stream(base_seed, s.grid_index, r);
    const Dataset d = generate_dataset(s, stream);
    zero_counts[r] = d.zero_count();
    records[r] = run_replication(d, s.alpha, &stream);
  });

  ScenarioResult result;
  result.scenario = s;
  result.replications_completed = reps;
  std::size_t total_zeros = 0;
  for (std::size_t r = 0; r < reps; ++r) {
    total_zeros += zero_counts[r];
    for (std::size_t t = 0; t < kTestCount; ++t) {
      switch (records[r].outcomes[t]) {
        case TestOutcome::Reject: ++result.tests[t].rejects; break;
        case TestOutcome::Accept: ++result.tests[t].accepts; break;
        case TestOutcome::FitFailed: ++result.tests[t].failures; break;
      }
    }
  }
  result.pooled_zero_fraction =
      reps == 0 ? 0.0 : static_cast<double>(total_zeros) / (reps * s.n);
  return result;
}

}  // namespace zicount
