#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "zicount/calibration.hpp"
#include "zicount/dataset.hpp"
#include "zicount/models.hpp"
#include "zicount/rng.hpp"

namespace zicount {

enum class Condition { C1, C2, C3, C4 };

const char* condition_name(Condition c);
Condition condition_from_name(const std::string& name);

/// Intervention-effect values per condition: C1 and C2 sweep beta1 over
/// {-0.1,-0.2,-0.3} (gamma1 = 0.5 and 0 respectively); C3 is beta1=0,
/// gamma1=0.5; C4 is the null (0, 0).
std::vector<double> condition_beta1_values(Condition c);
double condition_gamma1(Condition c);

/// Canonical grid domains.
const std::vector<std::size_t>& default_ns();
const std::vector<double>& default_zero_rates();

/// Rank of a cell in the full default grid, ordered by
/// (condition, beta1 in listed order, n, zero rate). This index seeds the
/// cell's RNG stream, so a subset run reproduces the same per-scenario
/// results as a full run.
std::size_t full_grid_index(Condition c, double beta1, std::size_t n,
                            double zero_rate);

struct ScenarioConfig {
  Condition condition = Condition::C4;
  std::size_t n = 100;
  double zero_rate = 0.5;
  GeneratorParams generator;
  double alpha = 0.05;
  std::size_t replications = 1000;
  std::size_t grid_index = 0;
};

/// The seven per-replication hypothesis tests, in results order.
inline constexpr std::size_t kTestCount = 7;
inline constexpr std::array<const char*, kTestCount> kTestNames = {
    "poisson_b1", "nb_b1",         "zip_b1",       "zip_g1",
    "mzip_b1",    "linear_raw_b1", "linear_log_b1"};

enum class TestOutcome { Reject, Accept, FitFailed };

struct ReplicationRecord {
  std::array<TestOutcome, kTestCount> outcomes{};
  std::uint64_t key = 0;           // base seed
  std::uint64_t stream_id = 0;     // scenario grid index
  std::uint64_t substream_id = 0;  // replication index
};

struct TestAggregate {
  std::size_t rejects = 0;
  std::size_t accepts = 0;
  std::size_t failures = 0;
  /// Reject / (replications - failures); 0 when every fit failed.
  double rejection_rate() const {
    const std::size_t denom = rejects + accepts;
    return denom == 0 ? 0.0 : static_cast<double>(rejects) / denom;
  }
};

struct ScenarioResult {
  ScenarioConfig scenario;
  std::array<TestAggregate, kTestCount> tests{};
  std::size_t replications_completed = 0;
  double pooled_zero_fraction = 0.0;
  /// Any test with > 2% fit failures.
  bool failure_flagged() const;
};

/// One ScenarioConfig per (condition-specific beta1) x n x zero rate, with the
/// generator calibrated to the cell's zero rate. An empty beta1_filter keeps
/// every beta1 the condition defines. Calibration failures propagate as
/// UnreachableZeroRate naming the cell.
std::vector<ScenarioConfig> build_grid(
    const std::vector<Condition>& conditions, const std::vector<std::size_t>& ns,
    const std::vector<double>& zero_rates, const QuadratureRule& rule,
    const std::vector<double>& beta1_filter = {}, double alpha = 0.05,
    std::size_t replications = 1000,
    ZeroRateReference ref = ZeroRateReference::Marginal);

/// Draws one trial dataset: A ~ Bernoulli(0.5), Cov ~ N(0,1), structural-zero
/// flag ~ Bernoulli(pi), outcome 0 if flagged else Poisson(mu). Design columns
/// [intercept, treatment, cov]. When structural_flags is non-null it receives
/// the latent flags (diagnostics only).
Dataset generate_dataset(const ScenarioConfig& s, RngStream& stream,
                         std::vector<int>* structural_flags = nullptr);

/// Fits the five models and applies the seven treatment-coefficient Wald
/// tests. A nonconvergent fit is retried once from a jittered start
/// (coordinate-wise x(1 + 0.1 U[-1,1]), drawn from jitter_stream) before its
/// tests are recorded as FitFailed. Boundary-zero-part fits keep their
/// count-part tests; only the zero-part test fails.
ReplicationRecord run_replication(const Dataset& d, double alpha,
                                  RngStream* jitter_stream = nullptr);

/// Runs s.replications independent replications, replication r drawing from
/// RngStream(base_seed, s.grid_index, r). The result is a pure function of
/// (s, base_seed), independent of thread count and scheduling.
ScenarioResult run_scenario(const ScenarioConfig& s, std::uint64_t base_seed,
                            std::size_t threads = 1);

}  // namespace zicount
