#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zicount/harness.hpp"

namespace zicount {

/// Grid selection and execution settings for a simulation run. Every field is
/// optional in the JSON config; defaults reproduce the full grid.
struct RunConfig {
  std::vector<Condition> conditions = {Condition::C1, Condition::C2,
                                       Condition::C3, Condition::C4};
  std::vector<double> beta1_filter;  // empty = all condition-defined values
  std::vector<std::size_t> ns = default_ns();
  std::vector<double> zero_rates = default_zero_rates();
  std::size_t replications = 1000;
  double alpha = 0.05;
  std::uint64_t base_seed = 20230815;
  std::size_t threads = 1;
  ZeroRateReference zero_rate_reference = ZeroRateReference::Marginal;
};

/// Parses and validates a config document (text of a JSON object).
/// Unknown keys or values outside the grid domains raise InputError.
RunConfig parse_run_config_text(const std::string& json_text);

/// Builds the grid and runs every scenario. Progress (one line per scenario)
/// goes to *progress when non-null.
std::vector<ScenarioResult> run_simulation(const RunConfig& cfg,
                                           std::ostream* progress = nullptr);

/// results.csv content: header
/// condition,beta1,gamma1,n,zero_rate,test_name,rejection_rate,failures,replications,seed
/// one row per scenario x test, stable-sorted by
/// (condition, beta1, n, zero_rate, test_name). Byte-identical across reruns
/// of the same config.
std::string results_csv(const std::vector<ScenarioResult>& results,
                        std::uint64_t base_seed);

/// Machine-readable per-scenario record.
std::string scenario_json(const ScenarioResult& r, std::uint64_t base_seed);

/// Writes results.csv plus scenarios/scenario_NNN.json under out_dir.
void write_simulation_outputs(const std::vector<ScenarioResult>& results,
                              const RunConfig& cfg, const std::string& out_dir);

}  // namespace zicount
