#include "zicount/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "zicount/errors.hpp"

namespace zicount {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string fmt_rate(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

RunConfig parse_run_config_text(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");

  static const char* known[] = {"conditions",   "beta1",     "ns",
                                "zero_rates",   "replications", "alpha",
                                "base_seed",    "threads",   "zero_rate_reference"};
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw InputError("unknown config key '" + item.key() + "'");
  }

  RunConfig cfg;
  try {
    if (j.contains("conditions")) {
      cfg.conditions.clear();
      for (const auto& c : j.at("conditions"))
        cfg.conditions.push_back(condition_from_name(c.get<std::string>()));
    }
    if (j.contains("beta1")) {
      cfg.beta1_filter.clear();
      for (const auto& b : j.at("beta1")) {
        const double v = b.get<double>();
        bool valid = false;
        for (double allowed : {0.0, -0.1, -0.2, -0.3})
          valid = valid || std::fabs(v - allowed) < 1e-9;
        if (!valid)
          throw InputError("beta1 value " + fmt_g(v) +
                           " outside the grid {0,-0.1,-0.2,-0.3}");
        cfg.beta1_filter.push_back(v);
      }
    }
    if (j.contains("ns")) {
      cfg.ns.clear();
      for (const auto& n : j.at("ns")) {
        const std::size_t v = n.get<std::size_t>();
        if (std::find(default_ns().begin(), default_ns().end(), v) ==
            default_ns().end())
          throw InputError("sample size " + std::to_string(v) +
                           " outside the grid {100,200,300,500}");
        cfg.ns.push_back(v);
      }
    }
    if (j.contains("zero_rates")) {
      cfg.zero_rates.clear();
      for (const auto& z : j.at("zero_rates")) {
        const double v = z.get<double>();
        bool found = false;
        for (double zr : default_zero_rates())
          if (std::fabs(zr - v) < 1e-9) {
            cfg.zero_rates.push_back(zr);
            found = true;
            break;
          }
        if (!found)
          throw InputError("zero rate " + fmt_g(v) +
                           " outside the grid {0.2,...,0.8}");
      }
    }
    if (j.contains("replications")) {
      cfg.replications = j.at("replications").get<std::size_t>();
      if (cfg.replications < 1) throw InputError("replications must be >= 1");
    }
    if (j.contains("alpha")) {
      cfg.alpha = j.at("alpha").get<double>();
      if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw InputError("alpha must lie in (0,1)");
    }
    if (j.contains("base_seed")) cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = std::max<std::size_t>(1, j.at("threads").get<std::size_t>());
    if (j.contains("zero_rate_reference")) {
      const std::string ref = j.at("zero_rate_reference").get<std::string>();
      if (ref == "marginal")
        cfg.zero_rate_reference = ZeroRateReference::Marginal;
      else if (ref == "control")
        cfg.zero_rate_reference = ZeroRateReference::Control;
      else
        throw InputError("zero_rate_reference must be 'marginal' or 'control'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
  if (cfg.conditions.empty() || cfg.ns.empty() || cfg.zero_rates.empty())
    throw InputError("config selects an empty grid");
  return cfg;
}

std::vector<ScenarioResult> run_simulation(const RunConfig& cfg,
                                           std::ostream* progress) {
  const QuadratureRule rule = gauss_hermite(32);
  const std::vector<ScenarioConfig> grid =
      build_grid(cfg.conditions, cfg.ns, cfg.zero_rates, rule, cfg.beta1_filter,
                 cfg.alpha, cfg.replications, cfg.zero_rate_reference);
  std::vector<ScenarioResult> results;
  results.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ScenarioConfig& s = grid[i];
    if (progress)
      *progress << "scenario " << (i + 1) << "/" << grid.size() << ": "
                << condition_name(s.condition) << " beta1=" << fmt_g(s.generator.beta1)
                << " n=" << s.n << " zero_rate=" << fmt_g(s.zero_rate) << "..."
                << std::endl;
    results.push_back(run_scenario(s, cfg.base_seed, cfg.threads));
  }
  return results;
}

std::string results_csv(const std::vector<ScenarioResult>& results,
                        std::uint64_t base_seed) {
  struct Row {
    std::string condition;
    double beta1;
    double gamma1;
    std::size_t n;
    double zero_rate;
    std::string test_name;
    double rate;
    std::size_t failures;
    std::size_t replications;
  };
  std::vector<Row> rows;
  rows.reserve(results.size() * kTestCount);
  for (const auto& r : results) {
    for (std::size_t t = 0; t < kTestCount; ++t) {
      Row row;
      row.condition = condition_name(r.scenario.condition);
      row.beta1 = r.scenario.generator.beta1;
      row.gamma1 = r.scenario.generator.gamma1;
      row.n = r.scenario.n;
      row.zero_rate = r.scenario.zero_rate;
      row.test_name = kTestNames[t];
      row.rate = r.tests[t].rejection_rate();
      row.failures = r.tests[t].failures;
      row.replications = r.replications_completed;
      rows.push_back(std::move(row));
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.condition != b.condition) return a.condition < b.condition;
    if (a.beta1 != b.beta1) return a.beta1 < b.beta1;
    if (a.n != b.n) return a.n < b.n;
    if (a.zero_rate != b.zero_rate) return a.zero_rate < b.zero_rate;
    return a.test_name < b.test_name;
  });
  std::string out =
      "condition,beta1,gamma1,n,zero_rate,test_name,rejection_rate,failures,"
      "replications,seed\n";
  for (const auto& r : rows) {
    out += r.condition + "," + fmt_g(r.beta1) + "," + fmt_g(r.gamma1) + "," +
           std::to_string(r.n) + "," + fmt_g(r.zero_rate) + "," + r.test_name +
           "," + fmt_rate(r.rate) + "," + std::to_string(r.failures) + "," +
           std::to_string(r.replications) + "," + std::to_string(base_seed) + "\n";
  }
  return out;
}

std::string scenario_json(const ScenarioResult& r, std::uint64_t base_seed) {
  nlohmann::json j;
  j["condition"] = condition_name(r.scenario.condition);
  j["n"] = r.scenario.n;
  j["zero_rate"] = r.scenario.zero_rate;
  j["alpha"] = r.scenario.alpha;
  j["replications"] = r.replications_completed;
  j["grid_index"] = r.scenario.grid_index;
  j["base_seed"] = base_seed;
  j["generator"] = {{"beta0", r.scenario.generator.beta0},
                    {"beta1", r.scenario.generator.beta1},
                    {"beta2", r.scenario.generator.beta2},
                    {"gamma0", r.scenario.generator.gamma0},
                    {"gamma1", r.scenario.generator.gamma1},
                    {"gamma2", r.scenario.generator.gamma2}};
  j["pooled_zero_fraction"] = r.pooled_zero_fraction;
  j["failure_flagged"] = r.failure_flagged();
  nlohmann::json tests = nlohmann::json::object();
  for (std::size_t t = 0; t < kTestCount; ++t) {
    tests[kTestNames[t]] = {{"rejection_rate", r.tests[t].rejection_rate()},
                            {"rejects", r.tests[t].rejects},
                            {"accepts", r.tests[t].accepts},
                            {"failures", r.tests[t].failures}};
  }
  j["tests"] = tests;
  return j.dump(2) + "\n";
}

void write_simulation_outputs(const std::vector<ScenarioResult>& results,
                              const RunConfig& cfg, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "scenarios", ec);
  if (ec) throw InputError("cannot create output directory '" + out_dir + "'");

  const fs::path csv_path = fs::path(out_dir) / "results.csv";
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw InputError("cannot write '" + csv_path.string() + "'");
  csv << results_csv(results, cfg.base_seed);

  for (const auto& r : results) {
    char name[64];
    std::snprintf(name, sizeof(name), "scenario_%03zu.json", r.scenario.grid_index);
    std::ofstream js(fs::path(out_dir) / "scenarios" / name, std::ios::binary);
    if (!js) throw InputError("cannot write scenario JSON under '" + out_dir + "'");
    js << scenario_json(r, cfg.base_seed);
  }
}

}  // namespace zicount
