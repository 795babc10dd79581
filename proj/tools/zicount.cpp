#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zicount/calibration.hpp"
#include "zicount/dataset.hpp"
#include "zicount/errors.hpp"
#include "zicount/models.hpp"
#include "zicount/report.hpp"
#include "zicount/simulate.hpp"

namespace {

// Exit codes (also documented in --help):
//   0 success
//   1 internal error
//   2 command-line usage error
//   3 input data error (CSV/config/results content)
//   4 model fit failure (nonconvergence, boundary, singular information)
//   5 unreachable zero-rate target
//   6 results schema error (report input)
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitFit = 4;
constexpr int kExitUnreachable = 5;
constexpr int kExitSchema = 6;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw zicount::InputError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

zicount::ModelKind model_from_name(const std::string& name) {
  using zicount::ModelKind;
  if (name == "linear-raw") return ModelKind::LinearRaw;
  if (name == "linear-log") return ModelKind::LinearLog;
  if (name == "poisson") return ModelKind::Poisson;
  if (name == "nb") return ModelKind::NB;
  if (name == "zip") return ModelKind::ZIP;
  if (name == "mzip") return ModelKind::MZIP;
  throw zicount::InputError("unknown model '" + name + "'");
}

nlohmann::json fit_to_json(const zicount::FitResult& fit, double alpha) {
  nlohmann::json j;
  j["model"] = zicount::model_kind_name(fit.model_kind);
  j["n"] = fit.n_obs;
  j["loglik"] = fit.loglik;
  j["converged"] = fit.converged;
  j["alpha"] = alpha;
  if (fit.dispersion_at_bound) j["dispersion_at_bound"] = true;
  if (fit.boundary_zero_part) j["boundary_zero_part"] = true;
  if (fit.sigma2) j["sigma2"] = *fit.sigma2;
  nlohmann::json coefs = nlohmann::json::array();
  for (std::size_t i = 0; i < fit.parameter_names.size(); ++i) {
    nlohmann::json c;
    c["name"] = fit.parameter_names[i];
    c["estimate"] = fit.coefficients[i];
    if (!fit.covariance.empty() && i < fit.covariance.rows &&
        fit.covariance(i, i) > 0.0) {
      try {
        const auto w = zicount::wald_test(fit, fit.parameter_names[i], alpha);
        c["std_error"] = w.std_error;
        c["z"] = w.z;
        c["p_value"] = w.p_value;
      } catch (const std::runtime_error&) {
      }
    }
    coefs.push_back(c);
  }
  j["coefficients"] = coefs;
  nlohmann::json effects = nlohmann::json::array();
  for (const auto& e : zicount::effect_summaries(fit)) {
    effects.push_back({{"kind", e.kind == zicount::EffectKind::RR ? "RR" : "OR"},
                       {"value", e.value}});
  }
  j["effects"] = effects;
  return j;
}

void print_fit(const zicount::FitResult& fit, double alpha) {
  std::printf("model: %s   n=%zu   loglik=%.6f   converged=%s\n",
              zicount::model_kind_name(fit.model_kind), fit.n_obs, fit.loglik,
              fit.converged ? "yes" : "no");
  if (fit.dispersion_at_bound)
    std::printf("note: dispersion at bound (ln k = 30); data effectively Poisson\n");
  std::printf("%-20s %12s %12s %9s %10s\n", "parameter", "estimate", "std.err",
              "z", "p");
  for (std::size_t i = 0; i < fit.parameter_names.size(); ++i) {
    double se = 0.0;
    bool have_se = false;
    if (!fit.covariance.empty() && i < fit.covariance.rows &&
        fit.covariance(i, i) > 0.0) {
      se = std::sqrt(fit.covariance(i, i));
      have_se = true;
    }
    if (have_se) {
      try {
        const auto w = zicount::wald_test(fit, fit.parameter_names[i], alpha);
        std::printf("%-20s %12.6f %12.6f %9.3f %10.2e\n",
                    fit.parameter_names[i].c_str(), fit.coefficients[i], se, w.z,
                    w.p_value);
        continue;
      } catch (const std::runtime_error&) {
      }
    }
    std::printf("%-20s %12.6f %12s %9s %10s\n", fit.parameter_names[i].c_str(),
                fit.coefficients[i], "-", "-", "-");
  }
  if (fit.sigma2) std::printf("residual variance: %.6f\n", *fit.sigma2);
  for (const auto& e : zicount::effect_summaries(fit)) {
    std::printf("%s = %.6f\n", e.kind == zicount::EffectKind::RR ? "RR" : "OR",
                e.value);
  }
}

int cmd_fit(const std::string& data_file, const std::string& model_name,
            const std::string& outcome, const std::string& treatment,
            const std::vector<std::string>& covariates, double alpha,
            const std::string& json_path) {
  const zicount::ModelKind kind = model_from_name(model_name);
  const zicount::Dataset d =
      zicount::load_dataset_csv(data_file, outcome, treatment, covariates);
  zicount::FitResult fit;
  switch (kind) {
    case zicount::ModelKind::LinearRaw:
      fit = zicount::fit_linear(d, zicount::LinearTransform::Raw);
      break;
    case zicount::ModelKind::LinearLog:
      fit = zicount::fit_linear(d, zicount::LinearTransform::Log1p);
      break;
    case zicount::ModelKind::Poisson: fit = zicount::fit_poisson(d); break;
    case zicount::ModelKind::NB: fit = zicount::fit_nb(d); break;
    case zicount::ModelKind::ZIP: fit = zicount::fit_zip(d); break;
    case zicount::ModelKind::MZIP: fit = zicount::fit_mzip(d); break;
  }
  if (fit.boundary_zero_part) {
    std::fprintf(stderr,
                 "fit failed (BoundaryZeroPart): the sample has %s zero "
                 "outcomes, so the structural-zero part of the %s model is not "
                 "identified\n",
                 d.zero_count() == 0 ? "no" : "only",
                 zicount::model_kind_name(kind));
    return kExitFit;
  }
  if (!fit.converged) {
    std::fprintf(stderr, "fit did not converge within the iteration cap\n");
    return kExitFit;
  }
  print_fit(fit, alpha);
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw zicount::InputError("cannot write '" + json_path + "'");
    out << fit_to_json(fit, alpha).dump(2) << "\n";
  }
  return 0;
}

int cmd_calibrate(double zero_rate, double beta1, double gamma1,
                  const std::string& reference) {
  zicount::ZeroRateReference ref;
  if (reference == "marginal")
    ref = zicount::ZeroRateReference::Marginal;
  else if (reference == "control")
    ref = zicount::ZeroRateReference::Control;
  else
    throw zicount::InputError("--reference must be 'marginal' or 'control'");
  const zicount::QuadratureRule rule = zicount::gauss_hermite(32);
  const zicount::GeneratorParams g =
      zicount::solve_gamma2(zero_rate, beta1, gamma1, rule, ref);
  nlohmann::json j = {{"beta0", g.beta0},   {"beta1", g.beta1},
                      {"beta2", g.beta2},   {"gamma0", g.gamma0},
                      {"gamma1", g.gamma1}, {"gamma2", g.gamma2},
                      {"zero_rate", zero_rate},
                      {"achieved_rate", zicount::marginal_zero_rate(g, rule, ref)},
                      {"reference", reference}};
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 std::size_t threads_override, bool have_threads,
                 std::uint64_t seed_override, bool have_seed) {
  zicount::RunConfig cfg;
  if (!config_path.empty())
    cfg = zicount::parse_run_config_text(read_file(config_path));
  if (have_threads) cfg.threads = std::max<std::size_t>(1, threads_override);
  if (have_seed) cfg.base_seed = seed_override;
  const auto results = zicount::run_simulation(cfg, &std::cerr);
  zicount::write_simulation_outputs(results, cfg, out_dir);
  std::fprintf(stderr, "wrote %s/results.csv (%zu scenarios)\n", out_dir.c_str(),
               results.size());
  return 0;
}

int cmd_report(const std::string& results_path, const std::string& out_dir) {
  const auto rows = zicount::parse_results_csv(read_file(results_path));
  const auto written = zicount::write_figures(rows, out_dir);
  for (const auto& p : written) std::fprintf(stderr, "wrote %s\n", p.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zicount: count-regression models for zero-inflated outcomes and a "
      "Monte Carlo rejection-rate study"};
  app.require_subcommand(1);
  app.footer(
      "Exit codes:\n"
      "  0  success\n"
      "  1  internal error\n"
      "  2  command-line usage error\n"
      "  3  input data error (CSV/config content)\n"
      "  4  model fit failure (nonconvergence, boundary, singular information)\n"
      "  5  unreachable zero-rate target\n"
      "  6  results schema error (report input)");

  std::string data_file, model_name, outcome, treatment, json_path = "fit.json";
  std::vector<std::string> covariates;
  double alpha = 0.05;
  auto* fit = app.add_subcommand("fit", "Fit one model to a CSV dataset");
  fit->add_option("--data", data_file, "CSV file with a header row")->required();
  fit->add_option("--model", model_name,
                  "linear-raw|linear-log|poisson|nb|zip|mzip")
      ->required();
  fit->add_option("--outcome", outcome, "outcome column (nonnegative counts)")
      ->required();
  fit->add_option("--treatment", treatment, "0/1 treatment column (optional)");
  fit->add_option("--covariates", covariates, "numeric covariate columns");
  fit->add_option("--alpha", alpha, "significance level (default 0.05)");
  fit->add_option("--json", json_path,
                  "machine-readable output path (default fit.json)");

  double zero_rate = 0.5, beta1 = 0.0, gamma1 = 0.0;
  std::string reference = "marginal";
  auto* cal = app.add_subcommand(
      "calibrate", "Solve the generator zero-part slope for a target zero rate");
  cal->add_option("--zero-rate", zero_rate, "target marginal zero rate")
      ->required();
  cal->add_option("--beta1", beta1, "count-part treatment effect")->required();
  cal->add_option("--gamma1", gamma1, "zero-part treatment effect")->required();
  cal->add_option("--reference", reference,
                  "zero-rate reference: marginal (default) or control");

  std::string config_path, out_dir;
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate", "Run the rejection-rate grid");
  sim->add_option("--config", config_path, "JSON run configuration (optional)");
  sim->add_option("--out", out_dir, "output directory")->required();
  auto* opt_threads = sim->add_option("--threads", threads, "worker threads");
  auto* opt_seed = sim->add_option("--seed", seed, "base RNG seed");

  std::string results_path, report_out;
  auto* rep = app.add_subcommand("report", "Render SVG figures from results.csv");
  rep->add_option("--results", results_path, "results.csv path")->required();
  rep->add_option("--out", report_out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand(fit))
      return cmd_fit(data_file, model_name, outcome, treatment, covariates,
                     alpha, json_path);
    if (app.got_subcommand(cal))
      return cmd_calibrate(zero_rate, beta1, gamma1, reference);
    if (app.got_subcommand(sim))
      return cmd_simulate(config_path, out_dir, threads, !opt_threads->empty(),
                          seed, !opt_seed->empty());
    if (app.got_subcommand(rep)) return cmd_report(results_path, report_out);
  } catch (const zicount::UnreachableZeroRate& e) {
    std::fprintf(stderr, "error: %s (floor %.6f, ceiling %.6f)\n", e.what(),
                 e.achievable_low, e.achievable_high);
    return kExitUnreachable;
  } catch (const zicount::InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool schema = app.got_subcommand(rep);
    return schema ? kExitSchema : kExitInput;
  } catch (const zicount::SingularInformation& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFit;
  } catch (const zicount::NonFiniteObjective& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFit;
  } catch (const zicount::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitUsage;
}
