// Command-line front end: simulate ensembles, sweep N = Gamma*T, fit the
// square-root law, and run the verification suite. Talks to the simulation
// core exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diracphase.h"

namespace {

// exit codes: 0 success, 1 validation or i/o error, 2 runtime abort
// (rejection rate), 3 verification failure
constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitAborted = 2;
constexpr int kExitVerifyFailed = 3;

int exit_code_for(dp_status status) {
  switch (status) {
    case DP_OK:
      return kExitOk;
    case DP_ERROR_RUN_ABORTED:
      return kExitAborted;
    default:
      return kExitValidation;
  }
}

int report_error(const char* context, dp_status status, const char* detail) {
  std::fprintf(stderr, "error: %s: %s", context, dp_status_name(status));
  if (detail != nullptr && detail[0] != '\0') {
    std::fprintf(stderr, " (%s)", detail);
  }
  std::fprintf(stderr, "\n");
  return exit_code_for(status);
}

struct ConfigHandle {
  dp_config* ptr = nullptr;
  ~ConfigHandle() { dp_config_free(ptr); }
};

struct EnsembleHandle {
  dp_ensemble* ptr = nullptr;
  ~EnsembleHandle() { dp_ensemble_free(ptr); }
};

struct SweepHandle {
  dp_sweep* ptr = nullptr;
  ~SweepHandle() { dp_sweep_free(ptr); }
};

bool ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create output directory '%s': %s\n", dir.c_str(),
                 ec.message().c_str());
    return false;
  }
  return true;
}

int run_simulate(const std::string& config_path, const std::string& out_dir, int workers) {
  char err[512] = {0};
  ConfigHandle config;
  dp_status status = dp_config_parse_file(config_path.c_str(), &config.ptr, err, sizeof err);
  if (status != DP_OK) {
    return report_error("config", status, err);
  }
  if (!ensure_out_dir(out_dir)) {
    return kExitValidation;
  }

  EnsembleHandle ensemble;
  status = dp_run(config.ptr, workers, &ensemble.ptr, err, sizeof err);
  if (status != DP_OK) {
    return report_error("simulate", status, err);
  }

  dp_moments moments;
  status = dp_ensemble_moments(ensemble.ptr, &moments);
  if (status != DP_OK) {
    return report_error("moments", status, nullptr);
  }

  const std::string ensemble_path = out_dir + "/ensemble.csv";
  const std::string summary_path = out_dir + "/summary.csv";
  status = dp_ensemble_write_csv(ensemble.ptr, ensemble_path.c_str());
  if (status != DP_OK) {
    return report_error(ensemble_path.c_str(), status, nullptr);
  }
  status = dp_summary_write_csv(&moments, summary_path.c_str());
  if (status != DP_OK) {
    return report_error(summary_path.c_str(), status, nullptr);
  }

  std::printf("samples accepted=%llu rejected=%llu\n",
              static_cast<unsigned long long>(moments.accepted),
              static_cast<unsigned long long>(moments.rejected));
  std::printf("mean     = %.10g +- %.3g\n", moments.mean, moments.stderr_mean);
  std::printf("variance = %.10g +- %.3g\n", moments.variance, moments.stderr_variance);
  std::printf("wrote %s and %s\n", ensemble_path.c_str(), summary_path.c_str());
  return kExitOk;
}

int run_sweep(const std::string& config_path, const std::string& n_values_arg,
              const std::string& out_dir, int workers) {
  std::vector<double> n_values;
  {
    std::string token;
    for (std::size_t pos = 0; pos <= n_values_arg.size(); ++pos) {
      if (pos == n_values_arg.size() || n_values_arg[pos] == ',') {
        if (!token.empty()) {
          try {
            std::size_t used = 0;
            n_values.push_back(std::stod(token, &used));
            if (used != token.size()) {
              throw std::invalid_argument(token);
            }
          } catch (const std::exception&) {
            std::fprintf(stderr, "error: bad N value '%s'\n", token.c_str());
            return kExitValidation;
          }
          token.clear();
        }
      } else {
        token.push_back(n_values_arg[pos]);
      }
    }
  }
  if (n_values.empty()) {
    std::fprintf(stderr, "error: --n-values is empty\n");
    return kExitValidation;
  }

  char err[512] = {0};
  ConfigHandle config;
  dp_status status = dp_config_parse_file(config_path.c_str(), &config.ptr, err, sizeof err);
  if (status != DP_OK) {
    return report_error("config", status, err);
  }
  if (!ensure_out_dir(out_dir)) {
    return kExitValidation;
  }

  SweepHandle sweep;
  status = dp_sweep_run(config.ptr, n_values.data(), n_values.size(), workers, &sweep.ptr, err,
                        sizeof err);
  if (status != DP_OK) {
    return report_error("sweep", status, err);
  }

  const std::string sweep_path = out_dir + "/sweep.csv";
  status = dp_sweep_write_csv(sweep.ptr, sweep_path.c_str());
  if (status != DP_OK) {
    return report_error(sweep_path.c_str(), status, nullptr);
  }
  for (size_t i = 0; i < dp_sweep_size(sweep.ptr); ++i) {
    double n = 0.0, sigma = 0.0, se = 0.0;
    dp_sweep_point(sweep.ptr, i, &n, &sigma, &se);
    std::printf("N=%-8g sigma=%.8g +- %.3g\n", n, sigma, se);
  }
  std::printf("wrote %s\n", sweep_path.c_str());
  return kExitOk;
}

int run_fit(const std::string& sweep_csv, const std::string& out_dir) {
  char err[512] = {0};
  SweepHandle sweep;
  dp_status status = dp_sweep_read_csv(sweep_csv.c_str(), &sweep.ptr, err, sizeof err);
  if (status != DP_OK) {
    return report_error("fit", status, err);
  }
  dp_fit fit;
  status = dp_fit_sqrt_law(sweep.ptr, &fit);
  if (status != DP_OK) {
    return report_error("fit", status, nullptr);
  }
  if (!ensure_out_dir(out_dir)) {
    return kExitValidation;
  }
  const std::string fit_path = out_dir + "/fit.csv";
  status = dp_fit_write_csv(&fit, fit_path.c_str());
  if (status != DP_OK) {
    return report_error(fit_path.c_str(), status, nullptr);
  }
  std::printf("a = %.10g +- %.3g\n", fit.a, fit.stderr_a);
  std::printf("b = %.10g +- %.3g\n", fit.b, fit.stderr_b);
  std::printf("residual norm = %.6g\n", fit.residual_norm);
  std::printf("wrote %s\n", fit_path.c_str());
  return kExitOk;
}

int run_verify(bool quick, int workers) {
  int failures = 0;
  const dp_status status = dp_verify(
      quick ? 1 : 0, workers,
      [](void*, const char* line) { std::printf("%s\n", line); }, nullptr, &failures);
  if (status != DP_OK) {
    return report_error("verify", status, nullptr);
  }
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac phase statistics along noisy trajectories in static magnetic fields"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", n_values, sweep_csv;
  int workers = 0;
  bool quick = false;

  CLI::App* simulate = app.add_subcommand("simulate", "run one ensemble, write ensemble.csv and summary.csv");
  simulate->add_option("--config", config_path, "experiment config file")->required();
  simulate->add_option("--out-dir", out_dir, "output directory")->required();
  simulate->add_option("--workers", workers, "worker threads (0 = hardware)");

  CLI::App* sweep = app.add_subcommand("sweep", "run one ensemble per N value, write sweep.csv");
  sweep->add_option("--config", config_path, "base experiment config file")->required();
  sweep->add_option("--n-values", n_values, "comma-separated N values, increasing")->required();
  sweep->add_option("--out-dir", out_dir, "output directory")->required();
  sweep->add_option("--workers", workers, "worker threads (0 = hardware)");

  CLI::App* fit = app.add_subcommand("fit", "least-squares sigma = a sqrt(N) + b on a sweep.csv");
  fit->add_option("--sweep-csv", sweep_csv, "sweep csv produced by the sweep command")->required();
  fit->add_option("--out-dir", out_dir, "directory for fit.csv");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks");
  verify->add_flag("--quick", quick, "reduced sample counts (completes in well under a minute)");
  verify->add_option("--workers", workers, "worker threads (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitValidation;
  }

  if (simulate->parsed()) {
    return run_simulate(config_path, out_dir, workers);
  }
  if (sweep->parsed()) {
    return run_sweep(config_path, n_values, out_dir, workers);
  }
  if (fit->parsed()) {
    return run_fit(sweep_csv, out_dir);
  }
  return run_verify(quick, workers);
}
