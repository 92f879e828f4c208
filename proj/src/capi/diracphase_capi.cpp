#include "diracphase.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/montecarlo.hpp"
#include "core/verify.hpp"

struct dp_config {
  dirac::ExperimentConfig cfg;
};

struct dp_ensemble {
  dirac::PhaseEnsemble ens;
};

struct dp_sweep {
  std::vector<dirac::SweepPoint> points;
};

namespace {

void put_error(char* err, size_t err_len, const char* what) {
  if (err != nullptr && err_len > 0) {
    std::strncpy(err, what, err_len - 1);
    err[err_len - 1] = '\0';
  }
}

// Translates core exceptions into status codes; the callable does the work.
template <typename Fn>
dp_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    return fn();
  } catch (const dirac::parse_error& e) {
    put_error(err, err_len, e.what());
    return DP_ERROR_PARSE;
  } catch (const dirac::singular_region_error& e) {
    put_error(err, err_len, e.what());
    return DP_ERROR_SINGULAR_REGION;
  } catch (const dirac::run_aborted_error& e) {
    put_error(err, err_len, e.what());
    return DP_ERROR_RUN_ABORTED;
  } catch (const std::invalid_argument& e) {
    put_error(err, err_len, e.what());
    return DP_ERROR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    put_error(err, err_len, "out of memory");
    return DP_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    put_error(err, err_len, e.what());
    return DP_ERROR_INTERNAL;
  }
}

dp_status write_text_file(const char* path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return DP_ERROR_IO;
  }
  out << body;
  out.flush();
  return out ? DP_OK : DP_ERROR_IO;
}

dirac::MomentEstimate moments_of(const dp_ensemble* ensemble, uint32_t resamples,
                                 uint64_t resample_seed, bool use_defaults) {
  if (use_defaults) {
    return dirac::estimate_moments(ensemble->ens);
  }
  return dirac::estimate_moments(ensemble->ens, resamples, resample_seed);
}

void fill_moments(const dirac::MomentEstimate& est, uint64_t rejected, dp_moments* out) {
  out->mean = est.mean;
  out->variance = est.variance;
  out->stderr_mean = est.stderr_mean;
  out->stderr_variance = est.stderr_variance;
  out->sigma = est.sigma;
  out->stderr_sigma = est.stderr_sigma;
  out->accepted = est.accepted;
  out->rejected = rejected;
}

}  // namespace

extern "C" {

const char* dp_status_name(dp_status status) {
  switch (status) {
    case DP_OK:
      return "ok";
    case DP_ERROR_INVALID_ARGUMENT:
      return "invalid argument";
    case DP_ERROR_PARSE:
      return "parse error";
    case DP_ERROR_SINGULAR_REGION:
      return "singular region";
    case DP_ERROR_RUN_ABORTED:
      return "run aborted";
    case DP_ERROR_IO:
      return "i/o error";
    case DP_ERROR_INTERNAL:
      return "internal error";
  }
  return "unknown";
}

const char* dp_version(void) { return "1.0.0"; }

dp_status dp_config_parse(const char* text, dp_config** out_config, char* err, size_t err_len) {
  if (text == nullptr || out_config == nullptr) {
    put_error(err, err_len, "null argument");
    return DP_ERROR_INVALID_ARGUMENT;
  }
  *out_config = nullptr;
  return guarded(err, err_len, [&] {
    auto* handle = new dp_config{dirac::parse_config(text)};
    *out_config = handle;
    return DP_OK;
  });
}

dp_status dp_config_parse_file(const char* path, dp_config** out_config, char* err,
                               size_t err_len) {
  if (path == nullptr || out_config == nullptr) {
    put_error(err, err_len, "null argument");
    return DP_ERROR_INVALID_ARGUMENT;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    put_error(err, err_len, (std::string("cannot open config file: ") + path).c_str());
    return DP_ERROR_IO;
  }
  std::ostringstream body;
  body << in.rdbuf();
  return dp_config_parse(body.str().c_str(), out_config, err, err_len);
}

void dp_config_free(dp_config* config) { delete config; }

uint64_t dp_config_samples(const dp_config* config) {
  return config == nullptr ? 0 : config->cfg.samples;
}

uint64_t dp_config_seed(const dp_config* config) {
  return config == nullptr ? 0 : config->cfg.master_seed;
}

dp_status dp_run(const dp_config* config, int workers, dp_ensemble** out_ensemble, char* err,
                 size_t err_len) {
  if (config == nullptr || out_ensemble == nullptr) {
    put_error(err, err_len, "null argument");
    return DP_ERROR_INVALID_ARGUMENT;
  }
  *out_ensemble = nullptr;
  return guarded(err, err_len, [&] {
    auto* handle = new dp_ensemble{dirac::run_experiment(config->cfg, workers)};
    *out_ensemble = handle;
    return DP_OK;
  });
}

void dp_ensemble_free(dp_ensemble* ensemble) { delete ensemble; }

uint64_t dp_ensemble_accepted(const dp_ensemble* ensemble) {
  return ensemble == nullptr ? 0 : ensemble->ens.phases.size();
}

uint64_t dp_ensemble_rejected(const dp_ensemble* ensemble) {
  return ensemble == nullptr ? 0 : ensemble->ens.rejected;
}

dp_status dp_ensemble_sample(const dp_ensemble* ensemble, uint64_t pos, uint64_t* out_index,
                             double* out_phase) {
  if (ensemble == nullptr || pos >= ensemble->ens.phases.size()) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  const auto& [index, phase] = ensemble->ens.phases[pos];
  if (out_index != nullptr) {
    *out_index = index;
  }
  if (out_phase != nullptr) {
    *out_phase = phase;
  }
  return DP_OK;
}

dp_status dp_ensemble_moments(const dp_ensemble* ensemble, dp_moments* out_moments) {
  if (ensemble == nullptr || out_moments == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  return guarded(nullptr, 0, [&] {
    fill_moments(moments_of(ensemble, 0, 0, true), ensemble->ens.rejected, out_moments);
    return DP_OK;
  });
}

dp_status dp_ensemble_moments_ex(const dp_ensemble* ensemble, uint32_t resamples,
                                 uint64_t resample_seed, dp_moments* out_moments) {
  if (ensemble == nullptr || out_moments == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  return guarded(nullptr, 0, [&] {
    fill_moments(moments_of(ensemble, resamples, resample_seed, false), ensemble->ens.rejected,
                 out_moments);
    return DP_OK;
  });
}

dp_status dp_ensemble_write_csv(const dp_ensemble* ensemble, const char* path) {
  if (ensemble == nullptr || path == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  std::ostringstream body;
  dirac::write_ensemble_csv(body, ensemble->ens);
  return write_text_file(path, body.str());
}

dp_status dp_summary_write_csv(const dp_moments* moments, const char* path) {
  if (moments == nullptr || path == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  dirac::MomentEstimate est;
  est.mean = moments->mean;
  est.variance = moments->variance;
  est.stderr_mean = moments->stderr_mean;
  est.stderr_variance = moments->stderr_variance;
  est.sigma = moments->sigma;
  est.stderr_sigma = moments->stderr_sigma;
  est.accepted = moments->accepted;
  std::ostringstream body;
  dirac::write_summary_csv(body, est, moments->rejected);
  return write_text_file(path, body.str());
}

dp_status dp_sweep_run(const dp_config* config, const double* n_values, size_t n_count,
                       int workers, dp_sweep** out_sweep, char* err, size_t err_len) {
  if (config == nullptr || n_values == nullptr || n_count == 0 || out_sweep == nullptr) {
    put_error(err, err_len, "null argument");
    return DP_ERROR_INVALID_ARGUMENT;
  }
  *out_sweep = nullptr;
  return guarded(err, err_len, [&] {
    auto* handle = new dp_sweep{
        dirac::sweep_variance(config->cfg, std::span<const double>(n_values, n_count), workers)};
    *out_sweep = handle;
    return DP_OK;
  });
}

void dp_sweep_free(dp_sweep* sweep) { delete sweep; }

size_t dp_sweep_size(const dp_sweep* sweep) {
  return sweep == nullptr ? 0 : sweep->points.size();
}

dp_status dp_sweep_point(const dp_sweep* sweep, size_t index, double* out_n, double* out_sigma,
                         double* out_sigma_stderr) {
  if (sweep == nullptr || index >= sweep->points.size()) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  const dirac::SweepPoint& p = sweep->points[index];
  if (out_n != nullptr) {
    *out_n = p.n;
  }
  if (out_sigma != nullptr) {
    *out_sigma = p.sigma;
  }
  if (out_sigma_stderr != nullptr) {
    *out_sigma_stderr = p.sigma_stderr;
  }
  return DP_OK;
}

dp_status dp_sweep_write_csv(const dp_sweep* sweep, const char* path) {
  if (sweep == nullptr || path == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  std::ostringstream body;
  dirac::write_sweep_csv(body, sweep->points);
  return write_text_file(path, body.str());
}

dp_status dp_sweep_read_csv(const char* path, dp_sweep** out_sweep, char* err, size_t err_len) {
  if (path == nullptr || out_sweep == nullptr) {
    put_error(err, err_len, "null argument");
    return DP_ERROR_INVALID_ARGUMENT;
  }
  *out_sweep = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    put_error(err, err_len, (std::string("cannot open sweep csv: ") + path).c_str());
    return DP_ERROR_IO;
  }
  return guarded(err, err_len, [&] {
    auto* handle = new dp_sweep{dirac::read_sweep_csv(in)};
    *out_sweep = handle;
    return DP_OK;
  });
}

dp_status dp_fit_sqrt_law(const dp_sweep* sweep, dp_fit* out_fit) {
  if (sweep == nullptr || out_fit == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  return guarded(nullptr, 0, [&] {
    const dirac::FitResult fit = dirac::fit_sqrt_law(sweep->points);
    out_fit->a = fit.a;
    out_fit->b = fit.b;
    out_fit->residual_norm = fit.residual_norm;
    out_fit->stderr_a = fit.stderr_a;
    out_fit->stderr_b = fit.stderr_b;
    return DP_OK;
  });
}

dp_status dp_fit_write_csv(const dp_fit* fit, const char* path) {
  if (fit == nullptr || path == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  dirac::FitResult core;
  core.a = fit->a;
  core.b = fit->b;
  core.residual_norm = fit->residual_norm;
  std::ostringstream body;
  dirac::write_fit_csv(body, core);
  return write_text_file(path, body.str());
}

dp_status dp_verify(int quick, int workers, dp_verify_line_fn line_callback, void* user,
                    int* out_failures) {
  if (out_failures == nullptr) {
    return DP_ERROR_INVALID_ARGUMENT;
  }
  return guarded(nullptr, 0, [&] {
    dirac::VerifyOptions options;
    options.quick = quick != 0;
    options.workers = workers;
    *out_failures = dirac::run_acceptance_suite(options, [&](const std::string& line) {
      if (line_callback != nullptr) {
        line_callback(user, line.c_str());
      }
    });
    return DP_OK;
  });
}

}  // extern "C"
