#include "nprsim.h"

#include <new>
#include <string>

#include "nprsim/errors.hpp"
#include "nprsim/experiment.hpp"
#include "nprsim/lowerbound.hpp"
#include "nprsim/risk.hpp"
#include "nprsim/signal.hpp"

using namespace nprsim;

extern "C" {

struct nprsim_experiment {
  ExperimentConfig config;
  nprsim_status status = NPRSIM_OK;
  std::string error;
  std::string summary;
  bool configured = false;
};

const char* nprsim_version(void) { return "0.1.0"; }

namespace {

nprsim_experiment* finish_create(nprsim_experiment* exp) { return exp; }

template <typename Fn>
nprsim_experiment* create_with(Fn&& load) {
  auto* exp = new (std::nothrow) nprsim_experiment();
  if (exp == nullptr) return nullptr;
  try {
    exp->config = load();
    exp->configured = true;
  } catch (const config_error& e) {
    exp->status = NPRSIM_ERR_CONFIG;
    exp->error = e.what();
  } catch (const std::exception& e) {
    exp->status = NPRSIM_ERR_RUNTIME;
    exp->error = e.what();
  }
  return finish_create(exp);
}

nprsim_status guard_configured(nprsim_experiment* exp) {
  if (exp == nullptr) return NPRSIM_ERR_RUNTIME;
  if (!exp->configured) return exp->status;
  return NPRSIM_OK;
}

template <typename Fn>
nprsim_status eval_scalar(double* out, Fn&& fn) {
  if (out == nullptr) return NPRSIM_ERR_RUNTIME;
  try {
    *out = fn();
    return NPRSIM_OK;
  } catch (const std::invalid_argument&) {
    return NPRSIM_ERR_CONFIG;
  } catch (const std::exception&) {
    return NPRSIM_ERR_RUNTIME;
  }
}

}  // namespace

nprsim_experiment* nprsim_experiment_create(const char* config_json) {
  const std::string text = config_json ? config_json : "";
  return create_with([&] { return parse_config(text); });
}

nprsim_experiment* nprsim_experiment_create_from_file(const char* path) {
  const std::string p = path ? path : "";
  return create_with([&] { return load_config_file(p); });
}

void nprsim_experiment_destroy(nprsim_experiment* exp) { delete exp; }

nprsim_status nprsim_experiment_status(const nprsim_experiment* exp) {
  return exp ? exp->status : NPRSIM_ERR_RUNTIME;
}

const char* nprsim_experiment_error(const nprsim_experiment* exp) {
  return exp ? exp->error.c_str() : "null experiment handle";
}

nprsim_status nprsim_experiment_set_out_dir(nprsim_experiment* exp,
                                            const char* dir) {
  const nprsim_status g = guard_configured(exp);
  if (g != NPRSIM_OK) return g;
  if (dir == nullptr || dir[0] == '\0') {
    exp->error = "out_dir override must not be empty";
    return NPRSIM_ERR_CONFIG;
  }
  exp->config.out_dir = dir;
  return NPRSIM_OK;
}

nprsim_status nprsim_experiment_set_seed(nprsim_experiment* exp, uint64_t seed) {
  const nprsim_status g = guard_configured(exp);
  if (g != NPRSIM_OK) return g;
  exp->config.master_seed = seed;
  return NPRSIM_OK;
}

nprsim_status nprsim_experiment_set_workers(nprsim_experiment* exp, int workers) {
  const nprsim_status g = guard_configured(exp);
  if (g != NPRSIM_OK) return g;
  if (workers < 1) {
    exp->error = "workers override must be >= 1";
    return NPRSIM_ERR_CONFIG;
  }
  exp->config.workers = workers;
  return NPRSIM_OK;
}

nprsim_status nprsim_experiment_run(nprsim_experiment* exp, const char* command) {
  const nprsim_status g = guard_configured(exp);
  if (g != NPRSIM_OK) return g;
  const auto cmd = parse_command(command ? command : "");
  if (!cmd) {
    exp->error = std::string("unknown command '") + (command ? command : "") + "'";
    exp->status = NPRSIM_ERR_CONFIG;
    return exp->status;
  }
  try {
    const RunOutcome outcome = run_command(exp->config, *cmd);
    exp->summary = outcome.summary;
    exp->error.clear();
    exp->status = outcome.verdict_ok ? NPRSIM_OK : NPRSIM_ERR_VERDICT;
  } catch (const config_error& e) {
    exp->error = e.what();
    exp->status = NPRSIM_ERR_CONFIG;
  } catch (const std::exception& e) {
    exp->error = e.what();
    exp->status = NPRSIM_ERR_RUNTIME;
  }
  return exp->status;
}

const char* nprsim_experiment_summary(const nprsim_experiment* exp) {
  return exp ? exp->summary.c_str() : "";
}

nprsim_status nprsim_basis_eval(int j, double x, double* out) {
  return eval_scalar(out, [&] { return basis_eval(j, x); });
}

nprsim_status nprsim_sobolev_weight(int j, int k, double* out) {
  return eval_scalar(out, [&] { return sobolev_weight(j, k); });
}

nprsim_status nprsim_pinsker_constant(int k, double r, double sigma_star,
                                      double* out) {
  return eval_scalar(out, [&] { return pinsker_constant(k, r, sigma_star); });
}

nprsim_status nprsim_oracle_coefficient(double rho, double* out) {
  return eval_scalar(out, [&] { return oracle_coefficient(rho); });
}

nprsim_status nprsim_van_trees_bound(double fisher_energy, double b,
                                     double prior_info, double sigma_star,
                                     double* out) {
  return eval_scalar(out, [&] {
    return van_trees_bound(fisher_energy, b, prior_info, sigma_star);
  });
}

}  // extern "C"
