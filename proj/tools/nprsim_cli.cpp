// Experiment runner CLI. Everything substantive lives behind the C API in
// libnprsim; this binary only parses arguments, forwards overrides and maps
// the returned status to its exit code.

#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nprsim.h"

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  bool out_dir_set = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  bool workers_set = false;
};

int run(const std::string& command, const Options& opt) {
  nprsim_experiment* exp = nprsim_experiment_create_from_file(opt.config_path.c_str());
  if (exp == nullptr) {
    std::fprintf(stderr, "error: out of memory\n");
    return NPRSIM_ERR_RUNTIME;
  }
  int rc = nprsim_experiment_status(exp);
  if (rc != NPRSIM_OK) {
    std::fprintf(stderr, "error: %s\n", nprsim_experiment_error(exp));
    nprsim_experiment_destroy(exp);
    return rc;
  }
  if (opt.out_dir_set) rc = nprsim_experiment_set_out_dir(exp, opt.out_dir.c_str());
  if (rc == NPRSIM_OK && opt.seed_set) rc = nprsim_experiment_set_seed(exp, opt.seed);
  if (rc == NPRSIM_OK && opt.workers_set)
    rc = nprsim_experiment_set_workers(exp, opt.workers);
  if (rc != NPRSIM_OK) {
    std::fprintf(stderr, "error: %s\n", nprsim_experiment_error(exp));
    nprsim_experiment_destroy(exp);
    return rc;
  }

  rc = nprsim_experiment_run(exp, command.c_str());
  const char* summary = nprsim_experiment_summary(exp);
  if (summary != nullptr && summary[0] != '\0') {
    std::fputs(summary, stdout);
  }
  if (rc == NPRSIM_ERR_CONFIG || rc == NPRSIM_ERR_RUNTIME) {
    std::fprintf(stderr, "error: %s\n", nprsim_experiment_error(exp));
  } else if (rc == NPRSIM_ERR_VERDICT) {
    std::fprintf(stderr, "verdict failed (see summary)\n");
  }
  nprsim_experiment_destroy(exp);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nprsim - adaptive spectral regression experiments"};
  app.set_version_flag("--version", std::string(nprsim_version()));
  app.require_subcommand(1);

  Options opt;
  const char* commands[] = {"simulate", "select",     "risk",
                            "oracle-check", "efficiency", "lower-bound"};
  const char* descriptions[] = {
      "noise-simulator diagnostics (moments, path/spectral agreement)",
      "selection frequencies of the adaptive procedure",
      "Monte Carlo risk tables per filter and per noise model",
      "oracle-inequality consistency check",
      "efficiency ratios against the Pinsker constant",
      "Bayes lower-bound convergence check"};
  std::string chosen;
  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("--config", opt.config_path, "experiment configuration (JSON)")
        ->required();
    sub->add_option("--out", opt.out_dir, "output directory override")
        ->each([&](const std::string&) { opt.out_dir_set = true; });
    sub->add_option("--seed", opt.seed, "master seed override")
        ->each([&](const std::string&) { opt.seed_set = true; });
    sub->add_option("--workers", opt.workers, "worker thread count override")
        ->each([&](const std::string&) { opt.workers_set = true; });
    sub->callback([&chosen, name = std::string(commands[i])] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(chosen, opt);
}
