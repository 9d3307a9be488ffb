#ifndef NPRSIM_EXPERIMENT_HPP
#define NPRSIM_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nprsim/lowerbound.hpp"
#include "nprsim/noise.hpp"
#include "nprsim/risk.hpp"
#include "nprsim/selection.hpp"
#include "nprsim/signal.hpp"

namespace nprsim {

enum class Command {
  kSimulate,
  kSelect,
  kRisk,
  kOracleCheck,
  kEfficiency,
  kLowerBound,
};

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command cmd);

struct SimulateSection {
  int coords = 16;  // leading coordinates to diagnose
  bool ks = false;  // path/spectral comparison per panel member
  double ks_dt = 1e-3;
  long long ks_n = 20;
  int ks_samples = 10000;
};

struct OracleSection {
  std::optional<double> slack_constant;  // default 10 * sigma_star
};

struct EfficiencySection {
  int k = 1;
  double r = 1.0;
  std::vector<double> analytic_n_list;
  int analytic_j_max = 128;
  std::vector<long long> mc_n_list;
  int mc_replicates = 0;  // 0 -> run.replicates
  std::optional<double> analytic_cap;
  bool require_monotone = false;
};

struct LowerboundSection {
  int k = 1;
  double r = 1.0;
  double eps = 0.1;
  double eta = 1e-3;
  std::vector<double> n_list;
  NnRule rule;
  std::optional<double> max_gap;
};

struct ExperimentConfig {
  // model
  double sigma_star = 1.0;
  LnRule l_n_rule;
  std::vector<NoiseModel> panel;  // never empty after parsing

  // signal (absent for commands that do not need one)
  std::optional<SignalSpec> signal;

  // selection
  std::optional<double> rho;  // default rho_n = 1/(3 + ln n)
  GridOverrides grid;

  // run
  std::vector<long long> n_list;
  int replicates = 100;
  std::uint64_t master_seed = 0;
  int workers = 1;
  std::string out_dir = "out";

  SimulateSection simulate;
  OracleSection oracle;
  EfficiencySection efficiency;
  LowerboundSection lowerbound;

  double rho_for(long long n) const;
};

/// Parses and structurally validates a configuration document.
/// Throws config_error with a descriptive message on any problem.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

struct RunOutcome {
  bool verdict_ok = true;  // false -> exit status 3
  std::string summary;
  std::vector<std::string> artifacts;  // paths written
};

/// Executes one command; writes CSV artifacts and summary.txt under
/// config.out_dir. All artifacts are pure functions of (config, seed);
/// the worker count only changes wall time.
RunOutcome run_command(const ExperimentConfig& config, Command cmd);

}  // namespace nprsim

#endif
