#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nprsim/errors.hpp"
#include "nprsim/experiment.hpp"

using namespace nprsim;
namespace fs = std::filesystem;

namespace {

std::string small_risk_config(const std::string& out_dir, int workers) {
  std::ostringstream os;
  os << R"({
  "model": {"sigma_star": 1.0},
  "signal": {"generator": "boundary-ellipsoid", "k": 1, "r": 1.0, "coords": [2]},
  "selection": {"rho": 0.1},
  "run": {"n": 100, "replicates": 40, "master_seed": 424242, "workers": )"
     << workers << R"(, "out_dir": ")" << out_dir << R"("}
})";
  return os.str();
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("config parsing rejects malformed documents") {
  CHECK_THROWS_AS(parse_config("not json"), config_error);
  CHECK_THROWS_AS(parse_config("[1,2,3]"), config_error);
  // missing run section
  CHECK_THROWS_AS(parse_config(R"({"model": {}})"), config_error);
  // missing master seed
  CHECK_THROWS_AS(parse_config(R"({"run": {"n": 100, "replicates": 10}})"),
                  config_error);
  // rho out of range
  CHECK_THROWS_AS(
      parse_config(
          R"({"selection": {"rho": 0.5}, "run": {"n": 10, "replicates": 5, "master_seed": 1}})"),
      config_error);
  // unknown generator name
  CHECK_THROWS_AS(
      parse_config(
          R"({"signal": {"generator": "wavelet"}, "run": {"n": 10, "replicates": 5, "master_seed": 1}})"),
      config_error);
  // panel without the pure-Gaussian member
  CHECK_THROWS_AS(
      parse_config(
          R"({"model": {"sigma_star": 1.0, "panel": [{"rho1": 0.5}]},
              "run": {"n": 10, "replicates": 5, "master_seed": 1}})"),
      config_error);
  // panel member over the variance budget
  CHECK_THROWS_AS(
      parse_config(
          R"({"model": {"sigma_star": 1.0,
                         "panel": [{"rho1": 1.0}, {"rho1": 1.0, "rho2": 1.0, "lambda": 2.0}]},
              "run": {"n": 10, "replicates": 5, "master_seed": 1}})"),
      config_error);
  CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), config_error);
}

TEST_CASE("defaults are filled in") {
  const ExperimentConfig cfg = parse_config(
      R"({"run": {"n": 500, "replicates": 10, "master_seed": 7}})");
  CHECK(cfg.sigma_star == 1.0);
  CHECK(cfg.panel.size() == 3);  // default panel
  CHECK(cfg.panel.front().label == "Q0");
  CHECK(cfg.l_n_rule.power == 2.0);
  CHECK(cfg.rho_for(500) == doctest::Approx(1.0 / (3.0 + std::log(500.0))));
  CHECK(cfg.workers == 1);
}

TEST_CASE("membership gate aborts runs with a report") {
  // the paper-default l_n = 1 + ln n fails inequality (iii) at n = 500
  const ExperimentConfig cfg = parse_config(R"({
    "model": {"sigma_star": 1.0, "l_n_rule": {"scale": 1.0, "power": 1.0}},
    "signal": {"generator": "finite-fourier", "coeffs": [0.5]},
    "run": {"n": 500, "replicates": 10, "master_seed": 1, "out_dir": "/tmp/nprsim_gate_test"}
  })");
  try {
    run_command(cfg, Command::kRisk);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("membership") != std::string::npos);
    CHECK(msg.find("family") != std::string::npos);
  }
}

TEST_CASE("risk command writes deterministic artifacts") {
  const fs::path base = fs::temp_directory_path() / "nprsim_test_runs";
  fs::remove_all(base);
  const fs::path out1 = base / "w1";
  const fs::path out2 = base / "w4";

  const ExperimentConfig cfg1 = parse_config(small_risk_config(out1.string(), 1));
  const ExperimentConfig cfg2 = parse_config(small_risk_config(out2.string(), 4));
  const RunOutcome r1 = run_command(cfg1, Command::kRisk);
  const RunOutcome r2 = run_command(cfg2, Command::kRisk);
  CHECK(r1.verdict_ok);
  CHECK(r2.verdict_ok);

  for (const char* name : {"risk_per_gamma.csv", "robust.csv"}) {
    const std::string a = read_file(out1 / name);
    const std::string b = read_file(out2 / name);
    CHECK(a == b);  // byte identical across worker counts
    CHECK(a.find("nan") == std::string::npos);
    CHECK(a.find("inf") == std::string::npos);
  }

  // pinned headers
  CHECK(read_file(out1 / "risk_per_gamma.csv").rfind("n,beta,t,mean,se,reps\n", 0) == 0);
  CHECK(read_file(out1 / "robust.csv").rfind("n,model,mean,se,reps,is_max\n", 0) == 0);
  CHECK(fs::exists(out1 / "summary.txt"));
  fs::remove_all(base);
}

TEST_CASE("lower-bound command emits the pinned schema") {
  const fs::path out = fs::temp_directory_path() / "nprsim_lb_out";
  fs::remove_all(out);
  std::ostringstream os;
  os << R"({
    "run": {"replicates": 10, "master_seed": 5, "out_dir": ")" << out.string()
     << R"("},
    "lowerbound": {"k": 1, "r": 1.0, "eps": 0.1, "eta": 0.05,
                    "n_list": [1e10, 1e12], "nn_rule": {"power": 2.0},
                    "max_gap": 0.05}
  })";
  const ExperimentConfig cfg = parse_config(os.str());
  const RunOutcome r = run_command(cfg, Command::kLowerBound);
  CHECK(r.verdict_ok);
  const std::string csv = read_file(out / "lowerbound.csv");
  CHECK(csv.rfind("n,bound,limit_form,target,gap\n", 0) == 0);
  CHECK(csv.find("nan") == std::string::npos);
  fs::remove_all(out);
}

TEST_CASE("command names round-trip") {
  for (const char* name : {"simulate", "select", "risk", "oracle-check",
                           "efficiency", "lower-bound"}) {
    const auto cmd = parse_command(name);
    REQUIRE(cmd.has_value());
    CHECK(std::string(command_name(*cmd)) == name);
  }
  CHECK_FALSE(parse_command("train").has_value());
}
