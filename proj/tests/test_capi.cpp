#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "nprsim.h"

namespace fs = std::filesystem;

TEST_CASE("version string") {
  const char* v = nprsim_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
}

TEST_CASE("stateless evaluators") {
  double out = 0.0;
  CHECK(nprsim_basis_eval(1, 0.3, &out) == NPRSIM_OK);
  CHECK(out == 1.0);
  CHECK(nprsim_basis_eval(0, 0.3, &out) == NPRSIM_ERR_CONFIG);

  CHECK(nprsim_sobolev_weight(2, 1, &out) == NPRSIM_OK);
  CHECK(out == doctest::Approx(40.4784176).epsilon(1e-8));

  CHECK(nprsim_pinsker_constant(1, 1.0, 1.0, &out) == NPRSIM_OK);
  CHECK(out == doctest::Approx(0.4235638).epsilon(1e-6));
  CHECK(nprsim_pinsker_constant(0, 1.0, 1.0, &out) == NPRSIM_ERR_CONFIG);

  CHECK(nprsim_oracle_coefficient(0.1, &out) == NPRSIM_OK);
  CHECK(out == doctest::Approx(1.82857142857).epsilon(1e-10));
  CHECK(nprsim_oracle_coefficient(0.4, &out) == NPRSIM_ERR_CONFIG);

  CHECK(nprsim_van_trees_bound(10.0, 1.0, 2.0, 2.0, &out) == NPRSIM_OK);
  CHECK(out == doctest::Approx(2.0 / 14.0).epsilon(1e-12));
}

TEST_CASE("experiment handle lifecycle and error paths") {
  nprsim_experiment* bad = nprsim_experiment_create("{ nope");
  REQUIRE(bad != nullptr);
  CHECK(nprsim_experiment_status(bad) == NPRSIM_ERR_CONFIG);
  CHECK(std::strlen(nprsim_experiment_error(bad)) > 0);
  // runs on a broken handle keep reporting the config failure
  CHECK(nprsim_experiment_run(bad, "risk") == NPRSIM_ERR_CONFIG);
  nprsim_experiment_destroy(bad);

  nprsim_experiment* missing = nprsim_experiment_create_from_file("/no/such/file.json");
  REQUIRE(missing != nullptr);
  CHECK(nprsim_experiment_status(missing) == NPRSIM_ERR_CONFIG);
  nprsim_experiment_destroy(missing);
}

TEST_CASE("experiment run through the C surface") {
  const fs::path out = fs::temp_directory_path() / "nprsim_capi_out";
  fs::remove_all(out);
  const std::string config = R"({
    "model": {"sigma_star": 1.0},
    "signal": {"generator": "finite-fourier", "coeffs": [0.4, 0.1]},
    "selection": {"rho": 0.1},
    "run": {"n": 80, "replicates": 30, "master_seed": 99, "out_dir": "unused"}
  })";
  nprsim_experiment* exp = nprsim_experiment_create(config.c_str());
  REQUIRE(exp != nullptr);
  REQUIRE(nprsim_experiment_status(exp) == NPRSIM_OK);
  CHECK(nprsim_experiment_set_out_dir(exp, out.string().c_str()) == NPRSIM_OK);
  CHECK(nprsim_experiment_set_workers(exp, 2) == NPRSIM_OK);
  CHECK(nprsim_experiment_set_seed(exp, 555) == NPRSIM_OK);

  CHECK(nprsim_experiment_run(exp, "bogus-command") == NPRSIM_ERR_CONFIG);

  const nprsim_status rc = nprsim_experiment_run(exp, "risk");
  CHECK(rc == NPRSIM_OK);
  const char* summary = nprsim_experiment_summary(exp);
  REQUIRE(summary != nullptr);
  CHECK(std::string(summary).find("command: risk") != std::string::npos);
  CHECK(fs::exists(out / "risk_per_gamma.csv"));
  CHECK(fs::exists(out / "summary.txt"));
  nprsim_experiment_destroy(exp);
  fs::remove_all(out);
}
