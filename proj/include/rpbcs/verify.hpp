#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rpbcs/report.hpp"

namespace rpbcs {

/// Parameter point for a verification run.
struct SuiteParams {
  int d = 1;
  int L = 2;
  double kappa = 0.2;
  double g = 1.0;
  double gprime = 0.5;
  double B = 0.0;
  std::vector<double> betas{1.0};
  int R = 1;
  double epsilon = 0.25;
  double delta_e1 = 1.0;       // support bound fed to the spectral window
  double tolerance_scale = 1.0;
  int domination_draws = 200;
  int zeta_draws = 50;
  std::uint64_t seed = 12345;
  std::size_t dense_cap = 4096;
  std::size_t op_cap = 65536;
};

/// Suites: ALGEBRA, GAUGE, DOMINATION, CORRELATION, INFRARED, VARIATIONAL,
/// NGMODE, or ALL. Unknown names raise ConfigError. Checks whose geometry
/// cannot be realized on the requested lattice appear as explicit skipped
/// entries; results are sorted by check name and deterministic given the
/// seed.
VerificationReport run_suite(const std::string& suite, const SuiteParams& p);

std::vector<std::string> suite_names();

Json suite_params_to_json(const SuiteParams& p);

}  // namespace rpbcs
