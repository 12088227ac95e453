#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "impred/assoc.hpp"
#include "impred/gamma_solver.hpp"
#include "impred/prs.hpp"

namespace impred::validity {

// Generating truth for a simulation cell; slots read per model.
struct TrueParams {
  double mu = 0.0, sigma = 1.0;        // normal / lognormal (log scale)
  double theta1 = 1.0, theta2 = 1.0;   // gamma shape / scale
  double theta = 0.5;                  // binomial success rate
};

enum class BinomialMethod { endpoints, modified };

struct SimScenario {
  assoc::Model model = assoc::Model::normal;
  TrueParams params{};
  int n = 10;                          // observed sample size / trials
  assoc::PredictionTarget target = assoc::PredictionTarget::next();
  prs::AssertionKind assertion = prs::AssertionKind::singleton;
  double alpha = 0.1;
  int replications = 1000;
  int mc_draws_per_rep = 10000;
  std::uint64_t base_seed = 0;
  std::uint64_t cell_id = 0;           // distinguishes cells sharing a seed
  BinomialMethod binom_method = BinomialMethod::modified;
  gamma_solver::GammaSolveConfig solver{};
  std::string label;
};

struct ValidityReport {
  std::vector<double> pit_samples;     // PIT study only
  double ks_statistic = 0.0;
  double coverage_estimate = 0.0;      // coverage study only
  double mc_standard_error = 0.0;
  int replications = 0;
};

// Sup-norm distance between the sample's ECDF and the uniform CDF on [0,1].
double ks_uniform(std::vector<double> sample);

// Simulates (data, future value) pairs from the truth, rebuilds the
// predictive ECDF from the data alone each time, and records G(Y~).
ValidityReport pit_study(const SimScenario& sc, int workers = 0);

// Same loop, but records whether the level-alpha region captured the future
// value; the standard error is the usual binomial one.
ValidityReport coverage_study(const SimScenario& sc, int workers = 0);

enum class StudyKind { pit, coverage };

struct GridCellResult {
  SimScenario scenario;
  StudyKind kind = StudyKind::coverage;
  ValidityReport report;
  bool ok = false;
  std::string error;
};

// Runs one study per scenario; a cell that throws is reported in place and
// never takes the rest of the grid down.
std::vector<GridCellResult> grid_runner(const std::vector<SimScenario>& scenarios,
                                        StudyKind kind, int workers = 0);

}  // namespace impred::validity
