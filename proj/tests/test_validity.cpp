#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "impred/errors.hpp"
#include "impred/validity.hpp"

using namespace impred::validity;
using impred::assoc::Model;
using impred::assoc::PredictionTarget;
using impred::prs::AssertionKind;

namespace {

SimScenario normal_scenario() {
  SimScenario sc;
  sc.model = Model::normal;
  sc.params.mu = 3.0;
  sc.params.sigma = 2.0;
  sc.n = 10;
  sc.target = PredictionTarget::next();
  sc.assertion = AssertionKind::singleton;
  sc.alpha = 0.1;
  sc.replications = 400;
  sc.mc_draws_per_rep = 2000;
  sc.base_seed = 31;
  sc.cell_id = 1;
  return sc;
}

}  // namespace

TEST_CASE("ks_uniform at hand values") {
  CHECK(ks_uniform({0.5}) == 0.5);
  CHECK(std::fabs(ks_uniform({0.1, 0.9}) - 0.4) < 1e-15);
  CHECK(std::fabs(ks_uniform({0.125, 0.375, 0.625, 0.875}) - 0.125) < 1e-15);
  CHECK_THROWS_AS(ks_uniform({}), impred::domain_error);
}

TEST_CASE("the exact normal pivot yields uniform PITs") {
  SimScenario sc = normal_scenario();
  sc.replications = 800;
  ValidityReport rep = pit_study(sc);
  REQUIRE(rep.pit_samples.size() == 800);
  // 1.5x the 5% Kolmogorov band at 800 replications
  CHECK(rep.ks_statistic < 1.36 / std::sqrt(800.0) * 1.5);
  int outside = 0;
  for (double p : rep.pit_samples)
    if (!(p >= 0.0 && p <= 1.0)) ++outside;
  CHECK(outside == 0);
}

TEST_CASE("separable-model PIT uniformity at scale") {
  // log-normal with m=1 is the normal pivot on the log scale: exactly uniform
  SimScenario sc;
  sc.model = Model::lognormal;
  sc.params.mu = 2.173;
  sc.params.sigma = 1.5430;
  sc.n = 15;
  sc.target = PredictionTarget::mean_of(1);
  sc.alpha = 0.1;
  sc.replications = 5000;
  sc.mc_draws_per_rep = 2000;
  sc.base_seed = 77;
  sc.cell_id = 2;
  ValidityReport rep = pit_study(sc);
  CHECK(rep.ks_statistic < 1.36 / std::sqrt(5000.0) * 1.5);
}

TEST_CASE("coverage matches the nominal level for the exact pivot") {
  for (double alpha : {0.05, 0.1, 0.25}) {
    SimScenario sc = normal_scenario();
    sc.alpha = alpha;
    sc.assertion = AssertionKind::singleton;
    ValidityReport rep = coverage_study(sc);
    double se = std::sqrt(alpha * (1.0 - alpha) / sc.replications);
    CHECK(std::fabs(rep.coverage_estimate - (1.0 - alpha)) < 3.0 * se + 0.01);
    CHECK(rep.mc_standard_error > 0.0);
    CHECK(rep.replications == 400);
  }
}

TEST_CASE("one-sided regions also hold their level") {
  SimScenario sc = normal_scenario();
  sc.assertion = AssertionKind::right_sided;  // upper prediction limit
  sc.alpha = 0.1;
  ValidityReport rep = coverage_study(sc);
  CHECK(rep.coverage_estimate > 0.9 - 3.0 * std::sqrt(0.09 / 400.0) - 0.01);
}

TEST_CASE("lognormal mean-of-m PITs stay uniform") {
  SimScenario sc;
  sc.model = Model::lognormal;
  sc.params.mu = 2.173;
  sc.params.sigma = std::sqrt(2.3808);
  sc.n = 15;
  sc.target = PredictionTarget::mean_of(5);
  sc.alpha = 0.05;
  sc.replications = 300;
  sc.mc_draws_per_rep = 2000;
  sc.base_seed = 5;
  sc.cell_id = 3;
  ValidityReport rep = pit_study(sc);
  // 1% Kolmogorov critical value, as in the full-size study
  CHECK(rep.ks_statistic < 1.63 / std::sqrt(300.0));
}

TEST_CASE("gamma predictions cover at the approximate level") {
  SimScenario sc;
  sc.model = Model::gamma;
  sc.params.theta1 = 2.0;
  sc.params.theta2 = 1.0;
  sc.n = 25;
  sc.target = PredictionTarget::next();
  sc.assertion = AssertionKind::left_sided;  // lower prediction limit
  sc.alpha = 0.1;
  sc.replications = 200;
  sc.mc_draws_per_rep = 1000;
  sc.base_seed = 13;
  sc.cell_id = 4;
  ValidityReport rep = coverage_study(sc);
  CHECK(std::fabs(rep.coverage_estimate - 0.9) < 3.0 * std::sqrt(0.09 / 200.0) + 0.02);
}

TEST_CASE("binomial endpoint limits are conservative") {
  SimScenario sc;
  sc.model = Model::binomial;
  sc.params.theta = 0.3;
  sc.n = 50;
  sc.target = PredictionTarget::future_count(50);
  sc.assertion = AssertionKind::right_sided;  // 95% upper limit
  sc.alpha = 0.05;
  sc.replications = 200;
  sc.mc_draws_per_rep = 2000;
  sc.base_seed = 17;
  sc.cell_id = 5;
  sc.binom_method = BinomialMethod::endpoints;
  ValidityReport rep = coverage_study(sc);
  CHECK(rep.coverage_estimate >= 0.95 - 3.0 * std::sqrt(0.0475 / 200.0));
}

TEST_CASE("studies are reproducible and worker-count independent") {
  SimScenario sc = normal_scenario();
  sc.replications = 120;
  sc.mc_draws_per_rep = 500;
  ValidityReport serial = pit_study(sc, 1);
  ValidityReport par = pit_study(sc, 3);
  CHECK(par.pit_samples == serial.pit_samples);
  CHECK(par.ks_statistic == serial.ks_statistic);

  ValidityReport cov1 = coverage_study(sc, 1);
  ValidityReport cov4 = coverage_study(sc, 4);
  CHECK(cov1.coverage_estimate == cov4.coverage_estimate);

  ValidityReport again = pit_study(sc, 1);
  CHECK(again.pit_samples == serial.pit_samples);
}

TEST_CASE("scenario validation") {
  SimScenario sc = normal_scenario();
  sc.params.sigma = -1.0;
  CHECK_THROWS_AS(pit_study(sc), impred::domain_error);
  sc = normal_scenario();
  sc.alpha = 0.0;
  CHECK_THROWS_AS(coverage_study(sc), impred::domain_error);
  sc = normal_scenario();
  sc.model = Model::poisson_process;
  CHECK_THROWS_AS(pit_study(sc), impred::domain_error);
}

TEST_CASE("grid runner isolates failures and preserves per-cell results") {
  SimScenario good = normal_scenario();
  good.replications = 60;
  good.mc_draws_per_rep = 400;
  good.label = "good";
  SimScenario bad = good;
  bad.params.sigma = -1.0;
  bad.label = "bad";
  bad.cell_id = 9;
  SimScenario other = good;
  other.params.mu = -2.0;
  other.label = "other";
  other.cell_id = 10;

  auto cells = grid_runner({good, bad, other}, StudyKind::coverage);
  REQUIRE(cells.size() == 3);
  CHECK(cells[0].ok);
  CHECK_FALSE(cells[1].ok);
  CHECK(cells[1].error.find("sigma") != std::string::npos);
  CHECK(cells[2].ok);

  // a cell's result does not depend on its neighbors or position
  auto reordered = grid_runner({other, good}, StudyKind::coverage);
  CHECK(reordered[1].report.coverage_estimate == cells[0].report.coverage_estimate);
  CHECK(reordered[0].report.coverage_estimate == cells[2].report.coverage_estimate);

  // and equals a direct call
  ValidityReport direct = coverage_study(good);
  CHECK(cells[0].report.coverage_estimate == direct.coverage_estimate);

  CHECK(grid_runner({}, StudyKind::pit).empty());
}
