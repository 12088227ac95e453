#include "impred/validity.hpp"

#include <algorithm>
#include <cmath>

#include "impred/dist.hpp"
#include "impred/errors.hpp"
#include "impred/parallel.hpp"
#include "impred/plaus.hpp"
#include "impred/special.hpp"

namespace impred::validity {

using assoc::Model;
using assoc::PredictionTarget;

namespace {

constexpr std::uint64_t kSimPurpose = 0;
constexpr std::uint64_t kMcPurpose = 1;

std::uint64_t rep_stream_id(const SimScenario& sc, int rep, std::uint64_t purpose) {
  return hash_combine(hash_combine(sc.cell_id, static_cast<std::uint64_t>(rep)), purpose);
}

void validate_scenario(const SimScenario& sc) {
  if (sc.replications < 1) throw domain_error("scenario: replications must be >= 1");
  if (sc.mc_draws_per_rep < 1) throw domain_error("scenario: draws per replication must be >= 1");
  if (!(sc.alpha > 0 && sc.alpha < 1)) throw domain_error("scenario: alpha must be in (0,1)");
  switch (sc.model) {
    case Model::normal:
    case Model::lognormal:
      if (sc.n < 2) throw domain_error("scenario: need n >= 2");
      if (!(sc.params.sigma > 0)) throw domain_error("scenario: sigma must be positive");
      return;
    case Model::gamma:
      if (sc.n < 2) throw domain_error("scenario: need n >= 2");
      if (!(sc.params.theta1 > 0 && sc.params.theta2 > 0))
        throw domain_error("scenario: gamma parameters must be positive");
      return;
    case Model::binomial:
      if (sc.n < 1) throw domain_error("scenario: need at least 1 trial");
      if (!(sc.params.theta >= 0 && sc.params.theta <= 1))
        throw domain_error("scenario: theta must be in [0,1]");
      return;
    case Model::poisson_process:
      throw domain_error("scenario: arrival predictions are closed-form; nothing to simulate");
  }
  throw domain_error("scenario: unknown model");
}

double draw_true_value(const SimScenario& sc, UniformStream& s) {
  const TrueParams& p = sc.params;
  switch (sc.model) {
    case Model::normal:
      return p.mu + p.sigma * special::normal_quantile(s.next());
    case Model::lognormal:
      return std::exp(p.mu + p.sigma * special::normal_quantile(s.next()));
    case Model::gamma:
      return p.theta2 * special::reg_gamma_p_inverse(p.theta1, s.next());
    default:
      throw domain_error("draw_true_value: not a continuous model");
  }
}

// The future observable under the truth, honoring the prediction target.
double draw_true_future(const SimScenario& sc, UniformStream& s) {
  const PredictionTarget& t = sc.target;
  switch (t.kind) {
    case PredictionTarget::Kind::next_observation:
      return draw_true_value(sc, s);
    case PredictionTarget::Kind::kth_largest_of_m: {
      std::vector<double> buf(t.m);
      for (int j = 0; j < t.m; ++j) buf[j] = draw_true_value(sc, s);
      std::nth_element(buf.begin(), buf.begin() + (t.m - t.k), buf.end());
      return buf[t.m - t.k];
    }
    case PredictionTarget::Kind::mean_of_m: {
      double acc = 0.0;
      for (int j = 0; j < t.m; ++j) acc += draw_true_value(sc, s);
      return acc / t.m;
    }
    case PredictionTarget::Kind::max_of_m: {
      double best = draw_true_value(sc, s);
      for (int j = 1; j < t.m; ++j) best = std::max(best, draw_true_value(sc, s));
      return best;
    }
    case PredictionTarget::Kind::future_count:
      return dist::sample(dist::DistSpec::binomial(t.m, sc.params.theta), s.next());
    case PredictionTarget::Kind::arrival:
      throw domain_error("draw_true_future: arrival targets are closed-form");
  }
  throw domain_error("draw_true_future: unknown target");
}

// One replication's observed data -> marginal sampler.
assoc::MarginalSampler rep_sampler(const SimScenario& sc, UniformStream& sim) {
  if (sc.model == Model::binomial) {
    int y = static_cast<int>(dist::sample(dist::DistSpec::binomial(sc.n, sc.params.theta), sim.next()));
    return assoc::binomial_modified_sampler(y, sc.n, sc.target.m);
  }
  std::vector<double> values(sc.n);
  for (int i = 0; i < sc.n; ++i) values[i] = draw_true_value(sc, sim);
  auto stats = assoc::SufficientStats::from(assoc::SampleData::continuous(sc.model, std::move(values)));
  switch (sc.model) {
    case Model::normal:
      return assoc::normal_sampler(stats, sc.target);
    case Model::lognormal:
      return assoc::lognormal_sampler(stats, sc.target);
    case Model::gamma:
      return assoc::gamma_sampler(stats, sc.target, sc.solver);
    default:
      throw domain_error("rep_sampler: unsupported model");
  }
}

}  // namespace

double ks_uniform(std::vector<double> sample) {
  if (sample.empty()) throw domain_error("ks_uniform: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double hi = (static_cast<double>(i) + 1.0) / n - sample[i];
    double lo = sample[i] - static_cast<double>(i) / n;
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

ValidityReport pit_study(const SimScenario& sc, int workers) {
  validate_scenario(sc);
  ValidityReport rep;
  rep.replications = sc.replications;
  rep.pit_samples.resize(sc.replications);
  parallel_for(
      static_cast<std::size_t>(sc.replications),
      [&](std::size_t r) {
        UniformStream sim(sc.base_seed, rep_stream_id(sc, static_cast<int>(r), kSimPurpose));
        auto sampler = rep_sampler(sc, sim);
        double future = draw_true_future(sc, sim);
        UniformStream mc(sc.base_seed, rep_stream_id(sc, static_cast<int>(r), kMcPurpose));
        auto g = plaus::build_empirical_g(sampler, sc.mc_draws_per_rep, mc, 1);
        rep.pit_samples[r] = plaus::eval_g(g, future);
      },
      workers);
  rep.ks_statistic = ks_uniform(rep.pit_samples);
  return rep;
}

ValidityReport coverage_study(const SimScenario& sc, int workers) {
  validate_scenario(sc);
  std::vector<unsigned char> covered(sc.replications, 0);
  parallel_for(
      static_cast<std::size_t>(sc.replications),
      [&](std::size_t r) {
        UniformStream sim(sc.base_seed, rep_stream_id(sc, static_cast<int>(r), kSimPurpose));
        UniformStream mc(sc.base_seed, rep_stream_id(sc, static_cast<int>(r), kMcPurpose));
        PredictionRegion region;
        if (sc.model == Model::binomial && sc.binom_method == BinomialMethod::endpoints) {
          int y = static_cast<int>(
              dist::sample(dist::DistSpec::binomial(sc.n, sc.params.theta), sim.next()));
          auto sampler = assoc::binomial_endpoint_sampler(y, sc.n, sc.target.m);
          auto [glo, ghi] = plaus::build_endpoint_pairs(sampler, sc.mc_draws_per_rep, mc, 1);
          region = plaus::region_from_endpoint_pairs(glo, ghi, sc.assertion, sc.alpha);
        } else {
          auto sampler = rep_sampler(sc, sim);
          auto g = plaus::build_empirical_g(sampler, sc.mc_draws_per_rep, mc, 1);
          region = plaus::region(g, sc.assertion, sc.alpha);
        }
        double future = draw_true_future(sc, sim);
        covered[r] = region.contains(future) ? 1 : 0;
      },
      workers);
  long long hits = 0;
  for (unsigned char c : covered) hits += c;
  ValidityReport rep;
  rep.replications = sc.replications;
  rep.coverage_estimate = static_cast<double>(hits) / sc.replications;
  rep.mc_standard_error =
      std::sqrt(rep.coverage_estimate * (1.0 - rep.coverage_estimate) / sc.replications);
  return rep;
}

std::vector<GridCellResult> grid_runner(const std::vector<SimScenario>& scenarios,
                                        StudyKind kind, int workers) {
  std::vector<GridCellResult> out(scenarios.size());
  for (std::size_t c = 0; c < scenarios.size(); ++c) {
    out[c].scenario = scenarios[c];
    out[c].kind = kind;
    try {
      out[c].report = kind == StudyKind::pit ? pit_study(scenarios[c], workers)
                                             : coverage_study(scenarios[c], workers);
      out[c].ok = true;
    } catch (const std::exception& e) {
      out[c].ok = false;
      out[c].error = e.what();
    }
  }
  return out;
}

}  // namespace impred::validity
