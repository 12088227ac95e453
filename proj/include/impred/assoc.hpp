#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "impred/gamma_solver.hpp"
#include "impred/random.hpp"
#include "impred/region.hpp"

namespace impred::assoc {

enum class Model { normal, lognormal, gamma, binomial, poisson_process };

// Raw observed data, one payload per model kind.
struct SampleData {
  Model model = Model::normal;
  std::vector<double> values;              // continuous models
  int successes = 0, trials = 0;           // binomial
  double arrival_time = 0.0; int arrivals = 0;  // poisson process

  static SampleData continuous(Model m, std::vector<double> v);
  static SampleData binomial_counts(int successes, int trials);
  static SampleData poisson_arrivals(double arrival_time, int arrivals);
};

// What the data pin down: everything the samplers need, nothing else.
struct SufficientStats {
  Model model = Model::normal;
  int n = 0;
  double mean = 0.0, sd = 0.0;  // normal: data scale; lognormal: log scale
  double t1 = 0.0, t2 = 0.0;    // gamma: total, and mean(log) - log(mean) < 0
  int successes = 0, trials = 0;
  double arrival_time = 0.0;

  static SufficientStats from(const SampleData& data);
};

struct PredictionTarget {
  enum class Kind {
    next_observation,
    kth_largest_of_m,
    mean_of_m,
    max_of_m,
    future_count,  // binomial successes in m future trials
    arrival        // k-th future arrival of a rate process
  };
  Kind kind = Kind::next_observation;
  int m = 1;
  int k = 1;

  static PredictionTarget next() { return {Kind::next_observation, 1, 1}; }
  static PredictionTarget kth_largest_of(int m, int k) { return {Kind::kth_largest_of_m, m, k}; }
  static PredictionTarget mean_of(int m) { return {Kind::mean_of_m, m, 1}; }
  static PredictionTarget max_of(int m) { return {Kind::max_of_m, m, 1}; }
  static PredictionTarget future_count(int m) { return {Kind::future_count, m, 1}; }
  static PredictionTarget arrival(int k) { return {Kind::arrival, 1, k}; }
};

// Draws the future observable from its marginal association. Every draw
// consumes exactly uniforms_per_draw() stream variates, which is what lets a
// Monte Carlo run be strided across workers without changing its output.
class MarginalSampler {
 public:
  double draw(UniformStream& stream) const { return fn_(stream); }
  unsigned uniforms_per_draw() const { return per_draw_; }
  bool integer_valued() const { return integer_; }
  Model model() const { return model_; }
  const PredictionTarget& target() const { return target_; }

  static MarginalSampler custom(std::function<double(UniformStream&)> fn,
                                unsigned uniforms_per_draw, bool integer_valued);

 private:
  friend MarginalSampler normal_sampler(const SufficientStats&, const PredictionTarget&);
  friend MarginalSampler lognormal_sampler(const SufficientStats&, const PredictionTarget&);
  friend MarginalSampler gamma_sampler(const SufficientStats&, const PredictionTarget&,
                                       const gamma_solver::GammaSolveConfig&);
  friend MarginalSampler binomial_modified_sampler(int, int, int);
  MarginalSampler() = default;

  std::function<double(UniformStream&)> fn_;
  unsigned per_draw_ = 1;
  bool integer_ = false;
  Model model_ = Model::normal;
  PredictionTarget target_{};
};

// Next observation or k-th largest of m, from a normal sample of size >= 2.
MarginalSampler normal_sampler(const SufficientStats& stats, const PredictionTarget& target);

// Mean of m future values (next observation == mean of 1) on the data scale,
// from a log-normal sample; stats live on the log scale.
MarginalSampler lognormal_sampler(const SufficientStats& stats, const PredictionTarget& target);

// Next observation or max of m from a gamma sample; each draw solves the
// shape equation.
MarginalSampler gamma_sampler(const SufficientStats& stats, const PredictionTarget& target,
                              const gamma_solver::GammaSolveConfig& cfg = {});

// Count in m future trials at a point inside the drawn endpoint interval.
// Budget is 3 uniforms: endpoint position, interior position, count tail.
MarginalSampler binomial_modified_sampler(int successes, int trials, int future_trials);

// Paired lower/upper future-count draws sharing the endpoint and tail
// uniforms. Consumes the same 3 uniforms per draw as the modified sampler
// (the interior one is skipped) so the two line up stream-position for
// stream-position, with lower <= modified <= upper draw by draw.
class EndpointSampler {
 public:
  std::pair<double, double> draw(UniformStream& stream) const;
  unsigned uniforms_per_draw() const { return 3; }
  int future_trials() const { return m_; }

 private:
  friend EndpointSampler binomial_endpoint_sampler(int, int, int);
  int y_ = 0, n_ = 0, m_ = 0;
};

EndpointSampler binomial_endpoint_sampler(int successes, int trials, int future_trials);

// Exact Student-t interval for the next normal observation.
PredictionRegion normal_next_interval(const SufficientStats& stats, double alpha);

// Closed-form machinery for the k-th future arrival after n observed ones:
// the scaled gap R = (Y~ - t_n)/t_n is a ratio of independent Gamma(k) and
// Gamma(n) variates, so R/(1+R) ~ Beta(k, n) and the CDF is I_{r/(1+r)}(k, n).
double poisson_arrival_quantile(int n, int k, double w, double arrival_time);
double poisson_arrival_cdf(int n, int k, double y, double arrival_time);

}  // namespace impred::assoc
