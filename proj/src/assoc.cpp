#include "impred/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "impred/dist.hpp"
#include "impred/errors.hpp"
#include "impred/special.hpp"

namespace impred::assoc {

using special::normal_quantile;
using special::reg_beta_inverse;
using special::reg_gamma_p_inverse;

SampleData SampleData::continuous(Model m, std::vector<double> v) {
  if (m != Model::normal && m != Model::lognormal && m != Model::gamma)
    throw domain_error("SampleData::continuous: model does not take a value vector");
  SampleData d;
  d.model = m;
  d.values = std::move(v);
  return d;
}

SampleData SampleData::binomial_counts(int successes, int trials) {
  SampleData d;
  d.model = Model::binomial;
  d.successes = successes;
  d.trials = trials;
  return d;
}

SampleData SampleData::poisson_arrivals(double arrival_time, int arrivals) {
  SampleData d;
  d.model = Model::poisson_process;
  d.arrival_time = arrival_time;
  d.arrivals = arrivals;
  return d;
}

namespace {

std::pair<double, double> mean_sd(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return {mean, sd};
}

}  // namespace

SufficientStats SufficientStats::from(const SampleData& data) {
  SufficientStats s;
  s.model = data.model;
  switch (data.model) {
    case Model::normal: {
      if (data.values.size() < 2) throw domain_error("normal stats need at least 2 values");
      s.n = static_cast<int>(data.values.size());
      std::tie(s.mean, s.sd) = mean_sd(data.values);
      if (!(s.sd > 0)) throw domain_error("degenerate sample: zero variance");
      return s;
    }
    case Model::lognormal: {
      if (data.values.size() < 2) throw domain_error("lognormal stats need at least 2 values");
      std::vector<double> logs;
      logs.reserve(data.values.size());
      for (double x : data.values) {
        if (!(x > 0)) throw domain_error("lognormal data must be positive");
        logs.push_back(std::log(x));
      }
      s.n = static_cast<int>(logs.size());
      std::tie(s.mean, s.sd) = mean_sd(logs);
      if (!(s.sd > 0)) throw domain_error("degenerate sample: zero variance on the log scale");
      return s;
    }
    case Model::gamma: {
      if (data.values.size() < 2) throw domain_error("gamma stats need at least 2 values");
      s.n = static_cast<int>(data.values.size());
      double total = 0.0, logsum = 0.0;
      for (double x : data.values) {
        if (!(x > 0)) throw domain_error("gamma data must be positive");
        total += x;
        logsum += std::log(x);
      }
      s.t1 = total;
      s.t2 = logsum / s.n - std::log(total / s.n);
      // AM-GM: equality only when all values coincide, which pins no shape.
      if (!(s.t2 < 0)) throw domain_error("degenerate sample: all values equal");
      return s;
    }
    case Model::binomial: {
      if (data.trials < 1) throw domain_error("binomial trials must be >= 1");
      if (data.successes < 0 || data.successes > data.trials)
        throw domain_error("binomial successes outside [0, trials]");
      s.n = data.trials;
      s.successes = data.successes;
      s.trials = data.trials;
      return s;
    }
    case Model::poisson_process: {
      if (!(data.arrival_time > 0)) throw domain_error("arrival time must be positive");
      if (data.arrivals < 1) throw domain_error("need at least 1 observed arrival");
      s.n = data.arrivals;
      s.arrival_time = data.arrival_time;
      return s;
    }
  }
  throw domain_error("unknown model");
}

MarginalSampler MarginalSampler::custom(std::function<double(UniformStream&)> fn,
                                        unsigned uniforms_per_draw, bool integer_valued) {
  if (!fn) throw domain_error("custom sampler needs a draw function");
  if (uniforms_per_draw == 0) throw domain_error("uniforms_per_draw must be >= 1");
  MarginalSampler s;
  s.fn_ = std::move(fn);
  s.per_draw_ = uniforms_per_draw;
  s.integer_ = integer_valued;
  return s;
}

namespace {

// chi_(n-1)/sqrt(n-1) variate from one uniform; the pivot scale factor.
double scaled_chi(int n, double u) {
  double df = static_cast<double>(n - 1);
  return std::sqrt(2.0 * reg_gamma_p_inverse(0.5 * df, u) / df);
}

}  // namespace

MarginalSampler normal_sampler(const SufficientStats& stats, const PredictionTarget& target) {
  if (stats.model != Model::normal) throw domain_error("normal_sampler: stats are not normal");
  if (stats.n < 2) throw domain_error("normal_sampler: need n >= 2");
  bool kth = target.kind == PredictionTarget::Kind::kth_largest_of_m;
  if (target.kind != PredictionTarget::Kind::next_observation && !kth)
    throw domain_error("normal_sampler: target must be next observation or k-th largest of m");
  int m = kth ? target.m : 1;
  int k = kth ? target.k : 1;
  if (m < 1 || k < 1 || k > m) throw domain_error("normal_sampler: need 1 <= k <= m");

  int n = stats.n;
  double mean = stats.mean, sd = stats.sd;
  double root_n = std::sqrt(static_cast<double>(n));
  MarginalSampler s;
  s.model_ = Model::normal;
  s.target_ = kth ? target : PredictionTarget::next();
  s.per_draw_ = 2 + static_cast<unsigned>(m);
  s.integer_ = false;
  s.fn_ = [n, m, k, mean, sd, root_n](UniformStream& stream) {
    double u1 = normal_quantile(stream.next());
    double u2 = scaled_chi(n, stream.next());
    double ut;
    if (m == 1) {
      ut = normal_quantile(stream.next());
    } else {
      thread_local std::vector<double> buf;
      buf.clear();
      for (int j = 0; j < m; ++j) buf.push_back(normal_quantile(stream.next()));
      std::nth_element(buf.begin(), buf.begin() + (m - k), buf.end());
      ut = buf[m - k];  // k-th largest
    }
    return mean + sd * (ut - u1 / root_n) / u2;
  };
  return s;
}

MarginalSampler lognormal_sampler(const SufficientStats& stats, const PredictionTarget& target) {
  if (stats.model != Model::lognormal)
    throw domain_error("lognormal_sampler: stats are not lognormal");
  if (stats.n < 2) throw domain_error("lognormal_sampler: need n >= 2");
  int m;
  if (target.kind == PredictionTarget::Kind::next_observation)
    m = 1;
  else if (target.kind == PredictionTarget::Kind::mean_of_m)
    m = target.m;
  else
    throw domain_error("lognormal_sampler: target must be next observation or mean of m");
  if (m < 1) throw domain_error("lognormal_sampler: need m >= 1");

  int n = stats.n;
  double xbar = stats.mean, s_log = stats.sd;
  double root_n = std::sqrt(static_cast<double>(n));
  MarginalSampler s;
  s.model_ = Model::lognormal;
  s.target_ = PredictionTarget::mean_of(m);
  s.per_draw_ = 2 + static_cast<unsigned>(m);
  s.integer_ = false;
  s.fn_ = [n, m, xbar, s_log, root_n](UniformStream& stream) {
    double u1 = normal_quantile(stream.next());
    double u2 = scaled_chi(n, stream.next());
    double mu = xbar - (s_log / root_n) * (u1 / u2);
    double sigma = s_log / u2;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += std::exp(mu + sigma * normal_quantile(stream.next()));
    return acc / m;
  };
  return s;
}

MarginalSampler gamma_sampler(const SufficientStats& stats, const PredictionTarget& target,
                              const gamma_solver::GammaSolveConfig& cfg) {
  if (stats.model != Model::gamma) throw domain_error("gamma_sampler: stats are not gamma");
  if (stats.n < 2) throw domain_error("gamma_sampler: need n >= 2");
  int m;
  if (target.kind == PredictionTarget::Kind::next_observation)
    m = 1;
  else if (target.kind == PredictionTarget::Kind::max_of_m)
    m = target.m;
  else
    throw domain_error("gamma_sampler: target must be next observation or max of m");
  if (m < 1) throw domain_error("gamma_sampler: need m >= 1");

  int n = stats.n;
  double t1 = stats.t1, t2 = stats.t2;
  MarginalSampler s;
  s.model_ = Model::gamma;
  s.target_ = m == 1 ? PredictionTarget::next() : PredictionTarget::max_of(m);
  s.per_draw_ = 2 + static_cast<unsigned>(m);
  s.integer_ = false;
  s.fn_ = [n, m, t1, t2, cfg](UniformStream& stream) {
    double u1 = stream.next();
    double u2 = stream.next();
    double theta1 = gamma_solver::solve_theta1(t2, u2, n, cfg);
    double theta2 = gamma_solver::solve_theta2(t1, theta1, u1, n);
    double ut = stream.next();
    for (int j = 1; j < m; ++j) ut = std::max(ut, stream.next());
    return theta2 * reg_gamma_p_inverse(theta1, ut);
  };
  return s;
}

namespace {

// Shared endpoint construction: theta interval matched to the observed count
// through the binomial/beta tail identity.
void binomial_check_args(int y, int n, int m) {
  if (n < 1) throw domain_error("binomial sampler: trials must be >= 1");
  if (y < 0 || y > n) throw domain_error("binomial sampler: successes outside [0, trials]");
  if (m < 1) throw domain_error("binomial sampler: future trials must be >= 1");
}

std::pair<double, double> binomial_theta_endpoints(int y, int n, double u) {
  double lo = y == 0 ? 0.0 : reg_beta_inverse(y, n - y + 1.0, u);
  double hi = y == n ? 1.0 : reg_beta_inverse(y + 1.0, static_cast<double>(n - y), u);
  return {lo, hi};
}

}  // namespace

MarginalSampler binomial_modified_sampler(int successes, int trials, int future_trials) {
  binomial_check_args(successes, trials, future_trials);
  int y = successes, n = trials, m = future_trials;
  MarginalSampler s;
  s.model_ = Model::binomial;
  s.target_ = PredictionTarget::future_count(m);
  s.per_draw_ = 3;
  s.integer_ = true;
  s.fn_ = [y, n, m](UniformStream& stream) {
    double u = stream.next();
    double umid = stream.next();
    double utail = stream.next();
    auto [lo, hi] = binomial_theta_endpoints(y, n, u);
    double theta = lo + (hi - lo) * umid;
    return dist::quantile(dist::DistSpec::binomial(m, theta), 1.0 - utail);
  };
  return s;
}

std::pair<double, double> EndpointSampler::draw(UniformStream& stream) const {
  double u = stream.next();
  stream.next();  // interior position unused; keeps parity with the modified sampler
  double utail = stream.next();
  auto [lo, hi] = binomial_theta_endpoints(y_, n_, u);
  double p = 1.0 - utail;
  double lower = dist::quantile(dist::DistSpec::binomial(m_, lo), p);
  double upper = dist::quantile(dist::DistSpec::binomial(m_, hi), p);
  return {lower, upper};
}

EndpointSampler binomial_endpoint_sampler(int successes, int trials, int future_trials) {
  binomial_check_args(successes, trials, future_trials);
  EndpointSampler s;
  s.y_ = successes;
  s.n_ = trials;
  s.m_ = future_trials;
  return s;
}

PredictionRegion normal_next_interval(const SufficientStats& stats, double alpha) {
  if (stats.model != Model::normal) throw domain_error("normal_next_interval: stats are not normal");
  if (stats.n < 2) throw domain_error("normal_next_interval: need n >= 2");
  if (!(alpha > 0 && alpha < 1)) throw domain_error("normal_next_interval: alpha must be in (0,1)");
  double tq = dist::quantile(dist::DistSpec::student_t(stats.n - 1.0), 1.0 - 0.5 * alpha);
  double half = tq * stats.sd * std::sqrt(1.0 + 1.0 / stats.n);
  PredictionRegion r;
  r.kind = prs::AssertionKind::singleton;
  r.alpha = alpha;
  r.lower = stats.mean - half;
  r.upper = stats.mean + half;
  return r;
}

// The scaled gap R = (Y~ - t_n)/t_n is a ratio of independent Gamma(k) and
// Gamma(n) variates, so R/(1+R) ~ Beta(k, n); for k=1 the quantile reduces
// to the pure power form (1-w)^{-1/n} - 1.
double poisson_arrival_quantile(int n, int k, double w, double arrival_time) {
  if (n < 1 || k < 1) throw domain_error("poisson_arrival_quantile: need n >= 1, k >= 1");
  if (!(arrival_time > 0)) throw domain_error("poisson_arrival_quantile: arrival time must be positive");
  if (!(w >= 0 && w < 1)) throw domain_error("poisson_arrival_quantile: w must be in [0,1)");
  if (w == 0.0) return arrival_time;
  double x = special::reg_beta_inverse(static_cast<double>(k), static_cast<double>(n), w);
  if (x >= 1.0) throw numeric_error("poisson_arrival_quantile: quantile overflow near w = 1");
  return arrival_time * (1.0 + x / (1.0 - x));
}

double poisson_arrival_cdf(int n, int k, double y, double arrival_time) {
  if (n < 1 || k < 1) throw domain_error("poisson_arrival_cdf: need n >= 1, k >= 1");
  if (!(arrival_time > 0)) throw domain_error("poisson_arrival_cdf: arrival time must be positive");
  if (y <= arrival_time) return 0.0;
  double r = y / arrival_time - 1.0;
  return special::reg_beta(static_cast<double>(k), static_cast<double>(n), r / (1.0 + r));
}

}  // namespace impred::assoc
