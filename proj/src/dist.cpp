#include "impred/dist.hpp"

#include <cmath>
#include <string>

#include "impred/errors.hpp"
#include "impred/special.hpp"

namespace impred::dist {

using special::normal_cdf;
using special::normal_quantile;
using special::reg_beta;
using special::reg_beta_inverse;
using special::reg_gamma_p;
using special::reg_gamma_p_inverse;

DistSpec DistSpec::std_normal() { return {Family::std_normal, 0, 0, 0}; }
DistSpec DistSpec::student_t(double df) { return {Family::student_t, df, 0, 0}; }
DistSpec DistSpec::chi(double df) { return {Family::chi, df, 0, 0}; }
DistSpec DistSpec::gamma(double shape, double scale) { return {Family::gamma, shape, scale, 0}; }
DistSpec DistSpec::beta(double alpha, double beta) { return {Family::beta, alpha, beta, 0}; }
DistSpec DistSpec::binomial(int n, double theta) { return {Family::binomial, theta, 0, n}; }
DistSpec DistSpec::lognormal(double mu, double sigma) { return {Family::lognormal, mu, sigma, 0}; }

void DistSpec::validate() const {
  switch (family) {
    case Family::std_normal:
      return;
    case Family::student_t:
    case Family::chi:
      if (!(a > 0)) throw domain_error("df must be > 0");
      return;
    case Family::gamma:
      if (!(a > 0)) throw domain_error("gamma shape must be > 0");
      if (!(b > 0)) throw domain_error("gamma scale must be > 0");
      return;
    case Family::beta:
      if (!(a > 0 && b > 0)) throw domain_error("beta parameters must be > 0");
      return;
    case Family::binomial:
      if (trials < 1) throw domain_error("binomial trials must be >= 1");
      if (!(a >= 0 && a <= 1)) throw domain_error("binomial theta must be in [0,1]");
      return;
    case Family::lognormal:
      if (!(b > 0)) throw domain_error("lognormal sigma must be > 0");
      return;
  }
  throw domain_error("unknown family");
}

namespace {

double student_t_cdf(double df, double t) {
  if (t == 0) return 0.5;
  double x = df / (df + t * t);
  double tail = 0.5 * reg_beta(0.5 * df, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

double student_t_quantile(double df, double p) {
  if (p == 0.5) return 0.0;
  double pp = p < 0.5 ? p : 1.0 - p;
  double x = reg_beta_inverse(0.5 * df, 0.5, 2.0 * pp);
  double t = std::sqrt(df * (1.0 - x) / x);
  return p < 0.5 ? -t : t;
}

// Largest-first pmf summation anchored at the mode, where the pmf is at
// least 1/(n+1) and cannot underflow; recurrences walk out from there.
double binom_pmf_at(int n, double theta, int y) {
  return std::exp(binomial_log_pmf(n, theta, y));
}

int binom_mode(int n, double theta) {
  int m = static_cast<int>(std::floor((n + 1) * theta));
  if (m > n) m = n;
  return m;
}

// Sum pmf over [0, y]; all terms positive, added in decreasing order.
double binom_lower_sum(int n, double theta, int y) {
  double t = binom_pmf_at(n, theta, y);
  double sum = t;
  for (int k = y; k >= 1; --k) {
    t *= (k * (1.0 - theta)) / ((n - k + 1) * theta);
    sum += t;
    if (t < sum * 1e-17) break;
  }
  return sum;
}

// Sum pmf over [y, n].
double binom_upper_sum(int n, double theta, int y) {
  double t = binom_pmf_at(n, theta, y);
  double sum = t;
  for (int k = y; k < n; ++k) {
    t *= ((n - k) * theta) / ((k + 1) * (1.0 - theta));
    sum += t;
    if (t < sum * 1e-17) break;
  }
  return sum;
}

}  // namespace

double binomial_log_pmf(int n, double theta, int y) {
  if (y < 0 || y > n) throw domain_error("binomial_log_pmf: y outside support");
  if (theta == 0) return y == 0 ? 0.0 : -HUGE_VAL;
  if (theta == 1) return y == n ? 0.0 : -HUGE_VAL;
  return std::lgamma(n + 1.0) - std::lgamma(y + 1.0) - std::lgamma(n - y + 1.0) +
         y * std::log(theta) + (n - y) * std::log1p(-theta);
}

double binomial_cdf_direct(int n, double theta, int y) {
  if (y < 0) return 0.0;
  if (y >= n) return 1.0;
  if (theta == 0) return 1.0;
  if (theta == 1) return 0.0;
  int mode = binom_mode(n, theta);
  if (y < mode) return binom_lower_sum(n, theta, y);
  return 1.0 - binom_upper_sum(n, theta, y + 1);
}

double binomial_cdf_via_beta(int n, double theta, int y) {
  if (y < 0) return 0.0;
  if (y >= n) return 1.0;
  // F(y) = 1 - I_theta(y+1, n-y)
  return 1.0 - reg_beta(y + 1.0, static_cast<double>(n - y), theta);
}

namespace {

// Smallest y with F(y) >= p - 1e-12: cumulative walk out from the mode.
int binomial_quantile_int(int n, double theta, double p) {
  if (theta == 0) return 0;
  if (theta == 1) return n;
  const double slack = 1e-12;
  int mode = binom_mode(n, theta);
  double fm = binom_lower_sum(n, theta, mode);
  if (fm >= p - slack) {
    // Walk down while the CDF stays at or above p.
    int y = mode;
    double cum = fm;
    double pmf = binom_pmf_at(n, theta, mode);
    while (y > 0) {
      double below = cum - pmf;  // F(y-1)
      if (below < p - slack) return y;
      cum = below;
      pmf *= (y * (1.0 - theta)) / ((n - y + 1) * theta);
      --y;
    }
    return 0;
  }
  // Walk up until the CDF reaches p.
  int y = mode;
  double cum = fm;
  double pmf = binom_pmf_at(n, theta, mode);
  while (y < n) {
    ++y;
    pmf *= ((n - y + 1) * theta) / (y * (1.0 - theta));
    cum += pmf;
    if (cum >= p - slack) return y;
  }
  return n;
}

}  // namespace

double cdf(const DistSpec& d, double x) {
  d.validate();
  switch (d.family) {
    case Family::std_normal:
      return normal_cdf(x);
    case Family::student_t:
      return student_t_cdf(d.a, x);
    case Family::chi:
      if (x <= 0) return 0.0;
      return reg_gamma_p(0.5 * d.a, 0.5 * x * x);
    case Family::gamma:
      if (x <= 0) return 0.0;
      return reg_gamma_p(d.a, x / d.b);
    case Family::beta:
      return reg_beta(d.a, d.b, x);
    case Family::binomial:
      return binomial_cdf_direct(d.trials, d.a, static_cast<int>(std::floor(x)));
    case Family::lognormal:
      if (x <= 0) return 0.0;
      return normal_cdf((std::log(x) - d.a) / d.b);
  }
  throw domain_error("unknown family");
}

double quantile(const DistSpec& d, double p) {
  d.validate();
  if (!(p > 0 && p < 1)) throw domain_error("quantile: p must be in (0,1)");
  switch (d.family) {
    case Family::std_normal:
      return normal_quantile(p);
    case Family::student_t:
      return student_t_quantile(d.a, p);
    case Family::chi:
      return std::sqrt(2.0 * reg_gamma_p_inverse(0.5 * d.a, p));
    case Family::gamma:
      return d.b * reg_gamma_p_inverse(d.a, p);
    case Family::beta:
      return reg_beta_inverse(d.a, d.b, p);
    case Family::binomial:
      return binomial_quantile_int(d.trials, d.a, p);
    case Family::lognormal:
      return std::exp(d.a + d.b * normal_quantile(p));
  }
  throw domain_error("unknown family");
}

}  // namespace impred::dist
