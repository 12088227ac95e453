#pragma once

#include <utility>

namespace impred::dist {

enum class Family { std_normal, student_t, chi, gamma, beta, binomial, lognormal };

// One-stop parameter pack; the factory functions say which slot means what.
struct DistSpec {
  Family family = Family::std_normal;
  double a = 0.0;   // df / shape / alpha / theta / mu
  double b = 0.0;   // scale / beta / sigma
  int trials = 0;   // binomial n

  static DistSpec std_normal();
  static DistSpec student_t(double df);
  static DistSpec chi(double df);
  static DistSpec gamma(double shape, double scale);
  static DistSpec beta(double alpha, double beta);
  static DistSpec binomial(int n, double theta);
  static DistSpec lognormal(double mu, double sigma);

  void validate() const;  // throws domain_error on a bad parameter
};

// CDF extended over the whole real line (0 left of support, 1 right of it);
// binomial evaluates at floor(x).
double cdf(const DistSpec& d, double x);

// Inverse CDF for p in (0,1); discrete families return the smallest support
// point y with F(y) >= p (up to a 1e-12 comparison slack).
double quantile(const DistSpec& d, double p);

// Inverse-CDF draw from a uniform variate.
inline double sample(const DistSpec& d, double u) { return quantile(d, u); }

// Binomial CDF along both routes: direct mode-anchored pmf summation and the
// complementary regularized-incomplete-beta identity. The two are
// independently coded so they can check each other.
double binomial_cdf_direct(int n, double theta, int y);
double binomial_cdf_via_beta(int n, double theta, int y);

double binomial_log_pmf(int n, double theta, int y);

}  // namespace impred::dist
