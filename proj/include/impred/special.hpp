#pragma once

namespace impred::special {

double log_gamma(double x);  // log |Gamma(x)|, x > 0
double digamma(double x);    // d/dx log Gamma, x > 0
double trigamma(double x);   // d^2/dx^2 log Gamma, x > 0

double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);  // p in (0,1)

// Regularized incomplete gamma P(a,x) = gamma(a,x)/Gamma(a) and Q = 1 - P.
// Absolute error <= 1e-12 over a in (0, 1e6], x >= 0.
double reg_gamma_p(double a, double x);
double reg_gamma_q(double a, double x);
// Smallest x with P(a,x) = p; the quantile of Gamma(shape=a, scale=1).
double reg_gamma_p_inverse(double a, double p);

double log_beta(double a, double b);
// Regularized incomplete beta I_x(a,b), continued-fraction evaluation.
double reg_beta(double a, double b, double x);
// x with I_x(a,b) = p.
double reg_beta_inverse(double a, double b, double p);

}  // namespace impred::special
