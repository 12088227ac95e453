#pragma once

// Shared oracle machinery for the test suite: an adaptive Simpson
// integrator and a Kolmogorov-Smirnov distance, both independent of the
// library code they check.

#include <algorithm>
#include <cmath>
#include <vector>

namespace testsup {

template <class F>
double simpson_branch(const F& f, double a, double b, double fa, double fm, double fb,
                      double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return simpson_branch(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         simpson_branch(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

// Adaptive Simpson on [a, b]; eps is an absolute error target.
template <class F>
double integrate(const F& f, double a, double b, double eps = 1e-13) {
  const double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_branch(f, a, b, fa, fm, fb, whole, eps, 60);
}

// Sup distance between the ECDF of `u` and the uniform CDF on [0,1].
inline double ks_uniform_oracle(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - u[i]);
    d = std::max(d, u[i] - static_cast<double>(i) / n);
  }
  return d;
}

}  // namespace testsup
