#include "impred/gamma_solver.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "impred/errors.hpp"
#include "impred/special.hpp"

namespace impred::gamma_solver {

using special::digamma;
using special::normal_cdf;
using special::reg_gamma_p_inverse;
using special::reg_gamma_q;
using special::trigamma;

namespace {
constexpr double kPi = 3.141592653589793;

// h(x) = digamma(x) - log(x): strictly increasing on (0, inf), range (-inf, 0).
double anchor_gap(double x) { return digamma(x) - std::log(x); }
}  // namespace

double mle_anchor(double t2) {
  if (!(t2 < 0)) throw domain_error("mle_anchor: t2 must be negative");
  // Asymptotics give the two-sided start: h(x) ~ -1/(2x) for large x,
  // h(x) ~ -1/x for small x.
  double x = (t2 < -2.0) ? -1.0 / t2 : -1.0 / (2.0 * t2);
  double lo = 0.0, hi = HUGE_VAL;
  for (int it = 0; it < 100; ++it) {
    double f = anchor_gap(x) - t2;
    if (f > 0)
      hi = x;
    else
      lo = x;
    double deriv = trigamma(x) - 1.0 / x;  // > 0
    double xn = x - f / deriv;
    if (!(xn > lo && xn < hi))
      xn = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * x;
    if (std::fabs(xn - x) <= 1e-13 * x) return xn;
    x = xn;
  }
  return x;
}

double approx_cdf_t2(double x, double t2, int n, Method method) {
  if (!(x > 0)) throw domain_error("approx_cdf_t2: shape must be > 0");
  if (n < 2) throw domain_error("approx_cdf_t2: need n >= 2");
  if (t2 >= 0) return 1.0;  // T2 < 0 almost surely
  double m = anchor_gap(x);                        // mean of T2, < 0
  double v = (trigamma(x) - 1.0 / x) / n;          // variance of T2
  if (method == Method::normal_approx) return normal_cdf((t2 - m) / std::sqrt(v));
  // Moment-matched gamma on -T2: P(T2 <= t2) = P(-T2 >= -t2).
  double kappa = m * m / v;
  double scale = v / (-m);
  return reg_gamma_q(kappa, -t2 / scale);
}

double mc_cdf_t2(double x, double t2, int n, int draws, UniformStream& stream) {
  if (!(x > 0)) throw domain_error("mc_cdf_t2: shape must be > 0");
  if (n < 2 || draws < 1) throw domain_error("mc_cdf_t2: need n >= 2 and draws >= 1");
  // Marsaglia-Tsang gamma draws; shapes below 1 use the boosted shape and a
  // power-of-uniform correction.
  double a = x >= 1.0 ? x : x + 1.0;
  double d = a - 1.0 / 3.0, c = 1.0 / std::sqrt(9.0 * d);
  bool have_spare = false;
  double spare = 0.0;
  auto next_normal = [&]() {
    if (have_spare) {
      have_spare = false;
      return spare;
    }
    double r = std::sqrt(-2.0 * std::log(stream.next()));
    double th = 2.0 * kPi * stream.next();
    spare = r * std::sin(th);
    have_spare = true;
    return r * std::cos(th);
  };
  auto next_gamma = [&]() {
    for (;;) {
      double z = next_normal();
      double v = 1.0 + c * z;
      if (v <= 0) continue;
      v = v * v * v;
      double u = stream.next();
      if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) {
        double g = d * v;
        if (x < 1.0) g *= std::pow(stream.next(), 1.0 / x);
        return g;
      }
    }
  };
  long long count = 0;
  for (int r = 0; r < draws; ++r) {
    double sum = 0.0, sumlog = 0.0;
    for (int i = 0; i < n; ++i) {
      double g = next_gamma();
      sum += g;
      sumlog += std::log(g);
    }
    double t = sumlog / n - std::log(sum / n);
    if (t <= t2) ++count;
  }
  return static_cast<double>(count) / draws;
}

namespace {

std::string solve_diag(double t2, double u2, int n, double lo, double hi) {
  std::ostringstream os;
  os << " (t2=" << t2 << ", u2=" << u2 << ", n=" << n << ", bracket=[" << lo << "," << hi
     << "])";
  return os.str();
}

}  // namespace

double solve_theta1(double t2, double u2, int n, const GammaSolveConfig& cfg) {
  if (!(t2 < 0)) throw domain_error("solve_theta1: t2 must be negative");
  if (!(u2 > 0 && u2 < 1)) throw domain_error("solve_theta1: u2 must be in (0,1)");
  if (n < 2) throw domain_error("solve_theta1: need n >= 2");

  long long eval_id = 0;
  auto cdf = [&](double x) {
    if (cfg.method == Method::mc_bisection) {
      UniformStream s(cfg.mc_seed, hash_combine(0x7431u, static_cast<std::uint64_t>(eval_id++)));
      return mc_cdf_t2(x, t2, n, cfg.mc_draws, s);
    }
    return approx_cdf_t2(x, t2, n, cfg.method);
  };

  // F is decreasing in x: bracket so that F(lo) >= u2 >= F(hi).
  double anchor = mle_anchor(t2);
  double lo = cfg.bracket_lo > 0 ? cfg.bracket_lo : 0.5 * anchor;
  double hi = cfg.bracket_hi > lo ? cfg.bracket_hi : 2.0 * anchor;
  double flo = cdf(lo), fhi = cdf(hi);
  int expand = 0;
  while (flo < u2) {
    hi = lo;
    fhi = flo;
    lo *= 0.5;
    flo = cdf(lo);
    if (++expand > 1100 || lo < 1e-300)
      throw numeric_error("solve_theta1: bracket expansion failed toward zero" +
                          solve_diag(t2, u2, n, lo, hi));
  }
  while (fhi > u2) {
    lo = hi;
    flo = fhi;
    hi *= 2.0;
    fhi = cdf(hi);
    if (++expand > 1100 || hi > 1e300)
      throw numeric_error("solve_theta1: bracket expansion failed toward infinity" +
                          solve_diag(t2, u2, n, lo, hi));
  }

  if (cfg.method == Method::mc_bisection) {
    // Noisy evaluations: plain bisection on the sign only.
    int it = 0;
    while (it < cfg.max_iter) {
      double mid = 0.5 * (lo + hi);
      if (hi - lo <= cfg.rel_tol * mid) return mid;
      double f = cdf(mid);
      if (f >= u2)
        lo = mid;
      else
        hi = mid;
      ++it;
    }
    return 0.5 * (lo + hi);
  }

  // Illinois regula falsi on g(x) = F(x) - u2 with g(lo) >= 0 >= g(hi).
  double glo = flo - u2, ghi = fhi - u2;
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  int side = 0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    double x = (lo * ghi - hi * glo) / (ghi - glo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double g = cdf(x) - u2;
    if (g == 0) return x;
    if (g > 0) {
      lo = x;
      glo = g;
      if (side == 1) ghi *= 0.5;
      side = 1;
    } else {
      hi = x;
      ghi = g;
      if (side == -1) glo *= 0.5;
      side = -1;
    }
    if (hi - lo <= cfg.rel_tol * std::max(lo, 1e-300)) return 0.5 * (lo + hi);
  }
  throw numeric_error("solve_theta1: no convergence after max_iter iterations" +
                      solve_diag(t2, u2, n, lo, hi));
}

double solve_theta2(double t1, double theta1, double u1, int n) {
  if (!(t1 > 0)) throw domain_error("solve_theta2: t1 must be positive");
  if (!(theta1 > 0)) throw domain_error("solve_theta2: theta1 must be positive");
  if (!(u1 > 0 && u1 < 1)) throw domain_error("solve_theta2: u1 must be in (0,1)");
  if (n < 1) throw domain_error("solve_theta2: need n >= 1");
  double q = reg_gamma_p_inverse(static_cast<double>(n) * theta1, u1);
  if (!(q > 0) || !std::isfinite(q)) {
    std::ostringstream os;
    os << "solve_theta2: gamma quantile underflow (shape=" << n * theta1 << ", u1=" << u1
       << ")";
    throw numeric_error(os.str());
  }
  return t1 / q;
}

GammaSolution solve(double t1, double t2, double u1, double u2, int n,
                    const GammaSolveConfig& cfg) {
  GammaSolution out;
  out.method_used = cfg.method;
  out.theta1 = solve_theta1(t2, u2, n, cfg);
  out.theta2 = solve_theta2(t1, out.theta1, u1, n);
  return out;
}

}  // namespace impred::gamma_solver
