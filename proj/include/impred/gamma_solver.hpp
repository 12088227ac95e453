#pragma once

#include <cstdint>

#include "impred/random.hpp"

namespace impred::gamma_solver {

// How to evaluate the sampling distribution of T2 = mean(log y) - log(mean y)
// when solving for the shape theta1.
enum class Method { mc_bisection, normal_approx, gamma_matched_approx };

struct GammaSolveConfig {
  Method method = Method::gamma_matched_approx;
  // 0 means derive the bracket automatically around the anchor.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double rel_tol = 1e-8;
  int max_iter = 200;
  int mc_draws = 100000;          // per CDF evaluation, mc_bisection only
  std::uint64_t mc_seed = 0x6d63; // mc_bisection CDF evaluation streams
};

struct GammaSolution {
  double theta1 = 0.0;
  double theta2 = 0.0;
  int iterations = 0;
  Method method_used = Method::gamma_matched_approx;
};

// Root of digamma(x) - log(x) = t2; the shape a gamma sample with statistic
// t2 estimates. Requires t2 < 0; strictly increasing left side makes the
// root unique.
double mle_anchor(double t2);

// Closed-form approximations to F_x(t2) = P(T2 <= t2 | shape x, n obs):
// a normal fit or a moment-matched gamma fit on -T2. Decreasing in x.
double approx_cdf_t2(double x, double t2, int n, Method method);

// Monte Carlo estimate of F_x(t2) from simulated gamma samples of size n.
double mc_cdf_t2(double x, double t2, int n, int draws, UniformStream& stream);

// Solve F_x(t2) = u2 for the shape x.
double solve_theta1(double t2, double u2, int n, const GammaSolveConfig& cfg = {});

// Scale from the total: theta2 = t1 / Gamma^{-1}_{n*theta1}(u1), unit scale.
double solve_theta2(double t1, double theta1, double u1, int n);

GammaSolution solve(double t1, double t2, double u1, double u2, int n,
                    const GammaSolveConfig& cfg = {});

}  // namespace impred::gamma_solver
