#include "impred/plaus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "impred/errors.hpp"
#include "impred/parallel.hpp"

namespace impred::plaus {

namespace {

[[noreturn]] void rethrow_with_index(std::size_t i, const char* what) {
  throw numeric_error("draw " + std::to_string(i) + " failed: " + what);
}

}  // namespace

EmpiricalG build_empirical_g(const assoc::MarginalSampler& sampler, std::size_t n_draws,
                             const UniformStream& base, int workers) {
  if (n_draws < 1) throw domain_error("build_empirical_g: need at least 1 draw");
  EmpiricalG g;
  g.draws.resize(n_draws);
  g.seed = base.seed();
  g.stream_id = base.stream_id();
  g.integer_valued = sampler.integer_valued();
  const std::uint64_t pos0 = base.position();
  const std::uint64_t budget = sampler.uniforms_per_draw();
  parallel_for(
      n_draws,
      [&](std::size_t i) {
        UniformStream s = base.at(pos0 + i * budget);
        double v;
        try {
          v = sampler.draw(s);
        } catch (const std::exception& e) {
          rethrow_with_index(i, e.what());
        }
        if (!std::isfinite(v)) rethrow_with_index(i, "non-finite value");
        g.draws[i] = v;
      },
      workers);
  std::sort(g.draws.begin(), g.draws.end());
  return g;
}

std::pair<EmpiricalG, EmpiricalG> build_endpoint_pairs(const assoc::EndpointSampler& sampler,
                                                       std::size_t n_draws,
                                                       const UniformStream& base, int workers) {
  if (n_draws < 1) throw domain_error("build_endpoint_pairs: need at least 1 draw");
  EmpiricalG lo, hi;
  lo.draws.resize(n_draws);
  hi.draws.resize(n_draws);
  lo.seed = hi.seed = base.seed();
  lo.stream_id = hi.stream_id = base.stream_id();
  lo.integer_valued = hi.integer_valued = true;
  const std::uint64_t pos0 = base.position();
  const std::uint64_t budget = sampler.uniforms_per_draw();
  parallel_for(
      n_draws,
      [&](std::size_t i) {
        UniformStream s = base.at(pos0 + i * budget);
        std::pair<double, double> v;
        try {
          v = sampler.draw(s);
        } catch (const std::exception& e) {
          rethrow_with_index(i, e.what());
        }
        lo.draws[i] = v.first;
        hi.draws[i] = v.second;
      },
      workers);
  std::sort(lo.draws.begin(), lo.draws.end());
  std::sort(hi.draws.begin(), hi.draws.end());
  return {std::move(lo), std::move(hi)};
}

double eval_g(const EmpiricalG& g, double y) {
  if (g.draws.empty()) throw domain_error("eval_g: empty draw set");
  auto first = std::lower_bound(g.draws.begin(), g.draws.end(), y);
  auto past = std::upper_bound(first, g.draws.end(), y);
  double below = static_cast<double>(first - g.draws.begin());
  double ties = static_cast<double>(past - first);
  return (below + 0.5 * ties) / static_cast<double>(g.draws.size());
}

double draw_quantile(const EmpiricalG& g, double p) {
  if (g.draws.empty()) throw domain_error("draw_quantile: empty draw set");
  if (!(p > 0 && p < 1)) throw domain_error("draw_quantile: p must be in (0,1)");
  const std::size_t n = g.draws.size();
  if (g.integer_valued) {
    std::size_t k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(n)));
    if (k < 1) k = 1;
    if (k > n) k = n;
    return g.draws[k - 1];
  }
  double h = p * static_cast<double>(n - 1);
  std::size_t i = static_cast<std::size_t>(h);
  if (i + 1 >= n) return g.draws[n - 1];
  return g.draws[i] + (h - static_cast<double>(i)) * (g.draws[i + 1] - g.draws[i]);
}

std::vector<double> default_grid(const EmpiricalG& g, std::size_t points) {
  if (g.draws.empty()) throw domain_error("default_grid: empty draw set");
  if (points < 2) throw domain_error("default_grid: need at least 2 points");
  double lo = g.draws.front(), hi = g.draws.back();
  double range = hi - lo;
  if (range > 0) {
    lo -= 0.05 * range;
    hi += 0.05 * range;
  } else {
    lo -= 0.5;
    hi += 0.5;
  }
  std::vector<double> grid(points);
  double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = lo + step * static_cast<double>(i);
  grid.back() = hi;
  return grid;
}

PlausibilityCurve curve(const EmpiricalG& g, prs::AssertionKind kind,
                        const std::vector<double>& grid) {
  if (grid.empty()) throw domain_error("curve: empty grid");
  PlausibilityCurve c;
  c.kind = kind;
  c.grid = grid;
  c.draws = g.size();
  c.plausibility.reserve(grid.size());
  for (double y : grid) c.plausibility.push_back(prs::plausibility_from_g(eval_g(g, y), kind));
  return c;
}

namespace {

void check_alpha_resolvable(std::size_t n, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw domain_error("region: alpha must be in (0,1)");
  if (static_cast<double>(n) * alpha < 1.0)
    throw domain_error("region: " + std::to_string(n) + " draws cannot resolve alpha=" +
                       std::to_string(alpha) + " (need N*alpha >= 1)");
}

}  // namespace

PredictionRegion region(const EmpiricalG& g, prs::AssertionKind kind, double alpha) {
  check_alpha_resolvable(g.size(), alpha);
  PredictionRegion r;
  r.kind = kind;
  r.alpha = alpha;
  switch (kind) {
    case prs::AssertionKind::right_sided:
      r.upper = draw_quantile(g, 1.0 - alpha);
      break;
    case prs::AssertionKind::left_sided:
      r.lower = draw_quantile(g, alpha);
      break;
    case prs::AssertionKind::singleton:
      r.lower = draw_quantile(g, 0.5 * alpha);
      r.upper = draw_quantile(g, 1.0 - 0.5 * alpha);
      break;
  }
  return r;
}

PredictionRegion region_from_endpoint_pairs(const EmpiricalG& lower, const EmpiricalG& upper,
                                            prs::AssertionKind kind, double alpha) {
  if (lower.size() != upper.size() || lower.size() == 0)
    throw domain_error("region_from_endpoint_pairs: endpoint draw sets must match");
  check_alpha_resolvable(lower.size(), alpha);
  PredictionRegion r;
  r.kind = kind;
  r.alpha = alpha;
  switch (kind) {
    case prs::AssertionKind::right_sided:
      r.upper = draw_quantile(upper, 1.0 - alpha);
      break;
    case prs::AssertionKind::left_sided:
      r.lower = draw_quantile(lower, alpha);
      break;
    case prs::AssertionKind::singleton:
      r.lower = draw_quantile(lower, 0.5 * alpha);
      r.upper = draw_quantile(upper, 1.0 - 0.5 * alpha);
      break;
  }
  return r;
}

}  // namespace impred::plaus
