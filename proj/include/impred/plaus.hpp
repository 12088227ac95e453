#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "impred/assoc.hpp"
#include "impred/prs.hpp"
#include "impred/random.hpp"
#include "impred/region.hpp"

namespace impred::plaus {

// Monte Carlo stand-in for the predictive distribution G: sorted draws plus
// the stream identity that produced them, so a result names its randomness.
struct EmpiricalG {
  std::vector<double> draws;  // ascending
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  bool integer_valued = false;

  std::size_t size() const { return draws.size(); }
};

// N draws starting at the base stream's position. Draws are index-strided
// (fixed uniform budget per draw), so the result is identical for any worker
// count. A failed draw propagates with its replicate index attached.
EmpiricalG build_empirical_g(const assoc::MarginalSampler& sampler, std::size_t n_draws,
                             const UniformStream& base, int workers = 0);

// Lower/upper future-count draws from the paired endpoint sampler; the two
// ECDFs are coupled draw for draw, and dominance survives the sorting.
std::pair<EmpiricalG, EmpiricalG> build_endpoint_pairs(const assoc::EndpointSampler& sampler,
                                                       std::size_t n_draws,
                                                       const UniformStream& base,
                                                       int workers = 0);

// Mid-rank ECDF: (#draws < y + 0.5 * #draws = y) / N.
double eval_g(const EmpiricalG& g, double y);

// Quantile of the draws: linear interpolation between order statistics for
// continuous draws, the pure order statistic ceil(p*N) for integer draws.
double draw_quantile(const EmpiricalG& g, double p);

struct PlausibilityCurve {
  prs::AssertionKind kind = prs::AssertionKind::singleton;
  std::vector<double> grid;
  std::vector<double> plausibility;
  std::size_t draws = 0;
};

// Evenly spaced grid over the draw range widened by 5% on each side.
std::vector<double> default_grid(const EmpiricalG& g, std::size_t points = 512);

PlausibilityCurve curve(const EmpiricalG& g, prs::AssertionKind kind,
                        const std::vector<double>& grid);

// {y : plausibility > alpha} read off the draw quantiles. Errors when the
// draw count cannot resolve alpha (N * alpha < 1).
PredictionRegion region(const EmpiricalG& g, prs::AssertionKind kind, double alpha);

// Region whose lower bound comes from the lower-endpoint draws and upper
// bound from the upper-endpoint draws.
PredictionRegion region_from_endpoint_pairs(const EmpiricalG& lower, const EmpiricalG& upper,
                                            prs::AssertionKind kind, double alpha);

}  // namespace impred::plaus
