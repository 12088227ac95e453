#pragma once

#include <limits>

#include "impred/prs.hpp"

namespace impred {

// Prediction region {y : plausibility(y) > alpha}. One-sided regions carry
// an infinite endpoint on the open side.
struct PredictionRegion {
  prs::AssertionKind kind = prs::AssertionKind::singleton;
  double alpha = 0.0;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  bool contains(double y) const { return y >= lower && y <= upper; }
  double width() const { return upper - lower; }
};

}  // namespace impred
