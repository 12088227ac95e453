#pragma once

#include <cmath>

#include "impred/errors.hpp"

namespace impred::prs {

// Kind of assertion about the future value: {Y~ <= y}, {Y~ >= y}, {Y~ = y}.
enum class AssertionKind { right_sided, left_sided, singleton };

// Random subsets of (0,1) used to predict the pivotal uniform W.
enum class SetShape { lower_interval, upper_interval, default_symmetric };

// Contour of the random set at w: the probability that S(W') covers w.
inline double contour(SetShape shape, double w) {
  if (!(w >= 0.0 && w <= 1.0)) throw domain_error("contour: w must be in [0,1]");
  switch (shape) {
    case SetShape::lower_interval:     // S = [0, W]
      return 1.0 - w;
    case SetShape::upper_interval:     // S = [W, 1]
      return w;
    case SetShape::default_symmetric:  // S = [min(W,1-W), max(W,1-W)]
      return 1.0 - std::fabs(2.0 * w - 1.0);
  }
  throw domain_error("contour: unknown set shape");
}

// Plausibility of an assertion anchored at y, given g = G_Y(y).
inline double plausibility_from_g(double g, AssertionKind kind) {
  if (!(g >= 0.0 && g <= 1.0)) throw domain_error("plausibility_from_g: g must be in [0,1]");
  switch (kind) {
    case AssertionKind::right_sided:
      return 1.0 - g;
    case AssertionKind::left_sided:
      return g;
    case AssertionKind::singleton:
      return 1.0 - std::fabs(2.0 * g - 1.0);
  }
  throw domain_error("plausibility_from_g: unknown assertion kind");
}

// The set shape whose contour realizes each assertion's plausibility.
inline SetShape matching_set(AssertionKind kind) {
  switch (kind) {
    case AssertionKind::right_sided:
      return SetShape::lower_interval;
    case AssertionKind::left_sided:
      return SetShape::upper_interval;
    case AssertionKind::singleton:
      return SetShape::default_symmetric;
  }
  throw domain_error("matching_set: unknown assertion kind");
}

}  // namespace impred::prs
