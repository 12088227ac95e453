#include <doctest.h>

#include <cmath>
#include <vector>

#include "impred/errors.hpp"
#include "impred/prs.hpp"
#include "impred/random.hpp"
#include "support.hpp"

using namespace impred::prs;
using impred::UniformStream;

TEST_CASE("contours of the three set shapes at hand points") {
  CHECK(contour(SetShape::lower_interval, 0.3) == 0.7);
  CHECK(contour(SetShape::upper_interval, 0.3) == 0.3);
  CHECK(contour(SetShape::default_symmetric, 0.5) == 1.0);
  CHECK(std::fabs(contour(SetShape::default_symmetric, 0.3) - 0.6) < 1e-15);
  CHECK(std::fabs(contour(SetShape::default_symmetric, 0.9) - 0.2) < 1e-15);
  CHECK(contour(SetShape::lower_interval, 0.0) == 1.0);
  CHECK(contour(SetShape::upper_interval, 1.0) == 1.0);
  CHECK(contour(SetShape::default_symmetric, 0.0) == 0.0);
}

TEST_CASE("plausibility transforms of g") {
  CHECK(plausibility_from_g(0.3, AssertionKind::right_sided) == 0.7);
  CHECK(plausibility_from_g(0.3, AssertionKind::left_sided) == 0.3);
  CHECK(std::fabs(plausibility_from_g(0.3, AssertionKind::singleton) - 0.6) < 1e-15);
  CHECK(plausibility_from_g(0.5, AssertionKind::singleton) == 1.0);
  CHECK(plausibility_from_g(1.0, AssertionKind::right_sided) == 0.0);
  CHECK(plausibility_from_g(0.0, AssertionKind::left_sided) == 0.0);
}

TEST_CASE("each assertion's plausibility is its matching set's contour") {
  CHECK(matching_set(AssertionKind::right_sided) == SetShape::lower_interval);
  CHECK(matching_set(AssertionKind::left_sided) == SetShape::upper_interval);
  CHECK(matching_set(AssertionKind::singleton) == SetShape::default_symmetric);

  UniformStream s(55, 0);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    double g = s.next();
    for (auto kind :
         {AssertionKind::right_sided, AssertionKind::left_sided, AssertionKind::singleton}) {
      if (contour(matching_set(kind), g) != plausibility_from_g(g, kind)) ++bad;
    }
  }
  CHECK(bad == 0);
}

TEST_CASE("contour of a uniform seat is itself uniform") {
  // validity in one line: P(contour(S, W) <= alpha) = alpha for W ~ U(0,1)
  for (auto shape :
       {SetShape::lower_interval, SetShape::upper_interval, SetShape::default_symmetric}) {
    UniformStream s(56, static_cast<std::uint64_t>(shape));
    std::vector<double> c(100000);
    for (auto& v : c) v = contour(shape, s.next());
    CHECK(testsup::ks_uniform_oracle(std::move(c)) < 1.36 / std::sqrt(100000.0) * 1.5);
  }
}

TEST_CASE("arguments outside the unit interval are rejected") {
  CHECK_THROWS_AS(contour(SetShape::lower_interval, -0.1), impred::domain_error);
  CHECK_THROWS_AS(contour(SetShape::upper_interval, 1.1), impred::domain_error);
  CHECK_THROWS_AS(plausibility_from_g(-0.5, AssertionKind::singleton), impred::domain_error);
  CHECK_THROWS_AS(plausibility_from_g(std::nan(""), AssertionKind::right_sided),
                  impred::domain_error);
}
