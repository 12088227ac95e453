#include <doctest.h>

#include <cmath>
#include <vector>

#include "impred/dist.hpp"
#include "impred/errors.hpp"
#include "impred/random.hpp"
#include "support.hpp"

using namespace impred::dist;
using impred::UniformStream;

TEST_CASE("parameter validation rejects bad specs") {
  CHECK_THROWS_AS(DistSpec::student_t(0.0).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::chi(-3.0).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::gamma(-1.0, 1.0).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::gamma(1.0, 0.0).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::beta(0.0, 1.0).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::binomial(0, 0.5).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::binomial(5, -0.1).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::binomial(5, 1.2).validate(), impred::domain_error);
  CHECK_THROWS_AS(DistSpec::lognormal(0.0, -1.0).validate(), impred::domain_error);
  CHECK_NOTHROW(DistSpec::binomial(5, 0.0).validate());
  CHECK_NOTHROW(DistSpec::binomial(5, 1.0).validate());
  CHECK_THROWS_AS(quantile(DistSpec::std_normal(), 0.0), impred::domain_error);
  CHECK_THROWS_AS(quantile(DistSpec::std_normal(), 1.0), impred::domain_error);
}

TEST_CASE("student t reference quantiles") {
  auto q = [](double df, double p) { return quantile(DistSpec::student_t(df), p); };
  CHECK(std::fabs(q(3, 0.975) - 3.1824463052837096) < 1e-10 * 3.19);
  CHECK(std::fabs(q(3, 0.95) - 2.3533634348018239) < 1e-10 * 2.36);
  CHECK(std::fabs(q(14, 0.95) - 1.7613101357748921) < 1e-10 * 1.77);
  CHECK(std::fabs(q(14, 0.975) - 2.1447866879178038) < 1e-10 * 2.15);
  CHECK(std::fabs(q(19, 0.9) - 1.3277282090267984) < 1e-10 * 1.33);
  CHECK(std::fabs(q(1, 0.9) - 3.0776835371752534) < 1e-10 * 3.08);
  CHECK(std::fabs(q(2, 0.99) - 6.964556734283274) < 1e-10 * 6.97);
  CHECK(q(7, 0.5) == 0.0);
}

TEST_CASE("student t cdf symmetry and the Cauchy special case") {
  DistSpec t6 = DistSpec::student_t(6.0);
  int bad = 0;
  for (double x : {0.1, 0.77, 1.5, 2.9, 8.0})
    if (std::fabs(cdf(t6, x) + cdf(t6, -x) - 1.0) > 1e-13) ++bad;
  CHECK(bad == 0);
  DistSpec cauchy = DistSpec::student_t(1.0);
  for (double x : {-3.0, -0.5, 0.0, 1.7, 10.0}) {
    double ref = 0.5 + std::atan(x) / 3.14159265358979323846;
    CHECK(std::fabs(cdf(cauchy, x) - ref) < 1e-12);
  }
}

TEST_CASE("chi family against the normal") {
  DistSpec c1 = DistSpec::chi(1.0);
  // |Z| for standard normal Z: F(x) = 2*Phi(x) - 1
  for (double x : {0.2, 1.0, 2.5}) {
    double phi = 0.5 * std::erfc(-x / std::sqrt(2.0));
    CHECK(std::fabs(cdf(c1, x) - (2.0 * phi - 1.0)) < 1e-12);
  }
  CHECK(cdf(c1, -1.0) == 0.0);
}

TEST_CASE("hand-checkable continuous cdf values") {
  CHECK(std::fabs(cdf(DistSpec::gamma(1.0, 1.0), 1.0) - (1.0 - std::exp(-1.0))) < 1e-13);
  CHECK(std::fabs(cdf(DistSpec::beta(1.0, 1.0), 0.3) - 0.3) < 1e-14);
  CHECK(std::fabs(quantile(DistSpec::beta(1.0, 1.0), 0.42) - 0.42) < 1e-12);
  CHECK(std::fabs(cdf(DistSpec::lognormal(0.4, 1.2), std::exp(0.4)) - 0.5) < 1e-13);
  double q975 = quantile(DistSpec::lognormal(0.4, 1.2), 0.975);
  CHECK(std::fabs(q975 - std::exp(0.4 + 1.2 * 1.959963984540054)) < 1e-9 * q975);
}

TEST_CASE("cdf-quantile roundtrip across continuous families") {
  std::vector<DistSpec> specs = {DistSpec::std_normal(),     DistSpec::student_t(5.0),
                                 DistSpec::chi(3.0),         DistSpec::gamma(2.5, 1.7),
                                 DistSpec::beta(2.0, 5.0),   DistSpec::lognormal(0.4, 1.2)};
  int bad = 0;
  for (const auto& d : specs)
    for (double p = 0.001; p < 0.9995; p += 0.007)
      if (std::fabs(cdf(d, quantile(d, p)) - p) > 1e-8) ++bad;
  CHECK(bad == 0);
}

TEST_CASE("binomial cdf reference values along both routes") {
  // F(3; 10, 0.2) = 0.8791261184 exactly (rational arithmetic)
  CHECK(std::fabs(binomial_cdf_direct(10, 0.2, 3) - 0.87912611839999999) < 1e-13);
  CHECK(std::fabs(binomial_cdf_via_beta(10, 0.2, 3) - 0.87912611839999999) < 1e-12);
  CHECK(std::fabs(binomial_cdf_direct(30, 0.45, 12) - 0.3591784154637499) < 1e-13);
  CHECK(std::fabs(binomial_cdf_via_beta(30, 0.45, 12) - 0.3591784154637499) < 1e-12);
  CHECK(binomial_cdf_direct(10, 0.2, 10) == 1.0);
  CHECK(binomial_cdf_via_beta(10, 0.2, -1) == 0.0);
}

TEST_CASE("the two binomial cdf routes agree everywhere") {
  int bad = 0;
  for (int n = 1; n <= 30; ++n)
    for (double theta = 0.05; theta < 0.99; theta += 0.09)
      for (int y = 0; y < n; ++y)
        if (std::fabs(binomial_cdf_direct(n, theta, y) - binomial_cdf_via_beta(n, theta, y)) >
            1e-10)
          ++bad;
  CHECK(bad == 0);
  // large-n regime of the real application
  for (int y : {10, 23, 40})
    CHECK(std::fabs(binomial_cdf_direct(23061, 0.001, y) - binomial_cdf_via_beta(23061, 0.001, y)) <
          1e-10);
}

TEST_CASE("binomial pmf normalizes and matches a hand value") {
  double total = 0.0;
  for (int y = 0; y <= 10; ++y) total += std::exp(binomial_log_pmf(10, 0.2, y));
  CHECK(std::fabs(total - 1.0) < 1e-12);
  // C(10,3) * 0.2^3 * 0.8^7 = 0.201326592
  CHECK(std::fabs(std::exp(binomial_log_pmf(10, 0.2, 3)) - 0.201326592) < 1e-12);
}

TEST_CASE("binomial quantile walks to the smallest covering count") {
  DistSpec b = DistSpec::binomial(2, 0.5);
  CHECK(quantile(b, 0.75) == 1.0);         // F(1) = 0.75 exactly
  CHECK(quantile(b, 0.750000001) == 2.0);  // just past it
  CHECK(quantile(b, 0.25) == 0.0);
  CHECK(quantile(b, 0.2) == 0.0);
  CHECK(quantile(DistSpec::binomial(7, 0.0), 0.99) == 0.0);
  CHECK(quantile(DistSpec::binomial(7, 1.0), 0.01) == 7.0);
}

TEST_CASE("binomial quantile is consistent with its cdf") {
  UniformStream s(77, 0);
  int bad = 0;
  for (int i = 0; i < 300; ++i) {
    int n = 1 + static_cast<int>(s.next() * 200);
    double theta = 0.01 + s.next() * 0.98;
    double p = s.next();
    DistSpec b = DistSpec::binomial(n, theta);
    double y = quantile(b, p);
    if (!(y >= 0 && y <= n)) ++bad;
    if (binomial_cdf_direct(n, theta, static_cast<int>(y)) < p - 1e-9) ++bad;
    if (y > 0 && binomial_cdf_direct(n, theta, static_cast<int>(y) - 1) >= p) ++bad;
  }
  CHECK(bad == 0);
  // monotone in p
  DistSpec b = DistSpec::binomial(50, 0.3);
  double prev = 0.0;
  for (double p = 0.01; p < 1.0; p += 0.01) {
    double y = quantile(b, p);
    CHECK(y >= prev);
    prev = y;
  }
}

TEST_CASE("inverse-cdf sampling matches the cdf it came from") {
  for (const auto& d : {DistSpec::gamma(2.5, 1.7), DistSpec::beta(2.0, 5.0),
                        DistSpec::student_t(6.0)}) {
    UniformStream s(90210, static_cast<std::uint64_t>(d.family));
    std::vector<double> pit(30000);
    for (auto& v : pit) v = cdf(d, sample(d, s.next()));
    CHECK(testsup::ks_uniform_oracle(std::move(pit)) < 1.36 / std::sqrt(30000.0) * 1.5);
  }
}
