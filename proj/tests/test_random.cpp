#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "impred/parallel.hpp"
#include "impred/random.hpp"
#include "support.hpp"

using impred::UniformStream;

TEST_CASE("a stream replays itself exactly") {
  UniformStream a(123, 7), b(123, 7);
  int mismatches = 0;
  for (int i = 0; i < 2000; ++i)
    if (a.next_word() != b.next_word()) ++mismatches;
  CHECK(mismatches == 0);
}

TEST_CASE("distinct stream ids and seeds give distinct sequences") {
  UniformStream a(123, 1), b(123, 2), c(124, 1);
  int collisions = 0;
  for (int i = 0; i < 2000; ++i) {
    std::uint64_t wa = a.next_word();
    if (wa == b.next_word()) ++collisions;
    UniformStream cc = c.at(static_cast<std::uint64_t>(i));
    if (wa == cc.next_word()) ++collisions;
  }
  CHECK(collisions == 0);
}

TEST_CASE("position addressing matches the serial sequence") {
  UniformStream s(2024, 5);
  std::vector<double> seq(300);
  for (auto& v : seq) v = s.next();

  for (std::uint64_t k : {0u, 1u, 17u, 255u, 299u}) {
    UniformStream t = UniformStream(2024, 5).at(k);
    CHECK(t.next() == seq[k]);
  }
  UniformStream u(2024, 5);
  u.skip(100);
  CHECK(u.position() == 100);
  CHECK(u.next() == seq[100]);
  u.seek(7);
  CHECK(u.next() == seq[7]);
}

TEST_CASE("substreams are reproducible and distinct from the parent") {
  UniformStream parent(99, 3);
  UniformStream s1 = parent.substream(0), s2 = parent.substream(1);
  UniformStream s1again = UniformStream(99, 3).substream(0);
  int collisions = 0, mismatches = 0;
  UniformStream p2(99, 3);
  for (int i = 0; i < 1000; ++i) {
    double a = s1.next();
    if (a == s2.next()) ++collisions;
    if (a == p2.next()) ++collisions;
    if (a != s1again.next()) ++mismatches;
  }
  CHECK(collisions == 0);
  CHECK(mismatches == 0);
}

TEST_CASE("every draw lies strictly inside (0,1)") {
  UniformStream s(9, 0);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 200000; ++i) {
    double v = s.next();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  // the 53-bit centered lattice keeps a half-step of clearance at both ends
  CHECK(lo >= 0x1.0p-54);
  CHECK(hi <= 1.0 - 0x1.0p-54);
}

TEST_CASE("marginal uniformity by Kolmogorov-Smirnov") {
  UniformStream s(31337, 11);
  std::vector<double> u(100000);
  for (auto& v : u) v = s.next();
  // 1.36/sqrt(N) is the 5% critical value; allow 1.5x on a fixed seed
  CHECK(testsup::ks_uniform_oracle(std::move(u)) < 1.36 / std::sqrt(100000.0) * 1.5);
}

TEST_CASE("consecutive pairs show no dependence on a 10x10 grid") {
  UniformStream s(424242, 0);
  const int kBins = 10, kPairs = 100000;
  std::vector<int> counts(kBins * kBins, 0);
  for (int i = 0; i < kPairs; ++i) {
    int bx = static_cast<int>(s.next() * kBins);
    int by = static_cast<int>(s.next() * kBins);
    ++counts[bx * kBins + by];
  }
  const double expected = static_cast<double>(kPairs) / (kBins * kBins);
  double chi2 = 0.0;
  for (int c : counts) {
    double d = c - expected;
    chi2 += d * d / expected;
  }
  // 99.9% point of chi-square with 99 degrees of freedom
  CHECK(chi2 < 148.23);
}

TEST_CASE("parallel_for fills the same slots at every worker count") {
  const std::size_t n = 1001;
  std::vector<double> serial(n);
  for (std::size_t i = 0; i < n; ++i)
    serial[i] = UniformStream(5, 0, 3 * i).next();

  for (int workers : {1, 2, 3, 8}) {
    std::vector<double> out(n, -1.0);
    impred::parallel_for(
        n, [&](std::size_t i) { out[i] = UniformStream(5, 0, 3 * i).next(); }, workers);
    CHECK(out == serial);
  }
}

TEST_CASE("parallel_for rethrows the lowest-index exception") {
  auto run = [](int workers) {
    try {
      impred::parallel_for(
          300,
          [](std::size_t i) {
            if (i == 137 || i == 202) throw std::runtime_error(std::to_string(i));
          },
          workers);
    } catch (const std::runtime_error& e) {
      return std::string(e.what());
    }
    return std::string("no throw");
  };
  CHECK(run(1) == "137");
  CHECK(run(4) == "137");
}

TEST_CASE("parallel_for handles empty and tiny ranges") {
  std::atomic<int> hits{0};
  impred::parallel_for(0, [&](std::size_t) { ++hits; }, 4);
  CHECK(hits.load() == 0);
  impred::parallel_for(1, [&](std::size_t) { ++hits; }, 4);
  CHECK(hits.load() == 1);
}
