#include "necklace/distributions.hpp"
#include "necklace/numeric.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

using namespace necklace;

namespace {

constexpr double pi = std::numbers::pi;

ArcLengthDistribution bernoulli() { return ArcLengthDistribution({{2.0, 0.5}, {6.0, 0.5}}, {}); }

// Monte Carlo mean of strict_floor(omega sqrt(E)/pi) and its standard error.
std::pair<double, double> sampled_step_count(const ArcLengthDistribution &d, double energy,
                                             std::size_t n, std::uint64_t seed) {
  const auto s = sample_sequence(d, n, seed);
  double sum = 0.0, sum2 = 0.0;
  for (double w : s.values) {
    const double c = strict_floor(w * std::sqrt(energy) / pi);
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / static_cast<double>(n);
  return {mean, std::sqrt((sum2 / static_cast<double>(n) - mean * mean) / static_cast<double>(n))};
}

} // namespace

TEST_CASE("strict floor is the largest integer strictly below t") {
  CHECK(strict_floor(2.0) == 1.0);
  CHECK(strict_floor(2.5) == 2.0);
  CHECK(strict_floor(0.3) == 0.0);
  CHECK(strict_floor(0.0) == 0.0);
  CHECK(strict_floor(3.0 * (1 + 1e-12)) == 2.0);
  CHECK(strict_floor(3.0 * (1 - 1e-12)) == 2.0);
  CHECK(strict_floor(3.0 * (1 + 1e-6)) == 3.0);
  CHECK(strict_floor(1e-12) == 0.0);
}

TEST_CASE("construction rejects malformed laws") {
  CHECK_THROWS_AS(ArcLengthDistribution({{1.0, 0.6}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ArcLengthDistribution({{-1.0, 1.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ArcLengthDistribution({{1.0, 0.5}, {1.0, 0.5}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(ArcLengthDistribution({}, {{0.5, 1.5, 0.5}, {1.0, 2.0, 0.5}}), std::invalid_argument);
  CHECK_THROWS_AS(ArcLengthDistribution({}, {{1.0, 2.0, 0.5}, {0.0, 1.0, 0.5}}), std::invalid_argument);
  CHECK_NOTHROW(ArcLengthDistribution({{1.0, 0.5}}, {{0.5, 1.5, 0.5}}));
}

TEST_CASE("support bound, mean and atomic mass") {
  const auto u = ArcLengthDistribution::uniform(0.5, 1.5);
  CHECK(u.support_bound() == doctest::Approx(1.5));
  CHECK(u.mean() == doctest::Approx(1.0));
  CHECK(u.atomic_mass() == 0.0);
  CHECK(u.max_density() == doctest::Approx(1.0));
  const auto b = bernoulli();
  CHECK(b.support_bound() == 6.0);
  CHECK(b.mean() == doctest::Approx(4.0));
  CHECK(b.atomic_mass() == doctest::Approx(1.0));
}

TEST_CASE("sampling a single atom is deterministic") {
  const auto s = sample_sequence(ArcLengthDistribution::point_mass(2.0), 5, 42);
  REQUIRE(s.values.size() == 5);
  for (double v : s.values)
    CHECK(v == 2.0);
}

TEST_CASE("sampling reproduces bit for bit and streams differ") {
  const auto u = ArcLengthDistribution::uniform(0.5, 1.5);
  const auto a = sample_sequence(u, 1000, 9, 3);
  const auto b = sample_sequence(u, 1000, 9, 3);
  const auto c = sample_sequence(u, 1000, 9, 4);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (double v : a.values) {
    CHECK(v >= 0.5);
    CHECK(v <= 1.5);
  }
}

TEST_CASE("Bernoulli frequency concentrates at one half") {
  const std::size_t n = 1000000;
  const auto s = sample_sequence(bernoulli(), n, 2024);
  double twos = 0.0;
  for (double v : s.values)
    twos += v == 2.0 ? 1.0 : 0.0;
  const double sigma = std::sqrt(0.25 / static_cast<double>(n));
  CHECK(std::abs(twos / static_cast<double>(n) - 0.5) < 3 * sigma);
}

TEST_CASE("uniform sample mean concentrates at one") {
  const std::size_t n = 1000000;
  const auto s = sample_sequence(ArcLengthDistribution::uniform(0.5, 1.5), n, 77);
  double sum = 0.0;
  for (double v : s.values)
    sum += v;
  const double sigma = std::sqrt(1.0 / 12.0 / static_cast<double>(n));
  CHECK(std::abs(sum / static_cast<double>(n) - 1.0) < 3 * sigma);
}

TEST_CASE("step count: Bernoulli at E = pi^2 counts three eigenvalues") {
  CHECK(expect_step_count(bernoulli(), pi * pi) == doctest::Approx(3.0));
}

TEST_CASE("step count vanishes below (pi / K)^2") {
  const std::vector<ArcLengthDistribution> laws = {bernoulli(), ArcLengthDistribution::uniform(0.5, 1.5),
                                                   ArcLengthDistribution({{1.0, 0.3}}, {{0.5, 2.0, 0.7 / 1.5}})};
  for (const auto &d : laws) {
    const double edge = std::pow(pi / d.support_bound(), 2);
    CHECK(expect_step_count(d, edge) == 0.0);
    CHECK(expect_step_count(d, 0.5 * edge) == 0.0);
    CHECK(expect_step_count(d, 1.01 * edge) > 0.0);
  }
}

TEST_CASE("step count for uniform law at sqrt(E)/pi = 3 matches Monte Carlo") {
  const auto u = ArcLengthDistribution::uniform(0.5, 1.5);
  const double e = 9 * pi * pi;
  // strict_floor(3 omega) on [1/2, 3/2]: 1 on (1/3,2/3], 2 on (2/3,1], 3 on (1,4/3], 4 on (4/3,3/2]
  const double exact = 1 * (2.0 / 3 - 0.5) + 2 * (1.0 / 3) + 3 * (1.0 / 3) + 4 * (1.5 - 4.0 / 3);
  CHECK(expect_step_count(u, e) == doctest::Approx(exact).epsilon(1e-13));
  const auto [mean, se] = sampled_step_count(u, e, 1000000, 5);
  CHECK(std::abs(mean - exact) < 3 * se);
}

TEST_CASE("step count for a mixed law matches Monte Carlo") {
  const ArcLengthDistribution d({{1.0, 0.3}, {2.5, 0.2}}, {{0.5, 1.0, 0.4}, {1.5, 3.0, 0.2}});
  for (double e : {3.0, 40.0, 170.0}) {
    const auto [mean, se] = sampled_step_count(d, e, 1000000, 11);
    CHECK(std::abs(mean - expect_step_count(d, e)) < 3 * se);
  }
}

TEST_CASE("step count is non-decreasing and jumps exactly at integer ratios") {
  const ArcLengthDistribution d({{2.0, 0.25}, {6.0, 0.25}}, {{0.5, 1.5, 0.5}});
  double prev = 0.0;
  for (int i = 1; i <= 3000; ++i) {
    const double n = expect_step_count(d, 0.05 * i);
    CHECK(n >= prev);
    prev = n;
  }
  for (int k = 1; k <= 12; ++k) {
    const double e = std::pow(pi * k / 6.0, 2);
    double expected = 0.0;
    for (const auto &a : atoms_with_integer_ratio(d, e))
      expected += a.weight;
    const double jump = expect_step_count(d, e * (1 + 1e-8)) - expect_step_count(d, e);
    // the density adds a continuous rise of order h K^2 eps / 4 on top of the jump
    CHECK(jump == doctest::Approx(expected).epsilon(1e-6));
    CHECK(expect_step_count(d, e) - expect_step_count(d, e * (1 - 1e-8)) < 1e-6);
  }
}

TEST_CASE("atoms with integer ratio") {
  const auto b = bernoulli();
  CHECK(atoms_with_integer_ratio(b, std::pow(pi / 2, 2)).size() == 2);
  const auto only_six = atoms_with_integer_ratio(b, std::pow(pi / 6, 2));
  REQUIRE(only_six.size() == 1);
  CHECK(only_six.front().length == 6.0);
  CHECK(atoms_with_integer_ratio(b, 1.0).empty());
  CHECK(atoms_with_integer_ratio(ArcLengthDistribution::uniform(0.5, 1.5), pi * pi).empty());
}

TEST_CASE("continuous law obeys the Lipschitz bound on the step count") {
  for (const auto &d : {ArcLengthDistribution::uniform(0.5, 1.5),
                        ArcLengthDistribution({}, {{0.2, 1.0, 0.25}, {1.0, 2.0, 0.8}})}) {
    const double h = d.max_density();
    const double k = d.support_bound();
    for (int i = 1; i <= 500; ++i) {
      const double e = 0.7 * i;
      const double eps = 1e-7 * e;
      const double bound = h * eps * k * (1 + k * std::sqrt(e) / pi) / (4 * e);
      CHECK(expect_step_count(d, e + eps) - expect_step_count(d, e) <= bound * (1 + 1e-6));
    }
  }
}

TEST_CASE("without the factor K the Lipschitz bound fails for K > 1") {
  const auto u = ArcLengthDistribution::uniform(0.5, 1.5);
  const double k = u.support_bound();
  double worst = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double e = 1000.0 + 10.0 * i;
    const double eps = 1e-7 * e;
    const double without_k = eps * (1 + k * std::sqrt(e) / pi) / (4 * e);
    worst = std::max(worst, (expect_step_count(u, e + eps) - expect_step_count(u, e)) / without_k);
  }
  CHECK(worst > 1.0);
  CHECK(worst <= k * (1 + 1e-6));
}
