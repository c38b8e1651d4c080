#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cwelch/measure.hpp"
#include "support.hpp"

using cwelch::MassSummary;
using cwelch::QuadratureMeasure;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("counting measure masses") {
  const MassSummary m4 = cwelch::mass_summary(cwelch::counting_measure(4));
  CHECK(m4.total == 4.0);
  CHECK(m4.diagonal == 4.0);
  CHECK(m4.offdiag == 12.0);

  const MassSummary m1 = cwelch::mass_summary(cwelch::counting_measure(1));
  CHECK(m1.total == 1.0);
  CHECK(m1.diagonal == 1.0);
  CHECK(m1.offdiag == 0.0);

  const QuadratureMeasure q3 = cwelch::counting_measure(3);
  REQUIRE(q3.size() == 3);
  for (double w : q3.weights()) CHECK(w == 1.0);
  CHECK(q3.atomic());

  CHECK_THROWS_AS(cwelch::counting_measure(0), std::invalid_argument);
}

TEST_CASE("uniform interval trapezoid weights") {
  const QuadratureMeasure q2 = cwelch::uniform_interval(0.0, 1.0, 2);
  REQUIRE(q2.size() == 2);
  CHECK(q2.weight(0) == 0.5);
  CHECK(q2.weight(1) == 0.5);
  CHECK_FALSE(q2.atomic());

  const MassSummary m5 = cwelch::mass_summary(cwelch::uniform_interval(0.0, 2.0 * kPi, 5));
  CHECK(m5.total == doctest::Approx(2.0 * kPi).epsilon(1e-15));
  CHECK(m5.diagonal == 0.0);

  const MassSummary m101 = cwelch::mass_summary(cwelch::uniform_interval(0.0, 2.0 * kPi, 101));
  CHECK(m101.diagonal == 0.0);
  CHECK(std::abs(m101.total - 2.0 * kPi) <= 1e-12);
  CHECK(std::abs(m101.offdiag - 4.0 * kPi * kPi) <= 1e-11);

  const MassSummary m513 = cwelch::mass_summary(cwelch::uniform_interval(0.0, 2.0 * kPi, 513));
  CHECK(std::abs(m513.total - 2.0 * kPi) <= 1e-12);

  CHECK_THROWS_AS(cwelch::uniform_interval(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(cwelch::uniform_interval(2.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(cwelch::uniform_interval(0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("uniform interval total mass equals b - a across node counts") {
  for (std::size_t n = 2; n <= 40; ++n) {
    const MassSummary m = cwelch::mass_summary(cwelch::uniform_interval(0.3, 1.7, n));
    CHECK(std::abs(m.total - 1.4) <= 1e-12);
  }
}

TEST_CASE("atomic weights diagonal mass by hand") {
  const QuadratureMeasure q({2.0, 3.0}, true);
  const MassSummary m = q.mass();
  CHECK(m.total == 5.0);
  CHECK(m.diagonal == 13.0);
  CHECK(m.offdiag == 12.0);
}

TEST_CASE("mass invariant: offdiag + diagonal = total^2 exactly as computed") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cwelch::SplitMix64 rng(seed);
    const std::size_t n = 1 + rng.next_u64() % 20;
    std::vector<double> w(n);
    for (double& x : w) x = 0.25 + rng.next_double();
    const QuadratureMeasure q(std::move(w), seed % 2 == 0);
    const MassSummary m = q.mass();
    CHECK(m.offdiag == m.total * m.total - m.diagonal);
    if (!q.atomic()) CHECK(m.diagonal == 0.0);
  }
}

TEST_CASE("monte carlo sphere sampling") {
  const QuadratureMeasure q = cwelch::monte_carlo_sphere(2, 'C', 1000, 7);
  CHECK(q.mass().total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_FALSE(q.atomic());

  // determinism: identical seeds produce identical node labels
  const QuadratureMeasure q2 = cwelch::monte_carlo_sphere(2, 'C', 1000, 7);
  REQUIRE(q.points().size() == q2.points().size());
  for (std::size_t i = 0; i < q.points().size(); ++i)
    for (std::size_t k = 0; k < q.points()[i].size(); ++k)
      CHECK(q.points()[i][k] == q2.points()[i][k]);

  // every sampled point is unit-norm
  for (const auto& p : q.points()) {
    double s = 0.0;
    for (double c : p) s += c * c;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }

  // dimension-1 samples are unimodular scalars
  for (char field : {'R', 'C'}) {
    const QuadratureMeasure q1 = cwelch::monte_carlo_sphere(1, field, 50, 11);
    for (const auto& p : q1.points()) {
      double s = 0.0;
      for (double c : p) s += c * c;
      CHECK(std::abs(s - 1.0) <= 1e-12);
    }
  }

  CHECK_THROWS_AS(cwelch::monte_carlo_sphere(0, 'C', 5, 1), std::invalid_argument);
  CHECK_THROWS_AS(cwelch::monte_carlo_sphere(2, 'X', 5, 1), std::invalid_argument);
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS(QuadratureMeasure({}, true), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureMeasure({1.0, 0.0}, true), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureMeasure({1.0, -2.0}, true), std::invalid_argument);
}
