#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cwelch/bounds.hpp"
#include "cwelch/metrics.hpp"
#include "support.hpp"

using cwelch::SampledFrame;
using testsupport::close;
using testsupport::MeasureKind;
using testsupport::random_frame;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("coherence") {
  CHECK(cwelch::coherence(cwelch::builtin_frame("onb:4")) == doctest::Approx(0.0));
  CHECK(cwelch::coherence(cwelch::builtin_frame("cos_sin:513")) >= 0.999);
  CHECK(std::abs(cwelch::coherence(cwelch::builtin_frame("sic_d2")) - 1.0 / std::sqrt(3.0)) <=
        1e-10);
  const SampledFrame one = SampledFrame::create('C', 1, cwelch::counting_measure(1),
                                                {{cwelch::Complex(1.0, 0.0)}});
  CHECK_THROWS_AS(cwelch::coherence(one), std::invalid_argument);
}

TEST_CASE("crms") {
  // orthonormal basis: both the value and its Welch floor vanish
  CHECK(cwelch::crms(cwelch::builtin_frame("onb:4")) == doctest::Approx(0.0));

  // simplex: 1/2, equal to the root of the sup Welch bound
  const SampledFrame simplex = cwelch::builtin_frame("simplex_etf:2");
  CHECK(cwelch::crms(simplex) == doctest::Approx(0.5).epsilon(1e-12));
  const auto cw = cwelch::welch_continuous(simplex.measure().mass(), 2, 1);
  CHECK(std::sqrt(cw.sup_lb) == doctest::Approx(0.5).epsilon(1e-12));

  // circle family: off-diagonal integral equals the full one, value 1/sqrt(2)
  CHECK(cwelch::crms(cwelch::builtin_frame("cos_sin:513")) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));

  CHECK_THROWS_AS(cwelch::crms(SampledFrame::create('C', 1, cwelch::counting_measure(1),
                                                    {{cwelch::Complex(1.0, 0.0)}})),
                  std::invalid_argument);
}

TEST_CASE("frame potential on reference families") {
  CHECK(close(cwelch::frame_potential(cwelch::builtin_frame("cos_sin:513")), 2.0 * kPi * kPi,
              1e-9));
  CHECK(cwelch::frame_potential(cwelch::builtin_frame("onb:3")) == doctest::Approx(3.0));
  CHECK(close(cwelch::frame_potential(cwelch::builtin_frame("sic_d2")), 8.0, 1e-12));
}

TEST_CASE("frame potential equals Tra(S^2) along both routes") {
  const auto specs = testsupport::sweep_specs(50, 90210);
  for (const auto& s : specs) {
    const SampledFrame f = random_frame(s.n, s.d, s.field, s.seed, s.kind);
    const double fp = cwelch::frame_potential(f);
    const auto op = cwelch::frame_operator(f);
    CHECK(close(fp, op.trace_sq, 1e-9));
    // normalized-family sandwich: mu^2/d <= FP <= mu^2, diagonal mass <= FP
    const auto mass = f.measure().mass();
    CHECK(fp >= mass.total * mass.total / static_cast<double>(s.d) * (1.0 - 1e-9));
    CHECK(fp <= mass.total * mass.total * (1.0 + 1e-9));
    CHECK(fp >= mass.diagonal * (1.0 - 1e-9));
  }
}

TEST_CASE("equiangularity") {
  const auto sic = cwelch::equiangularity(cwelch::builtin_frame("sic_d2"));
  CHECK(sic.equiangular);
  CHECK(sic.gamma == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));

  const auto simplex3 = cwelch::equiangularity(cwelch::builtin_frame("simplex_etf:3"));
  CHECK(simplex3.equiangular);
  CHECK(simplex3.gamma == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const auto circle = cwelch::equiangularity(cwelch::builtin_frame("cos_sin:129"));
  CHECK_FALSE(circle.equiangular);

  // 0-equiangular: an orthonormal basis
  const auto onb = cwelch::equiangularity(cwelch::builtin_frame("onb:3"));
  CHECK(onb.equiangular);
  CHECK(onb.gamma == doctest::Approx(0.0));
}

TEST_CASE("equality certificate") {
  const auto simplex = cwelch::equality_certificate(cwelch::builtin_frame("simplex_etf:2"));
  CHECK(simplex.equiangular);
  CHECK(simplex.equality);
  CHECK(simplex.coherence_sq == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(simplex.sup_rhs == doctest::Approx(0.25).epsilon(1e-12));

  const auto sic = cwelch::equality_certificate(cwelch::builtin_frame("sic_d2"));
  CHECK(sic.equiangular);
  CHECK(sic.equality);
  CHECK(sic.coherence_sq == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(sic.sup_rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("coherence squared dominates the sup Welch bound over seeded frames") {
  const auto specs = testsupport::sweep_specs(50, 369369);
  std::size_t strict = 0;
  for (const auto& s : specs) {
    const SampledFrame f = random_frame(s.n, s.d, s.field, s.seed, s.kind);
    const auto cert = cwelch::equality_certificate(f);
    CHECK(cert.coherence_sq >= cert.sup_rhs - 1e-9);
    if (!cert.equiangular && cert.coherence_sq > cert.sup_rhs + 1e-9) ++strict;
    // CRMS sandwich: 1 >= crms >= sqrt(max(0, sup bound))
    const double v = cwelch::crms(f);
    CHECK(v <= 1.0 + 1e-12);
    CHECK(v >= std::sqrt(std::max(0.0, cert.sup_rhs)) - 1e-9);
  }
  // generic frames sit strictly above the bound
  CHECK(strict >= 40);
}

TEST_CASE("metrics report composition") {
  const auto rep = cwelch::compute_metrics(cwelch::builtin_frame("sic_d2"));
  REQUIRE(rep.coherence.has_value());
  REQUIRE(rep.crms.has_value());
  REQUIRE(rep.certificate.has_value());
  CHECK(rep.tight);
  REQUIRE(rep.tight_ratio.has_value());
  CHECK(*rep.tight_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(close(rep.potential, 8.0, 1e-12));
  CHECK(rep.angles.equiangular);
  CHECK(rep.certificate->equality);

  // single-vector family: rank deficient, nothing pairwise to report
  const SampledFrame single = SampledFrame::create(
      'C', 2, cwelch::counting_measure(1), {{cwelch::Complex(1.0, 0.0), cwelch::Complex(0.0, 0.0)}});
  const auto srep = cwelch::compute_metrics(single);
  CHECK_FALSE(srep.coherence.has_value());
  CHECK_FALSE(srep.crms.has_value());
  CHECK_FALSE(srep.tight);
  CHECK_FALSE(srep.tight_ratio.has_value());
}
