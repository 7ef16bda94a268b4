#include <doctest.h>

#include <cmath>
#include <random>

#include "spikedclt/ensemble.hpp"

using namespace spikedclt;

TEST_CASE("support intervals of the three models") {
  // (1 -+ sqrt(c))^2 at c=1 and c=2; model C endpoints at c1=c2=2 are
  // (2 -+ sqrt(3))/4.
  auto iv = support_interval(EnsembleSpec::model_a(1.0, 0.0));
  CHECK(iv.a == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(iv.b == doctest::Approx(4.0).epsilon(1e-14));

  iv = support_interval(EnsembleSpec::model_a(2.0, 0.0));
  CHECK(iv.a == doctest::Approx(0.17157287525381).epsilon(1e-12));
  CHECK(iv.b == doctest::Approx(5.82842712474619).epsilon(1e-12));

  iv = support_interval(EnsembleSpec::model_c(2.0, 2.0, 0.0));
  CHECK(iv.a == doctest::Approx((2.0 - std::sqrt(3.0)) / 4.0).epsilon(1e-13));
  CHECK(iv.b == doctest::Approx((2.0 + std::sqrt(3.0)) / 4.0).epsilon(1e-13));

  // center^2 - half_width^2 = a*b
  CHECK(iv.center * iv.center - iv.half_width * iv.half_width ==
        doctest::Approx(iv.a * iv.b).epsilon(1e-13));

  CHECK_THROWS_AS(support_interval(EnsembleSpec::model_a(0.5, 0.0)), domain_error);
  CHECK_THROWS_AS(support_interval(EnsembleSpec::model_c(1.0, 2.0, 0.0)), domain_error);
  CHECK_THROWS_AS(EnsembleSpec::model_b(2.0, -0.1), domain_error);
}

TEST_CASE("criticality thresholds") {
  CHECK(criticality_threshold(EnsembleSpec::model_a(4.0, 0.0)) == doctest::Approx(0.5));
  CHECK(criticality_threshold(EnsembleSpec::model_b(2.0, 0.0)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(criticality_threshold(EnsembleSpec::model_c(2.0, 2.0, 0.0)) ==
        doctest::Approx(2.0 + 2.0 * std::sqrt(3.0)).epsilon(1e-13));
}

TEST_CASE("spike geometry closed forms") {
  // Model A, c=2, delta=0.5: z0 = (1+1)(1.5)/0.5 = 6, S = (1-0.5)/0.5 = 1,
  // w = 1/(delta sqrt(c)) = sqrt(2).
  auto g = spike_geometry(EnsembleSpec::model_a(2.0, 0.5));
  CHECK(g.z0 == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(g.S == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g.w == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(g.regime == SpikeRegime::subcritical);
  // S^2 = (z0-a)(z0-b) cross-check against the endpoints.
  auto iv = support_interval(EnsembleSpec::model_a(2.0, 0.5));
  CHECK(g.S * g.S == doctest::Approx((g.z0 - iv.a) * (g.z0 - iv.b)).epsilon(1e-12));

  // delta=1 is above 1/sqrt(2): S flips sign, |w| < 1.
  g = spike_geometry(EnsembleSpec::model_a(2.0, 1.0));
  CHECK(g.z0 == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(g.S == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(g.regime == SpikeRegime::supercritical);
  CHECK(std::abs(g.w) < 1.0);

  // Model C, c1=c2=2, nu=1: z0 = 6/5, S = 11/20.
  g = spike_geometry(EnsembleSpec::model_c(2.0, 2.0, 1.0));
  CHECK(g.z0 == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(g.S == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(g.regime == SpikeRegime::subcritical);

  // Parameter coincidences are real: four different spikes all sit at z0 = 6.
  CHECK(spike_geometry(EnsembleSpec::model_b(2.0, 1.0)).z0 == doctest::Approx(6.0));
  CHECK(spike_geometry(EnsembleSpec::model_b(2.0, 2.0)).z0 == doctest::Approx(6.0));

  // Zero spike is its own regime with no saddlepoint.
  g = spike_geometry(EnsembleSpec::model_a(2.0, 0.0));
  CHECK(g.regime == SpikeRegime::zero_spike);
  CHECK(std::isnan(g.z0));

  // The epsilon band around the threshold is flagged critical.
  const double th = criticality_threshold(EnsembleSpec::model_b(2.0, 0.0));
  g = spike_geometry(EnsembleSpec::model_b(2.0, th * (1.0 + 1e-12)));
  CHECK(g.regime == SpikeRegime::critical);
}

TEST_CASE("randomized geometry properties") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 400; ++i) {
    EnsembleSpec spec;
    const int which = i % 3;
    if (which == 0)
      spec = EnsembleSpec::model_a(1.0 + 4.0 * u01(rng), 0.01 + 3.0 * u01(rng));
    else if (which == 1)
      spec = EnsembleSpec::model_b(1.0 + 4.0 * u01(rng), 0.01 + 5.0 * u01(rng));
    else
      spec = EnsembleSpec::model_c(1.05 + 3.0 * u01(rng), 1.05 + 3.0 * u01(rng),
                                   0.01 + 12.0 * u01(rng));
    const auto g = spike_geometry(spec);
    if (g.regime == SpikeRegime::critical) continue;
    const auto iv = support_interval(spec);
    CHECK(g.z0 > iv.b);
    CHECK(g.S * g.S ==
          doctest::Approx((g.z0 - iv.a) * (g.z0 - iv.b)).epsilon(1e-12));
    // w and 1/w both satisfy the Joukowski relation; the stored root has
    // |w| > 1 exactly when S > 0 (subcritical).
    CHECK(iv.center + iv.half_width * (g.w + 1.0 / g.w) / 2.0 ==
          doctest::Approx(g.z0).epsilon(1e-11));
    if (g.regime == SpikeRegime::subcritical) {
      CHECK(g.S > 0.0);
      CHECK(std::abs(g.w) > 1.0);
    } else {
      CHECK(g.S < 0.0);
      CHECK(std::abs(g.w) < 1.0);
    }
  }
}

TEST_CASE("continuity at the threshold") {
  // z0 -> b quadratically; S -> 0 linearly, so at a relative offset of 1e-4
  // z0-b is ~1e-8 while S is still ~1e-4-scale.
  for (int which = 0; which < 3; ++which) {
    EnsembleSpec base = which == 0   ? EnsembleSpec::model_a(2.0, 1.0)
                        : which == 1 ? EnsembleSpec::model_b(2.0, 1.0)
                                     : EnsembleSpec::model_c(2.0, 2.0, 1.0);
    const double th = criticality_threshold(base);
    for (double side : {1.0 - 1e-4, 1.0 + 1e-4}) {
      base.spike = th * side;
      const auto g = spike_geometry(base);
      const auto iv = support_interval(base);
      CHECK(std::abs(g.z0 - iv.b) < 1e-6);
      CHECK(std::abs(g.S) < 1e-3);
      CHECK(g.regime ==
            (side < 1.0 ? SpikeRegime::subcritical : SpikeRegime::supercritical));
    }
  }
}
