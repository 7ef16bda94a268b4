#include <doctest.h>

#include <cmath>
#include <random>

#include "spikedclt/clt.hpp"
#include "spikedclt/quadrature.hpp"

using namespace spikedclt;

namespace {
const QuadratureConfig cfg;

ChebyshevSeries expand(const LinearStatistic& stat, const SupportInterval& iv) {
  return chebyshev_coefficients(stat, iv, cfg);
}
}  // namespace

TEST_CASE("mean integral against the density normalization and the trace moment") {
  // f = 1: every equilibrium density integrates to one.
  const auto one = make_statistic("polynomial", {1.0});
  for (double c : {1.0, 1.3, 2.0, 5.0}) {
    const auto spec = EnsembleSpec::model_a(c, 0.0);
    const auto s = expand(one, support_interval(spec));
    CHECK(mean_integral(s, spec) == doctest::Approx(1.0).epsilon(1e-10));
  }
  const auto specc = EnsembleSpec::model_c(2.0, 2.0, 0.0);
  CHECK(mean_integral(expand(one, support_interval(specc)), specc) ==
        doctest::Approx(1.0).epsilon(1e-10));

  // f = x on model A/B: E[tr W]/n^2 -> c; equivalently the semicircle moment
  // (b-a)^2/16.
  for (double c : {1.5, 2.0, 4.0}) {
    const auto spec = EnsembleSpec::model_b(c, 0.0);
    const auto s = expand(make_statistic("linear", {}), support_interval(spec));
    CHECK(mean_integral(s, spec) == doctest::Approx(c).epsilon(1e-10));
  }
}

TEST_CASE("variance from the series") {
  // f = x: sigma^2 = hw^2/4 = c (Var tr(W/n) -> m/n for a central Wishart).
  for (double c : {1.5, 2.0, 5.0}) {
    const auto spec = EnsembleSpec::model_a(c, 0.0);
    const auto s = expand(make_statistic("linear", {}), support_interval(spec));
    CHECK(variance_from_series(s) == doctest::Approx(c).epsilon(1e-12));
  }
  // Constant statistic has no fluctuation (zero up to transform roundoff).
  const auto spec = EnsembleSpec::model_a(2.0, 0.0);
  CHECK(variance_from_series(expand(make_statistic("polynomial", {7.0}),
                                    support_interval(spec))) <= 1e-24);
  // lrt at c=2: -1/c - ln(1-1/c).
  CHECK(variance_from_series(expand(make_statistic("lrt", {2.0}), support_interval(spec))) ==
        doctest::Approx(0.1931471805599453).epsilon(1e-11));
  // x^2 on [0,4]: (1/4)(1*8^2 + 2*2^2) = 18.
  CHECK(variance_from_series(expand(make_statistic("polynomial", {0.0, 0.0, 1.0}),
                                    make_interval(0.0, 4.0))) ==
        doctest::Approx(18.0).epsilon(1e-12));
}

TEST_CASE("principal-value oracle agrees with the series form") {
  const auto ivA = support_interval(EnsembleSpec::model_a(2.0, 0.0));
  CHECK(variance_pv_oracle(make_statistic("linear", {}), ivA, cfg) ==
        doctest::Approx(2.0).epsilon(1e-6));
  CHECK(variance_pv_oracle(make_statistic("polynomial", {0.0, 0.0, 1.0}),
                           make_interval(0.0, 4.0), cfg) ==
        doctest::Approx(18.0).epsilon(1e-6));
  CHECK(variance_pv_oracle(make_statistic("polynomial", {5.0}), ivA, cfg) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-10));

  LinearStatistic no_deriv;
  no_deriv.name = "bare";
  no_deriv.evaluate = [](double x) { return x; };
  CHECK_THROWS_AS(variance_pv_oracle(no_deriv, ivA, cfg), domain_error);

  // The full oracle-equivalence grid of the acceptance suite, spot-checked.
  for (double c : {1.5, 5.0}) {
    const auto iv = support_interval(EnsembleSpec::model_a(c, 0.0));
    for (const auto& stat : {make_statistic("lrt", {c}), make_statistic("capacity", {1.0}),
                             make_statistic("log1p", {})}) {
      const double s2 = variance_from_series(expand(stat, iv));
      const double pv = variance_pv_oracle(stat, iv, cfg);
      CHECK(std::abs(s2 - pv) <= 1e-6 * (1.0 + s2));
    }
  }
}

TEST_CASE("variance is invariant under affine pullback") {
  // Mapping f to f(alpha x + beta) with the correspondingly mapped interval
  // leaves the coefficients, hence sigma^2, unchanged.
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> ua(0.3, 3.0), ub(-2.0, 2.0);
  const auto iv = make_interval(1.0, 2.0);
  const auto stat = make_statistic("capacity", {0.5});
  const double base = variance_from_series(expand(stat, iv));
  for (int i = 0; i < 20; ++i) {
    const double alpha = ua(rng), beta = ub(rng);
    LinearStatistic pulled;
    pulled.name = "pulled";
    auto f = stat.evaluate;
    pulled.evaluate = [f, alpha, beta](double x) { return f(alpha * x + beta); };
    const auto iv2 = make_interval((iv.a - beta) / alpha, (iv.b - beta) / alpha);
    CHECK(variance_from_series(expand(pulled, iv2)) ==
          doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("spike correction branch values") {
  // Model A, c=2, f(x)=x. Subcritical delta=0.5: the exact trace mean gives
  // c*delta = 1; supercritical delta=1 gives the bulk-only value -4 whose
  // outlier-adjusted counterpart -4 + f(6) = 2 again matches the trace mean.
  const auto spec05 = EnsembleSpec::model_a(2.0, 0.5);
  const auto s = expand(make_statistic("linear", {}), support_interval(spec05));
  CHECK(spike_correction(s, spike_geometry(spec05), cfg) ==
        doctest::Approx(1.0).epsilon(1e-10));

  const auto spec1 = EnsembleSpec::model_a(2.0, 1.0);
  const double super = spike_correction(s, spike_geometry(spec1), cfg);
  CHECK(super == doctest::Approx(-4.0).epsilon(1e-10));

  CHECK(spike_correction(s, spike_geometry(EnsembleSpec::model_a(2.0, 0.0)), cfg) == 0.0);

  const double th = criticality_threshold(EnsembleSpec::model_a(2.0, 0.0));
  CHECK_THROWS_AS(
      spike_correction(s, spike_geometry(EnsembleSpec::model_a(2.0, th)), cfg),
      domain_error);
}

TEST_CASE("subcritical w-series equals the correction integral") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int tested = 0;
  while (tested < 25) {
    const double c = 1.3 + 3.0 * u01(rng);
    const double th = criticality_threshold(EnsembleSpec::model_b(c, 0.0));
    const double nu = th * (0.05 + 0.85 * u01(rng));
    const auto spec = EnsembleSpec::model_b(c, nu);
    const auto g = spike_geometry(spec);
    if (!(std::abs(g.w) >= 1.05)) continue;
    const auto series = expand(make_statistic("capacity", {1.0}), support_interval(spec));
    const double mu_bar = spike_correction(series, g, cfg);
    double acc = 0.0, wk = 1.0;
    for (std::size_t k = 1; k < series.coeffs.size(); ++k) {
      wk /= g.w;
      acc += series.coeffs[k] * wk;
    }
    CHECK(std::abs(0.5 * acc - mu_bar) <= 1e-8 * (1.0 + std::abs(mu_bar)));
    ++tested;
  }
}

TEST_CASE("the two spike-kernel routes coincide") {
  // Polynomial statistics on [1,2] at z = 10.
  const auto iv = make_interval(1.0, 2.0);
  const auto sq = make_statistic("polynomial", {0.0, 0.0, 1.0});
  auto [s1, s2] = spike_kernel_equivalence(sq, iv, 10.0, cfg);
  CHECK(std::abs(s1 - s2) <= 1e-8 * (1.0 + std::abs(s1)));

  // Constant statistic: the kernel integrates to zero and rho1 vanishes.
  auto [c1, c2] = spike_kernel_equivalence(make_statistic("polynomial", {4.0}), iv, 10.0, cfg);
  CHECK(std::abs(c1) < 1e-10);
  CHECK(std::abs(c2) < 1e-10);

  // Far field: both sides decay like 1/z.
  auto [f1, f2] = spike_kernel_equivalence(make_statistic("linear", {}), iv, 1e6, cfg);
  CHECK(std::abs(f1) < 1e-5);
  CHECK(std::abs(f2) < 1e-5);

  CHECK_THROWS_AS(spike_kernel_equivalence(sq, iv, 1.5, cfg), domain_error);
}
