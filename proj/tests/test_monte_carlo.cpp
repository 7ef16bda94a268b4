#include <doctest.h>

#include <cmath>
#include <cstring>

#include "spikedclt/monte_carlo.hpp"
#include "spikedclt/normal.hpp"
#include "spikedclt/rng.hpp"

using namespace spikedclt;

namespace {

bool reports_identical(const EmpiricalReport& a, const EmpiricalReport& b) {
  auto same = [](double x, double y) {
    return std::memcmp(&x, &y, sizeof(double)) == 0;
  };
  if (a.trials != b.trials || a.discarded != b.discarded) return false;
  if (!same(a.sample_mean, b.sample_mean) || !same(a.sample_var, b.sample_var)) return false;
  if (!same(a.ks_distance, b.ks_distance) || !same(a.mean_zscore, b.mean_zscore)) return false;
  if (a.histogram.counts != b.histogram.counts) return false;
  for (std::size_t i = 0; i < a.histogram.edges.size(); ++i)
    if (!same(a.histogram.edges[i], b.histogram.edges[i])) return false;
  return a.comparison_mean_used == b.comparison_mean_used;
}

}  // namespace

TEST_CASE("ks distance reference cases") {
  // Point mass at the Gaussian mean: step of the empirical CDF vs 1/2.
  CHECK(ks_distance(std::vector<double>(50, 3.0), 3.0, 1.0) == doctest::Approx(0.5));

  // Plugging in the quantiles at (i-1/2)/N leaves exactly 1/(2N).
  const int N = 1000;
  std::vector<double> q(N);
  for (int i = 0; i < N; ++i) q[i] = normal_quantile((i + 0.5) / N);
  CHECK(ks_distance(q, 0.0, 1.0) <= 0.5 / N + 1e-12);

  // Gaussian draws with the matching parameters land under the usual bound.
  std::vector<double> draws(10000);
  TrialRng rng(4242, 0);
  for (auto& v : draws) v = 1.0 + 2.0 * rng.gaussian();
  CHECK(ks_distance(draws, 1.0, 2.0) < 0.02);

  CHECK_THROWS_AS(ks_distance({1.0, 2.0}, 0.0, 0.0), domain_error);
  CHECK_THROWS_AS(ks_distance({}, 0.0, 1.0), domain_error);
}

TEST_CASE("counter-based streams are pure functions of (seed, trial)") {
  TrialRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  for (int i = 0; i < 100; ++i) {
    const double va = a.uniform();
    CHECK(va == b.uniform());
    CHECK(va > 0.0);
    CHECK(va < 1.0);
  }
  CHECK(c.uniform() != d.uniform());

  const auto e1 = sample_ensemble(EnsembleSpec::model_a(2.0, 0.5),
                                  {.n = 6, .m = 12, .spike = 0.5, .trials = 10, .seed = 9}, 2);
  const auto e2 = sample_ensemble(EnsembleSpec::model_a(2.0, 0.5),
                                  {.n = 6, .m = 12, .spike = 0.5, .trials = 10, .seed = 9}, 2);
  CHECK(e1 == e2);
  for (std::size_t k = 1; k < e1.size(); ++k) CHECK(e1[k] >= e1[k - 1]);
}

TEST_CASE("exact trace moments of the samplers") {
  // Model A, delta=0, n=m: E sum(lambda)/n = m.
  {
    SampleConfig cfg{.n = 6, .m = 6, .spike = 0.0, .trials = 4000, .seed = 11};
    const auto spec = EnsembleSpec::model_a(1.0, 0.0);
    double acc = 0.0;
    for (long t = 0; t < cfg.trials; ++t) {
      const auto eigs = sample_ensemble(spec, cfg, t);
      for (double x : eigs) acc += x / cfg.n;
    }
    const double mean = acc / cfg.trials;
    // Var(tr W/n) = m/n = 1 here, so 4 standard errors is 4/sqrt(trials).
    CHECK(std::abs(mean - 6.0) < 4.0 / std::sqrt(double(cfg.trials)));
  }
  // Model A, n=8, m=16, delta=0.5: E tr W/n = m + (m/n) delta = 17.
  {
    SampleConfig cfg{.n = 8, .m = 16, .spike = 0.5, .trials = 10000, .seed = 21};
    const auto spec = EnsembleSpec::model_a(2.0, 0.5);
    double acc = 0.0;
    for (long t = 0; t < cfg.trials; ++t) {
      const auto eigs = sample_ensemble(spec, cfg, t);
      for (double x : eigs) acc += x / cfg.n;
    }
    const double mean = acc / cfg.trials;
    // Var tr(W/n) = m tr(Sigma^2)/n^2 = 16(7 + 1.5^2)/64.
    const double se = std::sqrt(16.0 * 9.25 / 64.0) / std::sqrt(double(cfg.trials));
    CHECK(std::abs(mean - 17.0) < 4.0 * se);
  }
  // Model B, n=8, m=16, nu=2: E tr W /n = m + nu exactly.
  {
    SampleConfig cfg{.n = 8, .m = 16, .spike = 2.0, .trials = 10000, .seed = 12};
    const auto spec = EnsembleSpec::model_b(2.0, 2.0);
    double acc = 0.0;
    for (long t = 0; t < cfg.trials; ++t) {
      const auto eigs = sample_ensemble(spec, cfg, t);
      for (double x : eigs) acc += x / cfg.n;
    }
    const double mean = acc / cfg.trials;
    const double se = std::sqrt(2.0 + 4.0 * 2.0 / 8.0) / std::sqrt(double(cfg.trials));
    CHECK(std::abs(mean - 18.0) < 4.0 * se);
  }
}

TEST_CASE("model C pencil eigenvalues are positive") {
  SampleConfig cfg{.n = 4, .m1 = 8, .m2 = 12, .spike = 0.0, .trials = 200, .seed = 5};
  const auto spec = EnsembleSpec::model_c(2.0, 3.0, 0.0);
  const auto stat = make_statistic("log1p", {});
  for (long t = 0; t < cfg.trials; ++t) {
    const auto eigs = sample_ensemble(spec, cfg, t);
    for (double x : eigs) {
      CHECK(x > 0.0);
      const double f = x / (1.0 + x);
      CHECK(f > 0.0);
      CHECK(f < 1.0);
    }
    CHECK(std::isfinite(empirical_statistic(eigs, stat, Model::C, cfg.n)));
  }
}

TEST_CASE("empirical statistic scaling per model") {
  const std::vector<double> eigs = {2.0, 8.0};
  const auto lin = make_statistic("linear", {});
  CHECK(empirical_statistic(eigs, lin, Model::A, 2) == doctest::Approx(5.0));   // sum x/n
  CHECK(empirical_statistic(eigs, lin, Model::C, 2) == doctest::Approx(10.0));  // sum x
  const auto lrt = make_statistic("lrt", {2.0});
  CHECK_THROWS_AS(empirical_statistic({-1.0, 2.0}, lrt, Model::A, 2), domain_error);
}

TEST_CASE("parallel kernel reproduces the serial reference bit for bit") {
  const auto spec = EnsembleSpec::model_b(2.0, 1.0);
  const auto stat = make_statistic("log1p", {});
  SampleConfig cfg{.n = 6, .m = 12, .spike = 1.0, .trials = 500, .seed = 77};

  const auto serial = run_experiment_serial(spec, stat, cfg);
  for (int threads : {1, 2, 8}) {
    cfg.threads = threads;
    const auto par = run_experiment(spec, stat, cfg);
    CHECK(reports_identical(serial, par));
  }

  long total = 0;
  for (long c : serial.histogram.counts) total += c;
  CHECK(total == serial.trials);
  CHECK(serial.ks_distance >= 0.0);
  CHECK(serial.ks_distance <= 1.0);
}

TEST_CASE("zero-spike models A and B coincide stream for stream") {
  // With spike = 0 both reduce to the same central Wishart and consume the
  // Gaussian stream identically, so the reports agree exactly.
  SampleConfig cfg{.n = 6, .m = 10, .spike = 0.0, .trials = 1000, .seed = 123};
  const auto ra = run_experiment_serial(EnsembleSpec::model_a(10.0 / 6.0, 0.0),
                                        make_statistic("linear", {}), cfg);
  const auto rb = run_experiment_serial(EnsembleSpec::model_b(10.0 / 6.0, 0.0),
                                        make_statistic("linear", {}), cfg);
  CHECK(reports_identical(ra, rb));
}

TEST_CASE("LRT statistic self-consistency on a moderate run") {
  SampleConfig cfg{.n = 32, .m = 64, .spike = 0.0, .trials = 2000, .seed = 8128};
  const auto rep = run_experiment(EnsembleSpec::model_a(2.0, 0.0),
                                  make_statistic("lrt", {2.0}), cfg);
  CHECK(std::abs(rep.mean_zscore) < 4.0);
  CHECK(rep.ks_distance < 0.05);
  CHECK(rep.sample_var == doctest::Approx(rep.prediction.sigma2).epsilon(0.2));
}

TEST_CASE("experiment comparison bookkeeping") {
  // Subcritical run: comparison mean is the literal prediction.
  SampleConfig cfg{.n = 8, .m = 16, .spike = 1.0, .trials = 400, .seed = 3};
  auto rep = run_experiment_serial(EnsembleSpec::model_b(2.0, 1.0),
                                   make_statistic("linear", {}), cfg);
  CHECK(rep.comparison_mean_used == "predicted");
  CHECK(rep.prediction.regime == SpikeRegime::subcritical);

  // Supercritical: the outlier-adjusted mean is the comparable one.
  cfg.spike = 4.0;
  rep = run_experiment_serial(EnsembleSpec::model_b(2.0, 4.0),
                              make_statistic("linear", {}), cfg);
  CHECK(rep.comparison_mean_used == "outlier_adjusted");
  CHECK(std::abs(rep.mean_zscore) < 6.0);

  CHECK_THROWS_AS(run_experiment_serial(EnsembleSpec::model_b(0.5, 0.0),
                                        make_statistic("linear", {}),
                                        SampleConfig{.n = 8, .m = 4}),
                  domain_error);
}
