#include "spikedclt/monte_carlo.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spikedclt/normal.hpp"
#include "spikedclt/rng.hpp"

namespace spikedclt {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

constexpr double kResidualTol = 1e-8;

// Deterministic reduction: fixed-shape pairwise summation, independent of how
// the values were produced.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Fills an n x m matrix with standard complex Gaussians in row-major order,
// so the stream layout is part of the sampler contract.
MatrixXcd gaussian_matrix(TrialRng& rng, int n, int m) {
  MatrixXcd g(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rng.complex_gaussian();
  return g;
}

std::vector<double> hermitian_eigs_checked(const MatrixXcd& w) {
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(w);
  if (es.info() != Eigen::Success)
    throw numerical_error("sample_ensemble: eigensolver failed to converge");
  const double resid =
      (w * es.eigenvectors() - es.eigenvectors() * es.eigenvalues().asDiagonal()).norm();
  if (resid > kResidualTol * w.norm())
    throw numerical_error("sample_ensemble: eigenpair residual above tolerance");
  const VectorXd& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

void SampleConfig::validate(Model model) const {
  if (n < 1) throw domain_error("SampleConfig: n must be >= 1");
  if (trials < 1) throw domain_error("SampleConfig: trials must be >= 1");
  if (histogram_bins < 1) throw domain_error("SampleConfig: histogram_bins must be >= 1");
  if (!(spike >= 0.0)) throw domain_error("SampleConfig: spike must be >= 0");
  if (model == Model::C) {
    if (m1 <= n || m2 <= n)
      throw domain_error("SampleConfig: model C needs m1 > n and m2 > n");
  } else {
    if (m < n) throw domain_error("SampleConfig: models A/B need m >= n");
  }
}

std::vector<double> sample_ensemble(const EnsembleSpec& spec, const SampleConfig& cfg,
                                    long trial_index) {
  cfg.validate(spec.model);
  TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial_index));
  const int n = cfg.n;

  switch (spec.model) {
    case Model::A: {
      MatrixXcd g = gaussian_matrix(rng, n, cfg.m);
      g.row(0) *= std::sqrt(1.0 + cfg.spike);  // covariance spike 1 + delta
      const MatrixXcd w = g * g.adjoint();
      return hermitian_eigs_checked(w);
    }
    case Model::B: {
      MatrixXcd g = gaussian_matrix(rng, n, cfg.m);
      // Rank-one mean sqrt(n nu) e1 u^H with u fixed to e1: any unit u gives
      // the same distribution, a fixed one keeps runs reproducible.
      g(0, 0) += std::sqrt(n * cfg.spike);
      const MatrixXcd w = g * g.adjoint();
      return hermitian_eigs_checked(w);
    }
    case Model::C: {
      MatrixXcd g1 = gaussian_matrix(rng, n, cfg.m1);
      g1(0, 0) += std::sqrt(n * cfg.spike);
      MatrixXcd g2 = gaussian_matrix(rng, n, cfg.m2);
      const MatrixXcd w1 = g1 * g1.adjoint();
      const MatrixXcd w2 = g2 * g2.adjoint();
      // Hermitian-definite pencil (W1, W2): Cholesky of W2 and a standard
      // Hermitian solve, instead of forming W1 W2^{-1}.
      Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> ges(w1, w2);
      if (ges.info() != Eigen::Success)
        throw numerical_error("sample_ensemble: generalized eigensolver failed");
      const double resid = (w1 * ges.eigenvectors() -
                            w2 * ges.eigenvectors() * ges.eigenvalues().asDiagonal())
                               .norm();
      if (resid > kResidualTol * w1.norm())
        throw numerical_error("sample_ensemble: pencil residual above tolerance");
      const VectorXd& ev = ges.eigenvalues();
      return std::vector<double>(ev.data(), ev.data() + ev.size());
    }
  }
  throw domain_error("unknown model");
}

double empirical_statistic(const std::vector<double>& eigs, const LinearStatistic& stat,
                           Model model, int n) {
  std::vector<double> terms(eigs.size());
  for (std::size_t k = 0; k < eigs.size(); ++k) {
    const double x = (model == Model::C) ? eigs[k] : eigs[k] / n;
    terms[k] = evaluate_statistic(stat, x);
  }
  return pairwise_sum(terms);
}

double ks_distance(std::vector<double> samples, double mean, double std) {
  if (samples.empty()) throw domain_error("ks_distance: no samples");
  if (!(std > 0.0)) throw domain_error("ks_distance: std must be positive");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = normal_cdf((samples[i] - mean) / std);
    d = std::max(d, std::max((i + 1.0) / n - cdf, cdf - i / n));
  }
  return d;
}

namespace {

EmpiricalReport reduce_report(std::vector<double> values,
                              std::vector<unsigned char> discarded_flags,
                              const SampleConfig& cfg, const CltParams& prediction) {
  EmpiricalReport rep;
  rep.prediction = prediction;

  std::vector<double> kept;
  kept.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (discarded_flags[i])
      ++rep.discarded;
    else
      kept.push_back(values[i]);
  }
  if (rep.discarded * 1000 > cfg.trials)
    throw numerical_error("run_experiment: more than 0.1% of trials discarded");
  rep.trials = static_cast<long>(kept.size());

  rep.sample_mean = pairwise_sum(kept) / rep.trials;
  std::vector<double> sq(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const double d = kept[i] - rep.sample_mean;
    sq[i] = d * d;
  }
  rep.sample_var = (rep.trials > 1) ? pairwise_sum(sq) / (rep.trials - 1) : 0.0;

  const bool super = prediction.regime == SpikeRegime::supercritical;
  rep.comparison_mean_used = super ? "outlier_adjusted" : "predicted";
  const double mean_used = super ? prediction.outlier_adjusted_mean : prediction.predicted_mean;
  const double sigma = std::sqrt(prediction.sigma2);
  rep.ks_distance = ks_distance(kept, mean_used, sigma);
  rep.mean_zscore = (rep.sample_mean - mean_used) / (sigma / std::sqrt(double(rep.trials)));

  double lo = *std::min_element(kept.begin(), kept.end());
  double hi = *std::max_element(kept.begin(), kept.end());
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const int bins = cfg.histogram_bins;
  rep.histogram.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b)
    rep.histogram.edges[b] = lo + (hi - lo) * b / bins;
  rep.histogram.counts.assign(bins, 0);
  for (double v : kept) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++rep.histogram.counts[b];
  }
  // The numbers above only depend on the (trial-ordered) value vector, so the
  // report is identical however the trials were scheduled.
  return rep;
}

CltParams finite_ratio_prediction(const EnsembleSpec& spec, const LinearStatistic& stat,
                                  const SampleConfig& cfg, const QuadratureConfig& qcfg) {
  EnsembleSpec finite = spec;
  finite.spike = cfg.spike;
  if (spec.model == Model::C) {
    finite.c1 = double(cfg.m1) / cfg.n;
    finite.c2 = double(cfg.m2) / cfg.n;
  } else {
    finite.c = double(cfg.m) / cfg.n;
  }
  return clt_params(finite, stat, cfg.n, qcfg);
}

}  // namespace

EmpiricalReport run_experiment(const EnsembleSpec& spec, const LinearStatistic& stat,
                               const SampleConfig& cfg, const QuadratureConfig& qcfg) {
  cfg.validate(spec.model);
  const CltParams prediction = finite_ratio_prediction(spec, stat, cfg, qcfg);

  std::vector<double> values(cfg.trials, 0.0);
  std::vector<unsigned char> discarded(cfg.trials, 0);
  std::string fatal;

#ifdef _OPENMP
  const int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
#endif
  for (long t = 0; t < cfg.trials; ++t) {
    try {
      const auto eigs = sample_ensemble(spec, cfg, t);
      values[t] = empirical_statistic(eigs, stat, spec.model, cfg.n);
    } catch (const numerical_error&) {
      discarded[t] = 1;  // conditioning event: drop the trial, keep the run
    } catch (const std::exception& e) {
#ifdef _OPENMP
#pragma omp critical
#endif
      fatal = e.what();
    }
  }
  if (!fatal.empty()) throw domain_error(fatal);
  return reduce_report(std::move(values), std::move(discarded), cfg, prediction);
}

EmpiricalReport run_experiment_serial(const EnsembleSpec& spec, const LinearStatistic& stat,
                                      const SampleConfig& cfg, const QuadratureConfig& qcfg) {
  cfg.validate(spec.model);
  const CltParams prediction = finite_ratio_prediction(spec, stat, cfg, qcfg);

  std::vector<double> values(cfg.trials, 0.0);
  std::vector<unsigned char> discarded(cfg.trials, 0);
  for (long t = 0; t < cfg.trials; ++t) {
    try {
      const auto eigs = sample_ensemble(spec, cfg, t);
      values[t] = empirical_statistic(eigs, stat, spec.model, cfg.n);
    } catch (const numerical_error&) {
      discarded[t] = 1;
    }
  }
  return reduce_report(std::move(values), std::move(discarded), cfg, prediction);
}

}  // namespace spikedclt
