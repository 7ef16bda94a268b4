#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spikedclt/clt.hpp"
#include "spikedclt/ensemble.hpp"
#include "spikedclt/statistic.hpp"

namespace spikedclt {

struct SampleConfig {
  int n = 8;            // matrix dimension
  int m = 0;            // degrees of freedom (models A, B)
  int m1 = 0, m2 = 0;   // degrees of freedom (model C)
  double spike = 0.0;   // delta (A) or nu (B, C)
  long trials = 1;
  std::uint64_t seed = 0;
  int threads = 0;      // 0 = library default
  int histogram_bins = 64;

  void validate(Model model) const;
};

struct Histogram {
  std::vector<double> edges;  // bins+1 edges
  std::vector<long> counts;   // bins entries, summing to the kept trials
};

struct EmpiricalReport {
  long trials = 0;     // kept trials (requested minus discarded)
  long discarded = 0;  // eigensolver residual failures, logged and dropped
  double sample_mean = 0.0;
  double sample_var = 0.0;
  double ks_distance = 0.0;  // vs the predicted Gaussian
  double mean_zscore = 0.0;  // (sample_mean - comparison mean) / (std/sqrt(trials))
  Histogram histogram;
  std::string comparison_mean_used;  // "predicted" or "outlier_adjusted"
  CltParams prediction;              // at the finite ratios m/n (m1/n, m2/n)
};

// Eigenvalues (ascending) of one draw of the ensemble at finite (n, m) or
// (n, m1, m2). The stream is a pure function of (cfg.seed, trial_index).
// Throws numerical_error if the eigensolver residual exceeds 1e-8 * |W|.
std::vector<double> sample_ensemble(const EnsembleSpec& spec, const SampleConfig& cfg,
                                    long trial_index);

// sum_k f(x_k/n) for models A/B, sum_k f(x_k) for model C.
double empirical_statistic(const std::vector<double>& eigs, const LinearStatistic& stat,
                           Model model, int n);

// Kolmogorov-Smirnov sup-distance of the samples against N(mean, std^2).
double ks_distance(std::vector<double> samples, double mean, double std);

// Draws cfg.trials samples, reduces the empirical statistics and compares
// against clt_params evaluated at the finite ratios. The comparison mean is
// outlier-adjusted in the supercritical regime. Trials run in parallel; the
// report is bit-identical for any thread count.
EmpiricalReport run_experiment(const EnsembleSpec& spec, const LinearStatistic& stat,
                               const SampleConfig& cfg, const QuadratureConfig& qcfg = {});

// Plain single-threaded loop, kept as the reference implementation for the
// parallel kernel; produces the identical report.
EmpiricalReport run_experiment_serial(const EnsembleSpec& spec, const LinearStatistic& stat,
                                      const SampleConfig& cfg,
                                      const QuadratureConfig& qcfg = {});

}  // namespace spikedclt
