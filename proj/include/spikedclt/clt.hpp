#pragma once

#include <utility>

#include "spikedclt/chebyshev.hpp"
#include "spikedclt/ensemble.hpp"
#include "spikedclt/quadrature.hpp"
#include "spikedclt/statistic.hpp"

namespace spikedclt {

// Full prediction of the asymptotic Gaussian law of sum_k f(x_k/n) (models
// A/B) or sum_k f(x_k) (model C). n enters only through predicted_mean; mu,
// sigma2, mu_bar are purely asymptotic.
struct CltParams {
  int n = 0;
  double mu = 0.0;       // leading mean coefficient
  double sigma2 = 0.0;   // asymptotic variance
  double mu_bar = 0.0;   // O(1) spike correction, branch-resolved (bulk value)
  double predicted_mean = 0.0;         // n*mu + mu_bar, the bulk-law value
  double outlier_adjusted_mean = 0.0;  // + f(z0) when supercritical: the spike's
                                       // detached eigenvalue contributes f(z0)
                                       // to the full statistic
  SpikeRegime regime = SpikeRegime::zero_spike;
};

// g(x) = f(x/(1-x)) with the chain-rule derivative; model C statistics are
// expanded on the transformed support inside (0, 1).
LinearStatistic compose_for_model_c(const LinearStatistic& stat);

CltParams clt_params(const EnsembleSpec& spec, const LinearStatistic& stat, int n,
                     const QuadratureConfig& cfg = {});

// (mean, std) of the predicted Gaussian.
std::pair<double, double> predicted_distribution(const CltParams& params);

}  // namespace spikedclt
