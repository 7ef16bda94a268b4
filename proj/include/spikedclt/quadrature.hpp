#pragma once

#include <functional>
#include <utility>

#include "spikedclt/chebyshev.hpp"
#include "spikedclt/ensemble.hpp"
#include "spikedclt/statistic.hpp"

namespace spikedclt {

// Midpoint rule on [0, pi] for a smooth integrand, doubling the node count
// from start_order until two successive levels agree to rel_tol.
double integrate_angle(const std::function<double(double)>& F, int start_order,
                       double rel_tol, int max_nodes = 1 << 16);

// Leading mean coefficient mu = integral of f against the model's equilibrium
// density. The series must live on the ensemble's support (for model C it is the
// series of the composed statistic f(x/(1-x))).
double mean_integral(const ChebyshevSeries& series, const EnsembleSpec& spec,
                     const QuadratureConfig& cfg = {});

// Asymptotic variance from the series alone: sigma^2 = (1/4) sum_k k a_k^2,
// the closed form of the double principal-value integral under the angle
// substitution (finite Hilbert transform of the Chebyshev harmonics).
double variance_from_series(const ChebyshevSeries& series);

// Independent direct evaluation of the variance double integral. Outer nodes
// at Chebyshev angles, inner principal value on an interleaved grid with the
// antisymmetric subtraction f'(y) -> f'(y) - f'(x). Never touches the series.
double variance_pv_oracle(const LinearStatistic& stat, const SupportInterval& interval,
                          const QuadratureConfig& cfg);

// O(1) spike correction: (1/2pi) * integral of h(theta) * (S/(z0 - x(theta)) - 1).
// Exactly 0 in the zero_spike regime; refuses the critical regime. In the
// subcritical regime with |w| >= 1.05 the w-series form (1/2) sum a_k w^{-k}
// is evaluated as a cross-check and disagreement raises numerical_error.
double spike_correction(const ChebyshevSeries& series, const SpikeGeometry& geom,
                        const QuadratureConfig& cfg = {});

// Two routes to the same quantity for z > b: side1 integrates f against the
// spike-correction kernel (positive root), side2 integrates ln(z - x) against
// the Hilbert-transform density of f' via the principal-value machinery.
std::pair<double, double> spike_kernel_equivalence(const LinearStatistic& stat,
                                                 const SupportInterval& interval, double z,
                                                 const QuadratureConfig& cfg);

}  // namespace spikedclt
