#pragma once

#include <vector>

#include "spikedclt/ensemble.hpp"
#include "spikedclt/statistic.hpp"

namespace spikedclt {

struct QuadratureConfig {
  int max_order = 2048;   // largest Chebyshev sampling order tried
  double rel_tol = 1e-10; // relative tolerance of the smooth quadratures
  int pv_grid = 4001;     // node count of the principal-value oracle

  void validate() const;
};

// Expansion f(center + half_width*cos(theta)) = a0/2 + sum_{k>=1} a_k cos(k theta).
struct ChebyshevSeries {
  SupportInterval interval;
  std::vector<double> coeffs;  // a_0 .. a_K

  // Cosine-series evaluation at an angle.
  double angle_value(double theta) const;
  // Clenshaw evaluation at a point x (any real x; the series is a polynomial).
  double value(double x) const;
  double max_abs_coeff() const;
};

// Samples f at the Chebyshev angles theta_j = pi(j+1/2)/N and cosine-transforms,
// doubling N from 32 until the coefficient tail has decayed below 1e-12 of the
// largest coefficient (the practical analyticity proxy) or max_order is hit,
// in which case a numerical_error reports the statistic as too rough.
ChebyshevSeries chebyshev_coefficients(const LinearStatistic& stat,
                                       const SupportInterval& interval,
                                       const QuadratureConfig& cfg);

}  // namespace spikedclt
