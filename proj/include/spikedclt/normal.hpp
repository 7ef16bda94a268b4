#pragma once

namespace spikedclt {

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Inverse standard normal CDF: Acklam's rational approximation refined by one
// Halley step against normal_cdf; absolute error well below 1e-12.
double normal_quantile(double p);

}  // namespace spikedclt
