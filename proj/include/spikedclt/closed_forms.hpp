#pragma once

#include "spikedclt/normal.hpp"

namespace spikedclt {

// (mu, sigma2, mu_bar) of the asymptotic Gaussian law of one application
// statistic. mu_bar is the full-statistic spike term: above the criticality
// threshold it equals the branch-resolved correction integral plus f(z0),
// i.e. it matches the outlier-adjusted engine mean, not the bulk-only value.
struct GaussianTriple {
  double mu = 0.0;
  double sigma2 = 0.0;
  double mu_bar = 0.0;
};

// Likelihood ratio test of an identity covariance, statistic
// f(x) = x/c - ln(x/c) - 1 on the spiked Wishart (model A).
GaussianTriple lrt_params(double c, double delta);

// Mutual information ln(1 + x/T) on the rank-one non-central Wishart (model B).
GaussianTriple capacity_params(double c, double nu, double T);

// Multi-sample significance test, statistic ln(1 + x) on the spiked F matrix
// (model C).
GaussianTriple multisample_params(double c1, double c2, double nu);

// High-SNR expansion of the expected mutual information: the mean behaves as
// n[ln(P) - L_inf(K0)]. log_term is the closed logarithmic form; hyp2f2_nats
// replaces the last term by the 2F2-based reference (natural-log units);
// hyp2f2_base2 scales that term by 1/ln 2, the literal transcription (the
// units question is surfaced, not resolved).
struct PowerOffset {
  double log_term = 0.0;
  double hyp2f2_nats = 0.0;
  double hyp2f2_base2 = 0.0;
};

PowerOffset high_snr_power_offset(double c, double K0, int n, int m);

// 2F2(1,1; 2, m+1; z) for z <= 0: exact integral representation
// m * int_0^1 (1-u)^(m-1) (e^{zu}-1)/(zu) du, stable for any argument size.
double hyp2f2_11_2m1(double m, double z);
// Literal term-by-term sum (long double); loses ~|z|/ln(10) digits to
// cancellation for z < 0 and refuses when fewer than ~6 digits survive.
double hyp2f2_11_2m1_series(double m, double z);

struct TestPowerInput {
  double alpha = 0.05;  // nominal level, in (0, 1)
  double nu = 0.0;      // spike of the alternative
  double c1 = 2.0;
  double c2 = 2.0;
};

// Asymptotic power beta = 1 - Phi(Phi^{-1}(1-alpha) - mu_bar_R / sigma_R).
double test_power(const TestPowerInput& input);

}  // namespace spikedclt
