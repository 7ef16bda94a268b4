#pragma once

namespace spikedclt {

// Kummer series sum of 1F1(a; b; x) to rel_tol, with a term-count cap
// (numerical_error past the cap). Negative x goes through the Kummer
// transformation so the summed series keeps positive terms.
double hyp1f1_series(double a, double b, double x, double rel_tol = 1e-14,
                     int max_terms = 200000);

// ln 1F1(a; b; x) for the large-argument regimes where the value overflows.
// Requires a, b, x > 0 (positive-term series).
double hyp1f1_series_log(double a, double b, double x, double rel_tol = 1e-14,
                         int max_terms = 200000);

// Saddlepoint approximation of 1F1(n u + 1; n v + 1; n gamma z) for large n,
// u > v > 0, gamma > 0, z > 1. The value form overflows to +inf for large n;
// the log form is exact-range.
double hyp1f1_asymptotic(double u, double v, double gamma, double z, int n);
double hyp1f1_asymptotic_log(double u, double v, double gamma, double z, int n);

}  // namespace spikedclt
