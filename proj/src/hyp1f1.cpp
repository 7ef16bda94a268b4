#include "spikedclt/hyp1f1.hpp"

#include <cmath>
#include <numbers>

#include "spikedclt/errors.hpp"

namespace spikedclt {

namespace {

// Positive-term Kummer sum with a running rescale so that huge values stay
// representable; returns ln(sum). Requires a, b, x > 0.
double positive_series_log(double a, double b, double x, double rel_tol, int max_terms) {
  double sum = 1.0, term = 1.0, log_offset = 0.0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1.0));
    sum += term;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      log_offset += 280.0 * std::numbers::ln10;
    }
    // Terms grow until k ~ x; only trust the tolerance on the decaying side.
    if (term <= rel_tol * sum && (a + k) * x < (b + k) * (k + 1.0))
      return std::log(sum) + log_offset;
  }
  throw numerical_error("hyp1f1_series: no convergence within the term cap");
}

}  // namespace

double hyp1f1_series_log(double a, double b, double x, double rel_tol, int max_terms) {
  if (!(a > 0.0 && b > 0.0))
    throw domain_error("hyp1f1_series_log: needs a > 0 and b > 0");
  if (x == 0.0) return 0.0;
  if (!(x > 0.0)) throw domain_error("hyp1f1_series_log: needs x >= 0");
  return positive_series_log(a, b, x, rel_tol, max_terms);
}

double hyp1f1_series(double a, double b, double x, double rel_tol, int max_terms) {
  if (!(b > 0.0)) throw domain_error("hyp1f1_series: needs b > 0");
  if (x == 0.0) return 1.0;
  if (a == b) return std::exp(x);
  if (x > 0.0 && a > 0.0) return std::exp(positive_series_log(a, b, x, rel_tol, max_terms));
  if (x < 0.0 && b - a > 0.0) {
    // Kummer transformation keeps the summed series positive.
    return std::exp(-std::abs(x) +
                    positive_series_log(b - a, b, -x, rel_tol, max_terms));
  }
  // Alternating fallback for the remaining sign patterns.
  double sum = 1.0, term = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1.0));
    sum += term;
    if (std::abs(term) <= rel_tol * std::abs(sum) && k > std::abs(x)) return sum;
  }
  throw numerical_error("hyp1f1_series: no convergence within the term cap");
}

double hyp1f1_asymptotic_log(double u, double v, double gamma, double z, int n) {
  if (!(u > v && v > 0.0)) throw domain_error("hyp1f1_asymptotic: needs u > v > 0");
  if (!(gamma > 0.0)) throw domain_error("hyp1f1_asymptotic: needs gamma > 0");
  if (!(z > 1.0)) throw domain_error("hyp1f1_asymptotic: needs z > 1");
  if (n < 1) throw domain_error("hyp1f1_asymptotic: needs n >= 1");

  const double gz = gamma * z;
  const double t = (gz - v + std::sqrt((v - gz) * (v - gz) + 4.0 * gz * u)) / (2.0 * gz);
  const double curv = -v * (t - 1.0) * (t - 1.0) + (u - v) * (2.0 * t - 1.0);
  return -0.5 * std::log(2.0 * std::numbers::pi * n) + std::lgamma(n * (u - v) + 1.0) +
         std::lgamma(n * v + 1.0) - std::lgamma(n * u + 1.0) + n * gz * t +
         (n * u + 1.0) * std::log(t) + n * (v - u) * std::log(t - 1.0) - 0.5 * std::log(curv);
}

double hyp1f1_asymptotic(double u, double v, double gamma, double z, int n) {
  return std::exp(hyp1f1_asymptotic_log(u, v, gamma, z, n));
}

}  // namespace spikedclt
