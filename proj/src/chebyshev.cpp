#include "spikedclt/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spikedclt {

void QuadratureConfig::validate() const {
  if (max_order < 16) throw domain_error("QuadratureConfig: max_order must be >= 16");
  if (!(rel_tol > 0.0)) throw domain_error("QuadratureConfig: rel_tol must be positive");
  if (pv_grid < 16) throw domain_error("QuadratureConfig: pv_grid must be >= 16");
}

double ChebyshevSeries::angle_value(double theta) const {
  if (coeffs.empty()) return 0.0;
  double acc = 0.5 * coeffs[0];
  // Forward recurrence on cos(k theta); stable for theta in [0, pi].
  const double c = std::cos(theta), s2 = 2.0 * c;
  double ckm1 = 1.0, ck = c;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    acc += coeffs[k] * ck;
    const double next = s2 * ck - ckm1;
    ckm1 = ck;
    ck = next;
  }
  return acc;
}

double ChebyshevSeries::value(double x) const {
  if (coeffs.empty()) return 0.0;
  const double t = (x - interval.center) / interval.half_width;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    const double b0 = 2.0 * t * b1 - b2 + coeffs[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + 0.5 * coeffs[0];
}

double ChebyshevSeries::max_abs_coeff() const {
  double m = 0.0;
  for (double a : coeffs) m = std::max(m, std::abs(a));
  return m;
}

ChebyshevSeries chebyshev_coefficients(const LinearStatistic& stat,
                                       const SupportInterval& interval,
                                       const QuadratureConfig& cfg) {
  cfg.validate();
  const auto check = check_domain(stat, interval);
  if (!check.ok) throw domain_error(check.violation);

  constexpr double tail_tol = 1e-12;
  const double pi = std::numbers::pi;

  std::vector<double> coeffs;
  for (int N = 32; N <= cfg.max_order; N *= 2) {
    std::vector<double> h(N);
    for (int j = 0; j < N; ++j) {
      const double theta = pi * (j + 0.5) / N;
      h[j] = evaluate_statistic(stat, interval.x_of_angle(theta));
    }
    coeffs.assign(N, 0.0);
    for (int k = 0; k < N; ++k) {
      double acc = 0.0;
      for (int j = 0; j < N; ++j) acc += h[j] * std::cos(k * pi * (j + 0.5) / N);
      coeffs[k] = 2.0 * acc / N;
    }
    double mx = 0.0;
    for (double a : coeffs) mx = std::max(mx, std::abs(a));
    // Check the last two coefficients: odd/even symmetry can zero out one
    // parity exactly, which would otherwise fake convergence.
    const double tail = std::max(std::abs(coeffs[N - 1]), std::abs(coeffs[N - 2]));
    if (tail <= tail_tol * mx) return ChebyshevSeries{interval, std::move(coeffs)};
  }
  throw numerical_error("chebyshev_coefficients: statistic '" + stat.name +
                        "' shows no spectral decay at max_order (rough or singular "
                        "near the support)");
}

}  // namespace spikedclt
