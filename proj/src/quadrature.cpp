#include "spikedclt/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace spikedclt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double integrate_angle(const std::function<double(double)>& F, int start_order,
                       double rel_tol, int max_nodes) {
  int N = std::max(start_order, 32);
  auto level = [&F](int n) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += F(kPi * (j + 0.5) / n);
    return acc * kPi / n;
  };
  double prev = level(N);
  while (N <= max_nodes) {
    N *= 2;
    const double cur = level(N);
    if (std::abs(cur - prev) <= rel_tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  throw numerical_error("integrate_angle: no convergence at " + std::to_string(max_nodes) +
                        " nodes");
}

double mean_integral(const ChebyshevSeries& series, const EnsembleSpec& spec,
                     const QuadratureConfig& cfg) {
  spec.validate();
  const SupportInterval& iv = series.interval;
  const double B = iv.half_width;
  const int start = std::max<int>(64, static_cast<int>(series.coeffs.size()));

  std::function<double(double)> F;
  if (spec.model == Model::C) {
    const double scale = spec.c1 + spec.c2;
    F = [&series, &iv, B, scale](double th) {
      const double x = iv.x_of_angle(th);
      const double s = std::sin(th);
      return scale * series.angle_value(th) * B * B * s * s / (x * (1.0 - x));
    };
  } else {
    // Equilibrium density sqrt((b-x)(x-a))/(2 pi x); at a = 0 the angle form
    // B^2 sin^2(theta)/x stays finite at theta = pi.
    F = [&series, &iv, B](double th) {
      const double x = iv.x_of_angle(th);
      const double s = std::sin(th);
      return series.angle_value(th) * B * B * s * s / x;
    };
  }
  return integrate_angle(F, start, cfg.rel_tol) / (2.0 * kPi);
}

double variance_from_series(const ChebyshevSeries& series) {
  double acc = 0.0;
  for (std::size_t k = 1; k < series.coeffs.size(); ++k)
    acc += double(k) * series.coeffs[k] * series.coeffs[k];
  return 0.25 * acc;
}

double variance_pv_oracle(const LinearStatistic& stat, const SupportInterval& interval,
                          const QuadratureConfig& cfg) {
  cfg.validate();
  if (!stat.has_derivative())
    throw domain_error("variance_pv_oracle: statistic '" + stat.name + "' has no derivative");
  const auto check = check_domain(stat, interval);
  if (!check.ok) throw domain_error(check.violation);

  const int N = cfg.pv_grid;
  const double B = interval.half_width;

  // Inner grid: trapezoid at phi_j = pi j/N (endpoint values vanish with
  // sin^2 phi); outer grid at the midpoints pi(i+1/2)/N. The two never share
  // a node, so the removable point of the subtracted integrand is never hit.
  std::vector<double> cphi(N + 1), s2phi(N + 1), fin(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double phi = kPi * j / N;
    cphi[j] = std::cos(phi);
    s2phi[j] = std::sin(phi) * std::sin(phi);
    fin[j] = (j == 0 || j == N) ? 0.0
                                : stat.derivative(interval.x_of_angle(phi));
  }

  std::vector<double> outer(N);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i) {
    const double theta = kPi * (i + 0.5) / N;
    const double ct = std::cos(theta);
    const double fout = stat.derivative(interval.x_of_angle(theta));
    double inner = 0.0;
    for (int j = 1; j < N; ++j)
      inner += (fin[j] - fout) * s2phi[j] / (ct - cphi[j]);
    inner *= kPi / N;
    // P.V. of sin^2(phi)/(cos(theta)-cos(phi)) over [0, pi] is pi cos(theta).
    inner = B * (inner + fout * kPi * ct);
    outer[i] = stat.evaluate(interval.x_of_angle(theta)) * inner;
  }

  double acc = 0.0;
  for (int i = 0; i < N; ++i) acc += outer[i];
  return acc * (kPi / N) / (2.0 * kPi * kPi);
}

double spike_correction(const ChebyshevSeries& series, const SpikeGeometry& geom,
                        const QuadratureConfig& cfg) {
  switch (geom.regime) {
    case SpikeRegime::zero_spike:
      return 0.0;
    case SpikeRegime::critical:
      throw domain_error(
          "spike_correction: spike is at the criticality threshold (z0 = b, S = 0); "
          "the correction integral degenerates there");
    default:
      break;
  }
  const SupportInterval& iv = series.interval;
  if (!(geom.z0 > iv.b))
    throw domain_error("spike_correction: saddlepoint does not lie beyond the support");

  const double z0 = geom.z0, S = geom.S;
  const int start = std::max<int>(64, static_cast<int>(series.coeffs.size()));
  const double mu_bar = integrate_angle(
                            [&series, &iv, z0, S](double th) {
                              return series.angle_value(th) * (S / (z0 - iv.x_of_angle(th)) - 1.0);
                            },
                            start, cfg.rel_tol) /
                        (2.0 * kPi);

  if (geom.regime == SpikeRegime::subcritical && std::abs(geom.w) >= 1.05) {
    // Geometric series in 1/w, truncated with the expansion itself.
    double acc = 0.0, wk = 1.0;
    for (std::size_t k = 1; k < series.coeffs.size(); ++k) {
      wk /= geom.w;
      acc += series.coeffs[k] * wk;
    }
    acc *= 0.5;
    if (std::abs(acc - mu_bar) > 1e-8 * (1.0 + std::abs(mu_bar)))
      throw numerical_error("spike_correction: w-series and integral disagree");
  }
  return mu_bar;
}

std::pair<double, double> spike_kernel_equivalence(const LinearStatistic& stat,
                                                 const SupportInterval& interval, double z,
                                                 const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(z > interval.b)) throw domain_error("spike_kernel_equivalence: needs z > b");
  if (!stat.has_derivative())
    throw domain_error("spike_kernel_equivalence: statistic has no derivative");

  const double B = interval.half_width;
  const double Az = std::sqrt((z - interval.a) * (z - interval.b));

  const double side1 = integrate_angle(
                           [&](double th) {
                             return stat.evaluate(interval.x_of_angle(th)) *
                                    (Az / (z - interval.x_of_angle(th)) - 1.0);
                           },
                           64, cfg.rel_tol) /
                       (2.0 * kPi);

  // side2 reuses the PV machinery of the variance oracle with the kernel
  // 1/(y - x), i.e. the sign-flipped inner transform, against ln(z - x).
  const int N = cfg.pv_grid;
  std::vector<double> cphi(N + 1), s2phi(N + 1), fin(N + 1);
  for (int j = 0; j <= N; ++j) {
    const double phi = kPi * j / N;
    cphi[j] = std::cos(phi);
    s2phi[j] = std::sin(phi) * std::sin(phi);
    fin[j] = (j == 0 || j == N) ? 0.0 : stat.derivative(interval.x_of_angle(phi));
  }
  std::vector<double> outer(N);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < N; ++i) {
    const double theta = kPi * (i + 0.5) / N;
    const double ct = std::cos(theta);
    const double fout = stat.derivative(interval.x_of_angle(theta));
    double inner = 0.0;
    for (int j = 1; j < N; ++j)
      inner += (fin[j] - fout) * s2phi[j] / (ct - cphi[j]);
    inner *= kPi / N;
    inner = -B * (inner + fout * kPi * ct);
    outer[i] = std::log(z - interval.x_of_angle(theta)) * inner;
  }
  double acc = 0.0;
  for (int i = 0; i < N; ++i) acc += outer[i];
  const double side2 = acc * (kPi / N) / (2.0 * kPi * kPi);

  return {side1, side2};
}

}  // namespace spikedclt
