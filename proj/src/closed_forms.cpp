#include "spikedclt/closed_forms.hpp"

#include <cmath>

#include "spikedclt/ensemble.hpp"
#include "spikedclt/errors.hpp"
#include "spikedclt/identities.hpp"

namespace spikedclt {

GaussianTriple lrt_params(double c, double delta) {
  if (!(c > 1.0)) throw domain_error("lrt_params: requires c > 1");
  if (!(delta >= 0.0)) throw domain_error("lrt_params: requires delta >= 0");
  GaussianTriple out;
  out.mu = 1.0 + (c - 1.0) * std::log1p(-1.0 / c);
  out.sigma2 = -1.0 / c - std::log1p(-1.0 / c);
  out.mu_bar = delta - std::log1p(delta);
  return out;
}

GaussianTriple capacity_params(double c, double nu, double T) {
  if (!(T > 0.0)) throw domain_error("capacity_params: requires T > 0");
  if (!(c >= 1.0)) throw domain_error("capacity_params: requires c >= 1");
  if (!(nu >= 0.0)) throw domain_error("capacity_params: requires nu >= 0");
  const double sc = std::sqrt(c);
  const double a = (1.0 - sc) * (1.0 - sc), b = (1.0 + sc) * (1.0 + sc);
  const double sta = std::sqrt(T + a), stb = std::sqrt(T + b);
  const double A = sta * stb;

  GaussianTriple out;
  out.mu = 0.5 * ((a + b) * std::log(0.5 * (sta + stb)) - 0.5 * (sta - stb) * (sta - stb) -
                  std::sqrt(a * b) *
                      std::log(((std::sqrt(a * b) + A) * (std::sqrt(a * b) + A) - T * T) /
                               ((std::sqrt(a) + std::sqrt(b)) * (std::sqrt(a) + std::sqrt(b)))) -
                  2.0 * std::log(T));
  const double q = std::pow((T + a) / (T + b), 0.25);
  out.sigma2 = 2.0 * std::log(0.5 * q + 0.5 / q);
  if (nu == 0.0) {
    out.mu_bar = 0.0;
  } else {
    const double num = 2.0 * (T * nu + (1.0 + nu) * (c + nu)) * (T * nu + (1.0 + nu) * (c + nu));
    const double den = nu * nu * (1.0 + c + T) * A + 2.0 * c * nu * (1.0 + c + T + A) +
                       nu * nu * (T * T + 2.0 * T * (1.0 + c) + 1.0 + c * c) + 2.0 * c * c;
    out.mu_bar = 0.5 * std::log(num / den);
  }
  return out;
}

GaussianTriple multisample_params(double c1, double c2, double nu) {
  if (!(c1 > 1.0 && c2 > 1.0)) throw domain_error("multisample_params: requires c1, c2 > 1");
  if (!(nu >= 0.0)) throw domain_error("multisample_params: requires nu >= 0");
  const auto iv = support_interval(EnsembleSpec::model_c(c1, c2, 0.0));
  const double a = iv.a, b = iv.b;
  const double ra = std::sqrt(1.0 - a), rb = std::sqrt(1.0 - b);

  GaussianTriple out;
  out.mu = -(c1 + c2) *
           (std::log(0.5 * (ra + rb)) -
            0.5 * std::sqrt(a * b) *
                std::log((1.0 - (std::sqrt(a * b) - ra * rb) * (std::sqrt(a * b) - ra * rb)) /
                         ((std::sqrt(a) + std::sqrt(b)) * (std::sqrt(a) + std::sqrt(b)))) +
            ra * rb * std::log(0.5 / ra + 0.5 / rb));
  out.sigma2 = std::log((ra + rb) * (ra + rb) / (4.0 * ra * rb));
  out.mu_bar = std::log1p(nu / (c1 + c2));
  return out;
}

double hyp2f2_11_2m1(double m, double z) {
  if (!(m >= 1.0)) throw domain_error("hyp2f2_11_2m1: requires m >= 1");
  if (z == 0.0) return 1.0;
  if (z > 0.0) return hyp2f2_11_2m1_series(m, z);
  // (e^{zu}-1)/(zu) is smooth on (0,1] with limit 1 at u -> 0.
  auto f = [m, z](double u) {
    const double zu = z * u;
    const double core = (std::abs(zu) < 1e-8) ? 1.0 + 0.5 * zu : std::expm1(zu) / zu;
    return m * std::pow(1.0 - u, m - 1.0) * core;
  };
  return quad::adaptive_gl(f, 0.0, 1.0, 1e-13);
}

double hyp2f2_11_2m1_series(double m, double z) {
  // term_k = z^k / ((k+1) (m+1)_k); the partial sums reach ~e^{|z|} before
  // collapsing, so the usable range in long double is |z| of a few tens.
  long double sum = 0.0L, term = 1.0L, peak = 0.0L;
  for (int k = 0; k < 100000; ++k) {
    sum += term;
    peak = std::max(peak, std::abs(sum));
    const long double next = term * z * (k + 1.0L) / ((k + 2.0L) * (m + 1.0L + k));
    if (std::abs(next) < 1e-25L * std::max<long double>(std::abs(sum), 1.0L) &&
        std::abs(z) < k) {
      if (peak > 1e12L * std::abs(sum))
        throw numerical_error(
            "hyp2f2_11_2m1_series: catastrophic cancellation at this argument; "
            "use hyp2f2_11_2m1");
      return static_cast<double>(sum);
    }
    term = next;
  }
  throw numerical_error("hyp2f2_11_2m1_series: no convergence within the term cap");
}

PowerOffset high_snr_power_offset(double c, double K0, int n, int m) {
  if (!(m >= n && n >= 1)) throw domain_error("high_snr_power_offset: requires m >= n >= 1");
  if (!(K0 >= 0.0)) throw domain_error("high_snr_power_offset: requires K0 >= 0");
  // (c-1) ln((c-1)/c) -> 0 as c -> 1.
  const double edge = (c > 1.0) ? (c - 1.0) * std::log((c - 1.0) / c) : 0.0;
  const double common = 1.0 + edge + std::log1p(K0 / m);

  PowerOffset out;
  out.log_term = common - std::log1p(K0 / c) / n;
  const double f22 = (K0 == 0.0) ? 1.0 : hyp2f2_11_2m1(m, -double(n) * K0);
  out.hyp2f2_nats = common - K0 / m * f22;
  out.hyp2f2_base2 = common - K0 / (m * std::log(2.0)) * f22;
  return out;
}

double test_power(const TestPowerInput& input) {
  if (!(input.alpha > 0.0 && input.alpha < 1.0))
    throw domain_error("test_power: alpha must lie in (0, 1)");
  const GaussianTriple p = multisample_params(input.c1, input.c2, input.nu);
  const double shift = p.mu_bar / std::sqrt(p.sigma2);
  return 1.0 - normal_cdf(normal_quantile(1.0 - input.alpha) - shift);
}

}  // namespace spikedclt
